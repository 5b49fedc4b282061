#include "crowsim/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

namespace crowsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError("config: " + field + ": " + msg);
}

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail(where.empty() ? item.key() : where + "." + item.key(),
           "unknown key");
}

double get_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(key, "expected a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(key, "expected an integer");
  return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) fail(key, "expected a string");
  return obj[key].get<std::string>();
}

}  // namespace

void RunConfig::validate() const {
  if (length < 1) fail("lattice.length", "must be >= 1");
  if (kind == LatticeKind::HCrow && convention == LengthConvention::Sites &&
      length % 2 != 0)
    fail("lattice.length", "HCrow site counts must be even (2 per cell)");
  if (!(hopping > 0.0)) fail("lattice.hopping", "must be > 0");
  if (kappa_ex < 0.0) fail("lattice.kappa_ex", "must be >= 0");
  if (kappa_in < 0.0) fail("lattice.kappa_in", "must be >= 0");
  if (disorder_std < 0.0) fail("lattice.disorder_std", "must be >= 0");
  if (realizations < 1) fail("realizations", "must be >= 1");
  if (!(omega_max > 0.0)) fail("grid.omega_max", "must be > 0");
  if (omega_points < 3 || omega_points % 2 == 0)
    fail("grid.points", "must be odd and >= 3");
  if (!(envelope_sigma > 0.0)) fail("envelope_sigma", "must be > 0");
  if (tau_c_max < 0.0) fail("tau_c.max", "must be >= 0");
  if (tau_c_points < 1) fail("tau_c.points", "must be >= 1");
  if (band_points < 2) fail("band_points", "must be >= 2");
  if (noon_photons.empty()) fail("noon_photons", "must be nonempty");
  for (int n : noon_photons)
    if (n < 1) fail("noon_photons", "entries must be >= 1");
  if (drive_cell < 1 || drive_cell > to_num_cells(length))
    fail("drive_cell", "must lie within the lattice");
  for (double u : sweep_disorder)
    if (u < 0.0) fail("sweep_disorder", "entries must be >= 0");
  for (int l : sweep_lengths) {
    if (l < 2) fail("sweep_lengths", "entries must be >= 2");
    if (kind == LatticeKind::HCrow && convention == LengthConvention::Sites &&
        l % 2 != 0)
      fail("sweep_lengths", "HCrow site counts must be even");
  }
  if (format != "csv" && format != "json")
    fail("format", "must be \"csv\" or \"json\"");
  if (parallelism < 0) fail("parallel", "must be >= 0");
}

int RunConfig::to_num_cells(int configured_length) const {
  if (kind == LatticeKind::HCrow && convention == LengthConvention::Sites)
    return configured_length / 2;
  return configured_length;
}

int RunConfig::to_config_length(int num_cells) const {
  if (kind == LatticeKind::HCrow && convention == LengthConvention::Sites)
    return 2 * num_cells;
  return num_cells;
}

LatticeSpec RunConfig::lattice_spec() const {
  LatticeSpec spec;
  spec.kind = kind;
  spec.num_cells = to_num_cells(length);
  spec.hopping = hopping;
  spec.kappa_ex = kappa_ex;
  spec.kappa_in = kappa_in;
  spec.disorder_std = disorder_std;
  return spec;
}

EnsembleSpec RunConfig::ensemble_spec(
    const std::set<Observable>& observables) const {
  EnsembleSpec es;
  es.lattice = lattice_spec();
  es.realizations = realizations;
  es.master_seed = master_seed;
  es.grid = FrequencyGrid::symmetric(omega_max * hopping, omega_points);
  es.envelope = InputEnvelope::gaussian(es.grid, envelope_sigma * hopping);
  const double tmax =
      tau_c_max > 0.0 ? tau_c_max : 10.0 / (envelope_sigma * hopping);
  es.tau_c_grid.resize(tau_c_points);
  for (int i = 0; i < tau_c_points; ++i)
    es.tau_c_grid[i] =
        tau_c_points == 1
            ? 0.0
            : -tmax + 2.0 * tmax * i / static_cast<double>(tau_c_points - 1);
  es.observables = observables;
  es.noon_photons = noon_photons;
  es.ports.footprint = footprint;
  es.ports.drive_cell = drive_cell;
  es.parallelism = parallelism;
  return es;
}

namespace {

RunConfig from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  expect_keys(doc, "",
              {"lattice", "length_convention", "realizations", "master_seed",
               "grid", "envelope_sigma", "tau_c", "band_points",
               "noon_photons", "drive_cell", "coupling_footprint",
               "sweep_disorder", "sweep_lengths", "format", "parallel"});

  RunConfig c;
  if (doc.contains("lattice")) {
    const json& lat = doc["lattice"];
    if (!lat.is_object()) fail("lattice", "expected an object");
    expect_keys(lat, "lattice",
                {"kind", "length", "hopping", "kappa_ex", "kappa_in",
                 "disorder_std"});
    const std::string kind = get_string(lat, "kind", "hcrow");
    if (kind == "hcrow")
      c.kind = LatticeKind::HCrow;
    else if (kind == "regular")
      c.kind = LatticeKind::RegularCrow;
    else
      fail("lattice.kind", "must be \"hcrow\" or \"regular\"");
    c.length = get_int(lat, "length", c.length);
    c.hopping = get_number(lat, "hopping", c.hopping);
    c.kappa_ex = get_number(lat, "kappa_ex", c.kappa_ex);
    c.kappa_in = get_number(lat, "kappa_in", c.kappa_in);
    c.disorder_std = get_number(lat, "disorder_std", c.disorder_std);
  }
  const std::string conv = get_string(doc, "length_convention", "cells");
  if (conv == "cells")
    c.convention = LengthConvention::Cells;
  else if (conv == "sites")
    c.convention = LengthConvention::Sites;
  else
    fail("length_convention", "must be \"cells\" or \"sites\"");

  c.realizations = get_int(doc, "realizations", c.realizations);
  if (doc.contains("master_seed")) {
    if (!doc["master_seed"].is_number_unsigned() &&
        !doc["master_seed"].is_number_integer())
      fail("master_seed", "expected an unsigned integer");
    c.master_seed = doc["master_seed"].get<std::uint64_t>();
  }
  if (doc.contains("grid")) {
    const json& grid = doc["grid"];
    if (!grid.is_object()) fail("grid", "expected an object");
    expect_keys(grid, "grid", {"omega_max", "points"});
    c.omega_max = get_number(grid, "omega_max", c.omega_max);
    c.omega_points = get_int(grid, "points", c.omega_points);
  }
  c.envelope_sigma = get_number(doc, "envelope_sigma", c.envelope_sigma);
  if (doc.contains("tau_c")) {
    const json& tc = doc["tau_c"];
    if (!tc.is_object()) fail("tau_c", "expected an object");
    expect_keys(tc, "tau_c", {"max", "points"});
    c.tau_c_max = get_number(tc, "max", c.tau_c_max);
    c.tau_c_points = get_int(tc, "points", c.tau_c_points);
  }
  c.band_points = get_int(doc, "band_points", c.band_points);
  if (doc.contains("noon_photons")) {
    if (!doc["noon_photons"].is_array())
      fail("noon_photons", "expected an array of integers");
    c.noon_photons.clear();
    for (const auto& v : doc["noon_photons"]) {
      if (!v.is_number_integer()) fail("noon_photons", "expected integers");
      c.noon_photons.push_back(v.get<int>());
    }
  }
  c.drive_cell = get_int(doc, "drive_cell", c.drive_cell);
  const std::string fp =
      get_string(doc, "coupling_footprint", "active-sublattice");
  if (fp == "active-sublattice")
    c.footprint = CouplingFootprint::ActiveSublattice;
  else if (fp == "edge-cell")
    c.footprint = CouplingFootprint::EdgeCell;
  else
    fail("coupling_footprint", "must be \"active-sublattice\" or \"edge-cell\"");
  if (doc.contains("sweep_disorder")) {
    if (!doc["sweep_disorder"].is_array())
      fail("sweep_disorder", "expected an array of numbers");
    c.sweep_disorder.clear();
    for (const auto& v : doc["sweep_disorder"]) {
      if (!v.is_number()) fail("sweep_disorder", "expected numbers");
      c.sweep_disorder.push_back(v.get<double>());
    }
  }
  if (doc.contains("sweep_lengths")) {
    if (!doc["sweep_lengths"].is_array())
      fail("sweep_lengths", "expected an array of integers");
    c.sweep_lengths.clear();
    for (const auto& v : doc["sweep_lengths"]) {
      if (!v.is_number_integer()) fail("sweep_lengths", "expected integers");
      c.sweep_lengths.push_back(v.get<int>());
    }
  }
  c.format = get_string(doc, "format", c.format);
  c.parallelism = get_int(doc, "parallel", c.parallelism);

  c.validate();
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string RunConfig::echo_json() const {
  json doc;
  doc["lattice"]["kind"] = kind == LatticeKind::HCrow ? "hcrow" : "regular";
  doc["lattice"]["length"] = length;
  doc["lattice"]["hopping"] = hopping;
  doc["lattice"]["kappa_ex"] = kappa_ex;
  doc["lattice"]["kappa_in"] = kappa_in;
  doc["lattice"]["disorder_std"] = disorder_std;
  doc["length_convention"] =
      convention == LengthConvention::Cells ? "cells" : "sites";
  doc["realizations"] = realizations;
  doc["master_seed"] = master_seed;
  doc["grid"]["omega_max"] = omega_max;
  doc["grid"]["points"] = omega_points;
  doc["envelope_sigma"] = envelope_sigma;
  doc["tau_c"]["max"] = tau_c_max;
  doc["tau_c"]["points"] = tau_c_points;
  doc["band_points"] = band_points;
  doc["noon_photons"] = noon_photons;
  doc["drive_cell"] = drive_cell;
  doc["coupling_footprint"] = footprint == CouplingFootprint::ActiveSublattice
                                  ? "active-sublattice"
                                  : "edge-cell";
  doc["sweep_disorder"] = sweep_disorder;
  doc["sweep_lengths"] = sweep_lengths;
  return doc.dump(2);
}

}  // namespace crowsim
