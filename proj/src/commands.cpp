#include "crowsim/commands.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "crowsim/io.hpp"
#include "crowsim/prng.hpp"

namespace crowsim {

namespace {

class Emitter {
 public:
  Emitter(const RunConfig& config, const char* command)
      : config_(config), command_(command), dir_(config.out_dir) {
    std::filesystem::create_directories(dir_);
  }

  void add(const char* name, const Table& table) {
    pending_.emplace_back(name, table);
  }

  CommandResult finish() {
    CommandResult result;
    for (const auto& [name, table] : pending_) {
      const auto path =
          dir_ / (name + std::string(".") + config_.format);
      if (config_.format == "csv")
        write_csv(path, table);
      else
        write_json_records(path, table);
      result.files.push_back(path);
    }
    result.files.push_back(write_manifest(result.files));
    return result;
  }

 private:
  std::filesystem::path write_manifest(
      const std::vector<std::filesystem::path>& files) {
    nlohmann::json doc;
    doc["artifact"] = kArtifactName;
    doc["version"] = kArtifactVersion;
    doc["command"] = command_;
    doc["master_seed"] = config_.master_seed;
    doc["rng"] = kRngAlgorithm;
    doc["format"] = config_.format;
    doc["config"] = nlohmann::json::parse(config_.echo_json());
    for (const auto& f : files) doc["files"].push_back(f.filename().string());
    const auto path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << "\n";
    return path;
  }

  const RunConfig& config_;
  const char* command_;
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, Table>> pending_;
};

Table stat_table(const char* axis_name, const std::vector<double>& axis,
                 const char* prefix, const StatTable& stats) {
  Table t;
  const std::string p(prefix);
  t.columns = {axis_name, p + "_mean", p + "_std", p + "_lower", p + "_upper"};
  for (std::size_t i = 0; i < axis.size(); ++i)
    t.add_row({axis[i], stats.mean[i], stats.stddev[i], stats.lower[i],
               stats.upper[i]});
  return t;
}

Table histogram_table(const char* unit_prefix, const Histogram& h) {
  Table t;
  const std::string p(unit_prefix);
  t.columns = {"bin_left" + p, "bin_right" + p, "prob", "density"};
  const double w = h.bin_width();
  for (std::size_t b = 0; b < h.prob.size(); ++b)
    t.add_row({h.lo + b * w, h.lo + (b + 1) * w, h.prob[b], h.density[b]});
  return t;
}

Table scalar_table(std::vector<std::pair<std::string, double>> scalars) {
  Table t;
  std::vector<double> row;
  for (auto& [name, value] : scalars) {
    t.columns.push_back(std::move(name));
    row.push_back(value);
  }
  t.rows.push_back(std::move(row));
  return t;
}

}  // namespace

CommandResult cmd_band(const RunConfig& config) {
  config.validate();
  const BandStructure bs =
      band_structure(config.lattice_spec(), config.band_points);
  Table t;
  t.columns = {"k", "omega_plus_over_J", "omega_minus_over_J",
               "v_plus_over_J", "v_minus_over_J"};
  for (std::size_t i = 0; i < bs.k.size(); ++i)
    t.add_row({bs.k[i], bs.omega_plus[i], bs.omega_minus[i], bs.v_plus[i],
               bs.v_minus[i]});
  Emitter e(config, "band");
  e.add("band", t);
  return e.finish();
}

CommandResult cmd_transmit(const RunConfig& config) {
  config.validate();
  const EnsembleSpec es = config.ensemble_spec(
      {Observable::Transmission, Observable::Reflection, Observable::Profile});
  const EnsembleSummary s = run_ensemble(es);

  Table spectra;
  spectra.columns = {"omega_over_J", "t_mean",  "t_std",     "t_lower",
                     "t_upper",      "t_mean_db", "t_db_mean", "r_mean",
                     "r_std",        "r_lower",   "r_upper"};
  for (int w = 0; w < es.grid.count(); ++w)
    spectra.add_row({es.grid.omega[w], s.transmission.mean[w],
                     s.transmission.stddev[w], s.transmission.lower[w],
                     s.transmission.upper[w],
                     10.0 * std::log10(s.transmission.mean[w]),
                     s.transmission_db.mean[w], s.reflection.mean[w],
                     s.reflection.stddev[w], s.reflection.lower[w],
                     s.reflection.upper[w]});

  Table profile;
  profile.columns = {"site", "intensity_mean", "intensity_lower",
                     "intensity_upper"};
  for (int site = 0; site < es.lattice.dim(); ++site)
    profile.add_row({static_cast<double>(site), s.profile.mean[site],
                     s.profile.lower[site], s.profile.upper[site]});

  Emitter e(config, "transmit");
  e.add("transmission", spectra);
  e.add("profile", profile);
  e.add("scalars",
        scalar_table({{"mean_t0", s.mean_t0},
                      {"mean_t0_db", s.mean_t0_db},
                      {"mean_db_t0", s.mean_db_t0},
                      {"realizations", static_cast<double>(s.realizations_used)},
                      {"exclusions", static_cast<double>(s.exclusions)}}));
  return e.finish();
}

CommandResult cmd_delay(const RunConfig& config) {
  config.validate();
  const EnsembleSpec es = config.ensemble_spec({Observable::Delay});
  const EnsembleSummary s = run_ensemble(es);

  Table delay;
  delay.columns = {"omega_over_J",     "tau_mean_times_J", "tau_std_times_J",
                   "tau_lower_times_J", "tau_upper_times_J", "valid_count",
                   "excluded_count"};
  for (int w = 0; w < es.grid.count(); ++w)
    delay.add_row({es.grid.omega[w], s.delay.mean[w], s.delay.stddev[w],
                   s.delay.lower[w], s.delay.upper[w],
                   static_cast<double>(s.delay.count[w]),
                   static_cast<double>(s.realizations_used - s.delay.count[w])});

  Emitter e(config, "delay");
  e.add("delay", delay);
  e.add("delay_hist", histogram_table("_times_J", s.delay_hist));
  e.add("scalars",
        scalar_table({{"tau_rms_times_J", s.tau_rms},
                      {"realizations", static_cast<double>(s.realizations_used)},
                      {"exclusions", static_cast<double>(s.exclusions)}}));
  return e.finish();
}

CommandResult cmd_hom(const RunConfig& config) {
  config.validate();
  const EnsembleSpec es = config.ensemble_spec({Observable::Hom});
  const EnsembleSummary s = run_ensemble(es);

  Emitter e(config, "hom");
  e.add("hom", stat_table("tau_c_times_J", es.tau_c_grid, "pcoin", s.hom));
  e.add("scalars",
        scalar_table(
            {{"mean_min_coincidence", s.mean_min_coincidence},
             {"min_of_mean_coincidence", s.min_of_mean_coincidence},
             {"realizations", static_cast<double>(s.realizations_used)},
             {"exclusions", static_cast<double>(s.exclusions)}}));
  return e.finish();
}

CommandResult cmd_noon(const RunConfig& config) {
  config.validate();
  const EnsembleSpec es = config.ensemble_spec({Observable::NoonCoincidence,
                                                Observable::NoonPurity,
                                                Observable::NoonEntropy});
  const EnsembleSummary s = run_ensemble(es);

  std::vector<double> photons(es.noon_photons.begin(), es.noon_photons.end());

  Emitter e(config, "noon");
  e.add("noon_coincidence", stat_table("tau_c_times_J", es.tau_c_grid, "pcoin",
                                       s.noon_coincidence));
  e.add("noon_hist", histogram_table("", s.noon_hist));
  e.add("noon_purity",
        stat_table("tau_c_times_J", es.tau_c_grid, "purity", s.noon_purity));
  e.add("noon_entropy",
        stat_table("num_photons", photons, "exp_entropy", s.noon_entropy));
  e.add("scalars",
        scalar_table(
            {{"mean_purity_at_zero", s.mean_purity_at_zero},
             {"mean_exp_entropy_n2", s.mean_exp_entropy_n2},
             {"realizations", static_cast<double>(s.realizations_used)},
             {"exclusions", static_cast<double>(s.exclusions)}}));
  return e.finish();
}

CommandResult cmd_sweep_disorder(const RunConfig& config) {
  config.validate();
  const EnsembleSpec es = config.ensemble_spec({Observable::Transmission});
  const auto rows = disorder_sweep(es, config.sweep_disorder);

  Table t;
  t.columns = {"disorder_std_over_J", "t0_mean",  "t0_db",     "t0_db_mean",
               "t0_lower",            "t0_upper", "exclusions"};
  for (const auto& r : rows)
    t.add_row({r.disorder_std, r.t0_mean, r.t0_db, r.t0_db_mean, r.t0_lower,
               r.t0_upper, static_cast<double>(r.exclusions)});

  Emitter e(config, "sweep-disorder");
  e.add("disorder_sweep", t);
  return e.finish();
}

CommandResult cmd_sweep_length(const RunConfig& config) {
  config.validate();
  const EnsembleSpec es = config.ensemble_spec({Observable::Hom});
  std::vector<int> cells;
  cells.reserve(config.sweep_lengths.size());
  for (int l : config.sweep_lengths) cells.push_back(config.to_num_cells(l));
  const auto rows = length_sweep(es, cells);

  Table t;
  t.columns = {"length",          "min_coincidence_mean",
               "min_coincidence_lower", "min_coincidence_upper",
               "min_of_mean_curve",     "exclusions"};
  for (const auto& r : rows)
    t.add_row({static_cast<double>(config.to_config_length(r.num_cells)),
               r.min_coin_mean, r.min_coin_lower, r.min_coin_upper,
               r.min_of_mean_curve, static_cast<double>(r.exclusions)});

  Emitter e(config, "sweep-length");
  e.add("length_sweep", t);
  return e.finish();
}

}  // namespace crowsim
