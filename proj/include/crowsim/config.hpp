#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowsim/ensemble.hpp"
#include "crowsim/lattice.hpp"
#include "crowsim/transport.hpp"

namespace crowsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How the configured "length" maps onto an HCrow: "cells" counts unit cells
// (the default; one cell = two rings), "sites" counts individual rings, so
// an HCrow of length 20 under "sites" has 10 unit cells. RegularCrow lengths
// are always site counts.
enum class LengthConvention { Cells, Sites };

// Strict key-value run configuration; unknown keys are rejected.
struct RunConfig {
  LatticeKind kind = LatticeKind::HCrow;
  int length = 20;
  LengthConvention convention = LengthConvention::Cells;
  double hopping = 1.0;
  double kappa_ex = 0.5;
  double kappa_in = 0.1;
  double disorder_std = 0.8;

  int realizations = 500;
  std::uint64_t master_seed = 1;
  double omega_max = 4.0;
  int omega_points = 513;
  double envelope_sigma = 0.5;
  double tau_c_max = 0.0;  // 0 = derive 10 / envelope_sigma
  int tau_c_points = 101;
  int band_points = 1000;
  std::vector<int> noon_photons = {1, 2, 3, 4};
  int drive_cell = 1;
  CouplingFootprint footprint = CouplingFootprint::ActiveSublattice;
  std::vector<double> sweep_disorder = {0.0, 0.2, 0.4, 0.6, 0.8,
                                        1.0, 1.2, 1.4, 1.6};
  std::vector<int> sweep_lengths = {10, 20, 30, 40, 50, 60};

  // execution knobs, not part of the scientific config echo
  std::string out_dir = "out";
  std::string format = "csv";
  int parallelism = 0;

  void validate() const;  // throws ConfigError with the offending field

  int to_num_cells(int configured_length) const;
  int to_config_length(int num_cells) const;

  LatticeSpec lattice_spec() const;
  EnsembleSpec ensemble_spec(const std::set<Observable>& observables) const;

  // scientific config as a canonical JSON string (sorted keys)
  std::string echo_json() const;
};

// parse + validate a strict JSON config document
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace crowsim
