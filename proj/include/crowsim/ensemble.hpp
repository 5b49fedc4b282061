#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "crowsim/grid.hpp"
#include "crowsim/lattice.hpp"
#include "crowsim/transport.hpp"

// Disorder ensembles. Realization i draws its disorder from
// derive_seed(master_seed, i, stream), so results depend only on the spec
// and never on thread count or execution order; aggregation walks the
// realization index in order, which makes whole summaries bit-reproducible.
//
// Seed streams: 0 = channel-1 disorder (shared by both circulation channels
// of an HCrow), 1 = the second RegularCrow chain, 2 = sweep sub-masters.

namespace crowsim {

enum class Observable {
  Transmission,
  Reflection,
  Profile,
  Delay,
  Hom,
  NoonCoincidence,
  NoonPurity,
  NoonEntropy,
};

// raised when more than 1% of realizations fail to solve
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnsembleSpec {
  LatticeSpec lattice;
  int realizations = 500;
  std::uint64_t master_seed = 1;
  FrequencyGrid grid;
  InputEnvelope envelope;
  std::vector<double> tau_c_grid;      // units of 1/J
  std::set<Observable> observables;
  std::vector<int> noon_photons = {1, 2, 3, 4};
  PortConfig ports;
  int parallelism = 0;                 // 0 = hardware concurrency
  bool keep_records = false;

  void validate() const;
};

// grid 513 points over [-4J, 4J], Gaussian envelope sigma = 0.5J,
// 101 delay points over +/-10/sigma
EnsembleSpec make_default_ensemble(const LatticeSpec& lattice);

// per-point mean, sample std and the empirical [17.5, 82.5] percentile band
struct StatTable {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> count;  // contributing realizations per point

  bool empty() const { return mean.empty(); }
};

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> prob;     // mass per bin, sums to 1
  std::vector<double> density;  // prob / bin width, integrates to 1
  int samples = 0;

  double bin_width() const {
    return prob.empty() ? 0.0 : (hi - lo) / static_cast<double>(prob.size());
  }
};

struct RealizationRecord {
  int index = 0;
  std::uint64_t seed1 = 0;
  std::uint64_t seed2 = 0;
  bool excluded = false;
  double t0 = 0.0;
  double tau_zero = 0.0;
  bool tau_zero_valid = false;
  double hom_min = 0.0;
  double noon_coin_zero = 0.0;
  double purity_zero = 0.0;
  double exp_entropy_n2 = 0.0;
};

struct EnsembleSummary {
  int realizations_requested = 0;
  int realizations_used = 0;
  int exclusions = 0;

  StatTable transmission;      // over grid.omega
  StatTable transmission_db;   // stats of per-realization 10 log10 T
  StatTable reflection;        // over grid.omega
  StatTable profile;           // per site, at omega = 0
  StatTable delay;             // over grid.omega (count = valid realizations)
  StatTable hom;               // over tau_c_grid
  StatTable noon_coincidence;  // over tau_c_grid
  StatTable noon_purity;       // over tau_c_grid
  StatTable noon_entropy;      // exp(S) over noon_photons

  Histogram delay_hist;        // tau at omega = 0, empirical range
  Histogram noon_hist;         // N00N coincidence at tau_c = 0, range [0,1]

  double mean_t0 = 0.0;
  double mean_t0_db = 0.0;    // 10 log10 of the linear mean
  double mean_db_t0 = 0.0;    // mean of the per-realization dB values
  double tau_rms = 0.0;                  // sqrt(mean tau(0)^2)
  double mean_min_coincidence = 0.0;     // per-realization min, then mean
  double min_of_mean_coincidence = 0.0;  // min of the mean curve
  double mean_purity_at_zero = 0.0;
  double mean_exp_entropy_n2 = 0.0;

  std::vector<RealizationRecord> records;  // filled when keep_records
};

EnsembleSummary run_ensemble(const EnsembleSpec& spec);

struct DisorderSweepRow {
  double disorder_std = 0.0;
  double t0_mean = 0.0;
  double t0_db = 0.0;       // dB of the linear mean
  double t0_db_mean = 0.0;  // mean of per-realization dB
  double t0_lower = 0.0;
  double t0_upper = 0.0;
  int exclusions = 0;
};

std::vector<DisorderSweepRow> disorder_sweep(const EnsembleSpec& spec,
                                             const std::vector<double>& u_values);

struct LengthSweepRow {
  int num_cells = 0;
  double min_coin_mean = 0.0;
  double min_coin_lower = 0.0;
  double min_coin_upper = 0.0;
  double min_of_mean_curve = 0.0;
  int exclusions = 0;
};

std::vector<LengthSweepRow> length_sweep(const EnsembleSpec& spec,
                                         const std::vector<int>& lengths);

}  // namespace crowsim
