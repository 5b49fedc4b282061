#include "crowsim/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "crowsim/prng.hpp"
#include "crowsim/quantum.hpp"

namespace crowsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kHistogramBins = 50;

void parallel_for(int n, int parallelism, const std::function<void(int)>& fn) {
  int threads = parallelism > 0
                    ? parallelism
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> bail{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n || bail.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        bail.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct RealResult {
  bool excluded = false;
  std::uint64_t seed1 = 0;
  std::uint64_t seed2 = 0;
  std::vector<double> transmission;
  std::vector<double> reflection;
  std::vector<double> profile;
  std::vector<double> tau;
  std::vector<std::uint8_t> tau_valid;
  double tau_zero = kNaN;
  bool tau_zero_valid = false;
  std::vector<double> hom;
  double hom_min = kNaN;
  std::vector<double> noon_coin;
  double noon_coin_zero = kNaN;
  std::vector<double> noon_purity;
  double purity_zero = kNaN;
  std::vector<double> exp_entropy;
};

bool wants(const EnsembleSpec& es, Observable o) {
  return es.observables.count(o) != 0;
}

bool wants_quantum(const EnsembleSpec& es) {
  return wants(es, Observable::Hom) || wants(es, Observable::NoonCoincidence) ||
         wants(es, Observable::NoonPurity) || wants(es, Observable::NoonEntropy);
}

RealResult compute_realization(const EnsembleSpec& es, int index) {
  RealResult r;
  const LatticeSpec& lat = es.lattice;
  const bool quantum = wants_quantum(es);

  FieldSpectrum fs1, fs2;
  if (lat.kind == LatticeKind::HCrow) {
    // one physical device: both circulation channels see the same rings
    const std::uint64_t seed = derive_seed(es.master_seed, index, 0);
    r.seed1 = r.seed2 = seed;
    const DisorderRealization dis = sample_disorder(lat, seed);
    const Hamiltonian h1 = build_hamiltonian(lat, Circulation::Ccw, &dis);
    fs1 = solve_steady_state(h1, lat, es.grid, Channel::One, es.ports);
    if (quantum) {
      const Hamiltonian h2 = build_hamiltonian(lat, Circulation::Cw, &dis);
      fs2 = solve_steady_state(h2, lat, es.grid, Channel::Two, es.ports);
    }
  } else {
    // a pair of regular chains with independent disorder, one per photon
    r.seed1 = derive_seed(es.master_seed, index, 0);
    r.seed2 = derive_seed(es.master_seed, index, 1);
    const DisorderRealization d1 = sample_disorder(lat, r.seed1);
    const Hamiltonian h1 = build_hamiltonian(lat, Circulation::Ccw, &d1);
    fs1 = solve_steady_state(h1, lat, es.grid, Channel::One, es.ports);
    if (quantum) {
      const DisorderRealization d2 = sample_disorder(lat, r.seed2);
      const Hamiltonian h2 = build_hamiltonian(lat, Circulation::Ccw, &d2);
      fs2 = solve_steady_state(h2, lat, es.grid, Channel::Two, es.ports);
    }
  }

  if (fs1.failures > 0 || (quantum && fs2.failures > 0)) {
    r.excluded = true;
    return r;
  }

  if (wants(es, Observable::Transmission)) r.transmission = transmission(fs1);
  if (wants(es, Observable::Reflection)) r.reflection = reflection(fs1);
  if (wants(es, Observable::Profile)) r.profile = intensity_profile(fs1, 0.0);
  if (wants(es, Observable::Delay)) {
    DelayStatistic d = group_delay(fs1);
    r.tau = std::move(d.tau);
    r.tau_valid = std::move(d.valid);
    r.tau_zero = d.tau_zero;
    r.tau_zero_valid = d.tau_zero_valid;
  }

  if (quantum) {
    PortPair ports;
    ports.grid = es.grid;
    ports.p1.resize(es.grid.count());
    ports.p2.resize(es.grid.count());
    for (int w = 0; w < es.grid.count(); ++w) {
      ports.p1[w] = es.envelope.amplitudes[w] * fs1.p_out[w];
      ports.p2[w] = es.envelope.amplitudes[w] * fs2.p_out[w];
    }
    const BeamSplitter bs = BeamSplitter::balanced();
    const auto& taus = es.tau_c_grid;

    if (wants(es, Observable::Hom)) {
      r.hom.resize(taus.size());
      r.hom_min = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < taus.size(); ++t) {
        ports.tau_c = taus[t];
        r.hom[t] = hom_coincidence(ports, bs);
        r.hom_min = std::min(r.hom_min, r.hom[t]);
      }
    }
    if (wants(es, Observable::NoonCoincidence)) {
      r.noon_coin.resize(taus.size());
      for (std::size_t t = 0; t < taus.size(); ++t) {
        ports.tau_c = taus[t];
        r.noon_coin[t] = noon_coincidence(ports);
      }
      ports.tau_c = 0.0;
      r.noon_coin_zero = noon_coincidence(ports);
    }
    if (wants(es, Observable::NoonPurity)) {
      r.noon_purity.resize(taus.size());
      for (std::size_t t = 0; t < taus.size(); ++t) {
        ports.tau_c = taus[t];
        r.noon_purity[t] = noon_purity(ports);
      }
      ports.tau_c = 0.0;
      r.purity_zero = noon_purity(ports);
    }
    if (wants(es, Observable::NoonEntropy)) {
      ports.tau_c = 0.0;
      r.exp_entropy.resize(es.noon_photons.size());
      for (std::size_t p = 0; p < es.noon_photons.size(); ++p)
        r.exp_entropy[p] = std::exp(entanglement_entropy(ports, es.noon_photons[p]));
    }
  }
  return r;
}

double percentile(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) return kNaN;
  if (n == 1) return sorted[0];
  const double rank = p / 100.0 * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

// column-wise statistics over rows; NaN entries are skipped per column
StatTable column_stats(const std::vector<const std::vector<double>*>& rows,
                       std::size_t width) {
  StatTable t;
  t.mean.assign(width, kNaN);
  t.stddev.assign(width, kNaN);
  t.lower.assign(width, kNaN);
  t.upper.assign(width, kNaN);
  t.count.assign(width, 0);
  std::vector<double> vals;
  for (std::size_t c = 0; c < width; ++c) {
    vals.clear();
    for (const auto* row : rows) {
      const double v = (*row)[c];
      if (!std::isnan(v)) vals.push_back(v);
    }
    t.count[c] = static_cast<int>(vals.size());
    if (vals.empty()) continue;
    double sum = 0.0;
    for (double v : vals) sum += v;
    const double mean = sum / static_cast<double>(vals.size());
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    const double var =
        vals.size() > 1 ? ss / static_cast<double>(vals.size() - 1) : 0.0;
    std::sort(vals.begin(), vals.end());
    t.mean[c] = mean;
    t.stddev[c] = std::sqrt(var);
    t.lower[c] = percentile(vals, 17.5);
    t.upper[c] = percentile(vals, 82.5);
  }
  return t;
}

Histogram make_histogram(const std::vector<double>& values, double lo,
                         double hi) {
  Histogram h;
  h.samples = static_cast<int>(values.size());
  if (hi <= lo) {  // degenerate range (e.g. zero-disorder ensembles)
    const double center = values.empty() ? 0.0 : values.front();
    lo = center - 0.5;
    hi = center + 0.5;
  }
  h.lo = lo;
  h.hi = hi;
  h.prob.assign(kHistogramBins, 0.0);
  h.density.assign(kHistogramBins, 0.0);
  if (values.empty()) return h;
  for (double v : values) {
    int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * kHistogramBins));
    b = std::clamp(b, 0, kHistogramBins - 1);
    h.prob[b] += 1.0;
  }
  const double width = (hi - lo) / kHistogramBins;
  for (int b = 0; b < kHistogramBins; ++b) {
    h.prob[b] /= static_cast<double>(values.size());
    h.density[b] = h.prob[b] / width;
  }
  return h;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

void EnsembleSpec::validate() const {
  lattice.validate();
  if (realizations < 1)
    throw std::invalid_argument("ensemble: realizations must be >= 1");
  if (grid.count() < 3 || grid.spacing <= 0.0)
    throw std::invalid_argument("ensemble: invalid frequency grid");
  if (static_cast<int>(envelope.amplitudes.size()) != grid.count())
    throw std::invalid_argument("ensemble: envelope does not match the grid");
  if (wants_quantum(*this) && tau_c_grid.empty())
    throw std::invalid_argument(
        "ensemble: tau_c_grid must be nonempty for quantum observables");
  for (int n : noon_photons)
    if (n < 1)
      throw std::invalid_argument("ensemble: noon_photons entries must be >= 1");
}

EnsembleSpec make_default_ensemble(const LatticeSpec& lattice) {
  EnsembleSpec es;
  es.lattice = lattice;
  es.grid = FrequencyGrid::symmetric(4.0 * lattice.hopping, 513);
  es.envelope = InputEnvelope::gaussian(es.grid, 0.5 * lattice.hopping);
  const double tau_max = 10.0 / es.envelope.sigma;
  es.tau_c_grid.resize(101);
  for (int i = 0; i < 101; ++i)
    es.tau_c_grid[i] = -tau_max + 2.0 * tau_max * i / 100.0;
  return es;
}

EnsembleSummary run_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  const int n = spec.realizations;

  std::vector<RealResult> results(n);
  parallel_for(n, spec.parallelism,
               [&](int i) { results[i] = compute_realization(spec, i); });

  EnsembleSummary s;
  s.realizations_requested = n;
  for (const auto& r : results)
    if (r.excluded) ++s.exclusions;
  s.realizations_used = n - s.exclusions;
  if (s.exclusions * 100 > n)
    throw NumericalError("ensemble: " + std::to_string(s.exclusions) + " of " +
                         std::to_string(n) +
                         " realizations failed to solve (budget is 1%)");

  auto gather = [&](auto member) {
    std::vector<const std::vector<double>*> rows;
    rows.reserve(results.size());
    for (const auto& r : results)
      if (!r.excluded && !(r.*member).empty()) rows.push_back(&(r.*member));
    return rows;
  };

  std::vector<std::vector<double>> db_rows;
  if (auto rows = gather(&RealResult::transmission); !rows.empty()) {
    s.transmission = column_stats(rows, spec.grid.count());
    // the conventional dB-domain average (Fig.-style curves are log means)
    db_rows.reserve(rows.size());
    std::vector<const std::vector<double>*> db_ptrs;
    for (const auto* row : rows) {
      std::vector<double> db(row->size());
      for (std::size_t w = 0; w < row->size(); ++w)
        db[w] = 10.0 * std::log10((*row)[w]);
      db_rows.push_back(std::move(db));
    }
    for (const auto& row : db_rows) db_ptrs.push_back(&row);
    s.transmission_db = column_stats(db_ptrs, spec.grid.count());
  }
  if (auto rows = gather(&RealResult::reflection); !rows.empty())
    s.reflection = column_stats(rows, spec.grid.count());
  if (auto rows = gather(&RealResult::profile); !rows.empty())
    s.profile = column_stats(rows, spec.lattice.dim());
  if (auto rows = gather(&RealResult::tau); !rows.empty())
    s.delay = column_stats(rows, spec.grid.count());
  if (auto rows = gather(&RealResult::hom); !rows.empty())
    s.hom = column_stats(rows, spec.tau_c_grid.size());
  if (auto rows = gather(&RealResult::noon_coin); !rows.empty())
    s.noon_coincidence = column_stats(rows, spec.tau_c_grid.size());
  if (auto rows = gather(&RealResult::noon_purity); !rows.empty())
    s.noon_purity = column_stats(rows, spec.tau_c_grid.size());
  if (auto rows = gather(&RealResult::exp_entropy); !rows.empty())
    s.noon_entropy = column_stats(rows, spec.noon_photons.size());

  if (!s.transmission.empty()) {
    s.mean_t0 = s.transmission.mean[spec.grid.zero_index()];
    s.mean_t0_db = 10.0 * std::log10(s.mean_t0);
    s.mean_db_t0 = s.transmission_db.mean[spec.grid.zero_index()];
  }

  std::vector<double> tau_zeros;
  std::vector<double> hom_mins;
  std::vector<double> noon_zeros;
  std::vector<double> purity_zeros;
  for (const auto& r : results) {
    if (r.excluded) continue;
    if (r.tau_zero_valid) tau_zeros.push_back(r.tau_zero);
    if (!std::isnan(r.hom_min)) hom_mins.push_back(r.hom_min);
    if (!std::isnan(r.noon_coin_zero)) noon_zeros.push_back(r.noon_coin_zero);
    if (!std::isnan(r.purity_zero)) purity_zeros.push_back(r.purity_zero);
  }

  if (!tau_zeros.empty()) {
    double ss = 0.0;
    for (double t : tau_zeros) ss += t * t;
    s.tau_rms = std::sqrt(ss / static_cast<double>(tau_zeros.size()));
    const auto [lo, hi] = std::minmax_element(tau_zeros.begin(), tau_zeros.end());
    s.delay_hist = make_histogram(tau_zeros, *lo, *hi);
  }
  if (!hom_mins.empty()) s.mean_min_coincidence = mean_of(hom_mins);
  if (!s.hom.empty())
    s.min_of_mean_coincidence =
        *std::min_element(s.hom.mean.begin(), s.hom.mean.end());
  if (!noon_zeros.empty()) s.noon_hist = make_histogram(noon_zeros, 0.0, 1.0);
  if (!purity_zeros.empty()) s.mean_purity_at_zero = mean_of(purity_zeros);

  const auto n2 = std::find(spec.noon_photons.begin(), spec.noon_photons.end(), 2);
  if (!s.noon_entropy.empty() && n2 != spec.noon_photons.end())
    s.mean_exp_entropy_n2 =
        s.noon_entropy.mean[n2 - spec.noon_photons.begin()];

  if (spec.keep_records) {
    s.records.reserve(n);
    for (int i = 0; i < n; ++i) {
      const auto& r = results[i];
      RealizationRecord rec;
      rec.index = i;
      rec.seed1 = r.seed1;
      rec.seed2 = r.seed2;
      rec.excluded = r.excluded;
      rec.t0 = r.transmission.empty() ? kNaN
                                      : r.transmission[spec.grid.zero_index()];
      rec.tau_zero = r.tau_zero;
      rec.tau_zero_valid = r.tau_zero_valid;
      rec.hom_min = r.hom_min;
      rec.noon_coin_zero = r.noon_coin_zero;
      rec.purity_zero = r.purity_zero;
      rec.exp_entropy_n2 = (n2 == spec.noon_photons.end() || r.exp_entropy.empty())
                               ? kNaN
                               : r.exp_entropy[n2 - spec.noon_photons.begin()];
      s.records.push_back(rec);
    }
  }
  return s;
}

std::vector<DisorderSweepRow> disorder_sweep(const EnsembleSpec& spec,
                                             const std::vector<double>& u_values) {
  std::vector<DisorderSweepRow> rows;
  rows.reserve(u_values.size());
  for (std::size_t p = 0; p < u_values.size(); ++p) {
    if (u_values[p] < 0.0)
      throw std::invalid_argument("disorder_sweep: U values must be >= 0");
    EnsembleSpec e = spec;
    e.lattice.disorder_std = u_values[p];
    e.master_seed = derive_seed(spec.master_seed, p, 2);
    e.observables = {Observable::Transmission};
    e.keep_records = false;
    const EnsembleSummary s = run_ensemble(e);
    DisorderSweepRow row;
    row.disorder_std = u_values[p];
    row.t0_mean = s.mean_t0;
    row.t0_db = s.mean_t0_db;
    row.t0_db_mean = s.mean_db_t0;
    row.t0_lower = s.transmission.lower[e.grid.zero_index()];
    row.t0_upper = s.transmission.upper[e.grid.zero_index()];
    row.exclusions = s.exclusions;
    rows.push_back(row);
  }
  return rows;
}

std::vector<LengthSweepRow> length_sweep(const EnsembleSpec& spec,
                                         const std::vector<int>& lengths) {
  std::vector<LengthSweepRow> rows;
  rows.reserve(lengths.size());
  for (std::size_t p = 0; p < lengths.size(); ++p) {
    if (lengths[p] < 2)
      throw std::invalid_argument("length_sweep: lengths must be >= 2");
    EnsembleSpec e = spec;
    e.lattice.num_cells = lengths[p];
    e.master_seed = derive_seed(spec.master_seed, p, 2);
    e.observables = {Observable::Hom};
    e.keep_records = true;
    const EnsembleSummary s = run_ensemble(e);

    std::vector<double> mins;
    for (const auto& rec : s.records)
      if (!rec.excluded) mins.push_back(rec.hom_min);
    std::sort(mins.begin(), mins.end());

    LengthSweepRow row;
    row.num_cells = lengths[p];
    row.min_coin_mean = s.mean_min_coincidence;
    row.min_coin_lower = percentile(mins, 17.5);
    row.min_coin_upper = percentile(mins, 82.5);
    row.min_of_mean_curve = s.min_of_mean_coincidence;
    row.exclusions = s.exclusions;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace crowsim
