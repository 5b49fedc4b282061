#include "crowsim/transport.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crowsim/banded.hpp"

namespace crowsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

struct PortSites {
  int drive = 0;
  int readout = 0;
  std::vector<int> coupled;  // all sites carrying kappa_ex (with multiplicity)
};

PortSites port_sites(const LatticeSpec& spec, Channel channel,
                     const PortConfig& pc) {
  const int L = spec.num_cells;
  if (pc.drive_cell < 1 || pc.drive_cell > L)
    throw std::invalid_argument("transport: drive_cell out of range");
  const int d = pc.drive_cell - 1;

  PortSites s;
  if (spec.kind == LatticeKind::RegularCrow) {
    s.drive = d;
    s.readout = L - 1;
    s.coupled = {s.drive, s.readout};
    return s;
  }
  const int off = channel == Channel::One ? 0 : 1;  // a or b sublattice
  s.drive = 2 * d + off;
  s.readout = 2 * (L - 1) + off;
  if (pc.footprint == CouplingFootprint::ActiveSublattice) {
    s.coupled = {s.drive, s.readout};
  } else {
    s.coupled = {2 * d, 2 * d + 1, 2 * (L - 1), 2 * (L - 1) + 1};
  }
  return s;
}

}  // namespace

FieldSpectrum solve_steady_state(const Hamiltonian& h, const LatticeSpec& spec,
                                 const FrequencyGrid& grid, Channel channel,
                                 const PortConfig& pc) {
  spec.validate();
  if (h.dim != spec.dim())
    throw std::invalid_argument("transport: Hamiltonian does not match spec");
  if (grid.count() < 3 || grid.spacing <= 0.0)
    throw std::invalid_argument("transport: invalid frequency grid");

  const int n = h.dim;
  const int nw = grid.count();
  const PortSites ports = port_sites(spec, channel, pc);
  const double root_kex = std::sqrt(2.0 * spec.kappa_ex);

  // omega-independent part: i H + K
  BandedMatrix base = BandedMatrix::from_dense(kI * h.matrix, h.bandwidth,
                                               h.bandwidth);
  base.add_to_diagonal(spec.kappa_in);
  for (int site : ports.coupled) base.ref(site, site) += spec.kappa_ex;

  FieldSpectrum fs;
  fs.grid = grid;
  fs.channel = channel;
  fs.site_fields = Eigen::MatrixXcd::Zero(n, nw);
  fs.p_out.assign(nw, 0.0);
  fs.reflection_amp.assign(nw, 0.0);
  fs.solved.assign(nw, 0);

  std::vector<std::complex<double>> x(n);
  for (int w = 0; w < nw; ++w) {
    BandedMatrix m = base;
    m.add_to_diagonal(-kI * grid.omega[w]);
    if (!m.factor()) {
      ++fs.failures;
      fs.p_out[w] = std::numeric_limits<double>::quiet_NaN();
      fs.reflection_amp[w] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    std::fill(x.begin(), x.end(), std::complex<double>{0.0, 0.0});
    x[ports.drive] = root_kex * pc.drive_amplitude;
    m.solve_in_place(x.data());

    for (int s = 0; s < n; ++s) fs.site_fields(s, w) = x[s];
    fs.p_out[w] = -root_kex * x[ports.readout];
    fs.reflection_amp[w] = pc.drive_amplitude - root_kex * x[ports.drive];
    fs.solved[w] = 1;
  }
  return fs;
}

std::vector<double> transmission(const FieldSpectrum& fs) {
  std::vector<double> t(fs.p_out.size());
  for (std::size_t w = 0; w < t.size(); ++w) t[w] = std::norm(fs.p_out[w]);
  return t;
}

std::vector<double> reflection(const FieldSpectrum& fs) {
  std::vector<double> r(fs.reflection_amp.size());
  for (std::size_t w = 0; w < r.size(); ++w)
    r[w] = std::norm(fs.reflection_amp[w]);
  return r;
}

DelayStatistic group_delay(const FieldSpectrum& fs) {
  const int nw = fs.grid.count();
  const double dw = fs.grid.spacing;

  double amax = 0.0;
  for (int w = 0; w < nw; ++w)
    if (fs.solved[w]) amax = std::max(amax, std::abs(fs.p_out[w]));
  const double floor = kDelayAmplitudeFloor * amax;

  std::vector<std::uint8_t> usable(nw, 0);
  std::vector<double> phase(nw, 0.0);
  double prev = 0.0;
  for (int w = 0; w < nw; ++w) {
    usable[w] = fs.solved[w] && std::abs(fs.p_out[w]) >= floor && floor > 0.0;
    const double raw = usable[w] ? std::arg(fs.p_out[w]) : prev;
    // unwrap: keep increments within (-pi, pi]
    phase[w] = w == 0 ? raw : phase[w - 1] + std::remainder(raw - prev, 2.0 * M_PI);
    prev = raw;
  }

  DelayStatistic d;
  d.tau.assign(nw, std::numeric_limits<double>::quiet_NaN());
  d.valid.assign(nw, 0);
  for (int w = 0; w < nw; ++w) {
    const int lo = std::max(0, w - 1);
    const int hi = std::min(nw - 1, w + 1);
    bool ok = true;
    for (int s = lo; s <= hi; ++s) ok = ok && usable[s];
    if (!ok) {
      ++d.excluded;
      continue;
    }
    d.tau[w] = (phase[hi] - phase[lo]) / ((hi - lo) * dw);
    d.valid[w] = 1;
  }
  const int z = fs.grid.zero_index();
  d.tau_zero = d.tau[z];
  d.tau_zero_valid = d.valid[z] != 0;
  return d;
}

std::vector<double> intensity_profile(const FieldSpectrum& fs, double omega) {
  const int w = fs.grid.index_of(omega);
  if (w < 0)
    throw std::invalid_argument("intensity_profile: omega not on the grid");
  if (!fs.solved[w])
    throw std::invalid_argument("intensity_profile: no solution at omega");
  std::vector<double> out(fs.site_fields.rows());
  for (std::size_t s = 0; s < out.size(); ++s)
    out[s] = std::norm(fs.site_fields(static_cast<int>(s), w));
  return out;
}

}  // namespace crowsim
