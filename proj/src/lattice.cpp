#include "crowsim/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "crowsim/prng.hpp"

namespace crowsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

void LatticeSpec::validate() const {
  if (num_cells < 1)
    throw std::invalid_argument("lattice: num_cells must be >= 1");
  if (!(hopping > 0.0))
    throw std::invalid_argument("lattice: hopping J must be > 0");
  if (kappa_ex < 0.0)
    throw std::invalid_argument("lattice: kappa_ex must be >= 0");
  if (kappa_in < 0.0)
    throw std::invalid_argument("lattice: kappa_in must be >= 0");
  if (disorder_std < 0.0)
    throw std::invalid_argument("lattice: disorder_std must be >= 0");
}

DisorderRealization sample_disorder(const LatticeSpec& spec,
                                    std::uint64_t seed) {
  spec.validate();
  DisorderRealization d;
  d.seed = seed;
  d.detunings = gaussian_vector(seed, static_cast<std::size_t>(spec.dim()),
                                spec.disorder_std);
  return d;
}

Hamiltonian build_hamiltonian(const LatticeSpec& spec, Circulation circ,
                              const DisorderRealization* disorder) {
  spec.validate();
  const int n = spec.dim();
  if (disorder && static_cast<int>(disorder->detunings.size()) != n)
    throw std::invalid_argument(
        "build_hamiltonian: disorder vector has " +
        std::to_string(disorder->detunings.size()) + " entries, lattice has " +
        std::to_string(n) + " sites");

  const double J = spec.hopping;
  Hamiltonian h;
  h.dim = n;
  h.circulation = circ;
  h.matrix = Eigen::MatrixXcd::Zero(n, n);

  if (spec.kind == LatticeKind::RegularCrow) {
    h.bandwidth = 1;
    for (int s = 0; s + 1 < n; ++s) {
      h.matrix(s, s + 1) = J;
      h.matrix(s + 1, s) = J;
    }
  } else {
    h.bandwidth = 3;
    const int L = spec.num_cells;
    const auto a = [](int cell) { return 2 * cell; };
    const auto b = [](int cell) { return 2 * cell + 1; };
    for (int c = 0; c < L; ++c) {
      // intra-leg hops: a_n -> a_{n+1} carries +iJ, the b leg the opposite
      if (c + 1 < L) {
        h.matrix(a(c), a(c + 1)) = kI * J;
        h.matrix(a(c + 1), a(c)) = -kI * J;
        h.matrix(b(c), b(c + 1)) = -kI * J;
        h.matrix(b(c + 1), b(c)) = kI * J;
      }
      // inter-leg: 2J within the cell, J to the neighboring cells' b sites
      h.matrix(a(c), b(c)) = 2.0 * J;
      h.matrix(b(c), a(c)) = 2.0 * J;
      if (c + 1 < L) {
        h.matrix(a(c), b(c + 1)) = J;
        h.matrix(b(c + 1), a(c)) = J;
        h.matrix(a(c + 1), b(c)) = J;
        h.matrix(b(c), a(c + 1)) = J;
      }
    }
  }

  // clockwise circulation sees the time-reversed (conjugated) hoppings
  if (circ == Circulation::Cw) h.matrix = h.matrix.conjugate().eval();

  if (disorder) {
    for (int s = 0; s < n; ++s) h.matrix(s, s) += disorder->detunings[s];
  }
  return h;
}

Eigen::Matrix2cd bloch_matrix(const LatticeSpec& spec, Circulation circ,
                              double k) {
  if (spec.kind != LatticeKind::HCrow)
    throw std::invalid_argument("bloch_matrix: only defined for HCrow");
  const double J = spec.hopping;
  const double dx = 2.0 * J * (1.0 + std::cos(k));
  const double dz = -2.0 * J * std::sin(k);
  Eigen::Matrix2cd m;
  m << dz, dx, dx, -dz;
  if (circ == Circulation::Cw) m = m.conjugate().eval();
  return m;
}

namespace {

// analytic branch velocities; the plus band 2*sqrt(2)*J*sqrt(1+cos k) equals
// 4J|cos(k/2)|, so its derivative flips sign across the cusp at k = pi
double hcrow_v_plus(double J, double k) {
  const double c = std::cos(0.5 * k);
  const double sign = c >= 0.0 ? 1.0 : -1.0;
  return -2.0 * J * std::sin(0.5 * k) * sign;
}

}  // namespace

BandStructure band_structure(const LatticeSpec& spec, int k_points) {
  spec.validate();
  if (k_points < 2)
    throw std::invalid_argument("band_structure: k_points must be >= 2");

  BandStructure bs;
  bs.k.resize(k_points);
  bs.omega_plus.resize(k_points);
  bs.omega_minus.resize(k_points);
  bs.v_plus.resize(k_points);
  bs.v_minus.resize(k_points);

  const double J = spec.hopping;
  for (int i = 0; i < k_points; ++i) {
    const double k = 2.0 * M_PI * i / k_points;
    bs.k[i] = k;
    if (spec.kind == LatticeKind::HCrow) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
          bloch_matrix(spec, Circulation::Ccw, k));
      bs.omega_minus[i] = es.eigenvalues()(0);
      bs.omega_plus[i] = es.eigenvalues()(1);
      bs.v_plus[i] = hcrow_v_plus(J, k);
      bs.v_minus[i] = -bs.v_plus[i];
    } else {
      const double w = 2.0 * J * std::cos(k);
      bs.omega_plus[i] = w;
      bs.omega_minus[i] = w;
      bs.v_plus[i] = -2.0 * J * std::sin(k);
      bs.v_minus[i] = bs.v_plus[i];
    }
  }
  return bs;
}

double linearization_defect(const LatticeSpec& spec, double delta_k) {
  if (spec.kind != LatticeKind::HCrow)
    throw std::invalid_argument("linearization_defect: only defined for HCrow");
  if (std::abs(delta_k) > 0.5)
    throw std::invalid_argument("linearization_defect: |delta_k| must be <= 0.5");

  const double k = M_PI + delta_k;
  Eigen::Matrix4cd total = Eigen::Matrix4cd::Zero();
  total.block<2, 2>(0, 0) = bloch_matrix(spec, Circulation::Ccw, k);
  total.block<2, 2>(2, 2) = bloch_matrix(spec, Circulation::Cw, k);

  double defect = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) defect = std::max(defect, std::abs(total(i, j)));
  return defect;
}

}  // namespace crowsim
