#include "crowsim/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace crowsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_ports(const PortPair& ports) {
  const std::size_t n = ports.grid.omega.size();
  if (n < 2 || ports.p1.size() != n || ports.p2.size() != n)
    throw std::invalid_argument("ports: vectors do not share the grid");
}

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double port_norm(const FrequencyGrid& grid,
                 const std::vector<std::complex<double>>& p) {
  const int n = grid.count();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::norm(p[i]);
  }
  return s * grid.spacing;
}

std::complex<double> port_overlap(const FrequencyGrid& grid,
                                  const std::vector<std::complex<double>>& p1,
                                  const std::vector<std::complex<double>>& p2,
                                  double tau_c) {
  const int n = grid.count();
  std::complex<double> s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::conj(p1[i]) * p2[i] *
         std::exp(kI * grid.omega[i] * tau_c);
  }
  return s * grid.spacing;
}

BeamSplitter::BeamSplitter(double t_, double r_) : t(t_), r(r_) {
  if (t < 0.0 || t > 1.0 || r < 0.0 || r > 1.0 ||
      std::abs(t * t + r * r - 1.0) > 1e-12)
    throw std::invalid_argument("BeamSplitter: need t^2 + r^2 = 1");
}

BeamSplitter BeamSplitter::balanced() {
  return BeamSplitter(M_SQRT1_2, M_SQRT1_2);
}

double hom_coincidence(const PortPair& ports, const BeamSplitter& bs) {
  check_ports(ports);
  const double n1 = port_norm(ports.grid, ports.p1);
  const double n2 = port_norm(ports.grid, ports.p2);
  if (!(n1 > 0.0) || !(n2 > 0.0))
    throw std::invalid_argument("hom_coincidence: zero-norm port");
  const std::complex<double> o =
      port_overlap(ports.grid, ports.p1, ports.p2, ports.tau_c);
  const double indist = std::min(1.0, std::norm(o) / (n1 * n2));
  const double t2 = bs.t * bs.t;
  const double r2 = bs.r * bs.r;
  return t2 * t2 + r2 * r2 - 2.0 * t2 * r2 * indist;
}

double hom_visibility(double p_coin) {
  if (p_coin > 0.5)
    throw std::domain_error("hom_visibility: defined for P_coin <= 1/2");
  return std::sqrt(std::max(0.0, 1.0 - 2.0 * p_coin));
}

TwoPhotonDensityMatrix noon_density_matrix(const PortPair& ports) {
  check_ports(ports);
  const double n1 = port_norm(ports.grid, ports.p1);
  const double n2 = port_norm(ports.grid, ports.p2);
  const double A = n1 * n1;
  const double B = n2 * n2;
  if (!(A + B > 0.0))
    throw std::invalid_argument("noon_density_matrix: both ports are zero");
  const std::complex<double> o =
      port_overlap(ports.grid, ports.p1, ports.p2, ports.tau_c);
  const std::complex<double> C = o * o;

  TwoPhotonDensityMatrix rho;
  rho.A = A;
  rho.B = B;
  rho.C = C;
  rho.stage = TwoPhotonDensityMatrix::Stage::BeforeBS;
  rho.matrix = Eigen::Matrix3cd::Zero();
  rho.matrix(0, 0) = A / (A + B);
  rho.matrix(2, 2) = B / (A + B);
  rho.matrix(0, 2) = C / (A + B);
  rho.matrix(2, 0) = std::conj(C) / (A + B);
  return rho;
}

Eigen::Matrix3cd two_photon_unitary(const BeamSplitter& bs) {
  // one-photon creation operators transform with [[t, ir], [ir, t]];
  // take the tensor square and contract onto {|20>, |11>, |02>}
  Eigen::Matrix2cd u;
  u << bs.t, kI * bs.r, kI * bs.r, bs.t;
  Eigen::Matrix4cd uu = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          uu(2 * i + k, 2 * j + l) = u(i, j) * u(k, l);
  Eigen::Matrix<std::complex<double>, 4, 3> s =
      Eigen::Matrix<std::complex<double>, 4, 3>::Zero();
  s(0, 0) = 1.0;
  s(1, 1) = M_SQRT1_2;
  s(2, 1) = M_SQRT1_2;
  s(3, 2) = 1.0;
  return s.adjoint() * uu * s;
}

TwoPhotonDensityMatrix apply_beam_splitter(const TwoPhotonDensityMatrix& rho,
                                           const BeamSplitter& bs) {
  if (rho.stage != TwoPhotonDensityMatrix::Stage::BeforeBS)
    throw std::invalid_argument("apply_beam_splitter: state already split");
  const Eigen::Matrix3cd u2 = two_photon_unitary(bs);
  TwoPhotonDensityMatrix out = rho;
  out.matrix = u2 * rho.matrix * u2.adjoint();
  out.stage = TwoPhotonDensityMatrix::Stage::AfterBS;
  return out;
}

double noon_coincidence(const PortPair& ports) {
  check_ports(ports);
  const double n1 = port_norm(ports.grid, ports.p1);
  const double n2 = port_norm(ports.grid, ports.p2);
  const double A = n1 * n1;
  const double B = n2 * n2;
  if (!(A + B > 0.0))
    throw std::invalid_argument("noon_coincidence: both ports are zero");
  const std::complex<double> o =
      port_overlap(ports.grid, ports.p1, ports.p2, ports.tau_c);
  const std::complex<double> C = o * o;
  return 0.5 * (1.0 + (C + std::conj(C)).real() / (A + B));
}

double noon_purity(const PortPair& ports) {
  check_ports(ports);
  const double n1 = port_norm(ports.grid, ports.p1);
  const double n2 = port_norm(ports.grid, ports.p2);
  if (!(n1 * n1 + n2 * n2 > 0.0))
    throw std::invalid_argument("noon_purity: both ports are zero");
  const std::complex<double> o =
      port_overlap(ports.grid, ports.p1, ports.p2, ports.tau_c);
  const double o2 = std::norm(o);
  const double num = o2 * o2 - (n1 * n2) * (n1 * n2);
  const double den = n1 * n1 + n2 * n2;
  return 1.0 + 2.0 * num / (den * den);
}

double entanglement_entropy(const PortPair& ports, int num_photons) {
  check_ports(ports);
  if (num_photons < 1)
    throw std::invalid_argument("entanglement_entropy: num_photons must be >= 1");
  const double n1 = port_norm(ports.grid, ports.p1);
  const double n2 = port_norm(ports.grid, ports.p2);
  const double a = std::pow(n1, num_photons);
  const double b = std::pow(n2, num_photons);
  if (!(a + b > 0.0))
    throw std::invalid_argument("entanglement_entropy: both ports are zero");
  const double x = a / (a + b);
  return -xlnx(x) - xlnx(1.0 - x);
}

}  // namespace crowsim
