#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "crowsim/prng.hpp"
#include "crowsim/quantum.hpp"

using namespace crowsim;
using std::complex;

namespace {

constexpr complex<double> kI{0.0, 1.0};

PortPair gaussian_ports(double sigma, double tau_c, double center1 = 0.0,
                        double center2 = 0.0, int points = 513) {
  PortPair p;
  p.grid = FrequencyGrid::symmetric(4.0, points);
  p.p1.resize(points);
  p.p2.resize(points);
  for (int i = 0; i < points; ++i) {
    const double w = p.grid.omega[i];
    p.p1[i] = std::exp(-(w - center1) * (w - center1) / (2 * sigma * sigma));
    p.p2[i] = std::exp(-(w - center2) * (w - center2) / (2 * sigma * sigma));
  }
  p.tau_c = tau_c;
  return p;
}

// random complex spectra for property-style checks
PortPair random_ports(std::uint64_t seed, int points = 33) {
  Philox4x32 gen(seed);
  PortPair p;
  p.grid = FrequencyGrid::symmetric(4.0, points);
  p.p1.resize(points);
  p.p2.resize(points);
  std::uint64_t c = 0;
  for (int i = 0; i < points; ++i) {
    auto u = gen.uniforms(c++);
    p.p1[i] = complex<double>(2 * u[0] - 1, 2 * u[1] - 1);
    u = gen.uniforms(c++);
    p.p2[i] = complex<double>(2 * u[0] - 1, 2 * u[1] - 1);
  }
  const auto u = gen.uniforms(c++);
  p.tau_c = 8.0 * u[0] - 4.0;
  return p;
}

TwoPhotonDensityMatrix pure_noon_state(double theta) {
  TwoPhotonDensityMatrix rho;
  rho.A = 0.5;
  rho.B = 0.5;
  rho.C = 0.5 * std::exp(kI * theta);
  rho.stage = TwoPhotonDensityMatrix::Stage::BeforeBS;
  rho.matrix = Eigen::Matrix3cd::Zero();
  rho.matrix(0, 0) = 0.5;
  rho.matrix(2, 2) = 0.5;
  rho.matrix(0, 2) = rho.C;
  rho.matrix(2, 0) = std::conj(rho.C);
  return rho;
}

}  // namespace

TEST_CASE("balanced HOM matches the Gaussian closed form") {
  const double s = 0.5;
  const BeamSplitter bs = BeamSplitter::balanced();
  for (double tau : {-20.0, -3.0, -0.4, 0.0, 0.7, 2.0, 10.0, 20.0}) {
    const double expected = 0.5 * (1.0 - std::exp(-s * s * tau * tau / 2.0));
    CHECK(std::abs(hom_coincidence(gaussian_ports(s, tau), bs) - expected) <
          1e-6);
  }
  // identical photons, zero delay
  CHECK(hom_coincidence(gaussian_ports(s, 0.0), bs) < 1e-12);
  // delay far beyond the coherence time
  CHECK(hom_coincidence(gaussian_ports(s, 20.0), bs) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("general beam splitter limits") {
  const BeamSplitter bs(0.8, 0.6);
  // indistinguishable input: (t^2 - r^2)^2
  CHECK(hom_coincidence(gaussian_ports(0.5, 0.0), bs) ==
        doctest::Approx((0.64 - 0.36) * (0.64 - 0.36)).epsilon(1e-10));
  // distinguishable photons (disjoint spectra): t^4 + r^4
  PortPair disjoint = gaussian_ports(0.3, 0.0, -2.0, 2.0);
  CHECK(hom_coincidence(disjoint, bs) ==
        doctest::Approx(0.64 * 0.64 + 0.36 * 0.36).epsilon(1e-10));
}

TEST_CASE("beam splitter parameters are validated") {
  CHECK_THROWS_AS(BeamSplitter(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BeamSplitter(-M_SQRT1_2, M_SQRT1_2), std::invalid_argument);
  CHECK_NOTHROW(BeamSplitter(1.0, 0.0));
}

TEST_CASE("zero-norm ports are rejected") {
  PortPair p = gaussian_ports(0.5, 0.0);
  std::fill(p.p2.begin(), p.p2.end(), complex<double>(0.0));
  CHECK_THROWS_AS(hom_coincidence(p, BeamSplitter::balanced()),
                  std::invalid_argument);
  // single dark port is fine for the N00N state (separable limit)
  CHECK_NOTHROW(noon_density_matrix(p));
  std::fill(p.p1.begin(), p.p1.end(), complex<double>(0.0));
  CHECK_THROWS_AS(noon_density_matrix(p), std::invalid_argument);
  CHECK_THROWS_AS(noon_coincidence(p), std::invalid_argument);
  CHECK_THROWS_AS(noon_purity(p), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_entropy(p, 2), std::invalid_argument);
}

TEST_CASE("visibility") {
  CHECK(hom_visibility(0.0) == 1.0);
  CHECK(hom_visibility(0.5) == 0.0);
  CHECK(hom_visibility(0.375) == doctest::Approx(0.5));
  CHECK_THROWS_AS(hom_visibility(0.6), std::domain_error);
}

TEST_CASE("N00N density matrix structure") {
  const PortPair same = gaussian_ports(0.5, 0.0);
  const auto rho = noon_density_matrix(same);
  CHECK(rho.stage == TwoPhotonDensityMatrix::Stage::BeforeBS);
  CHECK(rho.A == doctest::Approx(rho.B).epsilon(1e-12));
  CHECK(std::abs(rho.C) == doctest::Approx(rho.A).epsilon(1e-12));
  CHECK(std::arg(rho.C) == doctest::Approx(0.0));

  // trace one, Hermitian, no |11> population before the splitter
  CHECK(std::abs(rho.matrix.trace() - 1.0) < 1e-12);
  CHECK((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(rho.matrix(1, i)) == 0.0);
    CHECK(std::abs(rho.matrix(i, 1)) == 0.0);
  }

  // disjoint spectra decohere the off-diagonal block
  const auto diag = noon_density_matrix(gaussian_ports(0.3, 0.0, -2.0, 2.0));
  CHECK(std::abs(diag.C) < 1e-12);
  CHECK(std::abs(diag.matrix(0, 2)) < 1e-12);
}

TEST_CASE("positivity and Holder bound on random spectra") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rho = noon_density_matrix(random_ports(seed));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rho.matrix);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    CHECK(rho.A * rho.B >= std::norm(rho.C) * (1.0 - 1e-12));
  }
}

TEST_CASE("Gaussian coherence decays with the controlled delay") {
  const double s = 0.5;
  for (double tau : {0.5, 1.0, 3.0}) {
    const auto rho = noon_density_matrix(gaussian_ports(s, tau));
    const double expected = std::exp(-s * s * tau * tau / 2.0);
    CHECK(std::abs(rho.C) / std::sqrt(rho.A * rho.B) ==
          doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("balanced two-photon unitary matches the contracted form") {
  const Eigen::Matrix3cd u2 = two_photon_unitary(BeamSplitter::balanced());
  Eigen::Matrix3cd ref;
  ref << 1.0, kI * M_SQRT2, -1.0, kI * M_SQRT2, 0.0, kI * M_SQRT2, -1.0,
      kI * M_SQRT2, 1.0;
  ref *= 0.5;
  CHECK((u2 - ref).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("two-photon unitary is unitary for any splitting ratio") {
  for (double t : {0.1, 0.5, M_SQRT1_2, 0.9, 1.0}) {
    const BeamSplitter bs(t, std::sqrt(1.0 - t * t));
    const Eigen::Matrix3cd u2 = two_photon_unitary(bs);
    CHECK((u2 * u2.adjoint() - Eigen::Matrix3cd::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("reversed HOM of a pure state gives (1 + cos theta)/2") {
  for (double theta : {0.0, 0.3, M_PI / 2, 2.0, M_PI}) {
    const auto after =
        apply_beam_splitter(pure_noon_state(theta), BeamSplitter::balanced());
    CHECK(after.stage == TwoPhotonDensityMatrix::Stage::AfterBS);
    CHECK(after.matrix(1, 1).real() ==
          doctest::Approx((1.0 + std::cos(theta)) / 2.0).epsilon(1e-12));
    CHECK(std::abs(after.matrix(1, 1).imag()) < 1e-14);
  }
  CHECK_THROWS_AS(
      apply_beam_splitter(
          apply_beam_splitter(pure_noon_state(0.0), BeamSplitter::balanced()),
          BeamSplitter::balanced()),
      std::invalid_argument);
}

TEST_CASE("after-splitter elements follow the closed forms") {
  for (std::uint64_t seed = 10; seed < 40; ++seed) {
    const PortPair ports = random_ports(seed);
    const auto before = noon_density_matrix(ports);
    const auto after = apply_beam_splitter(before, BeamSplitter::balanced());
    const double ab = before.A + before.B;
    const complex<double> c = before.C;
    const complex<double> r2020 =
        (before.A + before.B - c - std::conj(c)) / (4.0 * ab);
    const complex<double> r1111 =
        (before.A + before.B + c + std::conj(c)) / (2.0 * ab);
    CHECK(std::abs(after.matrix(0, 0) - r2020) < 1e-12);
    CHECK(std::abs(after.matrix(2, 2) - r2020) < 1e-12);
    CHECK(std::abs(after.matrix(0, 2) + r2020) < 1e-12);
    CHECK(std::abs(after.matrix(1, 1) - r1111) < 1e-12);
  }
}

TEST_CASE("direct coincidence equals the density-matrix route") {
  for (std::uint64_t seed = 100; seed < 400; ++seed) {
    const PortPair ports = random_ports(seed);
    const double direct = noon_coincidence(ports);
    const auto after = apply_beam_splitter(noon_density_matrix(ports),
                                           BeamSplitter::balanced());
    CHECK(std::abs(direct - after.matrix(1, 1).real()) < 1e-12);
    CHECK(direct >= -1e-12);
    CHECK(direct <= 1.0 + 1e-12);
  }
}

TEST_CASE("coincidence limits") {
  CHECK(noon_coincidence(gaussian_ports(0.5, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(noon_coincidence(gaussian_ports(0.3, 0.0, -2.0, 2.0)) ==
        doctest::Approx(0.5).epsilon(1e-9));
  // offset spectra put a phase 2 w0 tau on C; envelope decay damps the swing
  const double s = 0.5, w0 = 0.5;
  for (double tau : {0.25, 1.0, 2.5}) {
    const double expected =
        0.5 *
        (1.0 + std::cos(2.0 * w0 * tau) * std::exp(-s * s * tau * tau / 2.0));
    CHECK(noon_coincidence(gaussian_ports(s, tau, w0, w0)) ==
          doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("purity routes agree and stay within bounds") {
  for (std::uint64_t seed = 500; seed < 800; ++seed) {
    const PortPair ports = random_ports(seed);
    const double purity = noon_purity(ports);
    const auto rho = noon_density_matrix(ports);
    const double closed =
        (rho.A * rho.A + rho.B * rho.B + 2.0 * std::norm(rho.C)) /
        ((rho.A + rho.B) * (rho.A + rho.B));
    CHECK(std::abs(purity - closed) < 1e-12);
    const double trace2 = (rho.matrix * rho.matrix).trace().real();
    CHECK(std::abs(purity - trace2) < 1e-12);
    // unitary invariance
    const auto after = apply_beam_splitter(rho, BeamSplitter::balanced());
    CHECK(std::abs((after.matrix * after.matrix).trace().real() - purity) <
          1e-12);
    CHECK(purity >= 0.5 - 1e-12);
    CHECK(purity <= 1.0 + 1e-12);
  }
}

TEST_CASE("purity endpoints") {
  CHECK(noon_purity(gaussian_ports(0.5, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // equal intensities with zero overlap: maximally mixed two-level case
  CHECK(noon_purity(gaussian_ports(0.3, 0.0, -2.0, 2.0)) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("indistinguishability bounds the purity") {
  const BeamSplitter bs = BeamSplitter::balanced();
  for (std::uint64_t seed = 900; seed < 1100; ++seed) {
    const PortPair ports = random_ports(seed);
    const double eps = hom_coincidence(ports, bs);
    CHECK(noon_purity(ports) >= 1.0 - 4.0 * eps - 1e-12);
  }
  // near-identical ports: small coincidence forces near-unit purity
  PortPair p = gaussian_ports(0.5, 0.0);
  for (std::size_t i = 0; i < p.p2.size(); ++i) p.p2[i] *= 1.0 + 1e-4;
  const double eps = hom_coincidence(p, bs);
  CHECK(eps < 1e-6);
  CHECK(noon_purity(p) >= 1.0 - 4.0 * eps);
}

TEST_CASE("entanglement entropy of the reduced port state") {
  // equal intensities: maximal entanglement, exp(S) = 2
  const PortPair same = gaussian_ports(0.5, 0.0);
  CHECK(std::abs(std::exp(entanglement_entropy(same, 2)) - 2.0) < 1e-12);

  // dark second port: separable, S = 0
  PortPair dark = same;
  std::fill(dark.p2.begin(), dark.p2.end(), complex<double>(0.0));
  CHECK(entanglement_entropy(dark, 2) == 0.0);

  // 2:1 intensity ratio at N = 2: x = 4/5
  PortPair ratio = same;
  for (auto& v : ratio.p2) v *= M_SQRT1_2;  // |p2|^2 = |p1|^2 / 2
  const double expected = -0.8 * std::log(0.8) - 0.2 * std::log(0.2);
  CHECK(entanglement_entropy(ratio, 2) ==
        doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(entanglement_entropy(same, 0), std::invalid_argument);
}

TEST_CASE("entropy ignores the controlled delay") {
  for (double tau : {-5.0, 0.0, 1.0, 9.0}) {
    PortPair p = random_ports(1234);
    p.tau_c = tau;
    CHECK(entanglement_entropy(p, 2) ==
          entanglement_entropy(random_ports(1234), 2));
  }
}

TEST_CASE("exp(S) stays within [1, 2] on random spectra") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (int n : {1, 2, 3, 5}) {
      const double e = std::exp(entanglement_entropy(random_ports(seed), n));
      CHECK(e >= 1.0 - 1e-12);
      CHECK(e <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("observables converge under grid refinement") {
  const auto coarse = gaussian_ports(0.5, 3.0, 0.0, 0.0, 513);
  const auto fine = gaussian_ports(0.5, 3.0, 0.0, 0.0, 1025);
  const BeamSplitter bs = BeamSplitter::balanced();
  CHECK(std::abs(hom_coincidence(coarse, bs) - hom_coincidence(fine, bs)) <
        1e-6);
  CHECK(std::abs(noon_coincidence(coarse) - noon_coincidence(fine)) < 1e-6);
  CHECK(std::abs(noon_purity(coarse) - noon_purity(fine)) < 1e-6);
  CHECK(std::abs(entanglement_entropy(coarse, 2) -
                 entanglement_entropy(fine, 2)) < 1e-6);
}
