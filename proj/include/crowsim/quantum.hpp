#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "crowsim/grid.hpp"

// Two-photon observables built from a pair of output spectra. Everything
// reduces to three trapezoidal integrals on the shared grid:
//
//   n1 = int |p1|^2,  n2 = int |p2|^2,
//   o(tau_c) = int conj(p1) p2 exp(i omega tau_c)
//
// and the "2002"-state constituents A = n1^2, B = n2^2, C = o^2. The
// controlled delay tau_c acts on port 2 before the final beam splitter.

namespace crowsim {

struct PortPair {
  FrequencyGrid grid;
  std::vector<std::complex<double>> p1;  // channel-1 output, envelope applied
  std::vector<std::complex<double>> p2;
  double tau_c = 0.0;                    // units of 1/J
};

struct BeamSplitter {
  double t = 0.0;
  double r = 0.0;

  BeamSplitter(double t_, double r_);  // enforces t^2 + r^2 = 1
  static BeamSplitter balanced();
};

// 3x3 density matrix in the two-photon basis {|20>, |11>, |02>}
struct TwoPhotonDensityMatrix {
  enum class Stage { BeforeBS, AfterBS };
  double A = 0.0;             // population of |20> (times A+B)
  double B = 0.0;
  std::complex<double> C;     // |20><02| coherence (times A+B)
  Eigen::Matrix3cd matrix;    // normalized, trace 1
  Stage stage = Stage::BeforeBS;
};

// quadrature helpers (exposed for tests and the ensemble layer)
double port_norm(const FrequencyGrid& grid,
                 const std::vector<std::complex<double>>& p);
std::complex<double> port_overlap(const FrequencyGrid& grid,
                                  const std::vector<std::complex<double>>& p1,
                                  const std::vector<std::complex<double>>& p2,
                                  double tau_c);

// Coincidence probability for a separable |11> input interfering on the
// beam splitter: t^4 + r^4 - 2 t^2 r^2 * I with spectral indistinguishability
// I = |o|^2 / (n1 n2). Balanced splitters give (1 - I)/2.
double hom_coincidence(const PortPair& ports, const BeamSplitter& bs);

// V = sqrt(1 - 2 P_coin), defined for P_coin <= 1/2
double hom_visibility(double p_coin);

// N00N (N = 2) output state before the final beam splitter
TwoPhotonDensityMatrix noon_density_matrix(const PortPair& ports);

// symmetric-subspace two-photon unitary of the splitter, basis {20,11,02}
Eigen::Matrix3cd two_photon_unitary(const BeamSplitter& bs);

TwoPhotonDensityMatrix apply_beam_splitter(const TwoPhotonDensityMatrix& rho,
                                           const BeamSplitter& bs);

// coincidence after the balanced splitter: (1 + 2 Re C / (A+B)) / 2
double noon_coincidence(const PortPair& ports);

// Tr[rho^2] in [1/2, 1]; independent of the beam splitter
double noon_purity(const PortPair& ports);

// Von Neumann entropy (nats) of one output port of an N-photon N00N state,
// S = -x ln x - (1-x) ln(1-x) with x = n1^N / (n1^N + n2^N). Independent of
// tau_c. exp(S) runs from 1 (separable) to 2 (maximally entangled).
double entanglement_entropy(const PortPair& ports, int num_photons);

}  // namespace crowsim
