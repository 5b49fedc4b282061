#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

// Tight-binding models of coupled-resonator optical waveguides.
//
// Two lattices are supported:
//   HCrow       - helical CROW: two legs (a, b) per unit cell with complex
//                 intra-leg hopping +/-iJ and real inter-leg hopping, giving
//                 sublattice-momentum locking at the band center.
//   RegularCrow - plain nearest-neighbor chain with real hopping J.
//
// Site ordering for HCrow is interleaved (a1, b1, a2, b2, ...), which keeps
// the Hamiltonian banded with bandwidth 3. All frequencies are detunings
// from the single-ring resonance, in units carried by the hopping J.

namespace crowsim {

enum class LatticeKind { HCrow, RegularCrow };
enum class Circulation { Ccw, Cw };

struct LatticeSpec {
  LatticeKind kind = LatticeKind::HCrow;
  int num_cells = 20;         // unit cells for HCrow, sites for RegularCrow
  double hopping = 1.0;       // J > 0; all other rates in units of J
  double kappa_ex = 0.5;      // external port coupling, >= 0
  double kappa_in = 0.1;      // intrinsic per-ring loss, >= 0
  double disorder_std = 0.0;  // U >= 0, Gaussian on-site detuning spread

  // number of ring sites: 2L for HCrow, L for RegularCrow
  int dim() const {
    return kind == LatticeKind::HCrow ? 2 * num_cells : num_cells;
  }

  // throws std::invalid_argument with a field-specific message
  void validate() const;
};

// One sampled vector of on-site detunings. Reproducible: the same
// (seed, spec) always gives the same bits.
struct DisorderRealization {
  std::uint64_t seed = 0;
  std::vector<double> detunings;  // one entry per ring site, units of J
};

struct Hamiltonian {
  int dim = 0;
  Circulation circulation = Circulation::Ccw;
  int bandwidth = 0;  // 3 for HCrow (interleaved order), 1 for RegularCrow
  Eigen::MatrixXcd matrix;
};

// Band structure on a uniform k-grid over [0, 2pi). omega arrays hold the
// numerically diagonalized Bloch eigenvalues; velocities are analytic.
// For HCrow the bands are omega_pm = +/- 2*sqrt(2)*J*sqrt(1+cos k) and meet
// in a cusp at k = pi, where the branch velocities are -2J (plus band) and
// +2J (minus band); together they cover the locked pair +/-2J.
// For RegularCrow there is a single band 2J cos k, duplicated in both slots.
struct BandStructure {
  std::vector<double> k;
  std::vector<double> omega_plus;
  std::vector<double> omega_minus;
  std::vector<double> v_plus;
  std::vector<double> v_minus;
};

DisorderRealization sample_disorder(const LatticeSpec& spec,
                                    std::uint64_t seed);

// Single-particle matrix of the lattice, open boundary conditions.
// Disorder (if non-null) must have spec.dim() entries and lands on the
// diagonal, identically for both circulation directions.
Hamiltonian build_hamiltonian(const LatticeSpec& spec, Circulation circ,
                              const DisorderRealization* disorder = nullptr);

// 2x2 Bloch matrix d(k).sigma of the clean HCrow, basis (a, b).
Eigen::Matrix2cd bloch_matrix(const LatticeSpec& spec, Circulation circ,
                              double k);

BandStructure band_structure(const LatticeSpec& spec, int k_points);

// Largest off-diagonal magnitude of the combined Ccw (+) Cw Bloch matrix at
// k = pi + delta_k, basis (ccw a, ccw b, cw a, cw b). Scales as delta_k^2.
double linearization_defect(const LatticeSpec& spec, double delta_k);

}  // namespace crowsim
