#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "crowsim/grid.hpp"
#include "crowsim/lattice.hpp"

// Frequency-domain steady state of a driven, lossy lattice. For each grid
// frequency the solver factors
//
//     (-i omega I + i H + K) x = sqrt(2 kappa_ex) e_drive
//
// where K is the diagonal damping matrix (kappa_in everywhere plus kappa_ex
// on the port sites). The sign convention is fixed by the single-resonator
// oracle: a site detuned by V resonates at omega = +V.
//
// Output and reflection amplitudes follow the input-output relations
//   p_out = -sqrt(2 kappa_ex) x_readout,
//   r     = p_in - sqrt(2 kappa_ex) x_drive            (p_in = 1).

namespace crowsim {

// Channel 1 drives and reads the a sublattice with the Ccw Hamiltonian;
// channel 2 uses the b sublattice with the Cw Hamiltonian. For RegularCrow
// the channel index only labels which of the two independent chains is
// meant; the solve itself is identical.
enum class Channel { One, Two };

// Where the external coupling kappa_ex attaches on the edge cells of an
// HCrow. ActiveSublattice couples only the driven/readout sublattice sites,
// which keeps R + T = 1 exact for lossless runs; EdgeCell couples all sites
// of the edge cells, in which case the untapped-sublattice ports carry away
// flux that R and T do not see.
enum class CouplingFootprint { ActiveSublattice, EdgeCell };

struct PortConfig {
  CouplingFootprint footprint = CouplingFootprint::ActiveSublattice;
  int drive_cell = 1;  // 1-based unit cell (site for RegularCrow) of input
  std::complex<double> drive_amplitude = 1.0;
};

struct FieldSpectrum {
  FrequencyGrid grid;
  Channel channel = Channel::One;
  Eigen::MatrixXcd site_fields;                  // dim x count
  std::vector<std::complex<double>> p_out;       // per omega
  std::vector<std::complex<double>> reflection_amp;
  std::vector<std::uint8_t> solved;              // per omega
  int failures = 0;
};

struct DelayStatistic {
  std::vector<double> tau;           // per omega, units of 1/J; NaN invalid
  std::vector<std::uint8_t> valid;   // amplitude above floor on the stencil
  double tau_zero = 0.0;             // tau at omega = 0
  bool tau_zero_valid = false;
  int excluded = 0;
};

// |p_out| floor below which the phase derivative is considered meaningless
inline constexpr double kDelayAmplitudeFloor = 1e-6;

FieldSpectrum solve_steady_state(const Hamiltonian& h, const LatticeSpec& spec,
                                 const FrequencyGrid& grid, Channel channel,
                                 const PortConfig& ports = {});

// T(omega) = |p_out|^2 and R(omega) = |reflection_amp|^2 for unit drive
std::vector<double> transmission(const FieldSpectrum& fs);
std::vector<double> reflection(const FieldSpectrum& fs);

// tau(omega) = d/domega of the unwrapped p_out phase (central differences;
// one-sided at the grid ends). Positive for a clean lattice.
DelayStatistic group_delay(const FieldSpectrum& fs);

// |x_site|^2 at a frequency that must lie on the grid
std::vector<double> intensity_profile(const FieldSpectrum& fs, double omega);

}  // namespace crowsim
