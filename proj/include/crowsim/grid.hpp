#pragma once

#include <complex>
#include <vector>

namespace crowsim {

// Uniform frequency grid, symmetric about 0 (odd point count so omega = 0
// is a grid point). Units of J throughout.
struct FrequencyGrid {
  std::vector<double> omega;
  double spacing = 0.0;

  int count() const { return static_cast<int>(omega.size()); }
  int zero_index() const { return count() / 2; }

  // index of `w` if it is a grid point (to 1e-9 * spacing), else -1
  int index_of(double w) const;

  // count odd >= 3, covering [-omega_max, +omega_max]
  static FrequencyGrid symmetric(double omega_max, int count);
};

// Spectral envelope of the input wavepacket, amplitudes on a FrequencyGrid.
// The Gaussian form is exp(-omega^2 / 2 sigma^2), peak 1 at omega = 0.
struct InputEnvelope {
  double sigma = 0.5;
  std::vector<std::complex<double>> amplitudes;

  static InputEnvelope gaussian(const FrequencyGrid& grid, double sigma);
};

}  // namespace crowsim
