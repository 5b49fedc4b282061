#include "crowsim/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace crowsim {

int FrequencyGrid::index_of(double w) const {
  if (omega.empty() || spacing <= 0.0) return -1;
  const double pos = (w - omega.front()) / spacing;
  const int i = static_cast<int>(std::lround(pos));
  if (i < 0 || i >= count()) return -1;
  return std::abs(omega[i] - w) <= 1e-9 * spacing ? i : -1;
}

FrequencyGrid FrequencyGrid::symmetric(double omega_max, int count) {
  if (!(omega_max > 0.0))
    throw std::invalid_argument("FrequencyGrid: omega_max must be > 0");
  if (count < 3 || count % 2 == 0)
    throw std::invalid_argument("FrequencyGrid: count must be odd and >= 3");
  FrequencyGrid g;
  g.spacing = 2.0 * omega_max / (count - 1);
  g.omega.resize(count);
  const int mid = count / 2;
  for (int i = 0; i < count; ++i) g.omega[i] = (i - mid) * g.spacing;
  return g;
}

InputEnvelope InputEnvelope::gaussian(const FrequencyGrid& grid, double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("InputEnvelope: sigma must be > 0");
  InputEnvelope env;
  env.sigma = sigma;
  env.amplitudes.resize(grid.count());
  for (int i = 0; i < grid.count(); ++i) {
    const double w = grid.omega[i];
    env.amplitudes[i] = std::exp(-w * w / (2.0 * sigma * sigma));
  }
  return env;
}

}  // namespace crowsim
