#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

// Counter-based random number generation. Every draw is a pure function of
// (seed, counter), so disorder realizations can be sampled in any order on
// any number of threads and still come out bit-identical.
//
// Algorithm string, fixed for reproducibility across versions:
//   "philox4x32-10 / box-muller / splitmix64-derive v1"

namespace crowsim {

inline constexpr char kRngAlgorithm[] =
    "philox4x32-10 / box-muller / splitmix64-derive v1";

// splitmix64 finalizer (Vigna), used as the published seed-derivation hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// seed for work unit (index, stream) under a master seed. Depends only on
// the three arguments, never on execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                 std::uint64_t stream = 0) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (index + 0x9e3779b97f4a7c15ull));
  h = splitmix64(h ^ (stream + 0xd1b54a32d192ed03ull));
  return h;
}

// Philox4x32-10 block cipher RNG (Salmon, Moraes, Dror, Shaw, SC'11).
// 64-bit key, 64-bit block counter; 128 random bits per block.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t key) : key_(key) {}

  Block block(std::uint64_t counter) const {
    std::uint32_t x0 = static_cast<std::uint32_t>(counter);
    std::uint32_t x1 = static_cast<std::uint32_t>(counter >> 32);
    std::uint32_t x2 = 0;
    std::uint32_t x3 = 0;
    std::uint32_t k0 = static_cast<std::uint32_t>(key_);
    std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xd2511f53ull * x0;
      const std::uint64_t p1 = 0xcd9e8d57ull * x2;
      const std::uint32_t y0 = static_cast<std::uint32_t>(p1 >> 32) ^ x1 ^ k0;
      const std::uint32_t y1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t y2 = static_cast<std::uint32_t>(p0 >> 32) ^ x3 ^ k1;
      const std::uint32_t y3 = static_cast<std::uint32_t>(p0);
      x0 = y0;
      x1 = y1;
      x2 = y2;
      x3 = y3;
      k0 += 0x9e3779b9u;
      k1 += 0xbb67ae85u;
    }
    return {x0, x1, x2, x3};
  }

  // Two uniforms in the open interval (0,1) per block.
  std::array<double, 2> uniforms(std::uint64_t counter) const {
    const Block b = block(counter);
    const std::uint64_t u = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
    const std::uint64_t v = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
    constexpr double scale = 0x1p-53;
    return {(static_cast<double>(u >> 11) + 0.5) * scale,
            (static_cast<double>(v >> 11) + 0.5) * scale};
  }

  // Two independent N(0,1) draws per block (Box-Muller).
  std::array<double, 2> normals(std::uint64_t counter) const {
    const auto [u0, u1] = uniforms(counter);
    const double radius = std::sqrt(-2.0 * std::log(u0));
    const double angle = 2.0 * M_PI * u1;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::uint64_t key_;
};

// n i.i.d. N(0, stddev^2) draws; entry i comes from block i/2 of the stream.
inline std::vector<double> gaussian_vector(std::uint64_t seed, std::size_t n,
                                           double stddev) {
  Philox4x32 gen(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; i += 2) {
    const auto z = gen.normals(i / 2);
    out[i] = stddev * z[0];
    if (i + 1 < n) out[i + 1] = stddev * z[1];
  }
  return out;
}

}  // namespace crowsim
