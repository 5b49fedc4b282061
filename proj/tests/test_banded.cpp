#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <complex>

#include "crowsim/banded.hpp"
#include "crowsim/prng.hpp"

using namespace crowsim;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

// random dense matrix whose entries vanish outside the band
MatrixXcd random_banded(int n, int kl, int ku, std::uint64_t seed) {
  Philox4x32 gen(seed);
  MatrixXcd m = MatrixXcd::Zero(n, n);
  std::uint64_t c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i - j > kl || j - i > ku) continue;
      const auto u = gen.uniforms(c++);
      m(i, j) = std::complex<double>(2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0);
    }
  return m;
}

}  // namespace

TEST_CASE("banded solve agrees with a dense LU on random instances") {
  for (int n : {1, 2, 3, 5, 8, 16}) {
    for (int bw : {0, 1, 3}) {
      const int kl = std::min(bw, n - 1);
      const MatrixXcd dense = random_banded(n, kl, kl, 1000 + n * 10 + bw);
      BandedMatrix banded = BandedMatrix::from_dense(dense, kl, kl);
      // keep the system comfortably nonsingular
      banded.add_to_diagonal({4.0, 1.0});
      MatrixXcd shifted = dense;
      shifted.diagonal().array() += std::complex<double>(4.0, 1.0);

      VectorXcd b(n);
      Philox4x32 gen(7 + n);
      for (int i = 0; i < n; ++i) {
        const auto u = gen.uniforms(i);
        b(i) = std::complex<double>(u[0], u[1]);
      }

      REQUIRE(banded.factor());
      std::vector<std::complex<double>> x(b.data(), b.data() + n);
      banded.solve_in_place(x);

      const VectorXcd x_dense = shifted.partialPivLu().solve(b);
      double err = 0.0;
      for (int i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - x_dense(i)));
      CHECK(err < 1e-10 * x_dense.norm());
    }
  }
}

TEST_CASE("pivoting handles a zero leading diagonal") {
  MatrixXcd m = MatrixXcd::Zero(3, 3);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(2, 2) = 1.0;
  BandedMatrix banded = BandedMatrix::from_dense(m, 1, 1);
  REQUIRE(banded.factor());
  std::vector<std::complex<double>> b = {1.0, 2.0, 3.0};
  banded.solve_in_place(b);
  CHECK(std::abs(b[0] - 2.0) < 1e-14);
  CHECK(std::abs(b[1] - 1.0) < 1e-14);
  CHECK(std::abs(b[2] - 3.0) < 1e-14);
}

TEST_CASE("singular matrices are reported, not solved") {
  MatrixXcd zero = MatrixXcd::Zero(2, 2);
  BandedMatrix banded = BandedMatrix::from_dense(zero, 1, 1);
  CHECK_FALSE(banded.factor());

  MatrixXcd rank1 = MatrixXcd::Zero(2, 2);
  rank1(0, 0) = 1.0;
  rank1(0, 1) = 1.0;
  rank1(1, 0) = 1.0;
  rank1(1, 1) = 1.0;
  BandedMatrix banded2 = BandedMatrix::from_dense(rank1, 1, 1);
  CHECK_FALSE(banded2.factor());
}

TEST_CASE("entries outside the declared band are rejected") {
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 3) = 1.0;
  CHECK_THROWS_AS(BandedMatrix::from_dense(m, 1, 1), std::invalid_argument);
}
