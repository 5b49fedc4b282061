#include "crowsim/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crowsim {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1) {
  if (n < 1 || kl < 0 || ku < 0)
    throw std::invalid_argument("BandedMatrix: bad dimensions");
  data_.assign(static_cast<std::size_t>(ld_) * n_, {0.0, 0.0});
  pivot_.assign(n_, 0);
}

BandedMatrix BandedMatrix::from_dense(const Eigen::MatrixXcd& dense, int kl,
                                      int ku) {
  const int n = static_cast<int>(dense.rows());
  if (dense.cols() != n)
    throw std::invalid_argument("BandedMatrix: matrix must be square");
  BandedMatrix b(n, kl, ku);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::complex<double> z = dense(i, j);
      if (z == 0.0) continue;
      if (i - j > kl || j - i > ku)
        throw std::invalid_argument("BandedMatrix: entry outside band");
      b.ref(i, j) = z;
      b.max_abs_ = std::max(b.max_abs_, std::abs(z));
    }
  }
  return b;
}

void BandedMatrix::add_to_diagonal(std::complex<double> z) {
  for (int j = 0; j < n_; ++j) {
    ref(j, j) += z;
    max_abs_ = std::max(max_abs_, std::abs(ref(j, j)));
  }
}

bool BandedMatrix::factor() {
  const double tol = static_cast<double>(n_) *
                     std::numeric_limits<double>::epsilon() * max_abs_;
  for (int j = 0; j < n_; ++j) {
    const int last_row = std::min(n_ - 1, j + kl_);
    const int last_col = std::min(n_ - 1, j + kl_ + ku_);

    int p = j;
    double best = std::abs(ref(j, j));
    for (int i = j + 1; i <= last_row; ++i) {
      const double v = std::abs(ref(i, j));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > tol)) {
      factored_ = false;
      return false;
    }
    pivot_[j] = p;
    if (p != j) {
      for (int c = j; c <= last_col; ++c) std::swap(ref(j, c), ref(p, c));
    }

    const std::complex<double> d = ref(j, j);
    for (int i = j + 1; i <= last_row; ++i) {
      const std::complex<double> m = ref(i, j) / d;
      ref(i, j) = m;
      if (m == 0.0) continue;
      for (int c = j + 1; c <= last_col; ++c) ref(i, c) -= m * ref(j, c);
    }
  }
  factored_ = true;
  return true;
}

void BandedMatrix::solve_in_place(std::complex<double>* b) const {
  if (!factored_) throw std::logic_error("BandedMatrix: solve before factor");
  for (int j = 0; j < n_; ++j) {
    if (pivot_[j] != j) std::swap(b[j], b[pivot_[j]]);
    const int last_row = std::min(n_ - 1, j + kl_);
    for (int i = j + 1; i <= last_row; ++i) b[i] -= ref(i, j) * b[j];
  }
  for (int j = n_ - 1; j >= 0; --j) {
    const int last_col = std::min(n_ - 1, j + kl_ + ku_);
    std::complex<double> s = b[j];
    for (int c = j + 1; c <= last_col; ++c) s -= ref(j, c) * b[c];
    b[j] = s / ref(j, j);
  }
}

}  // namespace crowsim
