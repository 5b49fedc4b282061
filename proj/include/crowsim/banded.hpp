#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Complex banded LU with partial pivoting, LAPACK-style band storage.
// The steady-state solves are many small banded systems (bandwidth 3 for
// the helical lattice, 1 for the regular chain), where this beats a dense
// factorization by the usual O((n/b)^2).
//
// Entry (i, j) of an n x n matrix with kl sub- and ku superdiagonals lives
// at column j, row kl + ku + i - j of a (2kl+ku+1) x n column-major array;
// the extra kl rows on top absorb pivoting fill.

namespace crowsim {

class BandedMatrix {
 public:
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  std::complex<double>& ref(int i, int j) {
    return data_[static_cast<std::size_t>(j) * ld_ + (kl_ + ku_ + i - j)];
  }
  const std::complex<double>& ref(int i, int j) const {
    return data_[static_cast<std::size_t>(j) * ld_ + (kl_ + ku_ + i - j)];
  }

  // loads all entries of `dense` within the band; entries outside must be 0
  static BandedMatrix from_dense(const Eigen::MatrixXcd& dense, int kl, int ku);

  void add_to_diagonal(std::complex<double> z);

  // in-place factorization; returns false if a pivot falls below the
  // singularity threshold (n * eps * max|entry|)
  bool factor();
  bool factored() const { return factored_; }

  // solve A x = b after factor(); b is overwritten with x
  void solve_in_place(std::complex<double>* b) const;
  void solve_in_place(std::vector<std::complex<double>>& b) const {
    solve_in_place(b.data());
  }

 private:
  int n_, kl_, ku_, ld_;
  std::vector<std::complex<double>> data_;
  std::vector<int> pivot_;
  double max_abs_ = 0.0;
  bool factored_ = false;
};

}  // namespace crowsim
