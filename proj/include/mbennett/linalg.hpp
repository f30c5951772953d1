#pragma once

// Dense Gauss-Jordan elimination with full pivoting over an exact or
// floating scalar field.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mbennett/scalar.hpp"

namespace mbennett {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, S(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const S& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<S> apply(const std::vector<S>& x) const {
    std::vector<S> out(rows_, S(0));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

template <class S>
struct LinearSolution {
  int rank = 0;
  bool consistent = false;
  std::vector<S> particular;              // free variables set to zero
  std::vector<std::vector<S>> nullspace;  // basis of {x : Ax = 0}
  double residual = 0.0;                  // max |A·particular − b|
};

/// Solves A x = b. For floating scalars a pivot counts as zero when it is
/// below `tol` times the largest entry of A.
template <class S>
LinearSolution<S> solve_linear(const Matrix<S>& a, const std::vector<S>& b,
                               double tol = kDefaultTol) {
  using T = ScalarTraits<S>;
  const int rows = a.rows();
  const int cols = a.cols();
  Matrix<S> m = a;
  std::vector<S> rhs = b;
  std::vector<int> col_of(cols);
  std::iota(col_of.begin(), col_of.end(), 0);

  double scale = 0.0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) scale = std::max(scale, std::abs(to_double(a(r, c))));
  const double pivot_tol = T::kExact ? 0.0 : tol * std::max(scale, 1.0);

  int rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    int pr = -1;
    int pc = -1;
    double best = pivot_tol;
    for (int r = rank; r < rows; ++r) {
      for (int c = rank; c < cols; ++c) {
        if (T::kExact) {
          if (!is_zero(m(r, c), 0.0)) {
            pr = r;
            pc = c;
            break;
          }
        } else {
          const double v = std::abs(to_double(m(r, c)));
          if (v > best) {
            best = v;
            pr = r;
            pc = c;
          }
        }
      }
      if (T::kExact && pr >= 0) break;
    }
    if (pr < 0) break;
    if (pr != rank) {
      for (int c = 0; c < cols; ++c) std::swap(m(pr, c), m(rank, c));
      std::swap(rhs[pr], rhs[rank]);
    }
    if (pc != rank) {
      for (int r = 0; r < rows; ++r) std::swap(m(r, pc), m(r, rank));
      std::swap(col_of[pc], col_of[rank]);
    }
    const S inv = S(1) / m(rank, rank);
    for (int c = rank; c < cols; ++c) m(rank, c) *= inv;
    rhs[rank] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || is_zero(m(r, rank), 0.0)) continue;
      const S f = m(r, rank);
      for (int c = rank; c < cols; ++c) m(r, c) -= f * m(rank, c);
      rhs[r] -= f * rhs[rank];
    }
  }

  LinearSolution<S> out;
  out.rank = rank;
  out.consistent = true;
  for (int r = rank; r < rows; ++r) {
    if (!is_zero(rhs[r], T::kExact ? 0.0 : tol * std::max(scale, 1.0))) out.consistent = false;
  }
  out.particular.assign(cols, S(0));
  for (int r = 0; r < rank; ++r) out.particular[col_of[r]] = rhs[r];
  for (int f = rank; f < cols; ++f) {
    std::vector<S> v(cols, S(0));
    v[col_of[f]] = S(1);
    for (int r = 0; r < rank; ++r) v[col_of[r]] = S(-m(r, f));
    out.nullspace.push_back(std::move(v));
  }
  const std::vector<S> ax = a.apply(out.particular);
  for (int r = 0; r < rows; ++r) {
    out.residual = std::max(out.residual, std::abs(to_double(S(ax[r] - b[r]))));
  }
  return out;
}

}  // namespace mbennett
