#pragma once

// Polynomials in the central, commuting indeterminates t and s with dual
// quaternion coefficients.

#include <utility>
#include <vector>

#include "mbennett/dualquat.hpp"

namespace mbennett {

enum class Var { kT, kS };

inline char var_name(Var v) { return v == Var::kT ? 't' : 's'; }

/// Σ cᵢ uⁱ in a single indeterminate u ∈ {t, s}.
template <class S>
struct UniPoly {
  using DQ = DualQuaternion<S>;

  Var var = Var::kT;
  std::vector<DQ> coeffs;  // coeffs[i] multiplies uⁱ

  UniPoly() = default;
  UniPoly(Var v, std::vector<DQ> c) : var(v), coeffs(std::move(c)) { trim(); }

  /// u − c.
  static UniPoly linear(Var v, const DQ& c) { return UniPoly(v, {-c, DQ(S(1))}); }

  /// Real polynomial Σ rᵢ uⁱ.
  static UniPoly real(Var v, const std::vector<S>& r) {
    std::vector<DQ> c;
    c.reserve(r.size());
    for (const S& x : r) c.emplace_back(x);
    return UniPoly(v, std::move(c));
  }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  DQ coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[i] : DQ();
  }
  DQ leading() const { return coeffs.empty() ? DQ() : coeffs.back(); }

  /// Value at a point of ℝ ∪ {∞}; at ∞ this is the leading coefficient.
  DQ eval(const ExtParam<S>& u) const {
    if (u.is_inf()) return leading();
    DQ acc;
    for (int i = degree(); i >= 0; --i) acc = u.value() * acc + coeffs[i];
    return acc;
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back().is_zero(0.0)) coeffs.pop_back();
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.var == b.var && a.coeffs == b.coeffs;
  }
};

/// Dense bivariate polynomial Σ c_{ij} tⁱ sʲ.
template <class S>
class BiPoly {
 public:
  using DQ = DualQuaternion<S>;

  BiPoly() = default;

  static BiPoly constant(const DQ& c) {
    BiPoly p;
    p.set(0, 0, c);
    return p;
  }

  /// v − c.
  static BiPoly linear(Var v, const DQ& c) {
    BiPoly p;
    p.set(0, 0, -c);
    if (v == Var::kT) {
      p.set(1, 0, DQ(S(1)));
    } else {
      p.set(0, 1, DQ(S(1)));
    }
    return p;
  }

  static BiPoly from_uni(const UniPoly<S>& u) {
    BiPoly p;
    for (int i = 0; i <= u.degree(); ++i) {
      if (u.var == Var::kT) {
        p.set(i, 0, u.coeffs[i]);
      } else {
        p.set(0, i, u.coeffs[i]);
      }
    }
    return p;
  }

  /// Degree in t; 0 for the zero polynomial.
  int deg_t() const { return rows_ == 0 ? 0 : rows_ - 1; }
  /// Degree in s; 0 for the zero polynomial.
  int deg_s() const { return cols_ == 0 ? 0 : cols_ - 1; }
  bool is_zero() const { return rows_ == 0; }

  /// Coefficient of tⁱ sʲ; zero outside the stored range.
  DQ coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_) return DQ();
    return data_[i * cols_ + j];
  }

  void set(int i, int j, const DQ& c) {
    if (i >= rows_ || j >= cols_) resize(std::max(rows_, i + 1), std::max(cols_, j + 1));
    data_[i * cols_ + j] = c;
    trim();
  }

  BiPoly conj() const {
    BiPoly out = *this;
    for (auto& c : out.data_) c = c.conj();
    return out;
  }

  /// Leading coefficient with respect to s, as a polynomial in t.
  UniPoly<S> lead_in_s() const {
    std::vector<DQ> c;
    for (int i = 0; i < rows_; ++i) c.push_back(coeff(i, deg_s()));
    return UniPoly<S>(Var::kT, std::move(c));
  }

  /// Leading coefficient with respect to t, as a polynomial in s.
  UniPoly<S> lead_in_t() const {
    std::vector<DQ> c;
    for (int j = 0; j < cols_; ++j) c.push_back(coeff(deg_t(), j));
    return UniPoly<S>(Var::kS, std::move(c));
  }

  /// Coefficient of tⁱ as a polynomial in s.
  UniPoly<S> t_coeff(int i) const {
    std::vector<DQ> c;
    for (int j = 0; j < cols_; ++j) c.push_back(coeff(i, j));
    return UniPoly<S>(Var::kS, std::move(c));
  }

  /// Coefficient of sʲ as a polynomial in t.
  UniPoly<S> s_coeff(int j) const {
    std::vector<DQ> c;
    for (int i = 0; i < rows_; ++i) c.push_back(coeff(i, j));
    return UniPoly<S>(Var::kT, std::move(c));
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    out.resize(std::max(a.rows_, b.rows_), std::max(a.cols_, b.cols_));
    for (int i = 0; i < out.rows_; ++i)
      for (int j = 0; j < out.cols_; ++j) out.at(i, j) = a.coeff(i, j) + b.coeff(i, j);
    out.trim();
    return out;
  }

  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    out.resize(std::max(a.rows_, b.rows_), std::max(a.cols_, b.cols_));
    for (int i = 0; i < out.rows_; ++i)
      for (int j = 0; j < out.cols_; ++j) out.at(i, j) = a.coeff(i, j) - b.coeff(i, j);
    out.trim();
    return out;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    if (a.is_zero() || b.is_zero()) return out;
    out.resize(a.rows_ + b.rows_ - 1, a.cols_ + b.cols_ - 1);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j)
        for (int k = 0; k < b.rows_; ++k)
          for (int l = 0; l < b.cols_; ++l)
            out.at(i + k, j + l) = out.at(i + k, j + l) + a.at(i, j) * b.at(k, l);
    out.trim();
    return out;
  }

  friend BiPoly operator*(const S& k, const BiPoly& a) {
    BiPoly out = a;
    for (auto& c : out.data_) c = k * c;
    out.trim();
    return out;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  DQ& at(int i, int j) { return data_[i * cols_ + j]; }
  const DQ& at(int i, int j) const { return data_[i * cols_ + j]; }

  void resize(int rows, int cols) {
    std::vector<DQ> next(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows_ && i < rows; ++i)
      for (int j = 0; j < cols_ && j < cols; ++j) next[i * cols + j] = at(i, j);
    rows_ = rows;
    cols_ = cols;
    data_ = std::move(next);
  }

  // Drops trailing all-zero rows and columns so (rows_-1, cols_-1) is the
  // bidegree.
  void trim() {
    auto row_zero = [&](int i) {
      for (int j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero(0.0)) return false;
      return true;
    };
    auto col_zero = [&](int j) {
      for (int i = 0; i < rows_; ++i)
        if (!at(i, j).is_zero(0.0)) return false;
      return true;
    };
    int rows = rows_;
    while (rows > 0 && row_zero(rows - 1)) --rows;
    if (rows == 0) {
      rows_ = cols_ = 0;
      data_.clear();
      return;
    }
    int cols = cols_;
    while (cols > 0 && col_zero(cols - 1)) --cols;
    if (rows != rows_ || cols != cols_) resize(rows, cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<DQ> data_;
};

template <class S>
bool approx_equal(const BiPoly<S>& a, const BiPoly<S>& b, double tol = kDefaultTol) {
  const int rows = std::max(a.deg_t(), b.deg_t());
  const int cols = std::max(a.deg_s(), b.deg_s());
  for (int i = 0; i <= rows; ++i)
    for (int j = 0; j <= cols; ++j)
      if (!approx_equal(a.coeff(i, j), b.coeff(i, j), tol)) return false;
  return true;
}

/// Polynomial equality: exact for exact scalars, coefficient-wise within
/// `tol` otherwise.
template <class S>
bool poly_equal(const BiPoly<S>& a, const BiPoly<S>& b, double tol = kDefaultTol) {
  if constexpr (ScalarTraits<S>::kExact) {
    return a == b;
  } else {
    return approx_equal(a, b, tol);
  }
}

template <class S>
BiPoly<S> pmul(const BiPoly<S>& a, const BiPoly<S>& b) {
  return a * b;
}

/// C · conj(C).
template <class S>
BiPoly<S> pnorm(const BiPoly<S>& c) {
  return c * c.conj();
}

/// Nonzero norm polynomial whose coefficients are all real.
template <class S>
bool is_motion_polynomial(const BiPoly<S>& c, double tol = kDefaultTol) {
  const BiPoly<S> n = pnorm(c);
  if (n.is_zero()) return false;
  bool nonzero = false;
  for (int i = 0; i <= n.deg_t(); ++i) {
    for (int j = 0; j <= n.deg_s(); ++j) {
      const auto k = n.coeff(i, j);
      if (!k.is_real(tol)) return false;
      if (!is_zero(k.primal.w, tol)) nonzero = true;
    }
  }
  return nonzero;
}

/// Value at (s, t) ∈ (ℝ ∪ {∞})². An infinite argument selects the leading
/// coefficient in that indeterminate; (∞, ∞) gives c_{deg_t, deg_s}.
template <class S>
DualQuaternion<S> peval(const BiPoly<S>& c, const ExtParam<S>& s, const ExtParam<S>& t) {
  if (s.is_inf() && t.is_inf()) return c.coeff(c.deg_t(), c.deg_s());
  if (s.is_inf()) return c.lead_in_s().eval(t);
  if (t.is_inf()) return c.lead_in_t().eval(s);
  DualQuaternion<S> acc;
  for (int i = c.deg_t(); i >= 0; --i) {
    acc = t.value() * acc + c.t_coeff(i).eval(s);
  }
  return acc;
}

/// τ ↦ (aτ + b)/(cτ + d).
template <class S>
struct MobiusMap {
  S a{1}, b{0}, c{0}, d{1};

  S determinant() const { return S(a * d - b * c); }
};

namespace detail {
template <class S>
std::vector<S> real_mul(const std::vector<S>& x, const std::vector<S>& y) {
  std::vector<S> out(x.size() + y.size() - 1, S(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

template <class S>
std::vector<S> real_pow(const std::vector<S>& x, int n) {
  std::vector<S> out{S(1)};
  for (int k = 0; k < n; ++k) out = real_mul(out, x);
  return out;
}
}  // namespace detail

/// Σ cᵢ (aτ + b)ⁱ (cτ + d)^{deg − i}.
template <class S>
UniPoly<S> reparametrize(const UniPoly<S>& poly, const MobiusMap<S>& mu) {
  if (is_zero(mu.determinant(), 0.0)) {
    throw Error(ErrorCode::kSingularMap, "Moebius map has ad - bc = 0");
  }
  const int n = poly.degree();
  if (n < 0) return poly;
  std::vector<DualQuaternion<S>> out(n + 1);
  const std::vector<S> num{mu.b, mu.a};
  const std::vector<S> den{mu.d, mu.c};
  for (int i = 0; i <= n; ++i) {
    const std::vector<S> w = detail::real_mul(detail::real_pow(num, i),
                                              detail::real_pow(den, n - i));
    for (std::size_t k = 0; k < w.size(); ++k) {
      out[k] = out[k] + w[k] * poly.coeffs[i];
    }
  }
  return UniPoly<S>(poly.var, std::move(out));
}

template <class S>
struct DivRem {
  BiPoly<S> quotient;
  BiPoly<S> remainder;
};

/// C = T·M + R with deg_t(R) < deg_t(M), for a real polynomial M in t.
template <class S>
DivRem<S> divrem_by_real(const BiPoly<S>& c, const UniPoly<S>& m) {
  if (m.is_zero()) throw Error(ErrorCode::kZeroDivisor, "division by the zero polynomial");
  if (m.var != Var::kT) {
    throw Error(ErrorCode::kInvalidInput, "divisor must be a polynomial in t");
  }
  for (const auto& k : m.coeffs) {
    if (!k.is_real(0.0)) throw Error(ErrorCode::kInvalidInput, "divisor must be real");
  }
  const int dm = m.degree();
  const S lead_inv = S(1) / m.leading().primal.w;
  BiPoly<S> q;
  BiPoly<S> r = c;
  while (!r.is_zero() && r.deg_t() >= dm) {
    const int shift = r.deg_t() - dm;
    BiPoly<S> step;
    for (int j = 0; j <= r.deg_s(); ++j) {
      const auto k = r.coeff(r.deg_t(), j);
      if (!k.is_zero(0.0)) step.set(shift, j, lead_inv * k);
    }
    const int top = r.deg_t();
    const int width = r.deg_s();
    q = q + step;
    r = r - step * BiPoly<S>::from_uni(m);
    // Rounding may leave tiny leading terms in floating point.
    for (int j = 0; j <= width && r.deg_t() >= top && !r.is_zero(); ++j) {
      r.set(top, j, DualQuaternion<S>());
    }
  }
  return {q, r};
}

}  // namespace mbennett
