#pragma once

// Quaternions, dual numbers and dual quaternions over an exact or floating
// scalar field, together with the projective actions of dual quaternions on
// points and lines.

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <string>

#include "mbennett/error.hpp"
#include "mbennett/scalar.hpp"

namespace mbennett {

template <class S>
using Vec3 = std::array<S, 3>;

template <class S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {S(a[1] * b[2] - a[2] * b[1]), S(a[2] * b[0] - a[0] * b[2]),
          S(a[0] * b[1] - a[1] * b[0])};
}

template <class S>
S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return S(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

template <class S>
Vec3<S> operator+(const Vec3<S>& a, const Vec3<S>& b) {
  return {S(a[0] + b[0]), S(a[1] + b[1]), S(a[2] + b[2])};
}

template <class S>
Vec3<S> operator-(const Vec3<S>& a, const Vec3<S>& b) {
  return {S(a[0] - b[0]), S(a[1] - b[1]), S(a[2] - b[2])};
}

template <class S>
Vec3<S> operator*(const S& k, const Vec3<S>& a) {
  return {S(k * a[0]), S(k * a[1]), S(k * a[2])};
}

/// w + x i + y j + z k with i² = j² = k² = ijk = −1.
template <class S>
struct Quaternion {
  S w{0}, x{0}, y{0}, z{0};

  Quaternion() = default;
  Quaternion(S w_) : w(std::move(w_)) {}  // NOLINT: real scalars embed
  Quaternion(S w_, S x_, S y_, S z_)
      : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  static Quaternion pure(const Vec3<S>& v) { return {S(0), v[0], v[1], v[2]}; }

  Vec3<S> vec() const { return {x, y, z}; }
  Quaternion conj() const { return {w, S(-x), S(-y), S(-z)}; }
  S norm() const { return S(w * w + x * x + y * y + z * z); }
  bool is_zero(double tol = kDefaultTol) const {
    return mbennett::is_zero(w, tol) && mbennett::is_zero(x, tol) &&
           mbennett::is_zero(y, tol) && mbennett::is_zero(z, tol);
  }
  bool is_real(double tol = kDefaultTol) const {
    return mbennett::is_zero(x, tol) && mbennett::is_zero(y, tol) &&
           mbennett::is_zero(z, tol);
  }

  Quaternion inverse() const {
    const S n = norm();
    if (mbennett::is_zero(n, 0.0)) {
      throw Error(ErrorCode::kNotInvertible, "quaternion is zero");
    }
    const S k = S(1) / n;
    return {S(w * k), S(-x * k), S(-y * k), S(-z * k)};
  }

  Quaternion operator-() const { return {S(-w), S(-x), S(-y), S(-z)}; }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {S(a.w + b.w), S(a.x + b.x), S(a.y + b.y), S(a.z + b.z)};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {S(a.w - b.w), S(a.x - b.x), S(a.y - b.y), S(a.z - b.z)};
  }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {S(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z),
            S(a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y),
            S(a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x),
            S(a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w)};
  }
  friend Quaternion operator*(const S& k, const Quaternion& a) {
    return {S(k * a.w), S(k * a.x), S(k * a.y), S(k * a.z)};
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

template <class S>
S dot4(const Quaternion<S>& a, const Quaternion<S>& b) {
  return S(a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z);
}

template <class S>
bool approx_equal(const Quaternion<S>& a, const Quaternion<S>& b,
                  double tol = kDefaultTol) {
  return (a - b).is_zero(tol);
}

/// a + bε with ε² = 0.
template <class S>
struct DualNumber {
  S a{0}, b{0};

  friend DualNumber operator+(const DualNumber& u, const DualNumber& v) {
    return {S(u.a + v.a), S(u.b + v.b)};
  }
  friend DualNumber operator-(const DualNumber& u, const DualNumber& v) {
    return {S(u.a - v.a), S(u.b - v.b)};
  }
  friend DualNumber operator*(const DualNumber& u, const DualNumber& v) {
    return {S(u.a * v.a), S(u.a * v.b + u.b * v.a)};
  }
  friend bool operator==(const DualNumber& u, const DualNumber& v) {
    return u.a == v.a && u.b == v.b;
  }
};

/// p + εq. Serialized as (p.w, p.x, p.y, p.z, q.w, q.x, q.y, q.z).
template <class S>
struct DualQuaternion {
  Quaternion<S> primal;
  Quaternion<S> dual;

  DualQuaternion() = default;
  DualQuaternion(S real) : primal(std::move(real)) {}  // NOLINT: real scalars embed
  DualQuaternion(Quaternion<S> p) : primal(std::move(p)) {}  // NOLINT: ℍ ⊂ 𝔻ℍ
  DualQuaternion(Quaternion<S> p, Quaternion<S> q)
      : primal(std::move(p)), dual(std::move(q)) {}

  static DualQuaternion from_array(const std::array<S, 8>& c) {
    return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
  }
  std::array<S, 8> to_array() const {
    return {primal.w, primal.x, primal.y, primal.z,
            dual.w,   dual.x,   dual.y,   dual.z};
  }

  DualQuaternion conj() const { return {primal.conj(), dual.conj()}; }
  DualQuaternion eps_conj() const { return {primal, -dual}; }
  DualNumber<S> scalar_part() const { return {primal.w, dual.w}; }
  DualQuaternion vector_part() const {
    return {{S(0), primal.x, primal.y, primal.z}, {S(0), dual.x, dual.y, dual.z}};
  }

  /// h h̄ = p p̄ + ε(p q̄ + q p̄).
  DualNumber<S> norm() const {
    return {primal.norm(), S(2 * dot4(primal, dual))};
  }

  /// p⁻¹(1 − ε q p⁻¹).
  DualQuaternion inverse() const {
    if (primal.is_zero(0.0)) {
      throw Error(ErrorCode::kNotInvertible,
                  "dual quaternion with zero primal part is not invertible");
    }
    const Quaternion<S> pinv = primal.inverse();
    return {pinv, -(pinv * dual * pinv)};
  }

  bool is_zero(double tol = kDefaultTol) const {
    return primal.is_zero(tol) && dual.is_zero(tol);
  }
  /// True for a real scalar (no vector part, no dual part).
  bool is_real(double tol = kDefaultTol) const {
    return primal.is_real(tol) && dual.is_zero(tol);
  }

  DualQuaternion operator-() const { return {-primal, -dual}; }

  friend DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal + b.primal, a.dual + b.dual};
  }
  friend DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal - b.primal, a.dual - b.dual};
  }
  friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal * b.primal, a.primal * b.dual + a.dual * b.primal};
  }
  friend DualQuaternion operator*(const S& k, const DualQuaternion& a) {
    return {k * a.primal, k * a.dual};
  }
  friend bool operator==(const DualQuaternion& a, const DualQuaternion& b) {
    return a.primal == b.primal && a.dual == b.dual;
  }
};

template <class S>
bool approx_equal(const DualQuaternion<S>& a, const DualQuaternion<S>& b,
                  double tol = kDefaultTol) {
  return (a - b).is_zero(tol);
}

/// Study condition h₀h₄ + h₁h₅ + h₂h₆ + h₃h₇ = 0.
template <class S>
bool satisfies_study_condition(const DualQuaternion<S>& h, double tol = kDefaultTol) {
  return is_zero(dot4(h.primal, h.dual), tol);
}

template <class S>
DualQuaternion<double> as_double(const DualQuaternion<S>& h) {
  const auto c = h.to_array();
  std::array<double, 8> d{};
  for (int i = 0; i < 8; ++i) d[i] = to_double(c[i]);
  return DualQuaternion<double>::from_array(d);
}

/// Spatial line as a vectorial dual quaternion direction + ε·moment, with
/// moment = direction × point for any point on the line.
template <class S>
struct Line {
  Vec3<S> direction{};
  Vec3<S> moment{};

  static Line through(const Vec3<S>& point, const Vec3<S>& dir) {
    return {dir, cross(dir, point)};
  }
  static Line from_dual_quaternion(const DualQuaternion<S>& v) {
    return {v.primal.vec(), v.dual.vec()};
  }
  DualQuaternion<S> to_dual_quaternion() const {
    return {Quaternion<S>::pure(direction), Quaternion<S>::pure(moment)};
  }

  /// direction · moment; zero for a valid line.
  S plucker_residual() const { return dot(direction, moment); }

  bool has_direction(double tol = kDefaultTol) const {
    return !(is_zero(direction[0], tol) && is_zero(direction[1], tol) &&
             is_zero(direction[2], tol));
  }

  std::array<S, 6> coords() const {
    return {direction[0], direction[1], direction[2], moment[0], moment[1], moment[2]};
  }
};

/// Point of ℝ³ closest to the origin on `line` (requires a nonzero direction).
inline Vec3<double> closest_point_to_origin(const Line<double>& line) {
  const double n2 = dot(line.direction, line.direction);
  return (1.0 / n2) * cross(line.moment, line.direction);
}

/// Rescales a line so that its direction is a unit vector.
Line<double> normalized(const Line<double>& line);

template <class S>
Line<double> as_double(const Line<S>& line) {
  Line<double> out;
  for (int i = 0; i < 3; ++i) {
    out.direction[i] = to_double(line.direction[i]);
    out.moment[i] = to_double(line.moment[i]);
  }
  return out;
}

/// Projective equality: exact cross-multiplication for exact scalars, and
/// comparison of the unit-direction representatives (up to sign) otherwise.
template <class S>
bool projectively_equal(const Line<S>& a, const Line<S>& b, double tol = kDefaultTol) {
  if constexpr (ScalarTraits<S>::kExact) {
    const auto ca = a.coords();
    const auto cb = b.coords();
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        if (ca[i] * cb[j] != ca[j] * cb[i]) return false;
      }
    }
    return a.has_direction() && b.has_direction();
  } else {
    if (!a.has_direction(0.0) || !b.has_direction(0.0)) return false;
    const auto ca = normalized(as_double(a)).coords();
    const auto cb = normalized(as_double(b)).coords();
    double plus = 0.0;
    double minus = 0.0;
    for (int i = 0; i < 6; ++i) {
      plus = std::max(plus, std::abs(ca[i] - cb[i]));
      minus = std::max(minus, std::abs(ca[i] + cb[i]));
    }
    return std::min(plus, minus) <= tol;
  }
}

/// Homogeneous point x₀ + ε(x₁i + x₂j + x₃k).
template <class S>
struct PointH {
  S w{1};
  Vec3<S> x{};

  static PointH from_cartesian(const Vec3<S>& p) { return {S(1), p}; }
  Vec3<double> cartesian() const {
    const double w0 = to_double(w);
    return {to_double(x[0]) / w0, to_double(x[1]) / w0, to_double(x[2]) / w0};
  }
};

template <class S>
bool projectively_equal(const PointH<S>& a, const PointH<S>& b, double tol = kDefaultTol) {
  const std::array<S, 4> ca{a.w, a.x[0], a.x[1], a.x[2]};
  const std::array<S, 4> cb{b.w, b.x[0], b.x[1], b.x[2]};
  if constexpr (ScalarTraits<S>::kExact) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (ca[i] * cb[j] != ca[j] * cb[i]) return false;
    return true;
  } else {
    if (is_zero(a.w, 0.0) || is_zero(b.w, 0.0)) return false;
    const auto pa = a.cartesian();
    const auto pb = b.cartesian();
    for (int i = 0; i < 3; ++i)
      if (std::abs(pa[i] - pb[i]) > tol) return false;
    return true;
  }
}

namespace detail {
template <class S>
void require_displacement(const DualQuaternion<S>& h) {
  if (is_zero(h.primal.norm(), 0.0)) {
    throw Error(ErrorCode::kDegenerateDisplacement,
                "dual quaternion with zero primal norm does not act as a displacement");
  }
}
}  // namespace detail

/// x ↦ ε-conj(h) · x · conj(h), projectively.
template <class S>
PointH<S> act_on_point(const DualQuaternion<S>& h, const PointH<S>& x) {
  detail::require_displacement(h);
  const Quaternion<S>& p = h.primal;
  const Quaternion<S>& q = h.dual;
  const Quaternion<S> rotated = p * Quaternion<S>::pure(x.x) * p.conj();
  const Quaternion<S> shift = p * q.conj() - q * p.conj();
  return {S(x.w * p.norm()), rotated.vec() + x.w * shift.vec()};
}

/// r ↦ h · r · conj(h). With moments taken as direction × point this is the
/// line action induced by act_on_point.
template <class S>
Line<S> act_on_line(const DualQuaternion<S>& h, const Line<S>& r) {
  detail::require_displacement(h);
  return Line<S>::from_dual_quaternion(h * r.to_dual_quaternion() * h.conj());
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Quaternion<S>& q) {
  using T = ScalarTraits<S>;
  return os << "(" << T::to_string(q.w) << ", " << T::to_string(q.x) << ", "
            << T::to_string(q.y) << ", " << T::to_string(q.z) << ")";
}

template <class S>
std::ostream& operator<<(std::ostream& os, const DualQuaternion<S>& h) {
  return os << h.primal << " + e" << h.dual;
}

}  // namespace mbennett
