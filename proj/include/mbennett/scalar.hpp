#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>

namespace mbennett {

using Rational = mpq_class;

/// Default tolerance for floating-point predicates on quantities scaled to
/// unit direction vectors.
inline constexpr double kDefaultTol = 1e-9;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
  static double from_int(long v) { return static_cast<double>(v); }
  static double parse(const std::string& text);
  static std::string to_string(double x);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static Rational from_int(long v) { return Rational(v); }
  // Accepts "p", "p/q", and finite decimals such as "-1.25" or "2e-3".
  static Rational parse(const std::string& text);
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <class S>
bool is_zero(const S& x, double tol = kDefaultTol) {
  return ScalarTraits<S>::is_zero(x, tol);
}

template <class S>
double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

/// A point of the projective line R ∪ {∞}.
template <class S>
class ExtParam {
 public:
  ExtParam() = default;  // ∞
  ExtParam(S value) : value_(std::move(value)) {}  // NOLINT: implicit by intent

  static ExtParam infinity() { return ExtParam(); }

  bool is_inf() const { return !value_.has_value(); }
  const S& value() const { return *value_; }

  friend bool operator==(const ExtParam& a, const ExtParam& b) {
    if (a.is_inf() || b.is_inf()) return a.is_inf() == b.is_inf();
    return *a.value_ == *b.value_;
  }

 private:
  std::optional<S> value_;
};

template <class S>
std::string to_string(const ExtParam<S>& p) {
  return p.is_inf() ? std::string("inf") : ScalarTraits<S>::to_string(p.value());
}

}  // namespace mbennett
