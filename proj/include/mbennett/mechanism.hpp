#pragma once

// The multi-Bennett 8R linkage: axis poses over the (s, t) configuration
// torus, the canonical construction, DH parameters, aligned configurations
// and Bennett sub-mechanisms.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbennett/factor.hpp"
#include "mbennett/geometry.hpp"

namespace mbennett {

/// Storage order of the eight axes (and of MechanismSpec coefficients).
enum class AxisId { kH, kL, kM, kN, kNp, kMp, kLp, kHp };

inline constexpr std::array<AxisId, 8> kStorageOrder{AxisId::kH,  AxisId::kL,  AxisId::kM,
                                                     AxisId::kN,  AxisId::kNp, AxisId::kMp,
                                                     AxisId::kLp, AxisId::kHp};

/// Joint order around the closed loop: the left chain H, L, M, N continues
/// into the right chain read backwards.
inline constexpr std::array<AxisId, 8> kLoopOrder{AxisId::kH,  AxisId::kL,  AxisId::kM,
                                                  AxisId::kN,  AxisId::kHp, AxisId::kLp,
                                                  AxisId::kMp, AxisId::kNp};

std::string_view axis_name(AxisId id);

inline int index_of(AxisId id) { return static_cast<int>(id); }

template <class S>
struct CanonicalParams {
  S h1, h2, h3, m2, m3, n0, n2, n3, mu, nu;

  std::array<S, 10> to_array() const { return {h1, h2, h3, m2, m3, n0, n2, n3, mu, nu}; }
  static CanonicalParams from_array(const std::array<S, 10>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
  }
  /// m₁ = h₁h₃m₂/(h₂m₃).
  S m1() const { return S(h1 * h3 * m2 / (h2 * m3)); }
};

inline constexpr std::array<const char*, 10> kCanonicalParamNames{
    "h1", "h2", "h3", "m2", "m3", "n0", "n2", "n3", "mu", "nu"};

template <class S>
struct MechanismSpec {
  using DQ = DualQuaternion<S>;

  std::array<DQ, 8> coeffs;  // storage order h, ℓ, m, n, n′, m′, ℓ′, h′
  std::optional<CanonicalParams<S>> canonical;

  static MechanismSpec from_pair(const AltFactorizationPair<S>& p) {
    return {{p.h(), p.l(), p.m(), p.n(), p.np(), p.mp(), p.lp(), p.hp()}, std::nullopt};
  }

  const DQ& operator[](AxisId id) const { return coeffs[index_of(id)]; }

  AltFactorizationPair<S> pair() const {
    using A = AxisId;
    return AltFactorizationPair<S>::make((*this)[A::kH], (*this)[A::kL], (*this)[A::kM],
                                         (*this)[A::kN], (*this)[A::kNp], (*this)[A::kMp],
                                         (*this)[A::kLp], (*this)[A::kHp]);
  }
  BiPoly<S> product() const { return pair().product; }
};

template <class S>
MechanismSpec<double> as_double(const MechanismSpec<S>& spec) {
  MechanismSpec<double> out;
  for (int i = 0; i < 8; ++i) out.coeffs[i] = as_double(spec.coeffs[i]);
  if (spec.canonical) {
    std::array<double, 10> p{};
    const auto a = spec.canonical->to_array();
    for (int i = 0; i < 10; ++i) p[i] = to_double(a[i]);
    out.canonical = CanonicalParams<double>::from_array(p);
  }
  return out;
}

template <class S>
struct ConfigPoint {
  ExtParam<S> s;
  ExtParam<S> t;
};

template <class S>
struct AxisFrame {
  std::array<Line<S>, 8> axes;  // storage order

  const Line<S>& operator[](AxisId id) const { return axes[index_of(id)]; }
  Line<S>& operator[](AxisId id) { return axes[index_of(id)]; }
};

template <class S>
AxisFrame<double> as_double(const AxisFrame<S>& frame) {
  AxisFrame<double> out;
  for (int i = 0; i < 8; ++i) out.axes[i] = as_double(frame.axes[i]);
  return out;
}

/// Axes in the zero configuration (∞, ∞): the vector parts of the factors.
template <class S>
AxisFrame<S> zero_config_axes(const MechanismSpec<S>& spec, double tol = kDefaultTol) {
  AxisFrame<S> out;
  for (int i = 0; i < 8; ++i) {
    out.axes[i] = Line<S>::from_dual_quaternion(spec.coeffs[i].vector_part());
    if (!out.axes[i].has_direction(ScalarTraits<S>::kExact ? 0.0 : tol)) {
      throw Error(ErrorCode::kDegenerateAxis,
                  "axis " + std::string(axis_name(kStorageOrder[i])) + " has zero direction");
    }
  }
  return out;
}

/// Values of the six moving factors at a configuration, in storage order of
/// their coefficients (h, ℓ, m, n′, m′, ℓ′); identity at ∞.
template <class S>
struct FactorValues {
  DualQuaternion<S> h, l, m, np, mp, lp;
};

template <class S>
FactorValues<S> factor_values(const MechanismSpec<S>& spec, const ConfigPoint<S>& p) {
  using DQ = DualQuaternion<S>;
  auto at = [](const ExtParam<S>& u, const DQ& c) {
    return u.is_inf() ? DQ(S(1)) : DQ(u.value()) - c;
  };
  using A = AxisId;
  return {at(p.t, spec[A::kH]),  at(p.s, spec[A::kL]),  at(p.t, spec[A::kM]),
          at(p.s, spec[A::kNp]), at(p.t, spec[A::kMp]), at(p.s, spec[A::kLp])};
}

/// Axes displaced by the partial products of both factorizations.
template <class S>
AxisFrame<S> pose_from_values(const MechanismSpec<S>& spec, const FactorValues<S>& v) {
  const AxisFrame<S> zero = zero_config_axes(spec);
  using A = AxisId;
  AxisFrame<S> out;
  try {
    const DualQuaternion<S> hl = v.h * v.l;
    const DualQuaternion<S> npmp = v.np * v.mp;
    out[A::kH] = zero[A::kH];
    out[A::kL] = act_on_line(v.h, zero[A::kL]);
    out[A::kM] = act_on_line(hl, zero[A::kM]);
    out[A::kN] = act_on_line(hl * v.m, zero[A::kN]);
    out[A::kNp] = zero[A::kNp];
    out[A::kMp] = act_on_line(v.np, zero[A::kMp]);
    out[A::kLp] = act_on_line(npmp, zero[A::kLp]);
    out[A::kHp] = act_on_line(npmp * v.lp, zero[A::kHp]);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateDisplacement) throw;
    throw Error(ErrorCode::kDegenerateConfiguration,
                std::string("configuration is degenerate: ") + e.what());
  }
  return out;
}

template <class S>
AxisFrame<S> axis_pose(const MechanismSpec<S>& spec, const ConfigPoint<S>& p) {
  return pose_from_values(spec, factor_values(spec, p));
}

/// Denominators that must not vanish for the canonical construction, in the
/// order they are checked.
template <class S>
std::vector<std::pair<std::string, S>> canonical_denominators(const CanonicalParams<S>& c) {
  const S delta = S(c.h2 * c.m3 *
                    ((c.h3 * c.m2 - c.h2 * c.m3) * (c.n2 * c.n2 - c.n3 * c.n3) +
                     2 * (c.h2 * c.m2 + c.h3 * c.m3) * c.n2 * c.n3));
  const S phi = S(c.h2 * c.m3 *
                  ((c.h3 * c.m2 - c.h2 * c.m3) * (c.n2 * c.n2 - c.n3 * c.n3) +
                   2 * c.n2 * c.n3 * (c.h2 * c.m2 + c.h3 * c.m3)));
  const S psi = S(4 * c.h2 * c.h2 * c.m2 * c.n3 * (c.m2 * c.n3 - c.m3 * c.n2) +
                  (c.h2 * c.h2 * c.m3 * c.m3 + c.h3 * c.h3 * c.m2 * c.m2) *
                      (c.n2 * c.n2 + c.n3 * c.n3) +
                  2 * c.h2 * c.h3 * c.m2 *
                      (2 * c.m2 * c.n2 * c.n3 - c.m3 * (c.n2 * c.n2 - c.n3 * c.n3)));
  return {{"nu", c.nu},
          {"h2", c.h2},
          {"m3", c.m3},
          {"h2*m3+h3*m2", S(c.h2 * c.m3 + c.h3 * c.m2)},
          {"Delta", delta},
          {"Phi", phi},
          {"Psi", psi}};
}

/// The multi-Bennett mechanism in canonical coordinates: every axis meets
/// the first coordinate axis perpendicularly in the zero configuration.
template <class S>
MechanismSpec<S> build_canonical(const CanonicalParams<S>& c, double tol = kDefaultTol) {
  for (const auto& [name, value] : canonical_denominators(c)) {
    if (is_zero(value, tol)) {
      throw Error(ErrorCode::kGenericityViolated, "canonical parameters make " + name + " vanish");
    }
  }
  using Q = Quaternion<S>;
  using DQ = DualQuaternion<S>;
  const S zero(0);
  const S r = S(c.h3 / c.h2);
  const S a = S(c.nu * c.h1 * c.m2 / c.h2);  // dual scale of h, h′
  const S k = S(c.nu * c.h1 * c.h3 * c.m2 / (c.h2 * c.m3));  // dual scale of m, m′

  const DQ h{Q(c.mu, zero, S(-c.nu * c.m2), S(-c.nu * c.m2 * r)),
             Q(zero, zero, S(a * c.h3), S(-a * c.h2))};
  const DQ m{Q(c.mu, zero, S(c.nu * c.m2), S(c.nu * c.m3)),
             Q(zero, zero, S(-k * c.m3), S(k * c.m2))};
  const DQ hp{Q(c.mu, zero, S(c.nu * c.m2), S(-c.nu * c.m2 * r)),
              Q(zero, zero, S(-a * c.h3), S(-a * c.h2))};
  const DQ mp{Q(c.mu, zero, S(-c.nu * c.m2), S(c.nu * c.m3)),
              Q(zero, zero, S(k * c.m3), S(k * c.m2))};

  const S delta = canonical_denominators(c)[4].second;
  const S big_a = S(c.h2 * c.m2 * c.n3 - c.h2 * c.m3 * c.n2 + c.h3 * c.m2 * c.n2 +
                    c.h3 * c.m3 * c.n3);
  const S big_b = S(2 * c.h2 * c.m2 * c.n3 - c.h2 * c.m3 * c.n2 + c.h3 * c.m2 * c.n2);
  const S lj = S((c.h2 * (c.m3 * c.n2 - 2 * c.m2 * c.n3) - c.h3 * c.m2 * c.n2) /
                 (c.h2 * c.m3 + c.h3 * c.m2));
  const S lj_d = S(c.h1 * c.n2 / delta * c.n3 * (c.h2 * c.m3 + c.h3 * c.m2) * big_a);
  const S lk_d = S(c.h1 * c.n2 / delta * big_a * big_b);
  const S nj_d = S(-c.h1 / delta * c.n3 * big_b * big_a);
  const S nk_d = S(c.h1 / delta * c.n2 * big_b * big_a);

  const DQ l{Q(c.n0, zero, lj, S(-c.n3)), Q(zero, zero, lj_d, S(-lk_d))};
  const DQ lp{Q(c.n0, zero, lj, c.n3), Q(zero, zero, lj_d, lk_d)};
  const DQ n{Q(c.n0, zero, c.n2, c.n3), Q(zero, zero, nj_d, nk_d)};
  const DQ np{Q(c.n0, zero, c.n2, S(-c.n3)), Q(zero, zero, nj_d, S(-nk_d))};

  MechanismSpec<S> out{{h, l, m, n, np, mp, lp, hp}, c};
  for (int i = 0; i < 8; ++i) {
    const Q& p = out.coeffs[i].primal;
    if (is_zero(p.x, tol) && is_zero(p.y, tol) && is_zero(p.z, tol)) {
      throw Error(ErrorCode::kDegenerateAxis, "canonical parameters give axis " +
                                                  std::string(axis_name(static_cast<AxisId>(i))) +
                                                  " no direction");
    }
  }
  return out;
}

/// Exact closed-form distances d₁…d₄ and squared cosines cos²α₁…cos²α₄.
template <class S>
struct ClosedFormDH {
  std::array<S, 4> distance;
  std::array<S, 4> cos2;
  S phi;
  S psi;
};

template <class S>
ClosedFormDH<S> dh_closed_form(const CanonicalParams<S>& c, double tol = kDefaultTol) {
  const auto dens = canonical_denominators(c);
  const S phi = dens[5].second;
  const S psi = dens[6].second;
  if (is_zero(phi, tol)) throw Error(ErrorCode::kGenericityViolated, "Phi vanishes");
  if (is_zero(psi, tol)) throw Error(ErrorCode::kGenericityViolated, "Psi vanishes");
  const S& h1 = c.h1;
  const S& h2 = c.h2;
  const S& h3 = c.h3;
  const S& m2 = c.m2;
  const S& m3 = c.m3;
  const S& n2 = c.n2;
  const S& n3 = c.n3;
  const S e1 = S(2 * h2 * h2 * m2 * n3 - h2 * h2 * m3 * n2 + h2 * h3 * m2 * n2 +
                 h2 * h3 * m3 * n3 + h3 * h3 * m2 * n3);
  const S e4 = S(2 * h2 * m2 * m2 * n3 - h2 * m2 * m3 * n2 + h2 * m3 * m3 * n3 +
                 h3 * m2 * m2 * n2 + h3 * m2 * m3 * n3);
  const S nn = S(n2 * n2 + n3 * n3);
  const S mm = S(m2 * m2 + m3 * m3);
  const S hh = S(h2 * h2 + h3 * h3);
  for (const auto& [name, v] : {std::pair<const char*, S>{"n2^2+n3^2", nn},
                                {"m2^2+m3^2", mm}, {"h2^2+h3^2", hh}}) {
    if (is_zero(v, tol)) throw Error(ErrorCode::kGenericityViolated, std::string(name) + " vanishes");
  }
  ClosedFormDH<S> out;
  out.phi = phi;
  out.psi = psi;
  out.distance = {S(h1 * (m2 * n3 - m3 * n2) * e1 / phi),
                  S(h1 * (m2 * n3 - m3 * n2) * (h2 * n2 - h3 * n3) * (h2 * m3 - h3 * m2) / phi),
                  S(h1 * (m2 * n2 + m3 * n3) * (h2 * n3 + h3 * n2) * (h2 * m3 - h3 * m2) / phi),
                  S(h1 * (h2 * n3 + h3 * n2) * e4 / phi)};
  const S c1 = S(m2 * n2 + m3 * n3);
  const S c4 = S(h2 * n2 - h3 * n3);
  out.cos2 = {S(c1 * c1 / (nn * mm)), S(e4 * e4 / (mm * psi)), S(e1 * e1 / (hh * psi)),
              S(c4 * c4 / (hh * nn))};
  return out;
}

template <class S>
ClosedFormDH<double> as_double(const ClosedFormDH<S>& c) {
  ClosedFormDH<double> out;
  for (int i = 0; i < 4; ++i) {
    out.distance[i] = to_double(c.distance[i]);
    out.cos2[i] = to_double(c.cos2[i]);
  }
  out.phi = to_double(c.phi);
  out.psi = to_double(c.psi);
  return out;
}

struct PairDH {
  AxisId from = AxisId::kH;
  AxisId to = AxisId::kL;
  double distance = 0.0;
  double angle = 0.0;  // in [0, π/2]
  double cos2 = 0.0;
};

struct DHTable {
  std::array<PairDH, 8> pairs;     // consecutive pairs in loop order
  std::array<double, 8> offsets{};  // per joint in loop order
};

/// DH parameters around the loop H, L, M, N, H′, L′, M′, N′.
DHTable dh_parameters(const AxisFrame<double>& frame, double tol = kDefaultTol);

/// Closed-form index i ↦ loop pair index (0..3) realizing dᵢ, αᵢ.
struct ClosedFormMatch {
  bool multiset_match = false;
  double distance_error = 0.0;  // max deviation of sorted |dᵢ| vs measured
  double cos2_error = 0.0;
  std::optional<std::array<int, 4>> assignment;
};

ClosedFormMatch match_closed_form(const DHTable& table, const ClosedFormDH<double>& closed,
                                  double tol = kDefaultTol);

enum class BennettKind { kT, kS };

/// Parameters at which the t-Bennett (or s-Bennett) sub-mechanism aligns,
/// with the other parameter fixed at `other`. Found by scanning the
/// homogeneous parameter circle and refining sign changes of the residual.
std::vector<ExtParam<double>> sub_aligned_params_numeric(const MechanismSpec<double>& spec,
                                                         BennettKind kind,
                                                         const ExtParam<double>& other,
                                                         double tol = 1e-9);

template <class S>
std::vector<ExtParam<S>> sub_aligned_params(const MechanismSpec<S>& spec, BennettKind kind,
                                            const ExtParam<S>& other = ExtParam<S>(),
                                            double tol = 1e-9) {
  if (spec.canonical) {
    const S& finite = kind == BennettKind::kT ? spec.canonical->mu : spec.canonical->n0;
    return {ExtParam<S>(), ExtParam<S>(finite)};
  }
  const ExtParam<double> o = other.is_inf() ? ExtParam<double>() : ExtParam<double>(to_double(other.value()));
  std::vector<ExtParam<S>> out;
  for (const auto& v : sub_aligned_params_numeric(as_double(spec), kind, o, tol)) {
    out.push_back(v.is_inf() ? ExtParam<S>() : ExtParam<S>(S(v.value())));
  }
  return out;
}

/// The four aligned configurations {t′, t″} × {s′, s″}, in the order
/// (t′,s′), (t′,s″), (t″,s′), (t″,s″).
template <class S>
std::vector<ConfigPoint<S>> aligned_configs(const MechanismSpec<S>& spec, double tol = 1e-9) {
  const auto ts = sub_aligned_params(spec, BennettKind::kT, ExtParam<S>(), tol);
  const auto ss = sub_aligned_params(spec, BennettKind::kS, ExtParam<S>(), tol);
  std::vector<ConfigPoint<S>> out;
  for (const auto& t : ts)
    for (const auto& s : ss) out.push_back({s, t});
  return out;
}

template <class S>
bool frame_aligned(const AxisFrame<S>& frame, double tol = 1e-9) {
  const AxisFrame<double> f = as_double(frame);
  return check_alignment(f.axes, tol).aligned;
}

struct BennettSub {
  BennettKind kind = BennettKind::kT;
  ExtParam<double> fixed;   // s₀ for a t-Bennett, t₀ for an s-Bennett
  ExtParam<double> moving;  // configuration of the sub-linkage
  std::array<AxisId, 4> ids{};
  std::array<Line<double>, 4> axes;
};

/// The four axes of the t-Bennett at s₀ = `fixed` (H, M, H′, M′) or of the
/// s-Bennett at t₀ = `fixed` (L, N, L′, N′).
BennettSub bennett_sub(const MechanismSpec<double>& spec, BennettKind kind,
                       const ExtParam<double>& fixed,
                       const ExtParam<double>& moving = ExtParam<double>());

struct BennettRatio {
  std::array<double, 4> per_pair{};  // sin α / d for each consecutive pair
  double value = 0.0;                // per_pair[0]
  double spread = 0.0;               // max |per_pair[i] − per_pair[0]|
};

BennettRatio bennett_ratio(const BennettSub& sub, double tol = kDefaultTol);

/// The closed-form t-Bennett ratio τ(s); τ(∞) is the quotient of leading
/// coefficients.
double bennett_ratio_closed(const CanonicalParams<double>& params, const ExtParam<double>& s);

}  // namespace mbennett
