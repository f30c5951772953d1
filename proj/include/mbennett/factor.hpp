#pragma once

// Bennett flips, the quaternionic Sylvester equation, and construction of
// polynomials with two alternating factorizations
//   (t − h)(s − ℓ)(t − m)(s − n) = (s − n′)(t − m′)(s − ℓ′)(t − h′).

#include <array>
#include <string>
#include <vector>

#include "mbennett/dualquat.hpp"
#include "mbennett/linalg.hpp"
#include "mbennett/qpoly.hpp"
#include "mbennett/report.hpp"

namespace mbennett {

/// The linear polynomial var − coeff.
template <class S>
struct LinearFactor {
  Var var = Var::kT;
  DualQuaternion<S> coeff;

  BiPoly<S> poly() const { return BiPoly<S>::linear(var, coeff); }
};

template <class S>
using FactorTuple = std::vector<LinearFactor<S>>;

template <class S>
BiPoly<S> expand(const FactorTuple<S>& factors) {
  BiPoly<S> out = BiPoly<S>::constant(DualQuaternion<S>(S(1)));
  for (const auto& f : factors) out = out * f.poly();
  return out;
}

/// left = (t−h)(s−ℓ)(t−m)(s−n), right = (s−n′)(t−m′)(s−ℓ′)(t−h′).
template <class S>
struct AltFactorizationPair {
  using DQ = DualQuaternion<S>;

  FactorTuple<S> left;
  FactorTuple<S> right;
  BiPoly<S> product;

  static AltFactorizationPair make(const DQ& h, const DQ& l, const DQ& m, const DQ& n,
                                   const DQ& np, const DQ& mp, const DQ& lp, const DQ& hp) {
    AltFactorizationPair out;
    out.left = {{Var::kT, h}, {Var::kS, l}, {Var::kT, m}, {Var::kS, n}};
    out.right = {{Var::kS, np}, {Var::kT, mp}, {Var::kS, lp}, {Var::kT, hp}};
    out.product = expand(out.left);
    return out;
  }

  const DQ& h() const { return left[0].coeff; }
  const DQ& l() const { return left[1].coeff; }
  const DQ& m() const { return left[2].coeff; }
  const DQ& n() const { return left[3].coeff; }
  const DQ& np() const { return right[0].coeff; }
  const DQ& mp() const { return right[1].coeff; }
  const DQ& lp() const { return right[2].coeff; }
  const DQ& hp() const { return right[3].coeff; }
};

template <class S>
struct FlipResult {
  DualQuaternion<S> k1;
  DualQuaternion<S> k2;
};

/// Rewrites (u − h₁)(u − h₂) as (u − k₁)(u − k₂) with N(u − k₂) = N(u − h₁).
template <class S>
FlipResult<S> bennett_flip(const DualQuaternion<S>& h1, const DualQuaternion<S>& h2) {
  const DualQuaternion<S> pivot = h1.conj() - h2;
  if (pivot.primal.is_zero(0.0)) {
    throw Error(ErrorCode::kFlipSingular, "conj(h1) - h2 has zero primal part");
  }
  const DualQuaternion<S> norm1 = h1 * h1.conj();
  const DualQuaternion<S> k2 = -(pivot.inverse() * (h1 * h2 - norm1));
  return {h1 + h2 - k2, k2};
}

namespace detail {
// Matrix of q ↦ a·q in the basis (1, i, j, k).
template <class S>
std::array<std::array<S, 4>, 4> left_matrix(const Quaternion<S>& a) {
  return {{{a.w, S(-a.x), S(-a.y), S(-a.z)},
           {a.x, a.w, S(-a.z), a.y},
           {a.y, a.z, a.w, S(-a.x)},
           {a.z, S(-a.y), a.x, a.w}}};
}

// Matrix of q ↦ q·b in the basis (1, i, j, k).
template <class S>
std::array<std::array<S, 4>, 4> right_matrix(const Quaternion<S>& b) {
  return {{{b.w, S(-b.x), S(-b.y), S(-b.z)},
           {b.x, b.w, b.z, S(-b.y)},
           {b.y, S(-b.z), b.w, b.x},
           {b.z, b.y, S(-b.x), b.w}}};
}

template <class S>
bool sylvester_solvable(const Quaternion<S>& a, const Quaternion<S>& b, double tol) {
  return !is_zero(S(a.w - b.w), tol) || !is_zero(S(a.norm() - b.norm()), tol);
}
}  // namespace detail

/// The unique ℓ with ℓ·b − a·ℓ = c, via a 4×4 real linear system.
template <class S>
Quaternion<S> solve_quat_linear(const Quaternion<S>& a, const Quaternion<S>& b,
                                const Quaternion<S>& c, double tol = kDefaultTol) {
  if (!detail::sylvester_solvable(a, b, tol)) {
    throw Error(ErrorCode::kNoUniqueSolution,
                "l*b - a*l = c has no unique solution: a and b share scalar part and norm");
  }
  const auto la = detail::left_matrix(a);
  const auto rb = detail::right_matrix(b);
  Matrix<S> sys(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) sys(r, k) = rb[r][k] - la[r][k];
  const auto sol = solve_linear(sys, std::vector<S>{c.w, c.x, c.y, c.z}, tol);
  if (sol.rank < 4) {
    throw Error(ErrorCode::kNoUniqueSolution, "l*b - a*l = c is singular");
  }
  const auto& x = sol.particular;
  return {x[0], x[1], x[2], x[3]};
}

/// The ℓ for which (t − h)(s − ℓ)(t − m)(s − n) has a second alternating
/// factorization, from the explicit closed formula.
template <class S>
Quaternion<S> construct_ell(const Quaternion<S>& h, const Quaternion<S>& m,
                            const Quaternion<S>& n, double tol = kDefaultTol) {
  if (!detail::sylvester_solvable(h, m, tol)) {
    throw Error(ErrorCode::kHypothesisViolated,
                "h and m must differ in scalar part or in norm");
  }
  if (h.is_zero(tol)) {
    throw Error(ErrorCode::kHypothesisViolated, "the closed formula for l needs h != 0");
  }
  const Quaternion<S> r1 = h.conj() - m;
  const Quaternion<S> b = h + r1;
  const Quaternion<S> c = r1 * n.conj();
  const Quaternion<S> hinv = h.inverse();
  const Quaternion<S> lhs = Quaternion<S>(S(2 * b.w)) - h - b.norm() * hinv;
  const Quaternion<S> rhs = c - hinv * c * b.conj();
  if (lhs.is_zero(tol)) {
    throw Error(ErrorCode::kHypothesisViolated, "closed formula for l degenerates");
  }
  return lhs.inverse() * rhs;
}

/// Primal alternating factorizations from h, m, n ∈ ℍ.
template <class S>
AltFactorizationPair<S> alt_factorize(const Quaternion<S>& h, const Quaternion<S>& m,
                                      const Quaternion<S>& n, double tol = kDefaultTol) {
  using DQ = DualQuaternion<S>;
  const Quaternion<S> l = construct_ell(h, m, n, tol);
  if ((m * n - n * m).is_zero(tol)) {
    throw Error(ErrorCode::kGenericityViolated, "m and n commute");
  }
  const FlipResult<S> t_flip = bennett_flip(DQ(h), DQ(m));
  const DQ& mp = t_flip.k1;
  const DQ& hp = t_flip.k2;
  if ((hp.primal * n - n * hp.primal).is_zero(tol)) {
    throw Error(ErrorCode::kGenericityViolated, "h' and n commute");
  }
  const FlipResult<S> s_flip = bennett_flip(DQ(l), DQ(n));
  return AltFactorizationPair<S>::make(DQ(h), DQ(l), DQ(m), DQ(n), s_flip.k1, mp,
                                       s_flip.k2, hp);
}

/// Largest coefficient difference between two polynomials.
template <class S>
double poly_distance(const BiPoly<S>& a, const BiPoly<S>& b) {
  const BiPoly<S> d = a - b;
  double out = 0.0;
  for (int i = 0; i <= d.deg_t(); ++i)
    for (int j = 0; j <= d.deg_s(); ++j)
      for (const S& x : d.coeff(i, j).to_array()) out = std::max(out, std::abs(to_double(x)));
  return out;
}

/// Checks both factorizations against each other.
template <class S>
Report verify_alternating(const AltFactorizationPair<S>& pair, double tol = kDefaultTol) {
  Report report;
  auto compare = [&](const std::string& name, const BiPoly<S>& a, const BiPoly<S>& b,
                     const std::string& claim) {
    report.add(name, poly_equal(a, b, tol), poly_distance(a, b), claim);
  };
  const BiPoly<S> left = expand(pair.left);
  const BiPoly<S> right = expand(pair.right);
  compare("product_equality", left, right,
          "(t-h)(s-l)(t-m)(s-n) = (s-n')(t-m')(s-l')(t-h')");
  compare("product_matches_stored", left, pair.product, "stored product equals the expansion");

  auto lin = [](Var v, const DualQuaternion<S>& c) { return BiPoly<S>::linear(v, c); };
  compare("norm_pairing_h", pnorm(lin(Var::kT, pair.h())), pnorm(lin(Var::kT, pair.hp())),
          "N(t-h) = N(t-h')");
  compare("norm_pairing_m", pnorm(lin(Var::kT, pair.m())), pnorm(lin(Var::kT, pair.mp())),
          "N(t-m) = N(t-m')");
  compare("norm_pairing_l", pnorm(lin(Var::kS, pair.l())), pnorm(lin(Var::kS, pair.lp())),
          "N(s-l) = N(s-l')");
  compare("norm_pairing_n", pnorm(lin(Var::kS, pair.n())), pnorm(lin(Var::kS, pair.np())),
          "N(s-n) = N(s-n')");
  compare("flip_identity_t", lin(Var::kT, pair.h()) * lin(Var::kT, pair.m()),
          lin(Var::kT, pair.mp()) * lin(Var::kT, pair.hp()), "(t-h)(t-m) = (t-m')(t-h')");
  compare("flip_identity_s", lin(Var::kS, pair.l()) * lin(Var::kS, pair.n()),
          lin(Var::kS, pair.np()) * lin(Var::kS, pair.lp()), "(s-l)(s-n) = (s-n')(s-l')");

  const std::array<std::pair<const char*, const LinearFactor<S>*>, 8> factors{{
      {"h", &pair.left[0]}, {"l", &pair.left[1]}, {"m", &pair.left[2]}, {"n", &pair.left[3]},
      {"np", &pair.right[0]}, {"mp", &pair.right[1]}, {"lp", &pair.right[2]},
      {"hp", &pair.right[3]}}};
  for (const auto& [label, f] : factors) {
    const BiPoly<S> norm = pnorm(f->poly());
    double off = 0.0;
    for (int i = 0; i <= norm.deg_t(); ++i) {
      for (int j = 0; j <= norm.deg_s(); ++j) {
        const auto c = norm.coeff(i, j).to_array();
        for (int k = 1; k < 8; ++k) off = std::max(off, std::abs(to_double(c[k])));
      }
    }
    report.add(std::string("motion_polynomial_") + label, is_motion_polynomial(f->poly(), tol),
               off, "the norm of every linear factor is a nonzero real polynomial");
  }
  return report;
}

}  // namespace mbennett
