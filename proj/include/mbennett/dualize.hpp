#pragma once

// Lifts a primal alternating factorization to dual quaternions. The dual
// parts of ℓ, n, ℓ′, n′ are the 16 unknowns of a linear system built from
// coefficient matching of both products plus the motion-polynomial
// conditions on the four s-factors.

#include <array>
#include <string>
#include <vector>

#include "mbennett/factor.hpp"
#include "mbennett/linalg.hpp"

namespace mbennett {

template <class S>
struct DualSeed {
  DualQuaternion<S> h;
  DualQuaternion<S> m;
  Quaternion<S> n;  // primal part of n
};

inline constexpr int kDualSystemRows = 40;
inline constexpr int kDualSystemCols = 16;
inline constexpr int kCoefficientRows = 32;

template <class S>
struct DualSystem {
  Matrix<S> matrix{kDualSystemRows, kDualSystemCols};
  std::vector<S> rhs = std::vector<S>(kDualSystemRows, S(0));
  std::vector<std::string> unknowns;  // "l_d.w", …, "np_d.z"
  std::vector<std::string> row_labels;
};

template <class S>
struct DualSolution {
  std::vector<S> values;  // a particular solution when underdetermined
  int rank = 0;
  std::vector<std::vector<S>> nullspace;
  double residual = 0.0;

  bool unique() const { return nullspace.empty(); }
};

template <class S>
struct Dualization {
  AltFactorizationPair<S> pair;
  DualSystem<S> system;
  DualSolution<S> solution;
};

namespace detail {
inline const std::array<const char*, 4>& unknown_names() {
  static const std::array<const char*, 4> names{"l_d", "n_d", "lp_d", "np_d"};
  return names;
}

template <class S>
Quaternion<S> slice(const std::vector<S>& x, int block) {
  return {x[4 * block], x[4 * block + 1], x[4 * block + 2], x[4 * block + 3]};
}

// Dual parts of LHS − RHS for every monomial tⁱsʲ below t²s², four
// components each, with the unknown dual parts taken from x.
template <class S>
std::vector<S> coefficient_residual(const AltFactorizationPair<S>& primal,
                                    const DualQuaternion<S>& h, const DualQuaternion<S>& m,
                                    const DualQuaternion<S>& mp, const DualQuaternion<S>& hp,
                                    const std::vector<S>& x) {
  using DQ = DualQuaternion<S>;
  const DQ l{primal.l().primal, slice(x, 0)};
  const DQ n{primal.n().primal, slice(x, 1)};
  const DQ lp{primal.lp().primal, slice(x, 2)};
  const DQ np{primal.np().primal, slice(x, 3)};
  const FactorTuple<S> left{{Var::kT, h}, {Var::kS, l}, {Var::kT, m}, {Var::kS, n}};
  const FactorTuple<S> right{{Var::kS, np}, {Var::kT, mp}, {Var::kS, lp}, {Var::kT, hp}};
  const BiPoly<S> diff = expand(left) - expand(right);
  std::vector<S> out;
  out.reserve(kCoefficientRows);
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      if (i == 2 && j == 2) continue;
      const Quaternion<S> d = diff.coeff(i, j).dual;
      out.insert(out.end(), {d.w, d.x, d.y, d.z});
    }
  }
  return out;
}
}  // namespace detail

/// Assembles the 40×16 system for the dual parts of ℓ, n, ℓ′, n′, given the
/// primal factorization and the dual t-factors h, m, m′, h′.
template <class S>
DualSystem<S> assemble_system(const AltFactorizationPair<S>& primal, const DualQuaternion<S>& h,
                              const DualQuaternion<S>& m, const DualQuaternion<S>& mp,
                              const DualQuaternion<S>& hp) {
  DualSystem<S> sys;
  static const char* kComp[] = {"w", "x", "y", "z"};
  for (const char* name : detail::unknown_names())
    for (const char* c : kComp) sys.unknowns.push_back(std::string(name) + "." + c);

  // The residual is affine in the unknowns: column k is F(e_k) − F(0).
  const std::vector<S> zero(kDualSystemCols, S(0));
  const std::vector<S> base = detail::coefficient_residual(primal, h, m, mp, hp, zero);
  for (int k = 0; k < kDualSystemCols; ++k) {
    std::vector<S> e = zero;
    e[k] = S(1);
    const std::vector<S> col = detail::coefficient_residual(primal, h, m, mp, hp, e);
    for (int r = 0; r < kCoefficientRows; ++r) sys.matrix(r, k) = col[r] - base[r];
  }
  for (int r = 0; r < kCoefficientRows; ++r) sys.rhs[r] = -base[r];
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      if (i == 2 && j == 2) continue;
      for (const char* c : kComp) {
        sys.row_labels.push_back("t^" + std::to_string(i) + " s^" + std::to_string(j) + " " + c);
      }
    }
  }

  // Motion-polynomial rows for s − (p + εd): p·d = 0 and Scal(d) = 0.
  const std::array<std::pair<int, Quaternion<S>>, 4> constrained{{
      {0, primal.l().primal}, {2, primal.lp().primal}, {1, primal.n().primal},
      {3, primal.np().primal}}};
  int row = kCoefficientRows;
  for (const auto& [block, p] : constrained) {
    const std::array<S, 4> pc{p.w, p.x, p.y, p.z};
    for (int c = 0; c < 4; ++c) sys.matrix(row, 4 * block + c) = S(2 * pc[c]);
    sys.row_labels.push_back(std::string(detail::unknown_names()[block]) + " study");
    ++row;
    sys.matrix(row, 4 * block) = S(2);
    sys.row_labels.push_back(std::string(detail::unknown_names()[block]) + " scalar");
    ++row;
  }
  return sys;
}

/// Solves the system by elimination with full pivoting.
template <class S>
DualSolution<S> solve_system(const DualSystem<S>& sys, double tol = kDefaultTol) {
  const LinearSolution<S> sol = solve_linear(sys.matrix, sys.rhs, tol);
  if (!sol.consistent) {
    throw Error(ErrorCode::kInconsistent,
                "dual system is inconsistent (rank " + std::to_string(sol.rank) +
                    ", residual " + std::to_string(sol.residual) + ")");
  }
  DualSolution<S> out;
  out.values = sol.particular;
  out.rank = sol.rank;
  out.nullspace = sol.nullspace;
  out.residual = sol.residual;
  return out;
}

/// Runs the dual extension: flip the dual t-factors, factor the primal
/// parts, then solve for the dual parts of the s-factors.
template <class S>
Dualization<S> dualize_factorization(const DualSeed<S>& seed, double tol = kDefaultTol) {
  using DQ = DualQuaternion<S>;
  for (const auto* c : {&seed.h, &seed.m}) {
    if (!is_motion_polynomial(BiPoly<S>::linear(Var::kT, *c), tol)) {
      throw Error(ErrorCode::kInvalidInput, "t - h and t - m must be motion polynomials");
    }
  }
  const AltFactorizationPair<S> primal = alt_factorize(seed.h.primal, seed.m.primal, seed.n, tol);
  const FlipResult<S> flip = bennett_flip(seed.h, seed.m);
  const DQ& mp = flip.k1;
  const DQ& hp = flip.k2;

  Dualization<S> out;
  out.system = assemble_system(primal, seed.h, seed.m, mp, hp);
  out.solution = solve_system(out.system, tol);
  const auto& x = out.solution.values;
  auto lift = [&](const DQ& p, int block) { return DQ{p.primal, detail::slice(x, block)}; };
  out.pair = AltFactorizationPair<S>::make(seed.h, lift(primal.l(), 0), seed.m,
                                           lift(primal.n(), 1), lift(primal.np(), 3), mp,
                                           lift(primal.lp(), 2), hp);
  return out;
}

}  // namespace mbennett
