#include <gtest/gtest.h>

#include "mbennett/qpoly.hpp"
#include "test_support.hpp"

using namespace mbennett;
using namespace mbennett::testing;

namespace {

using P = BiPoly<R>;
using U = UniPoly<R>;

const QR kI = quat(0, 1, 0, 0);
const QR kJ = quat(0, 0, 1, 0);
const QR kK = quat(0, 0, 0, 1);

P lin_t(const DQR& c) { return P::linear(Var::kT, c); }
P lin_s(const DQR& c) { return P::linear(Var::kS, c); }

const DQR kH = dq(quat(0, 2, -1, -3));
const DQR kM = dq(quat(-6, -2, 3, -3));
const DQR kN = dq(quat(0, 0, -1, 0));
const DQR kL = dq(quat(0, -1, 1, 0));

U random_cubic(Sampler& rng) {
  std::vector<DQR> c;
  for (int i = 0; i < 4; ++i) c.push_back(dq(rng.quat(), rng.quat()));
  c[3] = dq(quat(rng.nonzero(), 0, 0, 0));
  return U(Var::kT, c);
}

}  // namespace

TEST(QPoly, ProductOfLinearTFactors) {
  const P prod = lin_t(dq(kI)) * lin_t(dq(kJ));
  EXPECT_EQ(prod.deg_t(), 2);
  EXPECT_EQ(prod.deg_s(), 0);
  EXPECT_EQ(prod.coeff(2, 0), DQR(R(1)));
  EXPECT_EQ(prod.coeff(1, 0), dq(-(kI + kJ)));
  EXPECT_EQ(prod.coeff(0, 0), dq(kK));
}

TEST(QPoly, MixedProductShape) {
  const P prod = pmul(lin_t(kH), lin_s(kL));
  EXPECT_EQ(prod.coeff(1, 1), DQR(R(1)));
  EXPECT_EQ(prod.coeff(1, 0), -kL);
  EXPECT_EQ(prod.coeff(0, 1), -kH);
  EXPECT_EQ(prod.coeff(0, 0), kH * kL);
}

TEST(QPoly, WorkedExampleHasTwoFactorizations) {
  const P left = lin_t(kH) * lin_s(kL) * lin_t(kM) * lin_s(kN);
  const P right = lin_s(dq(kJ)) * lin_t(dq(quat(-6, 2, 3, -3))) * lin_s(dq(quat(0, -1, -1, 0))) *
                  lin_t(dq(quat(0, -2, -1, -3)));
  EXPECT_EQ(left, right);
  EXPECT_EQ(left.deg_t(), 2);
  EXPECT_EQ(left.deg_s(), 2);
}

TEST(QPoly, MotionPolynomialPredicate) {
  const P a = lin_t(dq(kI));
  EXPECT_TRUE(is_motion_polynomial(a));
  P expected;
  expected.set(2, 0, DQR(R(1)));
  expected.set(0, 0, DQR(R(1)));
  EXPECT_EQ(pnorm(a), expected);
  // h = 1 + εi has h₄ = 0 and h₁h₅ = 0, so t − h is a motion polynomial;
  // a dual scalar part (h₄ ≠ 0) is what breaks the condition.
  EXPECT_TRUE(is_motion_polynomial(lin_t(dq(quat(1, 0, 0, 0), kI))));
  EXPECT_FALSE(is_motion_polynomial(lin_t(dq(quat(1, 0, 0, 0), quat(1, 0, 0, 0)))));
  EXPECT_FALSE(is_motion_polynomial(lin_t(dq(quat(0, 1, 0, 0), kI))));
  EXPECT_FALSE(is_motion_polynomial(P()));

  const P m = lin_t(dq(quat(-6, -2, 3, -3), quat(0, -45, -66, -36)));
  P norm_m;
  norm_m.set(2, 0, DQR(R(1)));
  norm_m.set(1, 0, DQR(R(12)));
  norm_m.set(0, 0, DQR(R(58)));
  EXPECT_EQ(pnorm(m), norm_m);
}

TEST(QPoly, LinearMotionPolynomialConditions) {
  // t − h is a motion polynomial iff h₄ = 0 and h₁h₅ + h₂h₆ + h₃h₇ = 0.
  Sampler rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const DQR h = dq(rng.quat(), quat(rng.integer(-1, 1), rng.integer(-2, 2), rng.integer(-2, 2),
                                      rng.integer(-2, 2)));
    const auto c = h.to_array();
    const bool expected = c[4] == 0 && c[1] * c[5] + c[2] * c[6] + c[3] * c[7] == 0;
    EXPECT_EQ(is_motion_polynomial(lin_t(h)), expected);
  }
}

TEST(QPoly, EvaluationAtInfinity) {
  const P c = lin_t(kH);
  const ExtParam<R> inf;
  EXPECT_EQ(peval(c, inf, inf), DQR(R(1)));
  EXPECT_EQ(peval(c, ExtParam<R>(R(3)), inf), DQR(R(1)));
  EXPECT_EQ(peval(c, inf, ExtParam<R>(R(0))), -kH);
  EXPECT_EQ(peval(lin_t(dq(kI)) * lin_s(dq(kJ)), inf, inf), DQR(R(1)));
}

TEST(QPoly, EvaluationOrdersCommute) {
  Sampler rng(22);
  const P c = lin_t(kH) * lin_s(kL) * lin_t(kM) * lin_s(kN);
  for (int trial = 0; trial < 20; ++trial) {
    const R t0(rng.integer());
    const R s0(rng.integer());
    // Substitute t₀ first, then take the leading coefficient in s.
    std::vector<DQR> in_s;
    for (int j = 0; j <= c.deg_s(); ++j) in_s.push_back(c.s_coeff(j).eval(t0));
    EXPECT_EQ(peval(c, ExtParam<R>(), ExtParam<R>(t0)), U(Var::kS, in_s).leading());
    std::vector<DQR> in_t;
    for (int i = 0; i <= c.deg_t(); ++i) in_t.push_back(c.t_coeff(i).eval(s0));
    EXPECT_EQ(peval(c, ExtParam<R>(s0), ExtParam<R>()), U(Var::kT, in_t).leading());
  }
}

TEST(QPoly, EvaluationIsMultiplicative) {
  Sampler rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const P a = lin_t(dq(rng.quat(), rng.quat())) * lin_s(dq(rng.quat()));
    const P b = lin_s(dq(rng.quat(), rng.quat())) * lin_t(dq(rng.quat()));
    const ExtParam<R> s(R(rng.integer())), t(R(rng.integer()));
    EXPECT_EQ(peval(a * b, s, t), peval(a, s, t) * peval(b, s, t));
  }
}

TEST(QPoly, NormIsMultiplicativeForMotionPolynomials) {
  Sampler rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const P a = lin_t(rng.motion_coeff());
    const P b = lin_s(rng.motion_coeff());
    ASSERT_TRUE(is_motion_polynomial(a));
    EXPECT_EQ(pnorm(a * b), pnorm(a) * pnorm(b));
  }
}

TEST(QPoly, ReparametrizeInversion) {
  const U c = U::linear(Var::kT, kH);
  const U image = reparametrize(c, MobiusMap<R>{R(0), R(1), R(1), R(0)});
  EXPECT_EQ(image, U(Var::kT, {DQR(R(1)), -kH}));
  EXPECT_EQ(reparametrize(c, MobiusMap<R>{}), c);
  EXPECT_THROW(reparametrize(c, MobiusMap<R>{R(1), R(2), R(2), R(4)}), Error);
}

TEST(QPoly, ReparametrizeShiftsCompose) {
  Sampler rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const U c = random_cubic(rng);
    const R b(rng.integer());
    const U there = reparametrize(c, MobiusMap<R>{R(1), b, R(0), R(1)});
    EXPECT_EQ(reparametrize(there, MobiusMap<R>{R(1), R(-b), R(0), R(1)}), c);
  }
}

TEST(QPoly, ReparametrizePreservesMotionPolynomials) {
  Sampler rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const P prod = lin_t(rng.motion_coeff()) * lin_t(rng.motion_coeff());
    const U c = prod.s_coeff(0);
    const MobiusMap<R> mu{R(rng.integer()), R(rng.integer()), R(rng.nonzero()), R(rng.integer())};
    if (mu.determinant() == 0) continue;
    EXPECT_TRUE(is_motion_polynomial(P::from_uni(reparametrize(c, mu))));
  }
}

TEST(QPoly, DivisionByNormOfFirstFactor) {
  const P c = lin_t(kH) * lin_s(kL) * lin_t(kM) * lin_s(kN);
  const U norm_h = pnorm(lin_t(kH)).s_coeff(0);
  const DivRem<R> qr = divrem_by_real(c, norm_h);
  EXPECT_EQ(qr.quotient, lin_s(kL) * lin_s(kN));
  EXPECT_LE(qr.remainder.deg_t(), 1);
  EXPECT_EQ(qr.quotient * P::from_uni(norm_h) + qr.remainder, c);

  // The remainder factors as (t − h)(r₁ s + r₀)(s − n).
  const DQR r1 = kH.conj() - kM;
  const DQR r0 = kH * kL - kL * (r1 + kH);
  P middle;
  middle.set(0, 1, r1);
  middle.set(0, 0, r0);
  EXPECT_EQ(qr.remainder, lin_t(kH) * middle * lin_s(kN));
}

TEST(QPoly, DivisionReconstructs) {
  Sampler rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const P c = lin_t(dq(rng.quat(), rng.quat())) * lin_s(dq(rng.quat())) *
                lin_t(dq(rng.quat(), rng.quat()));
    const U m = U::real(Var::kT, {R(rng.integer()), R(rng.integer()), R(rng.nonzero())});
    const DivRem<R> qr = divrem_by_real(c, m);
    EXPECT_EQ(qr.quotient * P::from_uni(m) + qr.remainder, c);
    EXPECT_LT(qr.remainder.deg_t(), 2);
  }
}

TEST(QPoly, DivisionExactAndErrors) {
  const U m = U::real(Var::kT, {R(5), R(0), R(1)});
  const P c = P::from_uni(m) * lin_s(kN);
  const DivRem<R> qr = divrem_by_real(c, m);
  EXPECT_TRUE(qr.remainder.is_zero());
  EXPECT_EQ(qr.quotient, lin_s(kN));
  EXPECT_THROW(divrem_by_real(c, U()), Error);
  EXPECT_THROW(divrem_by_real(c, U::linear(Var::kT, kH)), Error);
}

TEST(QPoly, FloatDivisionTerminates) {
  using PD = BiPoly<double>;
  const PD c = PD::linear(Var::kT, as_double(kM)) * PD::linear(Var::kS, as_double(kN)) *
               PD::linear(Var::kT, as_double(kH));
  const UniPoly<double> m = UniPoly<double>::real(Var::kT, {0.3, 0.1, 0.7});
  const DivRem<double> qr = divrem_by_real(c, m);
  EXPECT_TRUE(approx_equal(qr.quotient * PD::from_uni(m) + qr.remainder, c, 1e-12));
  EXPECT_LT(qr.remainder.deg_t(), 2);
}
