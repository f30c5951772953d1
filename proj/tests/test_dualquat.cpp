#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mbennett/dualquat.hpp"
#include "test_support.hpp"

using namespace mbennett;
using namespace mbennett::testing;

namespace {

const QR kI = quat(0, 1, 0, 0);
const QR kJ = quat(0, 0, 1, 0);
const QR kK = quat(0, 0, 0, 1);

QD quarter_turn_k() {
  const double c = std::cos(std::numbers::pi / 4);
  return {c, 0.0, 0.0, c};
}

// Rotation matrix of a unit quaternion from the textbook closed form.
std::array<std::array<double, 3>, 3> rotation_matrix(const QD& p) {
  const double w = p.w, x = p.x, y = p.y, z = p.z;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

Vec3<double> matrix_apply(const DQD& h, const Vec3<double>& v) {
  const auto m = rotation_matrix(h.primal);
  // For unit h the displacement of the origin is −2·vec(q p̄).
  const QD u = h.dual * h.primal.conj();
  Vec3<double> out{};
  for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
  return out + (-2.0) * u.vec();
}

double distance(const Vec3<double>& a, const Vec3<double>& b) {
  const auto d = a - b;
  return std::sqrt(dot(d, d));
}

}  // namespace

TEST(DualQuat, DefiningRelations) {
  EXPECT_EQ(kI * kJ, kK);
  EXPECT_EQ(kJ * kK, kI);
  EXPECT_EQ(kK * kI, kJ);
  EXPECT_EQ(kI * kI, quat(-1, 0, 0, 0));
  EXPECT_EQ(kI * kJ * kK, quat(-1, 0, 0, 0));
  const DQR a = dq(quat(1, 0, 0, 0), kI);
  const DQR b = dq(quat(1, 0, 0, 0), kJ);
  EXPECT_EQ(a * b, dq(quat(1, 0, 0, 0), kI + kJ));
}

TEST(DualQuat, NormOfPureQuaternion) {
  const QR h = quat(0, 2, -1, -3);
  EXPECT_EQ(h * h.conj(), quat(14, 0, 0, 0));
}

TEST(DualQuat, Conjugations) {
  const DQR a = dq(quat(1, 1, 0, 0), kJ);
  EXPECT_EQ(a.conj(), dq(quat(1, -1, 0, 0), quat(0, 0, -1, 0)));
  const DQR b = dq(quat(1, 0, 0, 0), kK);
  EXPECT_EQ(b.eps_conj(), dq(quat(1, 0, 0, 0), quat(0, 0, 0, -1)));
  const DQR m = dq(quat(-6, -2, 3, -3));
  EXPECT_EQ(m.scalar_part().a, R(-6));
  EXPECT_EQ(m.scalar_part().b, R(0));
  const DQR c = dq(quat(3, -1, 4, 1), quat(5, 9, -2, 6));
  EXPECT_EQ(DQR(QR(c.scalar_part().a), QR(c.scalar_part().b)) + c.vector_part(), c);
}

TEST(DualQuat, Norm) {
  EXPECT_EQ(DQR(R(1)).norm(), (DualNumber<R>{R(1), R(0)}));
  const DQR h = dq(quat(0, 2, -1, -3), quat(0, 23, -74, 40));
  EXPECT_EQ(h.norm(), (DualNumber<R>{R(14), R(0)}));
  EXPECT_TRUE(satisfies_study_condition(h));
  const DQR m = dq(quat(-6, -2, 3, -3), quat(0, -45, -66, -36));
  EXPECT_EQ(m.norm(), (DualNumber<R>{R(58), R(0)}));
}

TEST(DualQuat, Inverse) {
  EXPECT_EQ(DQR(R(2)).inverse(), DQR(R(1, 2)));
  EXPECT_EQ(dq(kI).inverse(), dq(-kI));
  const DQR a = dq(kI, kJ);
  EXPECT_EQ(a.inverse(), dq(-kI, -kJ));
  EXPECT_EQ(a * a.inverse(), DQR(R(1)));
  EXPECT_THROW(dq(QR(), kI).inverse(), Error);
  try {
    dq(QR(), kI).inverse();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInvertible);
  }
}

TEST(DualQuat, PointActionExamples) {
  const PointH<R> x{R(2), {R(1), R(-3), R(5)}};
  EXPECT_TRUE(projectively_equal(act_on_point(DQR(R(1)), x), x));
  const PointH<double> y = act_on_point(DQD(quarter_turn_k()), PointH<double>{1.0, {1.0, 0.0, 0.0}});
  EXPECT_TRUE(projectively_equal(y, PointH<double>{1.0, {0.0, 1.0, 0.0}}, 1e-12));
  EXPECT_THROW(act_on_point(dq(QR(), kI), x), Error);
}

TEST(DualQuat, PointActionMatchesMatrixOracle) {
  Sampler rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const DQD h = rng.unit_motion();
    const std::array<Vec3<double>, 3> pts{{{rng.real(-5, 5), rng.real(-5, 5), rng.real(-5, 5)},
                                           {rng.real(-5, 5), rng.real(-5, 5), rng.real(-5, 5)},
                                           {rng.real(-5, 5), rng.real(-5, 5), rng.real(-5, 5)}}};
    std::array<Vec3<double>, 3> moved{};
    for (int i = 0; i < 3; ++i) {
      moved[i] = act_on_point(h, PointH<double>::from_cartesian(pts[i])).cartesian();
      const auto oracle = matrix_apply(h, pts[i]);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(moved[i][k], oracle[k], 1e-9);
    }
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      EXPECT_NEAR(distance(moved[i], moved[j]), distance(pts[i], pts[j]), 1e-9);
    }
  }
}

TEST(DualQuat, LineActionExamples) {
  const Line<R> r = Line<R>::through({R(1), R(2), R(3)}, {R(0), R(1), R(-1)});
  EXPECT_TRUE(projectively_equal(act_on_line(DQR(R(1)), r), r));
  const Line<double> axis_i{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  const Line<double> axis_j{{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}};
  EXPECT_TRUE(projectively_equal(act_on_line(DQD(quarter_turn_k()), axis_i), axis_j, 1e-12));
}

TEST(DualQuat, LineActionMatchesTwoPointConstruction) {
  Sampler rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const DQD h = rng.unit_motion();
    const Vec3<double> a{rng.real(-5, 5), rng.real(-5, 5), rng.real(-5, 5)};
    const Vec3<double> b{rng.real(-5, 5), rng.real(-5, 5), rng.real(-5, 5)};
    const Line<double> r = Line<double>::through(a, b - a);
    const auto a2 = act_on_point(h, PointH<double>::from_cartesian(a)).cartesian();
    const auto b2 = act_on_point(h, PointH<double>::from_cartesian(b)).cartesian();
    const Line<double> image = act_on_line(h, r);
    EXPECT_TRUE(projectively_equal(image, Line<double>::through(a2, b2 - a2), 1e-9));
    EXPECT_NEAR(image.plucker_residual(), 0.0, 1e-9);
  }
}

TEST(DualQuat, NormIsMultiplicative) {
  Sampler rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const DQR a = dq(rng.quat(), rng.quat());
    const DQR b = dq(rng.quat(), rng.quat());
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
    EXPECT_EQ((a * b).conj(), b.conj() * a.conj());
  }
}

TEST(DualQuat, StudyConditionClosedUnderProducts) {
  Sampler rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    // p + ε(t p) satisfies the Study condition for pure t.
    const QR p1 = rng.quat();
    const QR p2 = rng.quat();
    const DQR a = dq(p1, rng.pure() * p1);
    const DQR b = dq(p2, rng.pure() * p2);
    EXPECT_TRUE(satisfies_study_condition(a));
    EXPECT_TRUE(satisfies_study_condition(a * b));
    EXPECT_EQ((a * b).norm().b, R(0));
  }
}

TEST(DualQuat, LineActionIsCompositional) {
  Sampler rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    QR p1 = rng.quat();
    QR p2 = rng.quat();
    if (p1.is_zero() || p2.is_zero()) continue;
    const DQR h1 = dq(p1, rng.pure() * p1);
    const DQR h2 = dq(p2, rng.pure() * p2);
    const Vec3<R> point{R(rng.integer()), R(rng.integer()), R(rng.integer())};
    const Vec3<R> dir{R(rng.nonzero()), R(rng.integer()), R(rng.integer())};
    const Line<R> r = Line<R>::through(point, dir);
    const Line<R> once = act_on_line(h1 * h2, r);
    EXPECT_TRUE(projectively_equal(once, act_on_line(h1, act_on_line(h2, r))));
    EXPECT_EQ(once.plucker_residual(), R(0));
  }
}

TEST(DualQuat, PointAndLineActionsAgreeExactly) {
  Sampler rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const QR p = rng.quat();
    if (p.is_zero()) continue;
    const DQR h = dq(p, rng.pure() * p);
    const Vec3<R> a{R(rng.integer()), R(rng.integer()), R(rng.integer())};
    const Vec3<R> d{R(rng.nonzero()), R(rng.integer()), R(rng.integer())};
    const auto ya = act_on_point(h, PointH<R>::from_cartesian(a));
    const auto yb = act_on_point(h, PointH<R>::from_cartesian(a + d));
    // Line through two homogeneous points: direction w_a·x_b − w_b·x_a.
    const Vec3<R> dir = ya.w * yb.x - yb.w * ya.x;
    const Vec3<R> mom = cross(dir, R(R(1) / ya.w) * ya.x);
    EXPECT_TRUE(projectively_equal(act_on_line(h, Line<R>::through(a, d)), Line<R>{dir, mom}));
  }
}

TEST(Scalar, ParseRational) {
  using T = ScalarTraits<R>;
  EXPECT_EQ(T::parse("3"), R(3));
  EXPECT_EQ(T::parse("-7/14"), R(-1, 2));
  EXPECT_EQ(T::parse("1.25"), R(5, 4));
  EXPECT_EQ(T::parse("-2e-3"), R(-1, 500));
  EXPECT_EQ(T::parse("+4"), R(4));
  EXPECT_THROW(T::parse("abc"), Error);
  EXPECT_THROW(T::parse("1/0"), Error);
  EXPECT_EQ(T::to_string(T::parse("-3/6")), "-1/2");
}

TEST(Scalar, ParseDouble) {
  using T = ScalarTraits<double>;
  EXPECT_DOUBLE_EQ(T::parse("2.5"), 2.5);
  EXPECT_DOUBLE_EQ(T::parse("1/4"), 0.25);
  EXPECT_THROW(T::parse("x"), Error);
  EXPECT_DOUBLE_EQ(T::parse(T::to_string(0.1)), 0.1);
}

TEST(Scalar, ExtendedParameter) {
  const ExtParam<R> inf;
  EXPECT_TRUE(inf.is_inf());
  EXPECT_EQ(to_string(inf), "inf");
  EXPECT_EQ(ExtParam<R>(R(2)), ExtParam<R>(R(2)));
  EXPECT_FALSE(ExtParam<R>(R(2)) == inf);
}
