#include "mbennett/mechanism.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>

namespace mbennett {

std::string_view axis_name(AxisId id) {
  switch (id) {
    case AxisId::kH: return "H";
    case AxisId::kL: return "L";
    case AxisId::kM: return "M";
    case AxisId::kN: return "N";
    case AxisId::kNp: return "N'";
    case AxisId::kMp: return "M'";
    case AxisId::kLp: return "L'";
    case AxisId::kHp: return "H'";
  }
  return "?";
}

DHTable dh_parameters(const AxisFrame<double>& frame, double tol) {
  DHTable out;
  std::array<CommonNormal, 8> normals;
  for (int i = 0; i < 8; ++i) {
    const AxisId a = kLoopOrder[i];
    const AxisId b = kLoopOrder[(i + 1) % 8];
    CommonNormal cn;
    try {
      cn = common_normal(frame[a], frame[b], tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kIdenticalLines) throw;
      throw Error(ErrorCode::kDegeneratePair, "axes " + std::string(axis_name(a)) + " and " +
                                                  std::string(axis_name(b)) + " coincide");
    }
    if (!cn.unique) {
      throw Error(ErrorCode::kDegeneratePair, "axes " + std::string(axis_name(a)) + " and " +
                                                  std::string(axis_name(b)) + " are parallel");
    }
    normals[i] = cn;
    const double c = std::cos(cn.angle);
    out.pairs[i] = {a, b, cn.distance, cn.angle, c * c};
  }
  for (int i = 0; i < 8; ++i) {
    const Line<double> axis = normalized(frame[kLoopOrder[i]]);
    const Vec3<double> incoming = normals[(i + 7) % 8].foot_b;
    const Vec3<double> outgoing = normals[i].foot_a;
    out.offsets[i] = dot(outgoing - incoming, axis.direction);
  }
  return out;
}

ClosedFormMatch match_closed_form(const DHTable& table, const ClosedFormDH<double>& closed,
                                  double tol) {
  std::array<double, 4> md{}, mc{}, cd{}, cc{};
  for (int i = 0; i < 4; ++i) {
    md[i] = table.pairs[i].distance;
    mc[i] = table.pairs[i].cos2;
    cd[i] = std::abs(closed.distance[i]);
    cc[i] = closed.cos2[i];
  }
  ClosedFormMatch out;
  auto smd = md, scd = cd, smc = mc, scc = cc;
  std::sort(smd.begin(), smd.end());
  std::sort(scd.begin(), scd.end());
  std::sort(smc.begin(), smc.end());
  std::sort(scc.begin(), scc.end());
  for (int i = 0; i < 4; ++i) {
    out.distance_error = std::max(out.distance_error, std::abs(smd[i] - scd[i]));
    out.cos2_error = std::max(out.cos2_error, std::abs(smc[i] - scc[i]));
  }
  out.multiset_match = out.distance_error <= tol && out.cos2_error <= tol;

  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      for (int opp : {perm[i], perm[i] + 4}) {
        ok = ok && std::abs(table.pairs[opp].distance - cd[i]) <= tol &&
             std::abs(table.pairs[opp].cos2 - cc[i]) <= tol;
      }
    }
    if (ok) {
      out.assignment = perm;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

using DQD = DualQuaternion<double>;

// A linear factor at the homogeneous parameter θ: cos θ − sin θ·c, which is
// sin θ·(cot θ − c) and the identity at θ = 0 (parameter ∞).
DQD homogeneous_value(double theta, const DQD& c) {
  return DQD(std::cos(theta)) - std::sin(theta) * c;
}

DQD affine_value(const ExtParam<double>& u, const DQD& c) {
  return u.is_inf() ? DQD(1.0) : DQD(u.value()) - c;
}

struct SubSearch {
  const MechanismSpec<double>& spec;
  BennettKind kind;
  ExtParam<double> other;

  FactorValues<double> values(double theta) const {
    using A = AxisId;
    auto move = [&](A id) { return homogeneous_value(theta, spec[id]); };
    auto hold = [&](A id) { return affine_value(other, spec[id]); };
    if (kind == BennettKind::kS) {
      return {hold(A::kH), move(A::kL), hold(A::kM), move(A::kNp), hold(A::kMp), move(A::kLp)};
    }
    return {move(A::kH), hold(A::kL), move(A::kM), hold(A::kNp), move(A::kMp), hold(A::kLp)};
  }

  // Residual components of the two moving axes against the common normal of
  // the two axes that stay fixed along the family.
  std::array<double, 4> residual(double theta, const Line<double>& normal) const {
    const AxisFrame<double> f = pose_from_values(spec, values(theta));
    const bool t = kind == BennettKind::kT;
    const Line<double> a = normalized(f[t ? AxisId::kM : AxisId::kN]);
    const Line<double> b = normalized(f[t ? AxisId::kHp : AxisId::kLp]);
    return {reciprocal_product(a, normal), dot(a.direction, normal.direction),
            reciprocal_product(b, normal), dot(b.direction, normal.direction)};
  }
};

double max_abs(const std::array<double, 4>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<ExtParam<double>> sub_aligned_params_numeric(const MechanismSpec<double>& spec,
                                                         BennettKind kind,
                                                         const ExtParam<double>& other,
                                                         double tol) {
  const SubSearch search{spec, kind, other};
  const bool t = kind == BennettKind::kT;
  // The fixed axes do not depend on θ; read them at θ = 0.
  const AxisFrame<double> f0 = pose_from_values(spec, search.values(0.0));
  const CommonNormal cn = common_normal(f0[t ? AxisId::kH : AxisId::kL],
                                        f0[t ? AxisId::kMp : AxisId::kNp], tol);
  if (!cn.unique) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "fixed sub-mechanism axes are parallel; no unique candidate normal");
  }
  const Line<double> normal = cn.line;

  constexpr int kSamples = 3600;
  constexpr double kPi = std::numbers::pi;
  const double step = kPi / kSamples;
  const double accept = std::max(tol, 1e-7);
  std::vector<std::array<double, 4>> r(kSamples + 1);
  for (int k = 0; k <= kSamples; ++k) r[k] = search.residual(k * step, normal);

  std::vector<double> roots;
  auto consider = [&](double theta) {
    theta = std::fmod(theta, kPi);
    if (theta < 0) theta += kPi;
    if (max_abs(search.residual(theta, normal)) > accept) return;
    for (double x : roots) {
      const double d = std::abs(x - theta);
      if (std::min(d, kPi - d) < 1e-6) return;
    }
    roots.push_back(theta);
  };

  for (int k = 0; k < kSamples; ++k) {
    const double a = k * step;
    const double b = a + step;
    for (int c = 0; c < 4; ++c) {
      const double fa = r[k][c];
      const double fb = r[k + 1][c];
      if (fa == 0.0) consider(a);
      if (fa * fb >= 0.0) continue;
      auto f = [&](double x) { return search.residual(x, normal)[c]; };
      std::uintmax_t iters = 100;
      const auto bracket = boost::math::tools::toms748_solve(
          f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      consider(0.5 * (bracket.first + bracket.second));
    }
    // Even-order zeros show up as local minima of the residual without a sign
    // change in any component.
    const double here = max_abs(r[k]);
    const double before = max_abs(r[k == 0 ? kSamples - 1 : k - 1]);
    if (here <= before && here <= max_abs(r[k + 1]) && here < 1e-2) {
      auto g = [&](double x) {
        const auto v = search.residual(x, normal);
        return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
      };
      const auto best = boost::math::tools::brent_find_minima(g, a - step, b, 52);
      consider(best.first);
    }
  }

  std::vector<ExtParam<double>> out;
  std::sort(roots.begin(), roots.end(), [&](double x, double y) {
    const double kx = std::min(x, kPi - x) < 1e-12 ? -1.0 : x;
    const double ky = std::min(y, kPi - y) < 1e-12 ? -1.0 : y;
    return kx < ky;
  });
  for (double theta : roots) {
    if (std::min(theta, kPi - theta) < 1e-12) {
      out.emplace_back();
    } else {
      const double v = std::cos(theta) / std::sin(theta);
      out.emplace_back(std::abs(v) < 1e-12 ? 0.0 : v);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.is_inf() || y.is_inf()) return x.is_inf() && !y.is_inf();
    return x.value() < y.value();
  });
  return out;
}

BennettSub bennett_sub(const MechanismSpec<double>& spec, BennettKind kind,
                       const ExtParam<double>& fixed, const ExtParam<double>& moving) {
  BennettSub out;
  out.kind = kind;
  out.fixed = fixed;
  out.moving = moving;
  const bool t = kind == BennettKind::kT;
  const ConfigPoint<double> p = t ? ConfigPoint<double>{fixed, moving}
                                  : ConfigPoint<double>{moving, fixed};
  const AxisFrame<double> frame = axis_pose(spec, p);
  out.ids = t ? std::array<AxisId, 4>{AxisId::kH, AxisId::kM, AxisId::kHp, AxisId::kMp}
              : std::array<AxisId, 4>{AxisId::kL, AxisId::kN, AxisId::kLp, AxisId::kNp};
  for (int i = 0; i < 4; ++i) out.axes[i] = frame[out.ids[i]];
  return out;
}

BennettRatio bennett_ratio(const BennettSub& sub, double tol) {
  BennettRatio out;
  for (int i = 0; i < 4; ++i) {
    const CommonNormal cn = common_normal(sub.axes[i], sub.axes[(i + 1) % 4], tol);
    if (cn.distance <= tol) {
      throw Error(ErrorCode::kZeroDistance, "consecutive axes " + std::string(axis_name(sub.ids[i])) +
                                                " and " +
                                                std::string(axis_name(sub.ids[(i + 1) % 4])) +
                                                " intersect; the ratio is undefined");
    }
    out.per_pair[i] = std::sin(cn.angle) / cn.distance;
  }
  out.value = out.per_pair[0];
  for (double v : out.per_pair) out.spread = std::max(out.spread, std::abs(v - out.value));
  return out;
}

double bennett_ratio_closed(const CanonicalParams<double>& p, const ExtParam<double>& s_param) {
  const double h1 = p.h1, h2 = p.h2, h3 = p.h3, m2 = p.m2, m3 = p.m3;
  const double n0 = p.n0, n2 = p.n2, n3 = p.n3;
  const double a = h2 * m3 + h3 * m2;
  const double roots = h1 * std::sqrt(h2 * h2 + h3 * h3) * std::sqrt(m2 * m2 + m3 * m3);
  const double q2 = h3 * h3 * m2 * m2 - h2 * h2 * m3 * m3;
  if (s_param.is_inf()) return h2 * m2 * a * a / (roots * q2);
  const double s = s_param.value();

  const double pm = h2 * m2 - h3 * m3;
  const double pp = h2 * m2 + h3 * m3;
  const double dm = h2 * m3 - h3 * m2;
  const double g2 = h2 * h2 * m3 * m3 + h3 * h3 * m2 * m2 + 2 * h3 * h3 * m3 * m3;
  const double g3 = 2 * h2 * h2 * m2 * m2 + h2 * h2 * m3 * m3 + h3 * h3 * m2 * m2;
  const double c2 = 6 * a * a * n0 * n0 + 2 * g2 * n2 * n2 + 2 * g3 * n3 * n3 -
                    4 * n2 * n3 * pm * dm;
  const double c1 = -4 * n0 * n0 * n0 * a * a - 4 * n0 * n2 * n2 * g2 + 8 * n0 * n2 * n3 * pm * dm -
                    4 * n0 * n3 * n3 * g3;
  const double c0 =
      std::pow(n0, 4) * a * a + 2 * n0 * n0 * n2 * n2 * g2 - 4 * n0 * n0 * n2 * n3 * pm * dm +
      2 * n0 * n0 * n3 * n3 * g3 + std::pow(n2, 4) * dm * dm - 4 * std::pow(n2, 3) * n3 * pp * dm +
      2 * n2 * n2 * n3 * n3 *
          (2 * h2 * h2 * m2 * m2 - h2 * h2 * m3 * m3 + 6 * h2 * h3 * m2 * m3 - h3 * h3 * m2 * m2 +
           2 * h3 * h3 * m3 * m3) +
      4 * n2 * std::pow(n3, 3) * pp * dm + std::pow(n3, 4) * dm * dm;
  const double d0 = -4 * h2 * n2 * n3 * (2 * h2 * m2 * m3 - h3 * m2 * m2 + h3 * m3 * m3) +
                    n0 * n0 * q2 + n2 * n2 * (3 * h2 * m3 - h3 * m2) * dm +
                    n3 * n3 * (4 * h2 * h2 * m2 * m2 - h2 * h2 * m3 * m3 + 4 * h2 * h3 * m2 * m3 +
                               h3 * h3 * m2 * m2);

  const double num = h2 * m2 * (a * a * (std::pow(s, 4) - 4 * n0 * std::pow(s, 3)) + c2 * s * s +
                                c1 * s + c0);
  const double nrm = s * s - 2 * n0 * s + n0 * n0 + n2 * n2 + n3 * n3;
  return num / (roots * nrm * (q2 * s * (s - 2 * n0) + d0));
}

}  // namespace mbennett
