#include "mbennett/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mbennett {

namespace {

double length(const Vec3<double>& v) { return std::sqrt(dot(v, v)); }

Vec3<double> unit(const Vec3<double>& v) { return (1.0 / length(v)) * v; }

}  // namespace

double reciprocal_product(const Line<double>& a, const Line<double>& b) {
  return dot(a.direction, b.moment) + dot(b.direction, a.moment);
}

CommonNormal common_normal(const Line<double>& a_in, const Line<double>& b_in, double tol) {
  const Line<double> a = normalized(a_in);
  const Line<double> b = normalized(b_in);
  const Vec3<double> pa = closest_point_to_origin(a);
  const Vec3<double> pb = closest_point_to_origin(b);
  const Vec3<double> n = cross(a.direction, b.direction);
  const double nn = dot(n, n);
  CommonNormal out;

  if (std::sqrt(nn) <= tol) {
    // Parallel: drop a perpendicular from a's foot onto b.
    const Vec3<double> fb = pb + dot(pa - pb, b.direction) * b.direction;
    const Vec3<double> gap = fb - pa;
    out.distance = length(gap);
    if (out.distance <= tol) {
      throw Error(ErrorCode::kIdenticalLines, "common normal of identical lines is undefined");
    }
    out.foot_a = pa;
    out.foot_b = fb;
    out.angle = 0.0;
    out.unique = false;
    out.line = Line<double>::through(pa, unit(gap));
    return out;
  }

  const Vec3<double> diff = pb - pa;
  const double ta = dot(cross(diff, b.direction), n) / nn;
  const double tb = dot(cross(diff, a.direction), n) / nn;
  out.foot_a = pa + ta * a.direction;
  out.foot_b = pb + tb * b.direction;
  out.distance = length(out.foot_b - out.foot_a);
  out.angle = std::acos(std::clamp(std::abs(dot(a.direction, b.direction)), 0.0, 1.0));
  out.line = Line<double>::through(out.foot_a, unit(n));
  return out;
}

double alignment_residual(std::span<const Line<double>> axes, const Line<double>& normal_in) {
  const Line<double> normal = normalized(normal_in);
  double worst = 0.0;
  for (const auto& axis_in : axes) {
    const Line<double> axis = normalized(axis_in);
    worst = std::max(worst, std::abs(reciprocal_product(axis, normal)));
    worst = std::max(worst, std::abs(dot(axis.direction, normal.direction)));
  }
  return worst;
}

AlignmentResult check_alignment(std::span<const Line<double>> axes, double tol) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      const Line<double> a = normalized(axes[i]);
      const Line<double> b = normalized(axes[j]);
      if (length(cross(a.direction, b.direction)) <= tol) continue;
      AlignmentResult out;
      out.normal = common_normal(a, b, tol).line;
      out.max_residual = alignment_residual(axes, out.normal);
      out.aligned = out.max_residual <= tol;
      return out;
    }
  }
  throw Error(ErrorCode::kAllParallel, "all axes are parallel; no candidate common normal");
}

}  // namespace mbennett
