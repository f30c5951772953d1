#pragma once

// Euclidean line geometry on normalized Plücker lines.

#include <span>

#include "mbennett/dualquat.hpp"

namespace mbennett {

/// d_a · m_b + d_b · m_a; zero iff the lines are coplanar.
double reciprocal_product(const Line<double>& a, const Line<double>& b);

struct CommonNormal {
  Line<double> line;         // unit direction
  double distance = 0.0;     // ≥ 0
  double angle = 0.0;        // in [0, π/2]
  Vec3<double> foot_a{};     // on a
  Vec3<double> foot_b{};     // on b
  bool unique = true;        // false for parallel lines
};

/// Common perpendicular of two lines. For parallel lines an arbitrary
/// perpendicular transversal is returned with `unique = false`.
CommonNormal common_normal(const Line<double>& a, const Line<double>& b,
                           double tol = kDefaultTol);

struct AlignmentResult {
  bool aligned = false;
  Line<double> normal;
  double max_residual = 0.0;  // max over axes of |reciprocal product| and |cos|
};

/// Do all lines meet one common perpendicular? The candidate is the common
/// normal of the first non-parallel pair.
AlignmentResult check_alignment(std::span<const Line<double>> axes, double tol = kDefaultTol);

/// Residual of `axes` against a given candidate normal line.
double alignment_residual(std::span<const Line<double>> axes, const Line<double>& normal);

}  // namespace mbennett
