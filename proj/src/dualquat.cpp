#include "mbennett/dualquat.hpp"

namespace mbennett {

Line<double> normalized(const Line<double>& line) {
  const double n = std::sqrt(dot(line.direction, line.direction));
  if (n == 0.0) throw Error(ErrorCode::kDegenerateAxis, "line has zero direction");
  const double k = 1.0 / n;
  return {k * line.direction, k * line.moment};
}

}  // namespace mbennett
