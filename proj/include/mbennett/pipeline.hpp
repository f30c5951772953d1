#pragma once

// Seed → factorization → mechanism → verification, producing JSON documents.

#include <optional>
#include <string>
#include <vector>

#include "mbennett/json_io.hpp"

namespace mbennett {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kDefaultGrid = "-10:10:21,inf";

/// Parses a parameter grid: comma-separated items, each "inf", a scalar
/// ("p/q" or decimal), or "a:b:n" for n evenly spaced values from a to b.
/// Values are kept exact, deduplicated, in first-seen order.
std::vector<ExtParam<Rational>> parse_grid(const std::string& spec);

struct Options {
  std::optional<SeedMode> mode;          // when set, the seed must have this mode
  std::optional<Arithmetic> arithmetic;  // overrides the seed's field
  double tol = kDefaultTol;
  std::string grid = kDefaultGrid;
};

/// Flag, then seed field, then rational.
Arithmetic resolve_arithmetic(const Seed& seed, const Options& opts);

Json run_factor(const Seed& seed, const Options& opts);

struct MechanismOutput {
  Json mechanism;
  Json trajectory;
  Json report;
};

MechanismOutput run_mechanism(const Seed& seed, const Options& opts);

Json run_dh(const Seed& seed, const Options& opts);

}  // namespace mbennett
