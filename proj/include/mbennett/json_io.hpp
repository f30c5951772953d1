#pragma once

// JSON encodings. A dual quaternion is an array of 8 scalars, primal
// (w, x, y, z) then dual (w, x, y, z); exact scalars are "p/q" strings,
// floating scalars are numbers.

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mbennett/dualize.hpp"
#include "mbennett/mechanism.hpp"
#include "mbennett/report.hpp"

namespace mbennett {

using Json = nlohmann::json;

enum class Arithmetic { kRational, kFloat };
enum class SeedMode { kPrimal, kDual, kCanonical };

std::string_view arithmetic_name(Arithmetic a);
std::string_view seed_mode_name(SeedMode m);
Arithmetic parse_arithmetic(const std::string& text);
SeedMode parse_seed_mode(const std::string& text);

template <class S>
Json scalar_to_json(const S& x) {
  if constexpr (ScalarTraits<S>::kExact) {
    return ScalarTraits<S>::to_string(x);
  } else {
    return x;
  }
}

template <class S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
  if (j.is_number_integer()) return ScalarTraits<S>::from_int(j.get<long>());
  if (j.is_number()) {
    if constexpr (ScalarTraits<S>::kExact) {
      return ScalarTraits<S>::parse(j.dump());
    } else {
      return j.get<double>();
    }
  }
  throw Error(ErrorCode::kInvalidInput, "expected a number or a \"p/q\" string, got " + j.dump());
}

template <class S>
Json ext_to_json(const ExtParam<S>& p) {
  return p.is_inf() ? Json("inf") : scalar_to_json(p.value());
}

template <class S>
Json dq_to_json(const DualQuaternion<S>& h) {
  Json out = Json::array();
  for (const auto& c : h.to_array()) out.push_back(scalar_to_json(c));
  return out;
}

template <class S>
Json quat_to_json(const Quaternion<S>& q) {
  return Json::array({scalar_to_json(q.w), scalar_to_json(q.x), scalar_to_json(q.y),
                      scalar_to_json(q.z)});
}

/// Accepts 8 scalars (dual quaternion) or 4 (real quaternion, zero dual part).
template <class S>
DualQuaternion<S> dq_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || (j.size() != 8 && j.size() != 4)) {
    throw Error(ErrorCode::kInvalidInput, "field '" + field + "' must be an array of 4 or 8 scalars");
  }
  std::array<S, 8> c{};
  for (std::size_t i = 0; i < 8; ++i) c[i] = i < j.size() ? scalar_from_json<S>(j[i]) : S(0);
  return DualQuaternion<S>::from_array(c);
}

template <class S>
Quaternion<S> quat_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::kInvalidInput, "field '" + field + "' must be an array of 4 scalars");
  }
  return {scalar_from_json<S>(j[0]), scalar_from_json<S>(j[1]), scalar_from_json<S>(j[2]),
          scalar_from_json<S>(j[3])};
}

inline Json line_to_json(const Line<double>& l) {
  const auto c = l.coords();
  return Json(std::vector<double>(c.begin(), c.end()));
}

template <class S>
Json poly_to_json(const BiPoly<S>& p) {
  Json terms = Json::array();
  for (int i = 0; i <= p.deg_t(); ++i) {
    for (int j = 0; j <= p.deg_s(); ++j) {
      const auto& c = p.coeff(i, j);
      if (c.is_zero(0.0)) continue;
      terms.push_back({{"t", i}, {"s", j}, {"coeff", dq_to_json(c)}});
    }
  }
  return {{"deg_t", p.deg_t()}, {"deg_s", p.deg_s()}, {"terms", terms}};
}

template <class S>
Json factors_to_json(const FactorTuple<S>& f) {
  Json out = Json::array();
  for (const auto& x : f) {
    out.push_back({{"var", std::string(1, var_name(x.var))}, {"coeff", dq_to_json(x.coeff)}});
  }
  return out;
}

template <class S>
Json pair_to_json(const AltFactorizationPair<S>& p) {
  return {{"left", factors_to_json(p.left)},
          {"right", factors_to_json(p.right)},
          {"product", poly_to_json(p.product)}};
}

Json report_to_json(const Report& r);

template <class S>
Json system_to_json(const DualSystem<S>& sys, const DualSolution<S>& sol) {
  Json matrix = Json::array();
  Json rhs = Json::array();
  for (int r = 0; r < sys.matrix.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < sys.matrix.cols(); ++c) row.push_back(scalar_to_json(sys.matrix(r, c)));
    matrix.push_back(row);
    rhs.push_back(scalar_to_json(sys.rhs[r]));
  }
  Json values = Json::array();
  for (const auto& v : sol.values) values.push_back(scalar_to_json(v));
  return {{"rows", sys.matrix.rows()},
          {"cols", sys.matrix.cols()},
          {"unknowns", sys.unknowns},
          {"row_labels", sys.row_labels},
          {"matrix", matrix},
          {"rhs", rhs},
          {"rank", sol.rank},
          {"nullity", sol.nullspace.size()},
          {"unique", sol.unique()},
          {"residual", sol.residual},
          {"solution", values}};
}

template <class S>
Json spec_to_json(const MechanismSpec<S>& spec) {
  Json coeffs;
  static constexpr std::array<const char*, 8> kKeys{"h", "l", "m", "n", "np", "mp", "lp", "hp"};
  for (int i = 0; i < 8; ++i) coeffs[kKeys[i]] = dq_to_json(spec.coeffs[i]);
  Json out{{"spec", coeffs}};
  if (spec.canonical) {
    Json params = Json::array();
    for (const auto& v : spec.canonical->to_array()) params.push_back(scalar_to_json(v));
    out["canonical_params"] = params;
  }
  return out;
}

template <class S>
MechanismSpec<S> spec_from_json(const Json& j) {
  static constexpr std::array<const char*, 8> kKeys{"h", "l", "m", "n", "np", "mp", "lp", "hp"};
  if (!j.is_object() || !j.contains("spec")) {
    throw Error(ErrorCode::kInvalidInput, "mechanism file needs a 'spec' object");
  }
  MechanismSpec<S> out;
  for (int i = 0; i < 8; ++i) {
    if (!j["spec"].contains(kKeys[i])) {
      throw Error(ErrorCode::kInvalidInput, std::string("spec is missing '") + kKeys[i] + "'");
    }
    out.coeffs[i] = dq_from_json<S>(j["spec"][kKeys[i]], kKeys[i]);
  }
  if (j.contains("canonical_params")) {
    const Json& p = j["canonical_params"];
    if (!p.is_array() || p.size() != 10) {
      throw Error(ErrorCode::kInvalidInput, "canonical_params must hold 10 scalars");
    }
    std::array<S, 10> a;
    for (int i = 0; i < 10; ++i) a[i] = scalar_from_json<S>(p[i]);
    out.canonical = CanonicalParams<S>::from_array(a);
  }
  return out;
}

/// A parsed seed document, scalars kept as exact rationals; the float path
/// converts on use.
struct Seed {
  SeedMode mode = SeedMode::kPrimal;
  std::optional<Arithmetic> arithmetic;
  Quaternion<Rational> h, m, n;
  Quaternion<Rational> h_d, m_d;
  CanonicalParams<Rational> params{};
};

/// Parses a seed. Exactly the fields of the chosen mode may be present:
/// primal {h, m, n}, dual {h, m, n, h_d, m_d}, canonical {h1 … nu}; plus
/// "mode" and an optional "arithmetic".
Seed parse_seed(const Json& j);
Seed parse_seed(const std::string& text);

}  // namespace mbennett
