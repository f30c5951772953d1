#include "mbennett/json_io.hpp"

#include <set>

namespace mbennett {

std::string_view arithmetic_name(Arithmetic a) {
  return a == Arithmetic::kRational ? "rational" : "float";
}

std::string_view seed_mode_name(SeedMode m) {
  switch (m) {
    case SeedMode::kPrimal: return "primal";
    case SeedMode::kDual: return "dual";
    case SeedMode::kCanonical: return "canonical";
  }
  return "?";
}

Arithmetic parse_arithmetic(const std::string& text) {
  if (text == "rational") return Arithmetic::kRational;
  if (text == "float") return Arithmetic::kFloat;
  throw Error(ErrorCode::kInvalidInput, "arithmetic must be 'rational' or 'float', got '" + text + "'");
}

SeedMode parse_seed_mode(const std::string& text) {
  if (text == "primal") return SeedMode::kPrimal;
  if (text == "dual") return SeedMode::kDual;
  if (text == "canonical") return SeedMode::kCanonical;
  throw Error(ErrorCode::kInvalidInput,
              "mode must be 'primal', 'dual' or 'canonical', got '" + text + "'");
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"claim", c.claim}});
  }
  return {{"all_pass", r.all_pass()}, {"checks", checks}};
}

Seed parse_seed(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidInput, "seed must be a JSON object");
  if (!j.contains("mode") || !j["mode"].is_string()) {
    throw Error(ErrorCode::kInvalidInput, "seed needs a string field 'mode'");
  }
  Seed seed;
  seed.mode = parse_seed_mode(j["mode"].get<std::string>());
  if (j.contains("arithmetic")) {
    if (!j["arithmetic"].is_string()) {
      throw Error(ErrorCode::kInvalidInput, "'arithmetic' must be a string");
    }
    seed.arithmetic = parse_arithmetic(j["arithmetic"].get<std::string>());
  }

  std::vector<std::string> fields;
  switch (seed.mode) {
    case SeedMode::kPrimal: fields = {"h", "m", "n"}; break;
    case SeedMode::kDual: fields = {"h", "m", "n", "h_d", "m_d"}; break;
    case SeedMode::kCanonical:
      fields.assign(kCanonicalParamNames.begin(), kCanonicalParamNames.end());
      break;
  }
  std::set<std::string> allowed(fields.begin(), fields.end());
  allowed.insert({"mode", "arithmetic"});
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw Error(ErrorCode::kInvalidInput, "field '" + key + "' is not allowed in " +
                                                std::string(seed_mode_name(seed.mode)) + " mode");
    }
  }
  for (const auto& f : fields) {
    if (!j.contains(f)) {
      throw Error(ErrorCode::kInvalidInput, "field '" + f + "' is required in " +
                                                std::string(seed_mode_name(seed.mode)) + " mode");
    }
  }

  if (seed.mode == SeedMode::kCanonical) {
    std::array<Rational, 10> a;
    for (int i = 0; i < 10; ++i) a[i] = scalar_from_json<Rational>(j[kCanonicalParamNames[i]]);
    seed.params = CanonicalParams<Rational>::from_array(a);
    return seed;
  }
  seed.h = quat_from_json<Rational>(j["h"], "h");
  seed.m = quat_from_json<Rational>(j["m"], "m");
  seed.n = quat_from_json<Rational>(j["n"], "n");
  if (seed.mode == SeedMode::kDual) {
    seed.h_d = quat_from_json<Rational>(j["h_d"], "h_d");
    seed.m_d = quat_from_json<Rational>(j["m_d"], "m_d");
  }
  return seed;
}

Seed parse_seed(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("seed is not valid JSON: ") + e.what());
  }
  return parse_seed(j);
}

}  // namespace mbennett
