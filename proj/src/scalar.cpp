#include "mbennett/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <regex>
#include <stdexcept>

#include "mbennett/error.hpp"

namespace mbennett {

double ScalarTraits<double>::parse(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc() && ptr == last) return value;
  // Fractions are accepted in floating mode too.
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
  }
  throw Error(ErrorCode::kInvalidInput, "not a number: '" + text + "'");
}

std::string ScalarTraits<double>::to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational ScalarTraits<Rational>::parse(const std::string& text) {
  static const std::regex kFraction(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  static const std::regex kDecimal(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, kFraction)) {
    std::string num = m[1].str();
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    Rational r(mpz_class(num), m[2].matched ? mpz_class(m[2].str()) : mpz_class(1));
    if (r.get_den() == 0) throw Error(ErrorCode::kInvalidInput, "zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
  }
  if (std::regex_match(text, m, kDecimal) && (m[2].length() + m[3].length()) > 0) {
    const std::string digits = m[2].str() + m[3].str();
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) exponent += std::stol(m[4].str());
    mpz_class mantissa(digits);
    if (m[1].str() == "-") mantissa = -mantissa;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    r.canonicalize();
    return r;
  }
  throw Error(ErrorCode::kInvalidInput, "not a rational number: '" + text + "'");
}

}  // namespace mbennett
