#include "bagcq/common.hpp"

#include <cctype>

namespace bagcq {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text) {
  std::size_t start = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    start = 1;
  }
  if (start == text.size()) throw ParseError("expected integer", 1, 1);
  boost::multiprecision::cpp_int value = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("invalid digit in '" + std::string(text) + "'", 1, i + 1);
    value = value * 10 + (text[i] - '0');
  }
  return negative ? -value : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  auto num = parse_integer(trim(text.substr(0, slash)));
  auto den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw ParseError("zero denominator", 1, slash + 2);
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Count falling_factorial(const Count& n, std::uint64_t k) {
  if (n < k) return 0;
  Count result = 1;
  for (std::uint64_t i = 0; i < k; ++i) result *= (n - i);
  return result;
}

}  // namespace bagcq
