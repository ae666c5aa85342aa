#include "gaugelab/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaugelab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty integer");
  BigInt value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in integer: " + std::string(s));
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  const BigInt& den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

double log_abs(const BigInt& n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  BigInt a = abs(n);
  std::size_t bits = boost::multiprecision::msb(a);
  if (bits < 1000) return std::log(a.convert_to<double>());
  std::size_t shift = bits - 900;
  BigInt top = a >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_abs(const Rational& q) {
  return log_abs(BigInt(boost::multiprecision::numerator(q))) -
         log_abs(BigInt(boost::multiprecision::denominator(q)));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace gaugelab
