#include "gaugelab/weighted_function.hpp"

#include "gaugelab/errors.hpp"
#include "gaugelab/probe.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gaugelab {

WeightedFunction WeightedFunction::delta(const GroupSpec& group, const Element& g, const Rational& c) {
  WeightedFunction f(group);
  f.add(g, c);
  return f;
}

void WeightedFunction::add(const Element& g, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

Rational WeightedFunction::at(const Element& g) const {
  auto it = coeffs.find(g);
  return it == coeffs.end() ? Rational(0) : it->second;
}

WeightedFunction operator+(const WeightedFunction& a, const WeightedFunction& b) {
  if (!(a.group == b.group)) throw std::invalid_argument("functions live on different groups");
  WeightedFunction out = a;
  for (const auto& [g, c] : b.coeffs) out.add(g, c);
  return out;
}

WeightedFunction convolve(const WeightedFunction& phi, const WeightedFunction& psi) {
  if (!(phi.group == psi.group)) throw std::invalid_argument("functions live on different groups");
  if (!phi.group.is_discrete()) throw UnsupportedOperation("convolution needs a discrete group");
  WeightedFunction out(phi.group);
  for (const auto& [h, a] : phi.coeffs)
    for (const auto& [k, b] : psi.coeffs) out.add(multiply(phi.group, h, k), a * b);
  return out;
}

WeightedFunction involution(const WeightedFunction& phi) {
  if (!phi.group.is_discrete()) throw UnsupportedOperation("involution needs a discrete group");
  WeightedFunction out(phi.group);
  for (const auto& [g, c] : phi.coeffs) out.add(inverse(phi.group, g), c);
  return out;
}

SeminormValue seminorm(const WeightedFunction& phi, const Scale& scale, int m) {
  if (m < 0) throw std::invalid_argument("seminorm index must be nonnegative");
  SeminormValue out{m, -std::numeric_limits<double>::infinity(), Rational(0)};
  for (const auto& [g, c] : phi.coeffs) {
    ScaleValue v = scale.eval(g);
    Rational absc = c < 0 ? Rational(-c) : c;
    double term = (m == 0 ? 0.0 : m * v.log) + log_abs(absc);
    out.log_value = log_add(out.log_value, term);
    if (out.exact) {
      if (m == 0) {
        *out.exact += absc;
      } else if (v.exact) {
        Rational p = 1;
        for (int i = 0; i < m; ++i) p *= *v.exact;
        *out.exact += p * absc;
      } else {
        out.exact.reset();
      }
    }
  }
  if (out.exact) out.log_value = log_abs(*out.exact);
  return out;
}

WeightedFunction parse_function(const GroupSpec& group, std::string_view text) {
  WeightedFunction f(group);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto last = line.find_last_not_of(" \t\r");
    if (last == std::string::npos) continue;
    line.erase(last + 1);
    auto split = line.find_last_of(" \t");
    if (split == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected '<element> <p/q>'");
    f.add(parse_element(group, line.substr(0, split)), parse_rational(line.substr(split + 1)));
  }
  return f;
}

std::string format_function(const WeightedFunction& phi) {
  std::ostringstream os;
  for (const auto& [g, c] : phi.coeffs) os << format_element(phi.group, g) << ' ' << format_rational(c) << '\n';
  return os.str();
}

}  // namespace gaugelab
