#pragma once

#include "gaugelab/group.hpp"
#include "gaugelab/rational.hpp"
#include "gaugelab/scale.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace gaugelab {

/// Finitely supported function on a discrete group with exact rational
/// coefficients. Zero coefficients are never stored.
struct WeightedFunction {
  GroupSpec group;
  std::map<Element, Rational> coeffs;

  explicit WeightedFunction(GroupSpec g = GroupSpec{}) : group(g) {}

  static WeightedFunction delta(const GroupSpec& group, const Element& g, const Rational& c = 1);

  void add(const Element& g, const Rational& c);
  Rational at(const Element& g) const;
  std::size_t support_size() const { return coeffs.size(); }
  bool operator==(const WeightedFunction& other) const { return group == other.group && coeffs == other.coeffs; }
};

WeightedFunction operator+(const WeightedFunction& a, const WeightedFunction& b);

/// (phi * psi)(g) = sum_h phi(h) psi(h^{-1} g). Throws std::invalid_argument
/// on a group mismatch and UnsupportedOperation for continuous groups.
WeightedFunction convolve(const WeightedFunction& phi, const WeightedFunction& psi);

/// phi*(g) = phi(g^{-1}) (real coefficients, counting measure).
WeightedFunction involution(const WeightedFunction& phi);

struct SeminormValue {
  int m;
  double log_value;
  std::optional<Rational> exact;  // present when every sigma value on the support is rational
};

/// sum_g sigma^m(g) |phi(g)|.
SeminormValue seminorm(const WeightedFunction& phi, const Scale& scale, int m);

/// Lines of "<element> <p/q>"; blank lines and '#' comments ignored.
WeightedFunction parse_function(const GroupSpec& group, std::string_view text);
std::string format_function(const WeightedFunction& phi);

}  // namespace gaugelab
