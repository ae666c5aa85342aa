#pragma once

#include "gaugelab/group.hpp"
#include "gaugelab/rational.hpp"
#include "gaugelab/shell_table.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace gaugelab {

enum class ScaleKind { Scale, Gauge, Weight };
std::string kind_string(ScaleKind k);
ScaleKind parse_kind(std::string_view s);

/// log sigma(g), plus sigma(g) itself when it is rational.
struct ScaleValue {
  double log;
  std::optional<Rational> exact;
};

/// An evaluation oracle g -> log sigma(g). The declared kind is a claim; the
/// probes check it.
struct Scale {
  std::string name;
  ScaleKind kind = ScaleKind::Scale;
  GroupSpec group;
  bool word_based = false;
  std::function<ScaleValue(const Element&)> eval;

  double log_value(const Element& g) const { return eval(g).log; }
  std::optional<Rational> exact_value(const Element& g) const { return eval(g).exact; }
};

/// Builds a scale from its spec string: abs, one_plus_abs, const:c, sqrt_abs,
/// half_abs, sq_abs, pow_abs:r, exp_abs, superexp, heis_s, qinf_gamma,
/// qinf_omega, word, word_weight, word_pow:k, one_plus_word, axb_omega, theta,
/// sl2_sigma, file:path. Word-based scales need `table` and throw NotFound
/// outside it.
Scale make_scale(std::string_view spec, const GroupSpec& group, std::shared_ptr<const ShellTable> table = nullptr);

/// True for specs that evaluate through a ShellTable.
bool scale_needs_table(std::string_view spec);

/// Integer-valued gauge: ceil(tau) off the identity, 1 where tau vanishes
/// off the identity, 0 at the identity.
Scale normalize_gauge(const Scale& tau);

enum class ExpDirection { GaugeToWeight, WeightToGauge };
/// e^tau, or log omega (throws std::domain_error where omega < 1).
Scale exp_bijection(const Scale& s, ExpDirection dir);

/// l^1 norm of the coordinates (Z^d, Heisenberg, unipotent, qvec).
std::optional<Rational> coordinate_abs(const GroupSpec& group, const Element& g);

}  // namespace gaugelab
