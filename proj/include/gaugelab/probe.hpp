#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gaugelab {

enum class Verdict { Holds, Violated, Inconclusive };

/// "holds-on-evidence", "violated" or "inconclusive".
std::string verdict_string(Verdict v);
Verdict parse_verdict(const std::string& s);

struct ProbeReport {
  std::string probe;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::pair<std::string, double>> constants;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json evidence = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  std::string message;

  void set_constant(const std::string& name, double value);
  std::optional<double> constant(const std::string& name) const;
};

enum class Growth { Bounded, Growing, Ambiguous };
std::string growth_string(Growth g);

/// Classifies a sequence of log-domain required constants indexed by
/// positive abscissae. Growing needs strict increase over the last `window`
/// points and a slope of at least `min_slope` against log(abscissa); strict
/// increase with a smaller slope is Ambiguous; anything else is Bounded.
Growth classify_growth(const std::vector<double>& abscissa, const std::vector<double>& log_values,
                       int window = 5, double min_slope = 0.25);

/// One point of a fit: x = log of the bounding quantity, y = log of the
/// bounded quantity. `tag` lets callers map a witness back to its element.
struct FitPoint {
  double x;
  double y;
  std::size_t tag;
};

/// Points grouped by evidence level (a shell, a sampling width, a chain
/// length). `abscissa` must be positive and increasing across levels.
struct Level {
  double abscissa;
  std::vector<FitPoint> points;
};

struct ExponentFit {
  Verdict verdict = Verdict::Inconclusive;
  int exponent = -1;
  double log_c = 0.0;  // log C after clipping C >= 1
  double d = 0.0;      // additive constant (only when allowed)
  std::vector<double> abscissa;
  std::vector<double> required;  // per-level log constant at the reported exponent
  std::optional<std::size_t> witness_tag;
  std::vector<std::pair<int, Growth>> tried;
};

/// Searches the least exponent e in [e_min, e_max] for which
///   exp(y) <= C * exp(x)^e (+ D)
/// has a bounded per-level required constant (an increasing requirement whose
/// slope against log(abscissa) keeps shrinking counts as bounded), then the
/// least C >= 1, then D.
/// Points with x = -inf and finite y are charged to D when `allow_d`,
/// otherwise they make the level's requirement infinite.
/// Fewer than three usable levels gives Inconclusive.
ExponentFit fit_exponent(const std::vector<Level>& levels, int e_min, int e_max, bool allow_d);

/// Writes the fit's verdict, constants (C, the exponent under `exponent_name`,
/// D when `with_d`) and the per-level required constants into `report`.
void apply_fit(ProbeReport& report, const ExponentFit& fit, const std::string& exponent_name, bool with_d);

/// log(e^a + e^b) without overflow.
double log_add(double a, double b);
/// log(1 + e^a) without overflow.
double log1p_exp(double a);

}  // namespace gaugelab
