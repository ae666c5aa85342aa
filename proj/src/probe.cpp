#include "gaugelab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaugelab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds-on-evidence";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict parse_verdict(const std::string& s) {
  if (s == "holds-on-evidence") return Verdict::Holds;
  if (s == "violated") return Verdict::Violated;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw std::invalid_argument("unknown verdict: " + s);
}

void ProbeReport::set_constant(const std::string& name, double value) {
  for (auto& [k, v] : constants)
    if (k == name) {
      v = value;
      return;
    }
  constants.emplace_back(name, value);
}

std::optional<double> ProbeReport::constant(const std::string& name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  return std::nullopt;
}

std::string growth_string(Growth g) {
  switch (g) {
    case Growth::Bounded: return "bounded";
    case Growth::Growing: return "growing";
    case Growth::Ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  if (hi == kInf) return kInf;
  return hi + std::log1p(std::exp(lo - hi));
}

double log1p_exp(double a) {
  if (a == -kInf) return 0.0;
  if (a > 0) return a + std::log1p(std::exp(-a));
  return std::log1p(std::exp(a));
}

Growth classify_growth(const std::vector<double>& abscissa, const std::vector<double>& log_values, int window,
                       double min_slope) {
  std::size_t n = log_values.size();
  if (n < 2) return Growth::Bounded;
  for (double v : log_values)
    if (v == kInf) return Growth::Growing;
  std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n);
  std::size_t start = n - w;
  for (std::size_t i = start + 1; i < n; ++i) {
    double prev = log_values[i - 1], cur = log_values[i];
    double tol = 1e-12 * std::max(1.0, std::abs(prev));
    if (!(cur > prev + tol)) return Growth::Bounded;
  }
  if (w < static_cast<std::size_t>(window)) return Growth::Ambiguous;
  // Least-squares slope of the log value against log(abscissa).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = start; i < n; ++i) {
    double x = std::log(abscissa[i]);
    sx += x;
    sy += log_values[i];
    sxx += x * x;
    sxy += x * log_values[i];
  }
  double denom = static_cast<double>(w) * sxx - sx * sx;
  if (denom <= 0) return Growth::Ambiguous;
  double slope = (static_cast<double>(w) * sxy - sx * sy) / denom;
  return slope >= min_slope ? Growth::Growing : Growth::Ambiguous;
}

namespace {

// Strictly increasing values whose slope against log(abscissa) strictly
// decreases over the last `window` points: growth that is levelling off.
bool decelerating(const std::vector<double>& abscissa, const std::vector<double>& values, std::size_t window = 5) {
  std::size_t n = values.size();
  if (n < window) return false;
  double prev_slope = kInf;
  for (std::size_t i = n - window + 1; i < n; ++i) {
    double slope = (values[i] - values[i - 1]) / (std::log(abscissa[i]) - std::log(abscissa[i - 1]));
    if (!(slope < prev_slope * (1 - 1e-9))) return false;
    prev_slope = slope;
  }
  return true;
}

}  // namespace

ExponentFit fit_exponent(const std::vector<Level>& levels, int e_min, int e_max, bool allow_d) {
  ExponentFit fit;
  bool any_ambiguous = false;
  ExponentFit last_growing;

  for (int e = e_min; e <= e_max; ++e) {
    std::vector<double> absc, req;
    std::vector<std::size_t> level_tag;
    double d = 0.0;
    for (const Level& level : levels) {
      double best = -kInf;
      std::size_t best_tag = 0;
      bool usable = false;
      for (const FitPoint& p : level.points) {
        if (p.y == -kInf) {
          usable = true;
          continue;
        }
        double r;
        if (e == 0) {
          r = p.y;
        } else if (p.x == -kInf) {
          if (allow_d) {
            d = std::max(d, std::exp(p.y));
            usable = true;
            continue;
          }
          r = kInf;
        } else {
          r = p.y - e * p.x;
        }
        usable = true;
        if (r > best || std::isnan(best)) {
          best = r;
          best_tag = p.tag;
        }
      }
      if (!usable || best == -kInf) continue;
      absc.push_back(level.abscissa);
      req.push_back(best);
      level_tag.push_back(best_tag);
    }
    if (absc.size() < 3) {
      fit.verdict = Verdict::Inconclusive;
      fit.exponent = e;
      fit.abscissa = absc;
      fit.required = req;
      return fit;
    }
    Growth g = classify_growth(absc, req);
    if (g == Growth::Ambiguous && decelerating(absc, req)) g = Growth::Bounded;
    fit.tried.emplace_back(e, g);
    if (g == Growth::Bounded) {
      fit.verdict = Verdict::Holds;
      fit.exponent = e;
      fit.log_c = std::max(0.0, *std::max_element(req.begin(), req.end()));
      fit.d = d;
      fit.abscissa = absc;
      fit.required = req;
      fit.witness_tag.reset();
      return fit;
    }
    if (g == Growth::Ambiguous) any_ambiguous = true;
    last_growing.exponent = e;
    last_growing.abscissa = absc;
    last_growing.required = req;
    last_growing.witness_tag = level_tag.back();
  }
  fit.exponent = last_growing.exponent;
  fit.abscissa = last_growing.abscissa;
  fit.required = last_growing.required;
  fit.witness_tag = last_growing.witness_tag;
  fit.verdict = any_ambiguous ? Verdict::Inconclusive : Verdict::Violated;
  return fit;
}

void apply_fit(ProbeReport& report, const ExponentFit& fit, const std::string& exponent_name, bool with_d) {
  report.verdict = fit.verdict;
  if (fit.verdict == Verdict::Holds) {
    report.set_constant("C", std::exp(fit.log_c));
    report.set_constant("log_C", fit.log_c);
    report.set_constant(exponent_name, fit.exponent);
    if (with_d) report.set_constant("D", fit.d);
  }
  nlohmann::json seq = nlohmann::json::array();
  for (std::size_t i = 0; i < fit.required.size(); ++i)
    seq.push_back({{"level", fit.abscissa[i]}, {"log_value_required", fit.required[i]}});
  report.details["required_constants"] = seq;
  report.details["exponent_for_sequence"] = fit.exponent;
  nlohmann::json tried = nlohmann::json::array();
  for (const auto& [e, g] : fit.tried) tried.push_back({{exponent_name, e}, {"growth", growth_string(g)}});
  report.details["exponents_tried"] = tried;
}

}  // namespace gaugelab
