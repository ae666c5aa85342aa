#include "gaugelab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaugelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineFit {
  double slope, intercept, rms;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  return {slope, intercept, std::sqrt(ss / n)};
}

}  // namespace

GrowthReport growth_table(const ShellTable& table) {
  GrowthReport r;
  r.group = table.group;
  r.radius = table.radius;
  r.truncated = table.truncated;
  std::size_t total = 0;
  for (int n = 0; n <= table.radius; ++n) {
    total += table.shells[n].size();
    r.sphere.push_back(table.shells[n].size());
    r.ball.push_back(total);
  }
  return r;
}

GrowthReport growth_table(const GroupSpec& group, const GeneratingSet& gens, int radius, std::size_t cap) {
  return growth_table(ball_enumerate(group, gens, radius, cap));
}

std::string model_string(GrowthModel m) {
  switch (m) {
    case GrowthModel::Polynomial: return "polynomial";
    case GrowthModel::Exponential: return "exponential";
    case GrowthModel::Undetermined: return "undetermined";
  }
  return "undetermined";
}

GrowthFit growth_classify(const GrowthReport& report, double threshold) {
  if (report.ball.size() < 6) throw std::invalid_argument("growth classification needs at least 6 shells");
  int R = report.radius;
  GrowthFit fit;
  fit.first_n = std::max(1, R / 2);
  fit.last_n = R;
  std::vector<double> logn, n, logb;
  for (int i = fit.first_n; i <= R; ++i) {
    logn.push_back(std::log(static_cast<double>(i)));
    n.push_back(i);
    logb.push_back(std::log(static_cast<double>(report.ball[i])));
  }
  LineFit poly = least_squares(logn, logb), expo = least_squares(n, logb);
  fit.slope_loglog = poly.slope;
  fit.degree = static_cast<int>(std::lround(poly.slope));
  fit.poly_intercept = poly.intercept;
  fit.poly_residual = poly.rms;
  fit.rate = expo.slope;
  fit.exp_intercept = expo.intercept;
  fit.exp_residual = expo.rms;
  if (std::min(poly.rms, expo.rms) > threshold)
    fit.model = GrowthModel::Undetermined;
  else
    fit.model = poly.rms <= expo.rms ? GrowthModel::Polynomial : GrowthModel::Exponential;
  return fit;
}

std::string integrability_string(IntegrabilityVerdict v) {
  switch (v) {
    case IntegrabilityVerdict::ConvergesCertified: return "converges-certified";
    case IntegrabilityVerdict::DivergesEvidence: return "diverges-evidence";
    case IntegrabilityVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

IntegrabilitySum integrability_sum(const Scale& scale, const ShellTable& table, int p) {
  if (p < 0) throw std::invalid_argument("exponent must be nonnegative");
  IntegrabilitySum out;
  out.p = p;
  out.radius = table.radius;
  double partial = -kInf;
  std::size_t ball = 0;
  bool infinite_term = false;
  for (int n = 0; n <= table.radius; ++n) {
    double term = -kInf;
    for (const Element& g : table.shells[n]) term = log_add(term, -p * scale.log_value(g));
    if (term == kInf) infinite_term = true;
    partial = log_add(partial, term);
    ball += table.shells[n].size();
    out.rows.push_back({n, table.shells[n].size(), ball, term, partial});
  }
  out.partial_sum = std::exp(partial);
  if (infinite_term) {
    out.note = "sigma vanishes on the ball, so sigma^{-p} is infinite";
    return out;
  }
  int R = table.radius;
  int lo = std::max(1, R / 2);
  if (R - lo < 4) {
    out.note = "too few shells for a tail certificate";
    return out;
  }

  // Ratios t_{n+1}/t_n and local decay exponents over the window.
  std::vector<double> log_ratio, decay;
  for (int n = lo; n < R; ++n) {
    double lr = out.rows[n + 1].log_term - out.rows[n].log_term;
    log_ratio.push_back(lr);
    decay.push_back(-lr / std::log((n + 2.0) / (n + 1.0)));
  }
  double rho_log = *std::max_element(log_ratio.begin(), log_ratio.end());
  bool ratios_nonincreasing = true;
  for (std::size_t i = 1; i < log_ratio.size(); ++i)
    if (log_ratio[i] > log_ratio[i - 1] + 1e-9) ratios_nonincreasing = false;
  out.ratio = std::exp(rho_log);
  out.decay_exponent = *std::min_element(decay.begin(), decay.end());

  double t_r = std::exp(out.rows[R].log_term);
  if (rho_log < 0 && ratios_nonincreasing) {
    out.certificate = "geometric";
    out.tail_bound = t_r * out.ratio / (1.0 - out.ratio);
    out.verdict = IntegrabilityVerdict::ConvergesCertified;
    return out;
  }
  double alpha = out.decay_exponent;
  if (alpha > 1.0) {
    double log_a = -kInf;
    for (int n = lo; n <= R; ++n) log_a = std::max(log_a, out.rows[n].log_term + alpha * std::log1p(n));
    out.certificate = "power";
    out.tail_bound = std::exp(log_a + (1.0 - alpha) * std::log1p(R)) / (alpha - 1.0);
    out.verdict = IntegrabilityVerdict::ConvergesCertified;
    return out;
  }
  // Terms decaying no faster than 1/n: partial sums grow without a tail bound.
  if (alpha <= 1.0 + 1e-9) {
    out.verdict = IntegrabilityVerdict::DivergesEvidence;
    out.note = "shell terms decay no faster than 1/n over the window";
  }
  return out;
}

ProbeReport holder_embedding_check(const WeightedFunction& phi, const Scale& scale, int m, double r, int p,
                                   std::optional<double> c) {
  ProbeReport report;
  report.probe = "holder-check";
  report.details["inequality"] = "||sigma^m phi||_r <= C^(1/r) * ||sigma^(m+p) phi||_inf";
  report.set_constant("m", m);
  report.set_constant("r", r);
  report.set_constant("p", p);
  report.evidence["support_size"] = phi.support_size();
  if (r < 1.0) throw std::invalid_argument("r must be at least 1");
  if (!c) {
    report.verdict = Verdict::Inconclusive;
    report.message = "no integrability certificate for this exponent";
    return report;
  }
  report.set_constant("C", *c);
  double lhs = -kInf, sup = -kInf;
  for (const auto& [g, coef] : phi.coeffs) {
    double ls = scale.log_value(g);
    double lc = log_abs(coef);
    lhs = log_add(lhs, r * (m * ls + lc));
    sup = std::max(sup, (m + p) * ls + lc);
  }
  lhs /= r;
  double rhs = std::log(*c) / r + sup;
  report.details["log_lhs"] = lhs;
  report.details["log_rhs"] = rhs;
  bool ok = lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
  report.verdict = ok ? Verdict::Holds : Verdict::Violated;
  if (!ok) report.witness = {{"log_lhs", lhs}, {"log_rhs", rhs}};
  return report;
}

}  // namespace gaugelab
