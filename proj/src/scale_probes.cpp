#include "gaugelab/scale_probes.hpp"

#include "gaugelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gaugelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool log_le(double lhs, double rhs) {
  if (lhs == -kInf) return true;
  if (rhs == kInf) return true;
  return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

bool log_eq(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

nlohmann::json value_json(const ScaleValue& v) {
  nlohmann::json j = {{"log_value", v.log}};
  if (v.exact) j["exact"] = format_rational(*v.exact);
  return j;
}

ProbeReport check_axioms_impl(const Scale& scale, ScaleKind kind, const std::vector<Element>& singles,
                              const std::vector<Element>& pair_domain, nlohmann::json evidence) {
  const GroupSpec& group = scale.group;
  ProbeReport report;
  report.probe = "check-axioms";
  report.details["kind"] = kind_string(kind);
  report.details["scale"] = scale.name;
  bool gauge = kind == ScaleKind::Gauge;
  if (kind == ScaleKind::Scale) {
    report.verdict = Verdict::Holds;
    report.message = "a plain scale has no axioms beyond being defined";
    report.evidence = evidence;
    return report;
  }
  auto violate = [&](const std::string& axiom, nlohmann::json witness) {
    report.verdict = Verdict::Violated;
    report.witness = std::move(witness);
    report.witness["axiom"] = axiom;
    report.evidence = evidence;
    return report;
  };

  Element e = identity(group);
  ScaleValue ve = scale.eval(e);
  bool identity_ok = gauge ? (ve.exact ? *ve.exact == 0 : ve.log == -kInf)
                           : (ve.exact ? *ve.exact == 1 : std::abs(ve.log) <= 1e-12);
  if (!identity_ok) return violate(gauge ? "vanishes at identity" : "equals 1 at identity",
                                   {{"g", format_element(group, e)}, {"value", value_json(ve)}});

  std::size_t symmetry_checks = 0, pair_checks = 0;
  for (const Element& g : singles) {
    ScaleValue v = scale.eval(g);
    if (!gauge) {
      bool ge1 = v.exact ? *v.exact >= 1 : v.log >= -1e-12;
      if (!ge1) return violate("at least 1", {{"g", format_element(group, g)}, {"value", value_json(v)}});
    }
    ScaleValue vi;
    try {
      vi = scale.eval(inverse(group, g));
    } catch (const NotFound&) {
      continue;
    }
    ++symmetry_checks;
    bool same = (v.exact && vi.exact) ? *v.exact == *vi.exact : log_eq(v.log, vi.log);
    if (!same)
      return violate("symmetric", {{"g", format_element(group, g)},
                                   {"value", value_json(v)},
                                   {"inverse_value", value_json(vi)}});
  }

  std::vector<ScaleValue> vals;
  vals.reserve(pair_domain.size());
  for (const Element& g : pair_domain) vals.push_back(scale.eval(g));
  for (std::size_t i = 0; i < pair_domain.size(); ++i) {
    for (std::size_t j = 0; j < pair_domain.size(); ++j) {
      ScaleValue vp;
      try {
        vp = scale.eval(multiply(group, pair_domain[i], pair_domain[j]));
      } catch (const NotFound&) {
        continue;
      }
      ++pair_checks;
      const ScaleValue &a = vals[i], &b = vals[j];
      bool ok;
      if (vp.exact && a.exact && b.exact)
        ok = gauge ? *vp.exact <= *a.exact + *b.exact : *vp.exact <= *a.exact * *b.exact;
      else
        ok = log_le(vp.log, gauge ? log_add(a.log, b.log) : a.log + b.log);
      if (!ok)
        return violate(gauge ? "subadditive" : "submultiplicative",
                       {{"g", format_element(group, pair_domain[i])},
                        {"h", format_element(group, pair_domain[j])},
                        {"value_g", value_json(a)},
                        {"value_h", value_json(b)},
                        {"value_gh", value_json(vp)}});
    }
  }
  evidence["symmetry_checks"] = symmetry_checks;
  evidence["pair_checks"] = pair_checks;
  report.evidence = evidence;
  report.verdict = Verdict::Holds;
  return report;
}

std::vector<Level> shell_levels(const ShellTable& table, int upto,
                                const std::function<FitPoint(const Element&, std::size_t)>& point) {
  std::vector<Level> levels;
  std::size_t tag = 0;
  for (int n = 0; n <= upto; ++n) {
    Level level{static_cast<double>(n + 1), {}};
    for (const Element& g : table.shells[n]) level.points.push_back(point(g, tag++));
    levels.push_back(std::move(level));
  }
  return levels;
}

nlohmann::json table_evidence(const ShellTable& table) {
  return {{"radius", table.radius}, {"ball_size", table.size()}, {"truncated", table.truncated},
          {"group", table.group.to_string()}};
}

}  // namespace

std::vector<Element> ball_elements(const ShellTable& table, int n) {
  std::vector<Element> out;
  for (int i = 0; i <= std::min(n, table.radius); ++i)
    out.insert(out.end(), table.shells[i].begin(), table.shells[i].end());
  return out;
}

ProbeReport check_axioms(const Scale& scale, ScaleKind kind, const ShellTable& table) {
  return check_axioms_impl(scale, kind, ball_elements(table, table.radius), ball_elements(table, table.radius / 2),
                           table_evidence(table));
}

ProbeReport check_axioms(const Scale& scale, ScaleKind kind, const std::vector<Element>& samples) {
  return check_axioms_impl(scale, kind, samples, samples, {{"samples", samples.size()}});
}

ProbeReport dominates_probe(const Scale& s1, const Scale& s2, const ShellTable& table, int m_max) {
  ProbeReport report;
  report.probe = "dominates";
  report.evidence = table_evidence(table);
  std::vector<Element> flat = ball_elements(table, table.radius);
  auto levels = shell_levels(table, table.radius, [&](const Element& g, std::size_t tag) {
    return FitPoint{s2.log_value(g), s1.log_value(g), tag};
  });
  ExponentFit fit = fit_exponent(levels, 0, m_max, true);
  apply_fit(report, fit, "m", true);
  if (fit.verdict == Verdict::Violated && fit.witness_tag) {
    const Element& g = flat[*fit.witness_tag];
    report.witness = {{"g", format_element(table.group, g)},
                      {"log_sigma1", s1.log_value(g)},
                      {"log_sigma2", s2.log_value(g)},
                      {"m", fit.exponent}};
  }
  report.details["inequality"] = "sigma1 <= C * sigma2^m + D";
  return report;
}

ProbeReport strong_dominates_probe(const Scale& t1, const Scale& t2, const ShellTable& table) {
  ProbeReport report;
  report.probe = "strong-dominates";
  report.evidence = table_evidence(table);
  std::vector<Element> flat = ball_elements(table, table.radius);
  auto levels = shell_levels(table, table.radius, [&](const Element& g, std::size_t tag) {
    return FitPoint{t2.log_value(g), t1.log_value(g), tag};
  });
  ExponentFit fit = fit_exponent(levels, 1, 1, true);
  apply_fit(report, fit, "m", true);
  if (fit.verdict == Verdict::Violated && fit.witness_tag) {
    const Element& g = flat[*fit.witness_tag];
    report.witness = {{"g", format_element(table.group, g)},
                      {"log_tau1", t1.log_value(g)},
                      {"log_tau2", t2.log_value(g)}};
  }
  report.details["inequality"] = "tau1 <= C * tau2 + D";
  return report;
}

ProbeReport translation_equiv_probe(const Scale& scale, const std::vector<Element>& shifts, const ShellTable& table,
                                    int d_max) {
  const GroupSpec& group = table.group;
  ProbeReport report;
  report.probe = "translation-equiv";
  report.evidence = table_evidence(table);
  report.evidence["shifts"] = shifts.size();
  if (shifts.empty()) {
    report.message = "no shifts given";
    return report;
  }
  bool any_violated = false, any_inconclusive = false;
  int worst_d = 0;
  double worst_log_c = 0, worst_d_const = 0;
  nlohmann::json per_shift = nlohmann::json::array();
  for (const Element& shift : shifts) {
    int upto = table.radius;
    if (scale.word_based) {
      auto len = table.word_gauge(shift);
      if (!len) throw NotFound("shift outside enumerated ball: " + format_element(group, shift));
      upto = table.radius - *len;
    }
    Element shift_inv = inverse(group, shift);
    std::vector<Element> flat = ball_elements(table, upto);
    auto levels = shell_levels(table, upto, [&](const Element& h, std::size_t tag) {
      return FitPoint{scale.log_value(h), scale.log_value(multiply(group, shift_inv, h)), tag};
    });
    ExponentFit fit = fit_exponent(levels, 1, d_max, true);
    nlohmann::json entry = {{"shift", format_element(group, shift)}, {"verdict", verdict_string(fit.verdict)}};
    if (fit.verdict == Verdict::Holds) {
      entry["C"] = std::exp(fit.log_c);
      entry["d"] = fit.exponent;
      entry["D"] = fit.d;
      if (fit.exponent > worst_d || (fit.exponent == worst_d && fit.log_c > worst_log_c)) {
        worst_d = fit.exponent;
        worst_log_c = fit.log_c;
      }
      worst_d_const = std::max(worst_d_const, fit.d);
    } else if (fit.verdict == Verdict::Violated) {
      if (!any_violated && fit.witness_tag) {
        const Element& h = flat[*fit.witness_tag];
        report.witness = {{"shift", format_element(group, shift)},
                          {"h", format_element(group, h)},
                          {"log_sigma_h", scale.log_value(h)},
                          {"log_sigma_shifted", scale.log_value(multiply(group, shift_inv, h))},
                          {"d", fit.exponent}};
        apply_fit(report, fit, "d", true);
      }
      any_violated = true;
    } else {
      any_inconclusive = true;
    }
    per_shift.push_back(entry);
  }
  report.details["per_shift"] = per_shift;
  report.details["inequality"] = "sigma(g^-1 h) <= C * sigma(h)^d + D";
  if (any_violated) {
    report.verdict = Verdict::Violated;
  } else if (any_inconclusive) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = Verdict::Holds;
    report.set_constant("C", std::exp(worst_log_c));
    report.set_constant("log_C", worst_log_c);
    report.set_constant("d", worst_d);
    report.set_constant("D", worst_d_const);
  }
  return report;
}

ProbeReport sub_polynomial_probe(const Scale& scale, const ShellTable& table, int d_max) {
  const GroupSpec& group = table.group;
  ProbeReport report;
  report.probe = "subpoly";
  report.evidence = table_evidence(table);
  int half = table.radius / 2;
  std::vector<Element> dom = ball_elements(table, half);
  std::vector<int> len;
  std::vector<double> l1p;
  for (const Element& g : dom) {
    len.push_back(*table.word_gauge(g));
    l1p.push_back(log1p_exp(scale.log_value(g)));
  }
  std::vector<Level> levels(half + 1);
  for (int n = 0; n <= half; ++n) levels[n].abscissa = n + 1;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      double y = scale.log_value(multiply(group, dom[i], dom[j]));
      levels[std::max(len[i], len[j])].points.push_back(FitPoint{l1p[i] + l1p[j], y, pairs.size()});
      pairs.emplace_back(i, j);
    }
  report.evidence["pairs"] = pairs.size();
  report.evidence["pair_radius"] = half;
  ExponentFit fit = fit_exponent(levels, 0, d_max, false);
  apply_fit(report, fit, "d", false);
  if (fit.verdict == Verdict::Violated && fit.witness_tag) {
    auto [i, j] = pairs[*fit.witness_tag];
    report.witness = {{"g", format_element(group, dom[i])},
                      {"h", format_element(group, dom[j])},
                      {"log_sigma_g", scale.log_value(dom[i])},
                      {"log_sigma_h", scale.log_value(dom[j])},
                      {"log_sigma_gh", scale.log_value(multiply(group, dom[i], dom[j]))},
                      {"d", fit.exponent}};
  }
  report.details["inequality"] = "sigma(gh) <= C * (1+sigma(g))^d * (1+sigma(h))^d";
  return report;
}

std::vector<std::vector<int>> generator_chains(std::size_t num_gens, int n, const ChainOptions& opts) {
  std::vector<std::vector<int>> chains;
  if (n <= 0 || num_gens == 0) return chains;
  double count = std::pow(static_cast<double>(num_gens), n);
  if (count <= static_cast<double>(opts.exhaustive_limit)) {
    std::vector<int> chain(n, 0);
    for (;;) {
      chains.push_back(chain);
      int pos = n - 1;
      while (pos >= 0 && ++chain[pos] == static_cast<int>(num_gens)) chain[pos--] = 0;
      if (pos < 0) break;
    }
    return chains;
  }
  for (std::size_t u = 0; u < num_gens; ++u) chains.emplace_back(n, static_cast<int>(u));
  std::mt19937_64 rng(opts.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(num_gens) - 1);
  for (std::size_t s = 0; s < opts.samples_per_length; ++s) {
    std::vector<int> chain(n);
    for (int& c : chain) c = pick(rng);
    chains.push_back(std::move(chain));
  }
  return chains;
}

ProbeReport m_sub_polynomial_probe(const Scale& scale, const GroupSpec& group, const GeneratingSet& gens,
                                   const ChainOptions& opts) {
  ProbeReport report;
  report.probe = "msubpoly";
  report.evidence = {{"chain_len_max", opts.chain_len_max}, {"seed", opts.seed},
                     {"generators", gens.elements.size()}, {"exhaustive_limit", opts.exhaustive_limit}};
  report.details["inequality"] = "sigma(g1...gn) <= C^n * sigma(g1)^l ... sigma(gn)^l";
  if (opts.chain_len_max < 4) {
    report.verdict = Verdict::Inconclusive;
    report.message = "chain length below 4 gives no growth evidence";
    return report;
  }
  std::vector<double> gen_log;
  for (const Element& g : gens.elements) gen_log.push_back(scale.log_value(g));

  std::vector<Level> levels;
  std::vector<std::vector<int>> all_chains;
  std::vector<std::pair<double, double>> raw;  // (sum log sigma(g_i), log sigma(product))
  std::size_t total = 0;
  for (int n = 1; n <= opts.chain_len_max; ++n) {
    Level level{static_cast<double>(n), {}};
    for (auto& chain : generator_chains(gens.elements.size(), n, opts)) {
      Element prod = identity(group);
      double sx = 0;
      for (int c : chain) {
        prod = multiply(group, prod, gens.elements[c]);
        sx += gen_log[c];
      }
      double y = scale.log_value(prod);
      level.points.push_back(FitPoint{sx / n, y / n, all_chains.size()});
      raw.emplace_back(sx, y);
      all_chains.push_back(std::move(chain));
      ++total;
    }
    levels.push_back(std::move(level));
  }
  report.evidence["chains"] = total;
  ExponentFit fit = fit_exponent(levels, 0, opts.exponent_max, false);
  apply_fit(report, fit, "l", false);
  if (fit.verdict == Verdict::Violated && fit.witness_tag) {
    const auto& chain = all_chains[*fit.witness_tag];
    auto [sx, y] = raw[*fit.witness_tag];
    nlohmann::json elems = nlohmann::json::array();
    for (int c : chain) elems.push_back(format_element(group, gens.elements[c]));
    report.witness = {{"chain", elems},
                      {"n", chain.size()},
                      {"l", fit.exponent},
                      {"log_ratio", y - fit.exponent * sx},
                      {"log_C_per_factor", (y - fit.exponent * sx) / static_cast<double>(chain.size())}};
  }
  return report;
}

}  // namespace gaugelab
