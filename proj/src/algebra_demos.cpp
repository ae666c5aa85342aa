#include "gaugelab/algebra_demos.hpp"

#include "gaugelab/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaugelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rational rpow(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

nlohmann::json seminorm_json(const SeminormValue& v) {
  nlohmann::json j = {{"m", v.m}, {"log_value", v.log_value}};
  if (v.exact) j["exact"] = format_rational(*v.exact);
  return j;
}

// alpha_q(delta_r) = delta_{q.r}: pushes the function forward along pointwise
// multiplication by the positive tuple q.
WeightedFunction push_forward(const WeightedFunction& phi, const Element& tuple) {
  WeightedFunction out(phi.group);
  for (const auto& [r, c] : phi.coeffs) {
    Element::RatMap moved;
    for (const auto& [i, v] : r.rats()) {
      Rational factor = 1;
      for (const auto& [j, q] : tuple.rats())
        if (j == i) factor = q;
      moved.emplace_back(i, v * factor);
    }
    out.add(canonical_form(phi.group, Element(std::move(moved))), c);
  }
  return out;
}

}  // namespace

ProbeReport conv_bound_check(const WeightedFunction& phi, const WeightedFunction& psi, const Scale& scale, int m,
                             double c, int d) {
  ProbeReport report;
  report.probe = "conv-bound";
  report.details["inequality"] = "||phi*psi||_m <= C * ||phi||_{dm} * ||psi||_{dm}";
  report.set_constant("C", c);
  report.set_constant("d", d);
  report.set_constant("m", m);
  SeminormValue lhs = seminorm(convolve(phi, psi), scale, m);
  SeminormValue a = seminorm(phi, scale, d * m), b = seminorm(psi, scale, d * m);
  bool ok;
  if (lhs.exact && a.exact && b.exact) {
    ok = *lhs.exact <= Rational(c) * *a.exact * *b.exact;
    report.evidence["arithmetic"] = "exact";
  } else {
    double rhs = std::log(c) + a.log_value + b.log_value;
    ok = lhs.log_value <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
    report.evidence["arithmetic"] = "log-domain";
  }
  report.details["lhs"] = seminorm_json(lhs);
  report.details["phi_norm"] = seminorm_json(a);
  report.details["psi_norm"] = seminorm_json(b);
  report.evidence["support_sizes"] = {phi.support_size(), psi.support_size()};
  report.verdict = ok ? Verdict::Holds : Verdict::Violated;
  if (!ok) report.witness = {{"lhs_log", lhs.log_value}, {"rhs_log", std::log(c) + a.log_value + b.log_value}};
  return report;
}

DeltaRatio delta_power_ratio(const Scale& scale, const std::vector<Element>& chain, int m, int k) {
  if (chain.empty()) throw std::invalid_argument("empty chain");
  const GroupSpec& group = scale.group;
  WeightedFunction f = WeightedFunction::delta(group, chain.front());
  for (std::size_t i = 1; i < chain.size(); ++i) f = convolve(f, WeightedFunction::delta(group, chain[i]));
  SeminormValue norm = seminorm(f, scale, m);
  double denom = 0;
  std::optional<Rational> exact_denom = Rational(1);
  for (const Element& g : chain) {
    SeminormValue s = seminorm(WeightedFunction::delta(group, g), scale, k);
    denom += s.log_value;
    if (exact_denom && s.exact)
      *exact_denom *= *s.exact;
    else
      exact_denom.reset();
  }
  DeltaRatio out;
  out.log_chain_norm = norm.log_value;
  Element prod = identity(group);
  for (const Element& g : chain) prod = multiply(group, prod, g);
  double lp = scale.log_value(prod);
  out.log_direct = m == 0 ? 0.0 : m * lp;
  out.log_ratio = norm.log_value - denom;
  if (norm.exact && exact_denom && *exact_denom != 0) out.exact_ratio = Rational(*norm.exact / *exact_denom);
  return out;
}

ProbeReport mconvexity_probe(const Scale& scale, const GroupSpec& group, const GeneratingSet& gens,
                             const ChainOptions& opts) {
  ProbeReport report;
  report.probe = "mconvex";
  report.details["inequality"] =
      "||e_g1 * ... * e_gn||_1 <= C^n * ||e_g1||_k ... ||e_gn||_k over generator chains";
  report.evidence = {{"n_max", opts.chain_len_max}, {"seed", opts.seed}, {"generators", gens.elements.size()},
                     {"exhaustive_limit", opts.exhaustive_limit}};
  if (opts.chain_len_max < 4) {
    report.verdict = Verdict::Inconclusive;
    report.message = "chain length below 4 gives no growth evidence";
    return report;
  }
  std::vector<double> gen_log;
  for (const Element& g : gens.elements)
    gen_log.push_back(seminorm(WeightedFunction::delta(group, g), scale, 1).log_value);

  std::vector<Level> levels;
  std::vector<std::vector<int>> all_chains;
  nlohmann::json k1 = nlohmann::json::array();
  std::size_t k1_best_tag = 0;
  std::size_t total = 0;
  for (int n = 1; n <= opts.chain_len_max; ++n) {
    Level level{static_cast<double>(n), {}};
    double best = -kInf;
    std::size_t best_tag = 0;
    for (auto& chain : generator_chains(gens.elements.size(), n, opts)) {
      WeightedFunction f = WeightedFunction::delta(group, gens.elements[chain[0]]);
      double sx = gen_log[chain[0]];
      for (int i = 1; i < n; ++i) {
        f = convolve(f, WeightedFunction::delta(group, gens.elements[chain[i]]));
        sx += gen_log[chain[i]];
      }
      double y = seminorm(f, scale, 1).log_value;
      if (y - sx > best) {
        best = y - sx;
        best_tag = all_chains.size();
      }
      level.points.push_back(FitPoint{sx / n, y / n, all_chains.size()});
      all_chains.push_back(std::move(chain));
      ++total;
    }
    k1.push_back({{"n", n}, {"log_ratio", best}, {"log_C_per_factor", best / n}});
    k1_best_tag = best_tag;
    levels.push_back(std::move(level));
  }
  report.evidence["chains"] = total;
  report.details["k1_sequence"] = k1;
  ExponentFit fit = fit_exponent(levels, 1, opts.exponent_max, false);
  apply_fit(report, fit, "k", false);
  if (fit.verdict == Verdict::Violated) {
    const auto& chain = all_chains[k1_best_tag];
    nlohmann::json elems = nlohmann::json::array();
    for (int c : chain) elems.push_back(format_element(group, gens.elements[c]));
    report.witness = {{"chain", elems},
                      {"n", chain.size()},
                      {"k", 1},
                      {"log_ratio", k1.back()["log_ratio"]},
                      {"log_C_per_factor", k1.back()["log_C_per_factor"]}};
  }
  return report;
}

DivergenceTable divergence_partial_sums(DivergenceCase which, long long m_max) {
  DivergenceTable table{which, m_max, {}, true};
  if (which == DivergenceCase::InverseSqrt) {
    if (m_max < 0) throw std::invalid_argument("truncation must be nonnegative");
    long double sum = 1.0L;  // m = 0
    long long next_check = 1;
    table.rows.push_back({0, 1.0, 0.0});
    for (long long m = 1; m <= m_max; ++m) {
      sum += 2.0L / static_cast<long double>(1 + m);
      if (m == next_check || m == m_max) {
        table.rows.push_back({m, static_cast<double>(sum), std::log(static_cast<double>(sum))});
        if (m == next_check) next_check *= 10;
      }
    }
  } else {
    if (m_max < 1) throw std::invalid_argument("superexp-square needs M >= 1");
    if (m_max > 100) throw std::invalid_argument("superexp-square terms overflow the log domain beyond M = 100");
    double log_sum = -kInf;
    for (long long m = 1; m <= m_max; ++m) {
      double term = std::pow(2.0 * static_cast<double>(m), static_cast<double>(m)) - 2.0;
      log_sum = log_add(log_sum, term);
      table.rows.push_back({m, std::exp(log_sum), log_sum});
    }
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (!(table.rows[i].log_value > table.rows[i - 1].log_value)) table.strictly_increasing = false;
  return table;
}

TemperedDemo tempered_action_demo(const Rational& q, int n, int d, const Rational& c) {
  if (q <= 1) throw std::invalid_argument("tempered demo needs q > 1");
  if (n < 1) throw std::invalid_argument("tempered demo needs n >= 1");
  const GroupSpec space = GroupSpec::qvec();
  const GroupSpec acting = GroupSpec::qtuple();
  Scale omega = make_scale("qinf_omega", space);
  Scale gamma = make_scale("qinf_gamma", acting);

  TemperedDemo out;
  out.q = q;
  out.n = n;
  out.d = d;
  out.c = c;
  out.action_bound_holds = true;

  auto check_bound = [&](const WeightedFunction& phi, const Element& tuple) {
    Rational lhs = *seminorm(push_forward(phi, tuple), omega, 1).exact;
    Rational rhs = *gamma.exact_value(tuple) * *seminorm(phi, omega, 1).exact;
    if (lhs > rhs) out.action_bound_holds = false;
  };

  WeightedFunction chain(space);
  Element::RatMap all_q, all_one;
  for (int i = 0; i < n; ++i) {
    Element e_i(Element::RatMap{{i, Rational(1)}});
    Element q_i(Element::RatMap{{i, q}});
    WeightedFunction phi = WeightedFunction::delta(space, e_i);
    WeightedFunction moved = push_forward(phi, q_i);
    check_bound(phi, q_i);
    chain = i == 0 ? moved : convolve(chain, moved);
    all_q.emplace_back(i, q);
    all_one.emplace_back(i, Rational(1));
  }
  check_bound(WeightedFunction::delta(space, Element(all_one)), Element(all_q));

  out.norm = *seminorm(chain, omega, 1).exact;
  out.expected = rpow(1 + q, n);
  out.norm_matches = out.norm == out.expected;
  out.strong_bound = rpow(q, d) * rpow(Rational(2), n) * rpow(c, n);
  out.strong_bound_fails = out.expected > out.strong_bound;
  if (n > d) {
    for (long long t = 2; t <= 1'000'000; ++t) {
      Rational qt(t);
      if (rpow(1 + qt, n) > rpow(qt, d) * rpow(Rational(2), n) * rpow(c, n)) {
        out.least_failing_q = t;
        break;
      }
    }
  }
  return out;
}

}  // namespace gaugelab
