#include "gaugelab/cli.hpp"

#include "gaugelab/adjoint.hpp"
#include "gaugelab/algebra_demos.hpp"
#include "gaugelab/errors.hpp"
#include "gaugelab/euclid_conv.hpp"
#include "gaugelab/growth.hpp"
#include "gaugelab/gspace.hpp"
#include "gaugelab/scale_probes.hpp"
#include "gaugelab/weighted_function.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

namespace gaugelab {

namespace {

const std::vector<std::string> kSampling = {"samples", "seed", "width", "levels"};

std::vector<std::string> keys(std::initializer_list<std::string> a, const std::vector<std::string>& more = {}) {
  std::vector<std::string> out(a);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

const std::vector<SubcommandInfo> kCatalogue = {
    {"growth", "ball and sphere sizes |B_n|, |S_n| by breadth-first search, with a polynomial/exponential fit",
     keys({"group", "gens", "radius", "cap"}), {"group"}},
    {"gauge", "evaluate a scale (default: word gauge) on elements; geodesic word for word-based scales",
     keys({"group", "gens", "radius", "scale", "element"}), {"group", "element"}},
    {"check-axioms", "gauge: sigma(e)=0, symmetric, subadditive; weight: omega(e)=1, symmetric, omega>=1, submultiplicative",
     keys({"group", "gens", "radius", "scale", "kind"}, kSampling), {"group", "scale"}},
    {"dominates", "sigma1 <= C * sigma2^m + D on a ball", keys({"group", "gens", "radius", "scale", "scale2", "mmax"}),
     {"group", "scale", "scale2"}},
    {"strong-dominates", "tau1 <= C * tau2 + D on a ball", keys({"group", "gens", "radius", "scale", "scale2"}),
     {"group", "scale", "scale2"}},
    {"translation-equiv", "sigma(g^-1 h) <= C * sigma(h)^d + D for fixed shifts g",
     keys({"group", "gens", "radius", "scale", "shifts", "dmax"}), {"group", "scale"}},
    {"subpoly", "sigma(gh) <= C * (1+sigma(g))^d * (1+sigma(h))^d", keys({"group", "gens", "radius", "scale", "dmax"}),
     {"group", "scale"}},
    {"msubpoly", "sigma(g1...gn) <= C^n * sigma(g1)^l ... sigma(gn)^l over generator chains",
     keys({"group", "gens", "scale", "nmax", "lmax", "samples", "seed"}), {"group", "scale"}},
    {"mconvex-probe", "||e_g1 * ... * e_gn||_m <= C^n * prod ||e_gi||_{km} over generator chains",
     keys({"group", "gens", "scale", "nmax", "kmax", "samples", "seed"}), {"group", "scale"}},
    {"bounds-ad", "||Ad_g|| <= C * sigma(g)^p + D on sampled elements", keys({"group", "scale", "pmax"}, kSampling),
     {"group", "scale", "samples"}},
    {"type-r", "every eigenvalue of Ad_g has modulus 1", keys({"group", "tol", "element"}, kSampling),
     {"group", "samples"}},
    {"unipotent-bound", "max_{i<j} |g_ij| <= P(tau(g)) with deg P = q on unipotent integer matrices",
     keys({"group", "gens", "radius"}), {"group"}},
    {"axb-decompose", "word for (a,b) in unit-box factors; e^(|a|+2n) <= (e(e-1))^2 * omega(g)^2", keys({"a", "b"}),
     {"a", "b"}},
    {"sl2-scales", "sigma(g) = max |log s_i| and theta(g) = max(||g||, ||g^-1||); e^sigma = theta", keys({"element"}),
     {"element"}},
    {"convolve", "exact convolution of two finitely supported rational functions", keys({"group", "f", "g"}),
     {"group", "f", "g"}},
    {"seminorm", "||phi||_m = sum |phi(g)| sigma(g)^m", keys({"group", "gens", "radius", "f", "scale", "m"}),
     {"group", "f", "scale"}},
    {"involution", "phi*(g) = conj(phi(g^-1))", keys({"group", "f"}), {"group", "f"}},
    {"delta-ratio", "log ||e_g1 * ... * e_gn||_m - k * sum log sigma(g_i)",
     keys({"group", "gens", "radius", "scale", "chain", "m", "k"}), {"group", "scale", "chain"}},
    {"diverge-demo", "partial sums of divergent convolution series", keys({"which", "M"}), {"which"}},
    {"tempered-demo", "||alpha(e_chain)||_1 = (1+q)^n versus q^d * 2^n * C^n", keys({"q", "n", "d", "c"}),
     {"q", "n"}},
    {"integrability", "sum over the group of sigma^-p with a tail certificate", keys({"group", "gens", "radius", "scale", "p"}),
     {"group", "scale", "p"}},
    {"holder-check", "||sigma^m phi||_r <= C^(1/r) * ||sigma^(m+p) phi||_inf, C = sum sigma^-p",
     keys({"group", "gens", "radius", "f", "scale", "m", "r", "p"}), {"group", "f", "scale", "p"}},
    {"conv-power", "int exp(|x|^k) |psi_1^{*n}| >= exp((n-1)^k) / n^(nN) by grid quadrature",
     keys({"nmax", "k", "dim", "grid"}), {}},
    {"gspace-check", "sigma(g.m) <= C * omega(g)^l * sigma(m)^l on a scaled space",
     keys({"preset", "omega", "n", "mode", "lmax"}, kSampling), {"preset", "samples"}},
    {"induced-scale", "inf over integers n of omega(r - n) * sigma(n.m), searched over a window",
     keys({"r", "point", "window"}), {"r", "point"}},
};

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Typed access to the option map with usage errors on malformed input.
class Options {
 public:
  explicit Options(const std::map<std::string, std::string>& m) : m_(m) {}

  bool has(const std::string& k) const { return m_.count(k) > 0; }
  std::string str(const std::string& k, const std::string& def = "") const {
    auto it = m_.find(k);
    return it == m_.end() ? def : it->second;
  }
  std::string need(const std::string& k) const {
    auto it = m_.find(k);
    if (it == m_.end()) throw UsageError("missing required option --" + k);
    return it->second;
  }
  long long integer(const std::string& k, long long def) const {
    if (!has(k)) return def;
    const std::string& s = m_.at(k);
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("--" + k + " expects an integer, got '" + s + "'");
  }
  double real(const std::string& k, double def) const {
    if (!has(k)) return def;
    const std::string& s = m_.at(k);
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    // Allow p/q for grid spacings such as 1/256.
    if (auto slash = s.find('/'); slash != std::string::npos) {
      try {
        return to_double(parse_rational(s));
      } catch (const std::exception&) {
      }
    }
    throw UsageError("--" + k + " expects a number, got '" + s + "'");
  }
  int small(const std::string& k, int def, int lo, int hi) const {
    long long v = integer(k, def);
    if (v < lo || v > hi)
      throw UsageError("--" + k + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
  }

 private:
  const std::map<std::string, std::string>& m_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Violated: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

nlohmann::json value_json(const ScaleValue& v) {
  nlohmann::json j = {{"log_value", v.log}};
  if (v.exact) j["exact"] = format_rational(*v.exact);
  return j;
}

// Shared context for subcommands acting on a discrete or continuous group.
struct GroupContext {
  GroupSpec group;
  GeneratingSet gens;
  std::shared_ptr<const ShellTable> table;
  int radius = 0;

  GroupContext(const Options& o, int default_radius) {
    try {
      group = GroupSpec::parse(o.need("group"));
      gens = parse_generating_set(group, o.str("gens", "std"));
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    radius = o.small("radius", default_radius, 0, 100000);
  }

  const ShellTable& ensure_table() {
    if (!table) table = std::make_shared<const ShellTable>(ball_enumerate(group, gens, radius));
    return *table;
  }

  Scale scale(const std::string& spec) {
    try {
      if (scale_needs_table(spec)) ensure_table();
      return make_scale(spec, group, table);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  Element element(const std::string& text) const {
    try {
      return parse_element(group, text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  std::string ball_domain() const {
    std::string s = "ball of radius " + std::to_string(radius) + " in " + group.to_string();
    if (table && table->truncated) s += " (truncated at the element cap)";
    return s;
  }
};

SamplerSpec sampler_from(const Options& o, const GroupSpec& group) {
  SamplerSpec s;
  s.group = group;
  s.samples = o.small("samples", 200, 1, 10000);
  s.seed = static_cast<std::uint64_t>(o.integer("seed", 0));
  s.width = o.real("width", 0.0);
  s.levels = o.small("levels", 10, 1, 1000);
  return s;
}

std::string sampler_domain(const SamplerSpec& s) {
  double w = s.width > 0 ? s.width : default_sampler_width(s.group);
  return std::to_string(s.samples) + " samples per level, " + std::to_string(s.levels) + " levels up to width " +
         num17(w) + ", seed " + std::to_string(s.seed) + " in " + s.group.to_string();
}

// CSV of the per-level required constants carried by fitted probes.
void probe_csv(ReportEnvelope& env, const ProbeReport& r) {
  env.csv_header = {"level", "log_value_required"};
  if (!r.details.contains("required_constants")) return;
  for (const auto& row : r.details["required_constants"])
    env.csv_rows.push_back({num17(row["level"].get<double>()), num17(row["log_value_required"].get<double>())});
}

void set_probe(ReportEnvelope& env, const ProbeReport& r) {
  env.result = probe_json(r);
  env.status = verdict_string(r.verdict);
  env.exit_code = verdict_exit(r.verdict);
  if (r.details.contains("inequality")) env.checks = r.details["inequality"].get<std::string>();
  probe_csv(env, r);
}

WeightedFunction load_function(const GroupSpec& group, const std::string& path) {
  try {
    return parse_function(group, read_file(path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

nlohmann::json function_json(const WeightedFunction& phi) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [g, c] : phi.coeffs) coeffs.push_back({format_element(phi.group, g), format_rational(c)});
  return {{"group", phi.group.to_string()}, {"support_size", phi.support_size()}, {"coefficients", coeffs}};
}

void function_csv(ReportEnvelope& env, const WeightedFunction& phi) {
  env.csv_header = {"element", "coefficient"};
  for (const auto& [g, c] : phi.coeffs) env.csv_rows.push_back({format_element(phi.group, g), format_rational(c)});
}

using Handler = std::function<void(const Options&, ReportEnvelope&)>;

void cmd_growth(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 8);
  std::size_t cap = static_cast<std::size_t>(o.integer("cap", 5'000'000));
  GrowthReport g;
  try {
    g = growth_table(ctx.group, ctx.gens, ctx.radius, cap);
  } catch (const UnsupportedOperation& e) {
    throw UsageError(e.what());
  }
  nlohmann::json rows = nlohmann::json::array();
  env.csv_header = {"n", "sphere", "ball"};
  for (int n = 0; n <= g.radius; ++n) {
    rows.push_back({{"n", n}, {"sphere", g.sphere[n]}, {"ball", g.ball[n]}});
    env.csv_rows.push_back({std::to_string(n), std::to_string(g.sphere[n]), std::to_string(g.ball[n])});
  }
  env.result = {{"group", g.group.to_string()}, {"radius", g.radius}, {"truncated", g.truncated}, {"rows", rows}};
  if (g.ball.size() >= 6) {
    GrowthFit fit = growth_classify(g);
    env.result["classification"] = {{"model", model_string(fit.model)},
                                    {"degree", fit.degree},
                                    {"loglog_slope", fit.slope_loglog},
                                    {"exponential_rate", fit.rate},
                                    {"polynomial_residual", fit.poly_residual},
                                    {"exponential_residual", fit.exp_residual},
                                    {"fit_window", {fit.first_n, fit.last_n}}};
  }
  env.status = "computed";
  env.evidence_domain = "ball of radius " + std::to_string(g.radius) + " in " + g.group.to_string();
}

void cmd_gauge(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 8);
  std::string spec = o.str("scale", "word");
  Scale s = ctx.scale(spec);
  env.csv_header = {"element", "exact", "log_value"};
  nlohmann::json values = nlohmann::json::array();
  for (const std::string& text : split(o.need("element"), ';')) {
    Element g = ctx.element(text);
    ScaleValue v = s.eval(g);
    nlohmann::json j = value_json(v);
    j["element"] = format_element(ctx.group, g);
    if (s.word_based) {
      nlohmann::json word = nlohmann::json::array();
      for (int i : ctx.table->geodesic_word(g)) word.push_back(format_element(ctx.group, ctx.gens.elements[i]));
      j["geodesic_word"] = word;
    }
    values.push_back(j);
    env.csv_rows.push_back({format_element(ctx.group, g), v.exact ? format_rational(*v.exact) : "", num17(v.log)});
  }
  env.result = {{"scale", s.name}, {"kind", kind_string(s.kind)}, {"values", values}};
  env.status = "computed";
  env.evidence_domain = s.word_based ? ctx.ball_domain() : "pointwise evaluation";
}

void cmd_check_axioms(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 6);
  Scale s = ctx.scale(o.need("scale"));
  ScaleKind kind = s.kind;
  if (o.has("kind")) {
    try {
      kind = parse_kind(o.str("kind"));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  ProbeReport r;
  if (ctx.group.is_discrete()) {
    r = check_axioms(s, kind, ctx.ensure_table());
    env.evidence_domain = ctx.ball_domain();
  } else {
    if (!o.has("samples")) throw UsageError("continuous groups need an explicit --samples");
    SamplerSpec sp = sampler_from(o, ctx.group);
    std::vector<Element> all;
    for (auto& level : sample_levels(sp)) all.insert(all.end(), level.elements.begin(), level.elements.end());
    r = check_axioms(s, kind, all);
    env.evidence_domain = sampler_domain(sp);
  }
  set_probe(env, r);
}

void cmd_dominates(const Options& o, ReportEnvelope& env, bool strong) {
  GroupContext ctx(o, 8);
  Scale a = ctx.scale(o.need("scale")), b = ctx.scale(o.need("scale2"));
  const ShellTable& t = ctx.ensure_table();
  ProbeReport r = strong ? strong_dominates_probe(a, b, t) : dominates_probe(a, b, t, o.small("mmax", 8, 0, 64));
  set_probe(env, r);
  env.evidence_domain = ctx.ball_domain();
}

void cmd_translation(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 8);
  Scale s = ctx.scale(o.need("scale"));
  std::vector<Element> shifts;
  if (o.has("shifts")) {
    for (const std::string& text : split(o.str("shifts"), ';')) shifts.push_back(ctx.element(text));
  } else {
    shifts = ctx.gens.symmetrized(ctx.group).elements;
  }
  ProbeReport r = translation_equiv_probe(s, shifts, ctx.ensure_table(), o.small("dmax", 8, 1, 64));
  set_probe(env, r);
  env.evidence_domain = ctx.ball_domain();
}

void cmd_subpoly(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 8);
  Scale s = ctx.scale(o.need("scale"));
  ProbeReport r = sub_polynomial_probe(s, ctx.ensure_table(), o.small("dmax", 8, 0, 64));
  set_probe(env, r);
  env.evidence_domain = ctx.ball_domain() + ", pairs in the half-radius ball";
}

ChainOptions chain_options(const Options& o, const std::string& exponent_key) {
  ChainOptions c;
  c.chain_len_max = o.small("nmax", 12, 1, 1000);
  c.exponent_max = o.small(exponent_key, 8, 1, 64);
  c.seed = static_cast<std::uint64_t>(o.integer("seed", 0));
  c.samples_per_length = static_cast<std::size_t>(o.small("samples", 2000, 1, 10000));
  return c;
}

std::string chain_domain(const ChainOptions& c, const GroupSpec& g) {
  return "generator chains of length up to " + std::to_string(c.chain_len_max) + " in " + g.to_string() +
         " (exhaustive up to " + std::to_string(c.exhaustive_limit) + " chains, else " +
         std::to_string(c.samples_per_length) + " sampled per length, seed " + std::to_string(c.seed) + ")";
}

void cmd_msubpoly(const Options& o, ReportEnvelope& env, bool convexity) {
  ChainOptions c = chain_options(o, convexity ? "kmax" : "lmax");
  GroupContext ctx(o, c.chain_len_max);
  ctx.radius = c.chain_len_max;
  Scale s = ctx.scale(o.need("scale"));
  ProbeReport r = convexity ? mconvexity_probe(s, ctx.group, ctx.gens, c)
                            : m_sub_polynomial_probe(s, ctx.group, ctx.gens, c);
  set_probe(env, r);
  env.evidence_domain = chain_domain(c, ctx.group);
}

void cmd_bounds_ad(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 0);
  Scale s = ctx.scale(o.need("scale"));
  SamplerSpec sp = sampler_from(o, ctx.group);
  ProbeReport r = bounds_ad_probe(s, sp, o.small("pmax", 8, 0, 64));
  set_probe(env, r);
  env.evidence_domain = sampler_domain(sp);
}

void cmd_type_r(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 0);
  SamplerSpec sp = sampler_from(o, ctx.group);
  std::vector<Element> extra;
  if (o.has("element"))
    for (const std::string& text : split(o.str("element"), ';')) extra.push_back(ctx.element(text));
  ProbeReport r = type_r_probe(ctx.group, sp, o.real("tol", 1e-9), extra);
  set_probe(env, r);
  env.evidence_domain = sampler_domain(sp);
}

void cmd_unipotent(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 8);
  if (ctx.group.kind != GroupKind::UnipotentZ) throw UsageError("unipotent-bound needs --group unip:q");
  ProbeReport r = unipotent_norm_bound(ctx.ensure_table());
  set_probe(env, r);
  env.csv_header = {"n", "max_offdiag"};
  env.csv_rows.clear();
  if (r.details.contains("shells")) {
    int n = 0;
    for (const auto& v : r.details["shells"]) env.csv_rows.push_back({std::to_string(n++), v.dump()});
  }
  env.evidence_domain = ctx.ball_domain();
}

void cmd_axb(const Options& o, ReportEnvelope& env) {
  double a = o.real("a", 0), b = o.real("b", 0);
  if (!o.has("a") || !o.has("b")) throw UsageError("axb-decompose needs --a and --b");
  AxbDecomposition d;
  try {
    d = axb_decompose(a, b);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  GroupSpec g = GroupSpec::axb();
  nlohmann::json word = nlohmann::json::array();
  for (const Element& f : d.word) word.push_back(format_element(g, f));
  env.result = {{"a", d.a},
                {"b", d.b},
                {"translation_first", d.translation_first},
                {"translation", d.translation},
                {"a_steps", d.a_steps},
                {"n", d.n},
                {"geometric_sum", d.geometric_sum},
                {"gamma", d.gamma},
                {"gamma_above_inv_e", d.gamma_above_inv_e},
                {"word_length", d.word_length},
                {"log_value_lhs", d.log_lhs},
                {"log_value_rhs", d.log_rhs},
                {"bound_holds", d.bound_holds},
                {"reconstruction_error", d.reconstruction_error},
                {"word", word}};
  env.checks = "e^(|a|+2n) <= (e(e-1))^2 * omega(g)^2";
  env.status = d.bound_holds ? verdict_string(Verdict::Holds) : verdict_string(Verdict::Violated);
  env.exit_code = d.bound_holds ? 0 : 1;
  env.csv_header = {"factor", "element"};
  for (std::size_t i = 0; i < d.word.size(); ++i) env.csv_rows.push_back({std::to_string(i), format_element(g, d.word[i])});
  env.evidence_domain = "single element";
}

void cmd_sl2(const Options& o, ReportEnvelope& env) {
  GroupSpec g = GroupSpec::sl2();
  env.csv_header = {"element", "sigma", "theta", "exp_sigma"};
  nlohmann::json values = nlohmann::json::array();
  for (const std::string& text : split(o.need("element"), ';')) {
    Element e;
    try {
      e = parse_element(g, text);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    Sl2Scales s = sl2_scales(e);
    values.push_back({{"element", format_element(g, e)},
                      {"sigma", s.sigma},
                      {"theta", s.theta},
                      {"exp_sigma", std::exp(s.sigma)},
                      {"relative_gap", std::abs(std::exp(s.sigma) - s.theta) / s.theta}});
    env.csv_rows.push_back({format_element(g, e), num17(s.sigma), num17(s.theta), num17(std::exp(s.sigma))});
  }
  env.result = {{"values", values}};
  env.status = "computed";
  env.evidence_domain = "pointwise evaluation";
}

void cmd_convolve(const Options& o, ReportEnvelope& env, bool invol) {
  GroupContext ctx(o, 0);
  WeightedFunction f = load_function(ctx.group, o.need("f"));
  WeightedFunction out;
  try {
    out = invol ? involution(f) : convolve(f, load_function(ctx.group, o.need("g")));
  } catch (const UnsupportedOperation& e) {
    throw UsageError(e.what());
  }
  env.result = function_json(out);
  function_csv(env, out);
  env.status = "computed";
  env.evidence_domain = "exact rational arithmetic";
}

void cmd_seminorm(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 8);
  WeightedFunction f = load_function(ctx.group, o.need("f"));
  Scale s = ctx.scale(o.need("scale"));
  int m = o.small("m", 1, 0, 1000);
  SeminormValue v = seminorm(f, s, m);
  env.result = {{"m", m}, {"scale", s.name}, {"log_value", v.log_value}};
  if (v.exact) env.result["exact"] = format_rational(*v.exact);
  env.csv_header = {"m", "exact", "log_value"};
  env.csv_rows.push_back({std::to_string(m), v.exact ? format_rational(*v.exact) : "", num17(v.log_value)});
  env.checks = "||phi||_m = sum |phi(g)| sigma(g)^m";
  env.status = "computed";
  env.evidence_domain = v.exact ? "exact rational arithmetic" : "log domain";
}

void cmd_delta_ratio(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 0);
  std::vector<Element> chain;
  for (const std::string& text : split(o.need("chain"), ';')) chain.push_back(ctx.element(text));
  if (!o.has("radius")) ctx.radius = static_cast<int>(chain.size()) * 4;
  Scale s = ctx.scale(o.need("scale"));
  int m = o.small("m", 1, 0, 1000), k = o.small("k", 1, 0, 1000);
  DeltaRatio d = delta_power_ratio(s, chain, m, k);
  env.result = {{"m", m},
                {"k", k},
                {"chain_length", chain.size()},
                {"log_value_ratio", d.log_ratio},
                {"log_value_chain_norm", d.log_chain_norm},
                {"log_value_direct", d.log_direct}};
  if (d.exact_ratio) env.result["exact_ratio"] = format_rational(*d.exact_ratio);
  env.csv_header = {"n", "log_value_ratio", "log_value_chain_norm", "log_value_direct"};
  env.csv_rows.push_back({std::to_string(chain.size()), num17(d.log_ratio), num17(d.log_chain_norm), num17(d.log_direct)});
  env.checks = "||e_g1 * ... * e_gn||_m = sigma(g1...gn)^m";
  env.status = "computed";
  env.evidence_domain = "single chain";
}

void cmd_diverge(const Options& o, ReportEnvelope& env) {
  std::string which = o.need("which");
  DivergenceCase c;
  long long def;
  if (which == "inverse-sqrt") {
    c = DivergenceCase::InverseSqrt;
    def = 1'000'000;
  } else if (which == "superexp-square") {
    c = DivergenceCase::SuperexpSquare;
    def = 20;
  } else {
    throw UsageError("--which must be inverse-sqrt or superexp-square");
  }
  long long m = o.integer("M", def);
  DivergenceTable t;
  try {
    t = divergence_partial_sums(c, m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  nlohmann::json rows = nlohmann::json::array();
  env.csv_header = {"M", "value", "log_value"};
  for (const auto& r : t.rows) {
    rows.push_back({{"M", r.m}, {"value", r.value}, {"log_value", r.log_value}});
    env.csv_rows.push_back({std::to_string(r.m), num17(r.value), num17(r.log_value)});
  }
  env.result = {{"which", which}, {"truncation", t.truncation}, {"rows", rows}, {"strictly_increasing", t.strictly_increasing}};
  env.checks = c == DivergenceCase::InverseSqrt ? "sum_{|m|<=M} (1+|m|)^(-1/2) (1+|M-m|)^(-1/2) grows without bound"
                                                : "sum_{0<m<=M} e^((2m)^m - 2) grows without bound";
  env.status = "computed";
  env.evidence_domain = "truncation M = " + std::to_string(t.truncation);
}

void cmd_tempered(const Options& o, ReportEnvelope& env) {
  Rational q;
  try {
    q = parse_rational(o.need("q"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  int n = o.small("n", 1, 1, 64), d = o.small("d", 3, 0, 64);
  Rational c;
  try {
    c = parse_rational(o.str("c", "2"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  TemperedDemo t;
  try {
    t = tempered_action_demo(q, n, d, c);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  env.result = {{"q", format_rational(t.q)},
                {"n", t.n},
                {"norm", format_rational(t.norm)},
                {"expected", format_rational(t.expected)},
                {"norm_matches", t.norm_matches},
                {"action_bound_holds", t.action_bound_holds},
                {"d", t.d},
                {"C", format_rational(t.c)},
                {"strong_bound", format_rational(t.strong_bound)},
                {"strong_bound_fails", t.strong_bound_fails}};
  if (t.least_failing_q) env.result["least_failing_q"] = *t.least_failing_q;
  env.csv_header = {"q", "n", "norm", "strong_bound", "strong_bound_fails"};
  env.csv_rows.push_back({format_rational(t.q), std::to_string(t.n), format_rational(t.norm),
                          format_rational(t.strong_bound), t.strong_bound_fails ? "true" : "false"});
  env.checks = "(1+q)^n versus q^d * 2^n * C^n";
  env.status = "computed";
  env.evidence_domain = "exact rational arithmetic";
}

void cmd_integrability(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 64);
  Scale s = ctx.scale(o.need("scale"));
  int p = o.small("p", 1, 0, 1000);
  IntegrabilitySum r = integrability_sum(s, ctx.ensure_table(), p);
  env.csv_header = {"n", "sphere", "ball", "log_value_term", "log_value_partial_sum"};
  for (const auto& row : r.rows)
    env.csv_rows.push_back({std::to_string(row.n), std::to_string(row.sphere), std::to_string(row.ball),
                            num17(row.log_term), num17(row.log_partial_sum)});
  env.result = {{"p", p},
                {"radius", r.radius},
                {"partial_sum", r.partial_sum},
                {"verdict", integrability_string(r.verdict)},
                {"ratio", r.ratio},
                {"decay_exponent", r.decay_exponent}};
  if (r.tail_bound) {
    env.result["tail_bound"] = *r.tail_bound;
    env.result["certificate"] = r.certificate;
  }
  if (!r.note.empty()) env.result["message"] = r.note;
  env.checks = "sum_g sigma(g)^-p < infinity";
  env.status = integrability_string(r.verdict);
  env.exit_code = r.verdict == IntegrabilityVerdict::ConvergesCertified ? 0
                  : r.verdict == IntegrabilityVerdict::DivergesEvidence ? 1
                                                                         : 2;
  env.evidence_domain = ctx.ball_domain();
}

void cmd_holder(const Options& o, ReportEnvelope& env) {
  GroupContext ctx(o, 64);
  WeightedFunction f = load_function(ctx.group, o.need("f"));
  Scale s = ctx.scale(o.need("scale"));
  int m = o.small("m", 1, 0, 1000), p = o.small("p", 1, 0, 1000);
  double r = o.real("r", 2.0);
  if (r < 1) throw UsageError("--r must be at least 1");
  IntegrabilitySum sum = integrability_sum(s, ctx.ensure_table(), p);
  std::optional<double> c;
  if (sum.verdict == IntegrabilityVerdict::ConvergesCertified && sum.tail_bound) c = sum.partial_sum + *sum.tail_bound;
  ProbeReport rep = holder_embedding_check(f, s, m, r, p, c);
  rep.details["integrability"] = integrability_string(sum.verdict);
  set_probe(env, rep);
  env.evidence_domain = "support of phi; C from " + ctx.ball_domain();
}

void cmd_conv_power(const Options& o, ReportEnvelope& env) {
  int nmax = o.small("nmax", 5, 1, 64), k = o.small("k", 2, 2, 16), dim = o.small("dim", 1, 1, 2);
  double h = o.real("grid", 1.0 / 256);
  if (!(h > 0)) throw UsageError("--grid must be positive");
  std::vector<ConvPowerRow> rows;
  ProbeReport r;
  try {
    r = conv_power_bound_check(nmax, k, dim, h, &rows);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  set_probe(env, r);
  env.csv_header = {"n", "log_value_norm", "log_value_bound", "relative_error_budget", "log_value_root",
                    "log_value_root_bound"};
  env.csv_rows.clear();
  for (const auto& row : rows)
    env.csv_rows.push_back({std::to_string(row.n), num17(row.log_norm), num17(row.log_bound), num17(row.rel_error),
                            num17(row.log_root), num17(row.log_root_bound)});
  env.evidence_domain = "grid spacing " + num17(h) + " refined to " + num17(h / 2) + " in dimension " +
                        std::to_string(dim);
}

void cmd_gspace(const Options& o, ReportEnvelope& env) {
  GSpaceSpec spec;
  try {
    spec = gspace_preset(o.need("preset"), o.str("omega"), o.small("n", 2, 1, 16));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  int samples = o.small("samples", 200, 1, 10000), levels = o.small("levels", 10, 1, 1000);
  std::uint64_t seed = static_cast<std::uint64_t>(o.integer("seed", 0));
  if (o.has("width")) spec.max_width = o.real("width", spec.max_width);
  std::string mode = o.str("mode", "action");
  ProbeReport r;
  if (mode == "action") {
    r = gspace_check(spec, samples, seed, o.small("lmax", 8, 0, 64), levels);
  } else if (mode == "translation") {
    r = gspace_translation_check(spec, samples, seed, o.small("lmax", 8, 1, 64), levels);
  } else {
    throw UsageError("--mode must be action or translation");
  }
  set_probe(env, r);
  env.evidence_domain = std::to_string(samples) + " samples per level, " + std::to_string(levels) +
                        " levels up to width " + num17(spec.max_width) + ", seed " + std::to_string(seed);
}

void cmd_induced(const Options& o, ReportEnvelope& env) {
  InducedSpec spec = induced_circle_preset();
  double r = o.real("r", 0);
  Vec m;
  for (const std::string& part : split(o.need("point"), ',')) {
    try {
      m.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw UsageError("--point expects comma-separated numbers");
    }
  }
  long long window = o.integer("window", 1000);
  if (window < 0) throw UsageError("--window must be nonnegative");
  InducedValue v = induced_scale_eval(spec, r, m, window);
  env.result = {{"space", spec.name},
                {"r", r},
                {"value", v.value},
                {"log_value", v.log_value},
                {"argmin", v.argmin},
                {"window", v.window},
                {"upper_bound", v.upper_bound}};
  env.csv_header = {"r", "value", "log_value", "argmin"};
  env.csv_rows.push_back({num17(r), num17(v.value), num17(v.log_value), std::to_string(v.argmin)});
  env.checks = "inf_n omega(r - n) * sigma(n.m)";
  env.status = "computed";
  env.evidence_domain = "integers within " + std::to_string(v.window) + " of round(r)";
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"growth", cmd_growth},
      {"gauge", cmd_gauge},
      {"check-axioms", cmd_check_axioms},
      {"dominates", [](const Options& o, ReportEnvelope& e) { cmd_dominates(o, e, false); }},
      {"strong-dominates", [](const Options& o, ReportEnvelope& e) { cmd_dominates(o, e, true); }},
      {"translation-equiv", cmd_translation},
      {"subpoly", cmd_subpoly},
      {"msubpoly", [](const Options& o, ReportEnvelope& e) { cmd_msubpoly(o, e, false); }},
      {"mconvex-probe", [](const Options& o, ReportEnvelope& e) { cmd_msubpoly(o, e, true); }},
      {"bounds-ad", cmd_bounds_ad},
      {"type-r", cmd_type_r},
      {"unipotent-bound", cmd_unipotent},
      {"axb-decompose", cmd_axb},
      {"sl2-scales", cmd_sl2},
      {"convolve", [](const Options& o, ReportEnvelope& e) { cmd_convolve(o, e, false); }},
      {"seminorm", cmd_seminorm},
      {"involution", [](const Options& o, ReportEnvelope& e) { cmd_convolve(o, e, true); }},
      {"delta-ratio", cmd_delta_ratio},
      {"diverge-demo", cmd_diverge},
      {"tempered-demo", cmd_tempered},
      {"integrability", cmd_integrability},
      {"holder-check", cmd_holder},
      {"conv-power", cmd_conv_power},
      {"gspace-check", cmd_gspace},
      {"induced-scale", cmd_induced},
  };
  return h;
}

const SubcommandInfo& lookup(const std::string& name) {
  for (const auto& info : kCatalogue)
    if (info.name == name) return info;
  throw UsageError("unknown subcommand '" + name + "'");
}

}  // namespace

const std::vector<SubcommandInfo>& subcommands() { return kCatalogue; }

ReportEnvelope run_command(const CommandRequest& request) {
  const SubcommandInfo& info = lookup(request.subcommand);
  for (const auto& [k, v] : request.options)
    if (std::find(info.keys.begin(), info.keys.end(), k) == info.keys.end())
      throw UsageError("unknown option --" + k + " for " + info.name);
  for (const auto& k : info.required)
    if (!request.options.count(k)) throw UsageError("missing required option --" + k + " for " + info.name);
  if (request.format != "json" && request.format != "csv" && request.format != "text")
    throw UsageError("unknown format '" + request.format + "' (json, csv, text)");

  ReportEnvelope env;
  env.command = request.subcommand;
  for (const auto& [k, v] : request.options) env.command += " --" + k + " " + v;
  auto start = std::chrono::steady_clock::now();
  handlers().at(info.name)(Options(request.options), env);
  env.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return env;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gaugelab: scales, gauges and weights on groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.footer("Exit status: 0 holds or computed, 1 violated, 2 inconclusive, 3 usage error, 4 runtime error.");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::string> formats, configs;
  std::vector<std::pair<CLI::App*, const SubcommandInfo*>> subs;
  for (const auto& info : kCatalogue) {
    CLI::App* sub = app.add_subcommand(info.name, info.summary);
    auto& slot = values[info.name];
    for (const auto& k : info.keys) {
      bool req = std::find(info.required.begin(), info.required.end(), k) != info.required.end();
      sub->add_option("--" + k, slot[k], req ? "(required)" : "");
    }
    sub->add_option("--format", formats[info.name], "json (default), csv or text");
    sub->add_option("--config", configs[info.name], "file of key = value lines; flags win");
    subs.emplace_back(sub, &info);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 3;
  }

  for (auto& [sub, info] : subs) {
    if (!sub->parsed()) continue;
    CommandRequest req;
    req.subcommand = info->name;
    try {
      const std::string& cfg = configs[info->name];
      if (!cfg.empty()) {
        for (auto& [k, v] : read_config(cfg)) {
          if (k == "format") {
            if (sub->count("--format") == 0) formats[info->name] = v;
            continue;
          }
          if (std::find(info->keys.begin(), info->keys.end(), k) == info->keys.end())
            throw UsageError(cfg + ": unknown key '" + k + "' for " + info->name);
          req.options[k] = v;
        }
      }
      for (const auto& k : info->keys)
        if (sub->count("--" + k) > 0) req.options[k] = values[info->name][k];
      if (!formats[info->name].empty()) req.format = formats[info->name];
      ReportEnvelope env = run_command(req);
      out << emit_report(env, req.format);
      return env.exit_code;
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n\n" << sub->help();
      return 3;
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << "\n";
      return 3;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 4;
    }
  }
  return 3;
}

}  // namespace gaugelab
