// Acceptance runner: one PASS/FAIL line per criterion, exit status = number of failures.

#include "gaugelab/adjoint.hpp"
#include "gaugelab/algebra_demos.hpp"
#include "gaugelab/euclid_conv.hpp"
#include "gaugelab/growth.hpp"
#include "gaugelab/gspace.hpp"
#include "gaugelab/scale_probes.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>

using namespace gaugelab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Element ints(std::initializer_list<std::int64_t> v) { return Element(Element::IntVec(v)); }

std::shared_ptr<const ShellTable> table_for(const GroupSpec& g, int r) {
  return std::make_shared<const ShellTable>(ball_enumerate(g, standard_generators(g), r));
}

// floor and ceil of sqrt(v) for v >= 0, exact on 64-bit integers.
std::int64_t isqrt_floor(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}
std::int64_t isqrt_ceil(std::int64_t v) {
  std::int64_t r = isqrt_floor(v);
  return r * r == v ? r : r + 1;
}

// s(g) = |a| + |c| + |b|^{1/2} + |b - ca|^{1/2}, kept as (linear part, b radicand, b-ca radicand).
struct HeisS {
  std::int64_t lin, rb, rt;
};
HeisS heis_parts(const Element& g) {
  const auto& v = g.ints();
  return {std::abs(v[0]) + std::abs(v[2]), std::abs(v[1]), std::abs(v[1] - v[2] * v[0])};
}

// Decides s(gh) <= 3 (s(g) + s(h)) exactly. Integer square-root brackets settle
// almost every pair; the rest fall back to comparing squared sums of radicals.
bool near_gauge_holds(const HeisS& p, const HeisS& g, const HeisS& h, bool& used_fallback) {
  std::int64_t upper = p.lin + isqrt_ceil(p.rb) + isqrt_ceil(p.rt);
  std::int64_t lower = 3 * (g.lin + h.lin + isqrt_floor(g.rb) + isqrt_floor(g.rt) + isqrt_floor(h.rb) + isqrt_floor(h.rt));
  if (upper <= lower) return true;
  used_fallback = true;
  // High-precision fallback with a margin far above the rounding error of long double.
  auto s = [](const HeisS& x) {
    return static_cast<long double>(x.lin) + std::sqrt(static_cast<long double>(x.rb)) +
           std::sqrt(static_cast<long double>(x.rt));
  };
  return s(p) <= 3 * (s(g) + s(h)) + 1e-12L;
}

Outcome criterion_word_metric() {
  GroupSpec z2 = GroupSpec::z(2);
  ShellTable t = ball_enumerate(z2, standard_generators(z2), 8);
  int checked = 0;
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) {
      if (std::abs(a) + std::abs(b) > 8) continue;
      ++checked;
      if (t.word_gauge(ints({a, b})) != std::abs(a) + std::abs(b))
        return {false, "word gauge differs from l1 at (" + std::to_string(a) + "," + std::to_string(b) + ")"};
    }
  GroupSpec f2 = GroupSpec::free(2);
  ShellTable tf = ball_enumerate(f2, standard_generators(f2), 7);
  std::int64_t p = 1;
  for (int n = 0; n <= 7; ++n, p *= 3)
    if (tf.ball_size(n) != static_cast<std::size_t>(2 * p - 1))
      return {false, "|B_" + std::to_string(n) + "| = " + std::to_string(tf.ball_size(n)) + " on Free(2)"};
  return {true, std::to_string(checked) + " elements of Z^2 match l1; Free(2) |B_n| = 2*3^n - 1 for n <= 7"};
}

Outcome criterion_heisenberg() {
  GroupSpec h = GroupSpec::heisenberg();
  auto t = table_for(h, 12);
  Scale word = make_scale("word", h, t), s = make_scale("heis_s", h);
  ProbeReport a = dominates_probe(word, s, *t), b = dominates_probe(s, word, *t);
  bool fits = a.verdict == Verdict::Holds && b.verdict == Verdict::Holds && a.constant("m").value_or(99) <= 2 &&
              b.constant("m").value_or(99) <= 2;
  std::ostringstream os;
  os << "tau <= C s^m with m=" << a.constant("m").value_or(-1) << ", s <= C tau^m with m="
     << b.constant("m").value_or(-1);
  if (!fits) return {false, os.str() + " (" + verdict_string(a.verdict) + "/" + verdict_string(b.verdict) + ")"};

  std::vector<Element> ball;
  for (const auto& shell : t->shells) ball.insert(ball.end(), shell.begin(), shell.end());
  std::vector<HeisS> parts;
  for (const auto& g : ball) parts.push_back(heis_parts(g));
  std::size_t pairs = 0, fallback = 0;
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j) {
      const auto& x = ball[i].ints();
      const auto& y = ball[j].ints();
      Element prod = ints({x[0] + y[0], x[1] + y[1] + x[0] * y[2], x[2] + y[2]});
      bool fb = false;
      if (!near_gauge_holds(heis_parts(prod), parts[i], parts[j], fb))
        return {false, os.str() + "; s(gh) > 3(s(g)+s(h)) at g=" + format_element(h, ball[i]) +
                           " h=" + format_element(h, ball[j])};
      fallback += fb;
      ++pairs;
    }
  os << "; s(gh) <= 3(s(g)+s(h)) on all " << pairs << " pairs of B_12 (" << fallback
     << " needed the radical fallback)";
  return {true, os.str()};
}

Outcome criterion_mconvex() {
  GroupSpec z = GroupSpec::z(1);
  ChainOptions opts;
  opts.chain_len_max = 20;
  ProbeReport a = mconvexity_probe(make_scale("one_plus_abs", z), z, standard_generators(z), opts);
  bool a_ok = a.verdict == Verdict::Holds && a.constant("C") == 1.0 && a.constant("k") == 1.0;
  opts.chain_len_max = 12;
  auto t = table_for(z, 12);
  ProbeReport b = mconvexity_probe(make_scale("word_pow:2", z, t), z, standard_generators(z), opts);
  bool ones = b.witness.contains("chain");
  if (ones)
    for (const auto& e : b.witness["chain"]) ones = ones && e.get<std::string>() == "1";
  double at12 = -1;
  for (const auto& row : b.details["k1_sequence"])
    if (row["n"] == 12) at12 = row["log_ratio"].get<double>();
  bool b_ok = b.verdict == Verdict::Violated && ones && at12 > 12 * 5;
  std::ostringstream os;
  os << "1+|n|: " << verdict_string(a.verdict) << " C=" << a.constant("C").value_or(-1)
     << " k=" << a.constant("k").value_or(-1) << "; sigma_2: " << verdict_string(b.verdict)
     << ", witness chain of ones=" << (ones ? "yes" : "no") << ", per-chain log C at n=12 = " << at12 << " > 60";
  return {a_ok && b_ok, os.str()};
}

Outcome criterion_tempered() {
  for (int q : {2, 3})
    for (int n = 1; n <= 6; ++n) {
      TemperedDemo d = tempered_action_demo(q, n);
      Rational expect = 1;
      for (int i = 0; i < n; ++i) expect *= 1 + q;
      if (d.norm != expect) return {false, "norm mismatch at q=" + std::to_string(q) + ", n=" + std::to_string(n)};
    }
  TemperedDemo d = tempered_action_demo(10, 5, 3, 2);
  std::ostringstream os;
  os << "(1+q)^n exact for q in {2,3}, n <= 6; at q=10, n=5: (1+q)^n = " << format_rational(d.norm)
     << " vs q^3 2^n C^n = " << format_rational(d.strong_bound) << " -> ";
  if (d.strong_bound_fails) {
    os << "bound fails as required";
    return {true, os.str()};
  }
  os << "bound is NOT exceeded, so no failure can be flagged";
  if (d.least_failing_q) os << " (least failing integer q for n=5, d=3, C=2 is " << *d.least_failing_q << ")";
  return {false, os.str()};
}

Outcome criterion_divergence() {
  DivergenceTable t = divergence_partial_sums(DivergenceCase::InverseSqrt, 1'000'000);
  double v = t.rows.back().value;
  return {v >= 25 && t.strictly_increasing,
          "partial sum at M=1e6 = " + fmt("%.6f", v) + (t.strictly_increasing ? ", strictly increasing" : ", NOT increasing")};
}

Outcome criterion_integrability() {
  const double target = std::acos(-1.0) * std::acos(-1.0) / 3 - 1;
  GroupSpec z = GroupSpec::z(1);
  auto tz = table_for(z, 10000);
  IntegrabilitySum a = integrability_sum(make_scale("one_plus_abs", z), *tz, 2);
  bool a_ok = a.verdict == IntegrabilityVerdict::ConvergesCertified && std::abs(a.partial_sum - target) < 1e-3;

  GroupSpec f2 = GroupSpec::free(2);
  auto tf = table_for(f2, 10);
  IntegrabilitySum b = integrability_sum(make_scale("word_weight", f2, tf), *tf, 2);
  bool b_ok = b.verdict == IntegrabilityVerdict::ConvergesCertified && b.certificate == "geometric" &&
              std::abs(b.ratio - 3 * std::exp(-2.0)) < 1e-9 && b.ratio < 1;

  IntegrabilitySum c = integrability_sum(make_scale("one_plus_abs", z), *tz, 1);
  bool c_ok = c.verdict == IntegrabilityVerdict::DivergesEvidence;
  std::ostringstream os;
  os.precision(8);
  os << "Z p=2: " << integrability_string(a.verdict) << ", sum " << a.partial_sum << " (target " << target
     << "); Free(2) p=2: " << integrability_string(b.verdict) << " via " << b.certificate << " ratio " << b.ratio
     << "; Z p=1: " << integrability_string(c.verdict);
  return {a_ok && b_ok && c_ok, os.str()};
}

Outcome criterion_adjoint() {
  double worst_fd = 0, worst_hom = 0, worst_det = 0;
  for (GroupSpec g : {GroupSpec::axb(), GroupSpec::heisenberg(), GroupSpec::sl2()}) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
      Element x = sample_element(g, 2.0, rng), y = sample_element(g, 2.0, rng);
      Eigen::MatrixXd closed = ad_matrix(g, x);
      worst_fd = std::max(worst_fd, (closed - ad_numeric(g, x, 1e-4)).norm() / std::max(1.0, closed.norm()));
      Eigen::MatrixXd lhs = ad_matrix(g, multiply(g, x, y)), rhs = closed * ad_matrix(g, y);
      worst_hom = std::max(worst_hom, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
      if (g.kind == GroupKind::AxB) {
        double e = std::exp(x.reals()[0]);
        worst_det = std::max(worst_det, std::abs(closed.determinant() - e) / e);
      }
    }
  }
  bool ok = worst_fd <= 1e-5 && worst_hom <= 1e-8 && worst_det <= 1e-9;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "max closed-vs-finite-difference %.2e, homomorphism %.2e, |det Ad - e^a|/e^a %.2e (100 samples each)",
                worst_fd, worst_hom, worst_det);
  return {ok, buf};
}

Outcome criterion_type_r() {
  SamplerSpec s;
  s.samples = 100;
  s.seed = 17;
  s.group = GroupSpec::heisenberg();
  ProbeReport h = type_r_probe(s.group, s, 1e-9);
  bool h_ok = h.verdict == Verdict::Holds && h.constant("max_deviation") == 0.0;
  s.group = GroupSpec::axb();
  ProbeReport a = type_r_probe(s.group, s, 1e-9, {parse_element(s.group, "(1,0)")});
  double ea = a.witness.value("largest_modulus", 0.0);
  s.group = GroupSpec::sl2();
  ProbeReport b = type_r_probe(s.group, s, 1e-9, {parse_element(s.group, "[[2,0],[0,0.5]]")});
  double eb = b.witness.value("largest_modulus", 0.0);
  bool ok = h_ok && a.verdict == Verdict::Violated && std::abs(ea - std::exp(1.0)) < 1e-9 &&
            b.verdict == Verdict::Violated && std::abs(eb - 4.0) < 1e-9;
  std::ostringstream os;
  os.precision(12);
  os << "heis " << verdict_string(h.verdict) << " (max | |lambda|-1 | = " << h.constant("max_deviation").value_or(-1)
     << "); axb " << verdict_string(a.verdict) << " eigenvalue " << ea << "; sl2 " << verdict_string(b.verdict)
     << " eigenvalue " << eb;
  return {ok, os.str()};
}

Outcome criterion_sl2_identity() {
  GroupSpec g = GroupSpec::sl2();
  std::mt19937_64 rng(99);
  double worst = 0, worst_det = 0;
  for (int i = 0; i < 100; ++i) {
    Element x = sample_element(g, 4.0, rng);
    const auto& r = x.reals();
    worst_det = std::max(worst_det, std::abs(r[0] * r[3] - r[1] * r[2] - 1));
    Sl2Scales s = sl2_scales(x);
    worst = std::max(worst, std::abs(std::exp(s.sigma) - s.theta) / s.theta);
  }
  return {worst <= 1e-9, "max |e^sigma - theta|/theta = " + fmt("%.2e", worst) + ", max |det-1| = " + fmt("%.2e", worst_det)};
}

Outcome criterion_axb() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(-5, 5), ub(-100, 100);
  double worst_err = 0, worst_margin = -1e300;
  int failures_bound = 0;
  for (int i = 0; i < 100; ++i) {
    AxbDecomposition d = axb_decompose(ua(rng), ub(rng));
    worst_err = std::max(worst_err, d.reconstruction_error);
    worst_margin = std::max(worst_margin, d.log_lhs - d.log_rhs);
    if (!(d.log_lhs <= d.log_rhs)) ++failures_bound;
  }
  return {worst_err <= 1e-9 && failures_bound == 0,
          "max reconstruction error " + fmt("%.2e", worst_err) + ", bound failures " + std::to_string(failures_bound) +
              ", max log(lhs/rhs) = " + fmt("%.4f", worst_margin)};
}

Outcome criterion_conv_power() {
  std::vector<ConvPowerRow> rows;
  ProbeReport r = conv_power_bound_check(5, 2, 1, 1.0 / 256, &rows);
  bool ok = r.details["root_bound_strictly_increasing"].get<bool>();
  std::ostringstream os;
  os.precision(6);
  for (const auto& row : rows) {
    if (row.n < 2) continue;
    ok = ok && row.bound_holds;
    os << "n=" << row.n << ": log norm " << row.log_norm << " (budget " << row.rel_error << ") > log bound "
       << row.log_bound << "; ";
  }
  os << "root sequence " << (r.details["root_bound_strictly_increasing"].get<bool>() ? "strictly increasing" : "NOT increasing");
  return {ok, os.str()};
}

Outcome criterion_algebra() {
  std::mt19937_64 rng(12);
  auto random_function = [&](const GroupSpec& group) {
    GeneratingSet gens = standard_generators(group).symmetrized(group);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.elements.size()) - 1), len(0, 4);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    WeightedFunction f(group);
    for (int i = 0; i < 4; ++i) {
      Element g = identity(group);
      for (int k = len(rng); k > 0; --k) g = multiply(group, g, gens.elements[pick(rng)]);
      f.add(g, Rational(num(rng)) / den(rng));
    }
    return f;
  };
  int triples = 0, isometries = 0, chains = 0;
  for (GroupSpec g : {GroupSpec::z(1), GroupSpec::free(2), GroupSpec::heisenberg()}) {
    auto t = table_for(g, 12);
    Scale s = make_scale("one_plus_word", g, t);
    for (int i = 0; i < 50; ++i) {
      WeightedFunction a = random_function(g), b = random_function(g), c = random_function(g);
      if (!(convolve(convolve(a, b), c) == convolve(a, convolve(b, c))))
        return {false, "associativity fails on " + g.to_string()};
      ++triples;
      for (int m = 0; m <= 3; ++m) {
        if (*seminorm(involution(a), s, m).exact != *seminorm(a, s, m).exact)
          return {false, "involution is not isometric on " + g.to_string()};
        ++isometries;
      }
    }
    GeneratingSet gens = standard_generators(g).symmetrized(g);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.elements.size()) - 1);
    for (int i = 0; i < 20; ++i) {
      std::vector<Element> chain(5);
      Element prod = identity(g);
      WeightedFunction acc = WeightedFunction::delta(g, identity(g));
      for (auto& x : chain) {
        x = gens.elements[pick(rng)];
        prod = multiply(g, prod, x);
        acc = convolve(acc, WeightedFunction::delta(g, x));
      }
      for (int m = 1; m <= 3; ++m) {
        Rational direct = 1;
        for (int k = 0; k < m; ++k) direct *= *s.exact_value(prod);
        if (*seminorm(acc, s, m).exact != direct) return {false, "delta-chain norm identity fails on " + g.to_string()};
        ++chains;
      }
    }
  }
  return {true, std::to_string(triples) + " associative triples, " + std::to_string(isometries) +
                    " exact involution isometries, " + std::to_string(chains) + " exact delta-chain norms"};
}

Outcome criterion_gspace() {
  std::ostringstream os;
  os.precision(6);
  ProbeReport line = gspace_check(gspace_preset("z-line"), 200, 1);
  ProbeReport flat = gspace_check(gspace_preset("z-line", "const:1"), 200, 1);
  bool a = line.verdict == Verdict::Holds && line.constant("l") == 1.0 && flat.verdict == Verdict::Violated;
  os << "Z on R: " << verdict_string(line.verdict) << " (C=" << line.constant("C").value_or(-1)
     << ", l=" << line.constant("l").value_or(-1) << "), omega=1: " << verdict_string(flat.verdict);

  ProbeReport axb = gspace_check(gspace_preset("axb-line"), 200, 1);
  bool b = axb.verdict == Verdict::Holds && axb.constant("l") == 1.0 && axb.constant("C").value_or(1e9) <= 2.0;
  // Direct sampling of sigma(gm) / (omega(g) sigma(m)) against the constant 2.
  GSpaceSpec spec = gspace_preset("axb-line");
  std::mt19937_64 rng(3);
  double worst = 0;
  for (int i = 0; i < 20000; ++i) {
    Vec g = spec.sample_g(10.0, rng), m = spec.sample_m(10.0, rng);
    worst = std::max(worst, spec.log_sigma(spec.act(g, m)) - spec.log_omega(g) - spec.log_sigma(m));
  }
  b = b && worst <= std::log(2.0);
  os << "; ax+b on R: " << verdict_string(axb.verdict) << " (C=" << axb.constant("C").value_or(-1)
     << ", l=" << axb.constant("l").value_or(-1) << ", sampled max ratio " << std::exp(worst) << " <= 2)";

  ProbeReport conj = gspace_check(gspace_preset("gl-conj", "", 2), 200, 1);
  bool c = conj.verdict == Verdict::Holds && conj.constant("l") == 2.0;
  os << "; GL(2) conjugation: " << verdict_string(conj.verdict) << " (l=" << conj.constant("l").value_or(-1) << ")";

  InducedSpec ind = induced_circle_preset();
  double worst_ind = 0;
  for (double r = -50; r <= 50; r += 0.013)
    worst_ind = std::max(worst_ind, induced_scale_eval(ind, r, {0.3}, 100).value);
  bool d = worst_ind <= 2.0;
  os << "; induced scale max " << worst_ind << " <= 2";
  return {a && b && c && d, os.str()};
}

}  // namespace

int main() {
  run(1, "word metric exactness", criterion_word_metric);
  run(2, "Heisenberg scale equivalence and near-gauge bound", criterion_heisenberg);
  run(3, "m-convexity iff m-sub-polynomial", criterion_mconvex);
  run(4, "tempered action norms and strong bound failure", criterion_tempered);
  run(5, "divergent inverse-sqrt convolution", criterion_divergence);
  run(6, "integrability sums", criterion_integrability);
  run(7, "adjoint closed forms", criterion_adjoint);
  run(8, "type R verdicts", criterion_type_r);
  run(9, "SL(2,R) weight identity", criterion_sl2_identity);
  run(10, "ax+b word-weight bound", criterion_axb);
  run(11, "Euclidean convolution powers", criterion_conv_power);
  run(12, "algebra properties", criterion_algebra);
  run(13, "scaled G-spaces", criterion_gspace);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures;
}
