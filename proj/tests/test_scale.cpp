#include <doctest.h>

#include "gaugelab/errors.hpp"
#include "gaugelab/scale.hpp"
#include "gaugelab/scale_probes.hpp"
#include "gaugelab/shell_table.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>

using namespace gaugelab;

namespace {

Element ints(std::initializer_list<std::int64_t> v) { return Element(Element::IntVec(v)); }

std::shared_ptr<const ShellTable> table_for(const GroupSpec& g, int r) {
  return std::make_shared<const ShellTable>(ball_enumerate(g, standard_generators(g), r));
}

}  // namespace

TEST_CASE("coordinate scales on Z") {
  GroupSpec z = GroupSpec::z(1);
  Scale s = make_scale("one_plus_abs", z);
  CHECK(s.log_value(ints({3})) == doctest::Approx(std::log(4.0)));
  CHECK(*s.exact_value(ints({3})) == 4);
  CHECK(s.kind == ScaleKind::Weight);

  Scale sq = make_scale("sqrt_abs", z);
  CHECK(*sq.exact_value(ints({9})) == 3);
  CHECK_FALSE(sq.exact_value(ints({2})).has_value());
  CHECK(sq.log_value(ints({2})) == doctest::Approx(0.5 * std::log(2.0)));

  Scale p = make_scale("pow_abs:3", z);
  CHECK(*p.exact_value(ints({-2})) == 8);

  Scale e = make_scale("exp_abs", z);
  CHECK(e.log_value(ints({-7})) == 7.0);

  Scale se = make_scale("superexp", z);
  CHECK(se.log_value(ints({3})) == doctest::Approx(27.0));
}

TEST_CASE("group-specific scales") {
  GroupSpec h = GroupSpec::heisenberg();
  Scale s = make_scale("heis_s", h);
  CHECK(*s.exact_value(ints({0, 1, 0})) == 2);
  CHECK(s.log_value(ints({0, 1, 0})) == doctest::Approx(std::log(2.0)));
  // (1,4,1): |a|+|c| = 2, sqrt|b| = 2, sqrt|b - ca| = sqrt 3
  CHECK(std::exp(s.log_value(ints({1, 4, 1}))) == doctest::Approx(4.0 + std::sqrt(3.0)));
  CHECK_FALSE(s.exact_value(ints({1, 4, 1})).has_value());

  GroupSpec q = GroupSpec::qtuple();
  Scale gamma = make_scale("qinf_gamma", q);
  CHECK(*gamma.exact_value(parse_element(q, "{0:2}")) == 2);
  CHECK(*gamma.exact_value(parse_element(q, "{0:2,3:1/3}")) == 6);

  GroupSpec qv = GroupSpec::qvec();
  Scale omega = make_scale("qinf_omega", qv);
  CHECK(*omega.exact_value(parse_element(qv, "{0:1,1:-1/2}")) == Rational(3));

  CHECK_THROWS_AS(make_scale("heis_s", GroupSpec::z(1)), UnsupportedOperation);
  CHECK_THROWS_AS(make_scale("no_such_scale", GroupSpec::z(1)), std::invalid_argument);
}

TEST_CASE("word-based scales need a table and stay inside it") {
  GroupSpec z = GroupSpec::z(1);
  CHECK(scale_needs_table("word"));
  CHECK(scale_needs_table("word_pow:2"));
  CHECK_FALSE(scale_needs_table("one_plus_abs"));
  CHECK_THROWS_AS(make_scale("word", z), std::invalid_argument);

  auto t = table_for(z, 5);
  Scale w = make_scale("word", z, t);
  CHECK(*w.exact_value(ints({-4})) == 4);
  CHECK_THROWS_AS(w.eval(ints({6})), NotFound);
  Scale wp = make_scale("word_pow:2", z, t);
  CHECK(wp.log_value(ints({3})) == 9.0);
  CHECK(*wp.exact_value(ints({0})) == 1);
}

TEST_CASE("normalize_gauge rounds up and lifts non-identity zeros") {
  GroupSpec z = GroupSpec::z(1);
  Scale half = normalize_gauge(make_scale("half_abs", z));
  CHECK(*half.exact_value(ints({1})) == 1);
  CHECK(*half.exact_value(ints({4})) == 2);
  CHECK(*half.exact_value(ints({0})) == 0);

  Scale zero = normalize_gauge(make_scale("const:0", z));
  CHECK(*zero.exact_value(ints({5})) == 1);
  CHECK(*zero.exact_value(ints({0})) == 0);

  Scale base = make_scale("sqrt_abs", z), norm = normalize_gauge(base);
  for (int n = -50; n <= 50; ++n) {
    double t = n == 0 ? 0.0 : std::sqrt(std::abs(n));
    double tp = to_double(*norm.exact_value(ints({n})));
    CHECK(t <= tp);
    CHECK(tp <= t + 1);
  }
}

TEST_CASE("exponential bijection") {
  GroupSpec z = GroupSpec::z(1);
  Scale w = exp_bijection(make_scale("abs", z), ExpDirection::GaugeToWeight);
  CHECK(w.log_value(ints({3})) == doctest::Approx(3.0));
  CHECK(w.kind == ScaleKind::Weight);
  Scale g = exp_bijection(make_scale("one_plus_abs", z), ExpDirection::WeightToGauge);
  CHECK(std::exp(g.log_value(ints({3}))) == doctest::Approx(std::log(4.0)));
  Scale round = exp_bijection(exp_bijection(make_scale("abs", z), ExpDirection::GaugeToWeight),
                              ExpDirection::WeightToGauge);
  CHECK(std::exp(round.log_value(ints({7}))) == doctest::Approx(7.0));
  CHECK_THROWS(exp_bijection(make_scale("const:1/2", z), ExpDirection::WeightToGauge).eval(ints({1})));
}

TEST_CASE("custom scales from a two-column file") {
  GroupSpec z = GroupSpec::z(1);
  auto path = std::filesystem::temp_directory_path() / "gaugelab_scale_table.txt";
  {
    std::ofstream out(path);
    out << "# element log-value\n0 0\n1 0.5\n-1 0.5\n";
  }
  Scale s = make_scale("file:" + path.string(), z);
  CHECK(s.log_value(ints({1})) == 0.5);
  CHECK_THROWS_AS(s.eval(ints({2})), NotFound);
  std::filesystem::remove(path);
}

TEST_CASE("built-in gauges and weights satisfy their axioms on balls") {
  GroupSpec z = GroupSpec::z(1);
  auto tz = table_for(z, 20);
  for (auto spec : {"abs", "half_abs", "sqrt_abs", "word"})
    CHECK_MESSAGE(check_axioms(make_scale(spec, z, tz), ScaleKind::Gauge, *tz).verdict == Verdict::Holds, spec);
  for (auto spec : {"one_plus_abs", "exp_abs", "const:1", "one_plus_word", "word_weight"})
    CHECK_MESSAGE(check_axioms(make_scale(spec, z, tz), ScaleKind::Weight, *tz).verdict == Verdict::Holds, spec);

  GroupSpec z2 = GroupSpec::z(2);
  auto t2 = table_for(z2, 10);
  for (auto spec : {"abs", "word"})
    CHECK(check_axioms(make_scale(spec, z2, t2), ScaleKind::Gauge, *t2).verdict == Verdict::Holds);
  CHECK(check_axioms(make_scale("one_plus_abs", z2, t2), ScaleKind::Weight, *t2).verdict == Verdict::Holds);

  GroupSpec f2 = GroupSpec::free(2);
  auto tf = table_for(f2, 6);
  CHECK(check_axioms(make_scale("word", f2, tf), ScaleKind::Gauge, *tf).verdict == Verdict::Holds);
  CHECK(check_axioms(make_scale("word_weight", f2, tf), ScaleKind::Weight, *tf).verdict == Verdict::Holds);

  GroupSpec h = GroupSpec::heisenberg();
  auto th = table_for(h, 8);
  CHECK(check_axioms(make_scale("word", h, th), ScaleKind::Gauge, *th).verdict == Verdict::Holds);
}

TEST_CASE("axiom violations carry witnesses") {
  GroupSpec z = GroupSpec::z(1);
  auto t = table_for(z, 50);
  ProbeReport r = check_axioms(make_scale("sq_abs", z), ScaleKind::Gauge, *t);
  CHECK(r.verdict == Verdict::Violated);
  CHECK(r.witness.contains("axiom"));

  ProbeReport tau = check_axioms(make_scale("abs", z), ScaleKind::Gauge, *t);
  CHECK(tau.verdict == Verdict::Holds);
  CHECK(check_axioms(make_scale("exp_abs", z), ScaleKind::Weight, *t).verdict == Verdict::Holds);
  // A gauge is not a weight: |0| = 0 < 1.
  CHECK(check_axioms(make_scale("abs", z), ScaleKind::Weight, *t).verdict == Verdict::Violated);
}
