#include <doctest.h>

#include "gaugelab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

using namespace gaugelab;

namespace {

Element ints(std::initializer_list<std::int64_t> v) { return Element(Element::IntVec(v)); }

std::shared_ptr<const ShellTable> table_for(const GroupSpec& g, int r) {
  return std::make_shared<const ShellTable>(ball_enumerate(g, standard_generators(g), r));
}

const double kPi = std::acos(-1.0);

}  // namespace

TEST_CASE("growth tables") {
  GroupSpec z2 = GroupSpec::z(2);
  GrowthReport a = growth_table(z2, standard_generators(z2), 3);
  CHECK(a.ball == std::vector<std::size_t>{1, 5, 13, 25});
  CHECK(a.sphere == std::vector<std::size_t>{1, 4, 8, 12});
  GroupSpec f2 = GroupSpec::free(2);
  CHECK(growth_table(f2, standard_generators(f2), 3).ball == std::vector<std::size_t>{1, 5, 17, 53});
  GroupSpec h = GroupSpec::heisenberg();
  CHECK(growth_table(h, standard_generators(h), 1).ball.back() == 5);
}

TEST_CASE("growth sizes do not depend on generator order") {
  GroupSpec h = GroupSpec::heisenberg();
  GeneratingSet gens = standard_generators(h).symmetrized(h);
  GeneratingSet reversed = gens;
  std::reverse(reversed.elements.begin(), reversed.elements.end());
  CHECK(growth_table(h, gens, 9).ball == growth_table(h, reversed, 9).ball);
}

TEST_CASE("growth classification") {
  GroupSpec z2 = GroupSpec::z(2);
  GrowthFit a = growth_classify(growth_table(z2, standard_generators(z2), 20));
  CHECK(a.model == GrowthModel::Polynomial);
  CHECK(a.degree == 2);

  GroupSpec f2 = GroupSpec::free(2);
  GrowthFit b = growth_classify(growth_table(f2, standard_generators(f2), 10));
  CHECK(b.model == GrowthModel::Exponential);
  CHECK(b.rate == doctest::Approx(std::log(3.0)).epsilon(0.01));

  GroupSpec h = GroupSpec::heisenberg();
  GrowthFit c = growth_classify(growth_table(h, standard_generators(h), 12));
  CHECK(c.model == GrowthModel::Polynomial);
  CHECK(c.degree == 4);

  CHECK_THROWS_AS(growth_classify(growth_table(z2, standard_generators(z2), 4)), std::invalid_argument);
}

TEST_CASE("integrability on Z with p = 2 converges to pi^2/3 - 1") {
  GroupSpec z = GroupSpec::z(1);
  auto t = table_for(z, 10000);
  IntegrabilitySum s = integrability_sum(make_scale("one_plus_abs", z), *t, 2);
  CHECK(s.verdict == IntegrabilityVerdict::ConvergesCertified);
  CHECK(std::abs(s.partial_sum - (kPi * kPi / 3 - 1)) < 1e-3);
  REQUIRE(s.tail_bound.has_value());
  CHECK(*s.tail_bound <= 2.0 / 10000);
  // The certified interval contains the limit.
  CHECK(s.partial_sum <= kPi * kPi / 3 - 1);
  CHECK(s.partial_sum + *s.tail_bound >= kPi * kPi / 3 - 1);
}

TEST_CASE("integrability diverges for p = 1 on Z") {
  GroupSpec z = GroupSpec::z(1);
  auto t = table_for(z, 2000);
  IntegrabilitySum s = integrability_sum(make_scale("one_plus_word", z, t), *t, 1);
  CHECK(s.verdict == IntegrabilityVerdict::DivergesEvidence);
  CHECK_FALSE(s.tail_bound.has_value());
  // 2 H_{R+1} - 1 grows like 2 log R.
  CHECK(s.partial_sum > 2 * std::log(2000.0));
}

TEST_CASE("integrability on the free group with the exponentiated word weight") {
  GroupSpec f2 = GroupSpec::free(2);
  auto t = table_for(f2, 10);
  IntegrabilitySum s = integrability_sum(make_scale("word_weight", f2, t), *t, 2);
  CHECK(s.verdict == IntegrabilityVerdict::ConvergesCertified);
  CHECK(s.certificate == "geometric");
  CHECK(s.ratio == doctest::Approx(3 * std::exp(-2.0)));
  // Closed form: 1 + sum_{n>=1} 4 3^{n-1} e^{-2n} = 1 + 4 e^{-2} / (1 - 3 e^{-2}).
  double limit = 1 + 4 * std::exp(-2.0) / (1 - 3 * std::exp(-2.0));
  CHECK(s.partial_sum <= limit);
  CHECK(s.partial_sum + *s.tail_bound >= limit - 1e-12);
}

TEST_CASE("integrability is monotone in p") {
  GroupSpec z = GroupSpec::z(1);
  auto t = table_for(z, 2000);
  Scale s = make_scale("one_plus_abs", z);
  for (int p = 2; p <= 5; ++p) {
    IntegrabilitySum a = integrability_sum(s, *t, p), b = integrability_sum(s, *t, p + 1);
    REQUIRE(a.verdict == IntegrabilityVerdict::ConvergesCertified);
    CHECK(b.verdict == IntegrabilityVerdict::ConvergesCertified);
    CHECK(b.partial_sum < a.partial_sum);
  }
}

TEST_CASE("certified integrability rules out faster exponential growth") {
  for (GroupSpec g : {GroupSpec::z(1), GroupSpec::z(2), GroupSpec::heisenberg()}) {
    auto t = table_for(g, 12);
    Scale s = make_scale("one_plus_word", g, t);
    for (int p = 1; p <= 8; ++p) {
      IntegrabilitySum r = integrability_sum(s, *t, p);
      if (r.verdict != IntegrabilityVerdict::ConvergesCertified) continue;
      GrowthFit fit = growth_classify(growth_table(*t));
      CHECK_FALSE((fit.model == GrowthModel::Exponential && fit.rate > p));
    }
  }
}

TEST_CASE("Holder-type embedding") {
  GroupSpec z = GroupSpec::z(1);
  auto t = table_for(z, 4000);
  Scale s = make_scale("one_plus_abs", z);
  int m = 1, p = 2;
  double r = 2.0;
  IntegrabilitySum sum = integrability_sum(s, *t, p);
  REQUIRE(sum.tail_bound.has_value());
  double c = sum.partial_sum + *sum.tail_bound;

  WeightedFunction phi(z);
  for (int n = -30; n <= 30; ++n) {
    Rational v = 1;
    for (int i = 0; i < m + p + 1; ++i) v /= (1 + std::abs(n));
    phi.add(ints({n}), v);
  }
  ProbeReport rep = holder_embedding_check(phi, s, m, r, p, c);
  CHECK(rep.verdict == Verdict::Holds);
  // Oracle: direct double sums.
  double lhs = 0, sup = 0;
  for (int n = -30; n <= 30; ++n) {
    double sig = 1 + std::abs(n), val = std::pow(sig, -(m + p + 1));
    lhs += std::pow(std::pow(sig, m) * val, r);
    sup = std::max(sup, std::pow(sig, m + p) * val);
  }
  CHECK(rep.details["log_lhs"].get<double>() == doctest::Approx(std::log(std::pow(lhs, 1 / r))));
  CHECK(rep.details["log_rhs"].get<double>() == doctest::Approx(std::log(std::pow(c, 1 / r) * sup)));

  CHECK(holder_embedding_check(phi, s, m, r, p, std::nullopt).verdict == Verdict::Inconclusive);
}

TEST_CASE("Holder-type embedding on the free group") {
  GroupSpec f2 = GroupSpec::free(2);
  auto t = table_for(f2, 9);
  Scale w = make_scale("word_weight", f2, t);
  IntegrabilitySum sum = integrability_sum(w, *t, 2);
  REQUIRE(sum.tail_bound.has_value());
  double c = sum.partial_sum + *sum.tail_bound;
  std::mt19937_64 rng(9);
  std::vector<Element> pool;
  for (int n = 0; n <= 5; ++n) pool.insert(pool.end(), t->shells[n].begin(), t->shells[n].end());
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> num(-20, 20);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedFunction phi(f2);
    for (int i = 0; i < 12; ++i) phi.add(pool[pick(rng)], Rational(num(rng), 3));
    if (phi.support_size() == 0) continue;
    for (double r : {1.0, 2.0, 3.5}) CHECK(holder_embedding_check(phi, w, 1, r, 2, c).verdict == Verdict::Holds);
  }
}
