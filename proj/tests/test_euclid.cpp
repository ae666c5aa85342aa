#include <doctest.h>

#include "gaugelab/euclid_conv.hpp"

#include <cmath>

using namespace gaugelab;

TEST_CASE("bump profile") {
  CHECK(bump_eval({0.0}) == 1.0);
  CHECK(bump_eval({1.0}) == 1.0);
  CHECK(bump_eval({3.0}) == 0.0);
  CHECK(bump_eval({2.0}) == 0.0);
  double mid = bump_eval({1.5});
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(mid == doctest::Approx(0.5));  // symmetric smooth step
  // Max-norm: only the largest coordinate matters.
  CHECK(bump_eval({0.2, 1.5}) == bump_eval({1.5}));
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 0.01) {
    double v = bump_eval({r});
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("grid convolution conserves mass and commutes") {
  double h = 1.0 / 64;
  GridFunction a = sample_bump(1, h, {0.0}), b = sample_bump(1, h, {1.0});
  GridFunction ab = grid_convolve(a, b), ba = grid_convolve(b, a);
  REQUIRE(ab.values.size() == ba.values.size());
  for (std::size_t i = 0; i < ab.values.size(); ++i) CHECK(std::abs(ab.values[i] - ba.values[i]) <= 1e-12);
  CHECK(ab.mass() == doctest::Approx(a.mass() * b.mass()).epsilon(1e-10));
  CHECK(ab.lo[0] == a.lo[0] + b.lo[0]);

  // psi * psi is symmetric about 0.
  GridFunction aa = grid_convolve(a, a);
  std::size_t n = aa.values.size();
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(aa.values[i] - aa.values[n - 1 - i]) < 1e-12);

  GridFunction a2 = sample_bump(2, 1.0 / 8, {0.0, 0.0});
  GridFunction aa2 = grid_convolve(a2, a2);
  CHECK(aa2.mass() == doctest::Approx(a2.mass() * a2.mass()).epsilon(1e-10));

  CHECK_THROWS_AS(grid_convolve(a, sample_bump(1, h / 2, {0.0})), std::invalid_argument);
  CHECK_THROWS_AS(grid_convolve(a, a, 100), std::length_error);
}

TEST_CASE("a narrow peak acts as an approximate identity") {
  double h = 1.0 / 128;
  GridFunction f = sample_bump(1, h, {0.0});
  // Unit-mass spike at x = 0.5.
  GridFunction spike;
  spike.dim = 1;
  spike.h = h;
  spike.lo = {64};
  spike.extent = {1};
  spike.values = {1.0 / h};
  GridFunction g = grid_convolve(f, spike);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    double x = g.point(i)[0];
    CHECK(std::abs(g.values[i] - bump_eval({x - 0.5})) < 1e-12);
  }
}

TEST_CASE("weighted norm of the shifted bump") {
  double h = 1.0 / 256;
  GridFunction f = sample_bump(1, h, {1.0});
  // Integral of e^{x^2} over [0,2] is a lower bound; over [-1,3] an upper bound.
  double lo = 0, hi = 0;
  for (int i = 0; i < 200000; ++i) {
    double x0 = 2.0 * (i + 0.5) / 200000, x1 = -1.0 + 4.0 * (i + 0.5) / 200000;
    lo += std::exp(x0 * x0) * 2.0 / 200000;
    hi += std::exp(x1 * x1) * 4.0 / 200000;
  }
  double w = std::exp(log_weighted_norm(f, 2));
  CHECK(w > lo);
  CHECK(w < hi);
}

TEST_CASE("convolution power lower bounds") {
  std::vector<ConvPowerRow> rows;
  ProbeReport r = conv_power_bound_check(5, 2, 1, 1.0 / 256, &rows);
  CHECK(r.verdict == Verdict::Holds);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].log_bound == 0.0);
  CHECK(rows[1].log_bound == doctest::Approx(1.0 - 2 * std::log(2.0)));  // e/4
  for (const auto& row : rows) {
    CHECK(row.bound_holds);
    CHECK(row.root_bound_holds);
    CHECK(row.rel_error < 1e-3);
  }
  for (int n = 2; n <= 5; ++n) CHECK(rows[n - 1].log_root_bound == doctest::Approx((n - 1) - std::log(double(n))));
  for (int n = 2; n < 5; ++n) CHECK(rows[n].log_root_bound > rows[n - 1].log_root_bound);
  CHECK(r.details["root_bound_strictly_increasing"].get<bool>());
}

TEST_CASE("convolution power bounds in two dimensions on a coarse grid") {
  std::vector<ConvPowerRow> rows;
  ProbeReport r = conv_power_bound_check(2, 2, 2, 1.0 / 8, &rows);
  CHECK(r.verdict != Verdict::Violated);
  CHECK(rows[1].log_bound == doctest::Approx(1.0 - 4 * std::log(2.0)));
}
