#pragma once

#include "gaugelab/probe.hpp"

#include <cstddef>
#include <vector>

namespace gaugelab {

/// Smooth radial bump in the max-norm: 1 on |x| <= 1, 0 on |x| >= 2, and
/// S(2 - |x|) between, with S(t) = f(t) / (f(t) + f(1 - t)), f(t) = exp(-1/t).
double bump_eval(const std::vector<double>& x);

/// Samples on the grid points (lo[d] + i_d) * h, row-major with the last axis fastest.
struct GridFunction {
  int dim = 1;
  double h = 0;
  std::vector<long> lo;
  std::vector<long> extent;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::vector<double> point(std::size_t flat) const;
  double mass() const;  // h^N * sum of values
};

/// Samples x -> bump_eval(x - shift) on the smallest grid box covering its support.
GridFunction sample_bump(int dim, double h, const std::vector<double>& shift);

/// Rectangle-rule convolution h^N sum_y f(y) g(x - y). The output box is the
/// Minkowski sum of the input boxes. Inputs vanish on their box boundary, where
/// this coincides with the trapezoid rule. Throws std::length_error when the
/// output would exceed `max_points`.
GridFunction grid_convolve(const GridFunction& f, const GridFunction& g, std::size_t max_points = 50'000'000);

/// log of the integral of exp(|x|^k) |f(x)|.
double log_weighted_norm(const GridFunction& f, int k);

struct ConvPowerRow {
  int n;
  double log_norm;        // at spacing h/2
  double log_norm_coarse; // at spacing h
  double rel_error;       // refinement error budget, relative
  double log_bound;       // (n-1)^k - n N log n
  double log_root;        // log_norm / n
  double log_root_bound;  // (n-1)^{k-1} - N log n
  bool bound_holds;
  bool root_bound_holds;
};

/// psi_1 = psi(. - u), u = (1, ..., 1); weighted norms of psi_1^{*n} for
/// n = 1..n_max against exp((n-1)^k) / n^{nN} after subtracting the refinement
/// budget. Also checks the root sequence exp((n-1)^{k-1}) / n^N.
ProbeReport conv_power_bound_check(int n_max, int k, int dim, double h, std::vector<ConvPowerRow>* rows = nullptr);

}  // namespace gaugelab
