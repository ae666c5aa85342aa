#include "gaugelab/euclid_conv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaugelab {

namespace {

double smooth_step(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double max_norm(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
}

}  // namespace

double bump_eval(const std::vector<double>& x) {
  double r = max_norm(x);
  if (r <= 1) return 1;
  if (r >= 2) return 0;
  return smooth_step(2.0 - r);
}

std::vector<double> GridFunction::point(std::size_t flat) const {
  std::vector<double> x(dim);
  for (int d = dim - 1; d >= 0; --d) {
    std::size_t e = static_cast<std::size_t>(extent[d]);
    x[d] = static_cast<double>(lo[d] + static_cast<long>(flat % e)) * h;
    flat /= e;
  }
  return x;
}

double GridFunction::mass() const {
  double s = 0;
  for (double v : values) s += v;
  return s * std::pow(h, dim);
}

GridFunction sample_bump(int dim, double h, const std::vector<double>& shift) {
  check_dim(dim);
  if (!(h > 0)) throw std::invalid_argument("grid spacing must be positive");
  if (static_cast<int>(shift.size()) != dim) throw std::invalid_argument("shift dimension mismatch");
  GridFunction f;
  f.dim = dim;
  f.h = h;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) {
    long a = static_cast<long>(std::floor((shift[d] - 2.0) / h));
    long b = static_cast<long>(std::ceil((shift[d] + 2.0) / h));
    f.lo.push_back(a);
    f.extent.push_back(b - a + 1);
    total *= static_cast<std::size_t>(b - a + 1);
  }
  f.values.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<double> x = f.point(i);
    for (int d = 0; d < dim; ++d) x[d] -= shift[d];
    f.values[i] = bump_eval(x);
  }
  return f;
}

GridFunction grid_convolve(const GridFunction& f, const GridFunction& g, std::size_t max_points) {
  if (f.dim != g.dim || f.h != g.h) throw std::invalid_argument("convolution needs a common grid");
  GridFunction out;
  out.dim = f.dim;
  out.h = f.h;
  std::size_t total = 1;
  for (int d = 0; d < f.dim; ++d) {
    out.lo.push_back(f.lo[d] + g.lo[d]);
    out.extent.push_back(f.extent[d] + g.extent[d] - 1);
    total *= static_cast<std::size_t>(out.extent[d]);
    if (total > max_points) throw std::length_error("convolution output exceeds the grid budget");
  }
  out.values.assign(total, 0.0);
  double cell = std::pow(f.h, f.dim);

  if (f.dim == 1) {
    std::size_t nf = f.values.size(), ng = g.values.size();
    for (std::size_t i = 0; i < nf; ++i) {
      double a = f.values[i];
      if (a == 0) continue;
      for (std::size_t j = 0; j < ng; ++j) out.values[i + j] += a * g.values[j];
    }
  } else {
    // Generic N: decompose flat indices once per input.
    auto multi = [](const GridFunction& u, std::size_t flat) {
      std::vector<long> idx(u.dim);
      for (int d = u.dim - 1; d >= 0; --d) {
        idx[d] = static_cast<long>(flat % static_cast<std::size_t>(u.extent[d]));
        flat /= static_cast<std::size_t>(u.extent[d]);
      }
      return idx;
    };
    std::vector<std::vector<long>> gi(g.values.size());
    for (std::size_t j = 0; j < g.values.size(); ++j) gi[j] = multi(g, j);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      double a = f.values[i];
      if (a == 0) continue;
      std::vector<long> fi = multi(f, i);
      for (std::size_t j = 0; j < g.values.size(); ++j) {
        double b = g.values[j];
        if (b == 0) continue;
        std::size_t flat = 0;
        for (int d = 0; d < f.dim; ++d) flat = flat * static_cast<std::size_t>(out.extent[d]) + fi[d] + gi[j][d];
        out.values[flat] += a * b;
      }
    }
  }
  for (double& v : out.values) v *= cell;
  return out;
}

double log_weighted_norm(const GridFunction& f, int k) {
  double m = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double v = std::abs(f.values[i]);
    if (v == 0) continue;
    double t = std::pow(max_norm(f.point(i)), k) + std::log(v);
    terms.push_back(t);
    m = std::max(m, t);
  }
  if (terms.empty()) return m;
  double s = 0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s) + f.dim * std::log(f.h);
}

ProbeReport conv_power_bound_check(int n_max, int k, int dim, double h, std::vector<ConvPowerRow>* rows_out) {
  check_dim(dim);
  if (n_max < 1) throw std::invalid_argument("n must be at least 1");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  ProbeReport report;
  report.probe = "conv-power";
  report.details["inequality"] = "int exp(|x|^k) |psi_1^{*n}| >= exp((n-1)^k) / n^(nN)";
  report.set_constant("k", k);
  report.set_constant("N", dim);
  report.set_constant("h", h);

  std::vector<double> u(dim, 1.0);
  GridFunction coarse1 = sample_bump(dim, h, u), fine1 = sample_bump(dim, h / 2, u);
  GridFunction coarse = coarse1, fine = fine1;
  std::vector<ConvPowerRow> rows;
  bool all_hold = true, budget_ok = true, roots_increasing = true;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      coarse = grid_convolve(coarse, coarse1);
      fine = grid_convolve(fine, fine1);
    }
    ConvPowerRow row;
    row.n = n;
    row.log_norm = log_weighted_norm(fine, k);
    row.log_norm_coarse = log_weighted_norm(coarse, k);
    row.rel_error = std::abs(std::expm1(row.log_norm_coarse - row.log_norm));
    row.log_bound = std::pow(n - 1.0, k) - n * dim * std::log(static_cast<double>(n));
    row.log_root = row.log_norm / n;
    row.log_root_bound = std::pow(n - 1.0, k - 1) - dim * std::log(static_cast<double>(n));
    if (row.rel_error >= 1.0) {
      budget_ok = false;
      row.bound_holds = row.root_bound_holds = false;
    } else {
      double lower = row.log_norm + std::log1p(-row.rel_error);
      row.bound_holds = lower > row.log_bound;
      row.root_bound_holds = lower / n > row.log_root_bound;
    }
    if (!row.bound_holds || !row.root_bound_holds) all_hold = false;
    if (!rows.empty() && n > 2 && !(row.log_root_bound > rows.back().log_root_bound)) roots_increasing = false;
    rows.push_back(row);
  }

  nlohmann::json table = nlohmann::json::array();
  for (const auto& r : rows)
    table.push_back({{"n", r.n},
                     {"log_value_norm", r.log_norm},
                     {"log_value_norm_coarse", r.log_norm_coarse},
                     {"relative_error_budget", r.rel_error},
                     {"log_value_bound", r.log_bound},
                     {"log_value_root", r.log_root},
                     {"log_value_root_bound", r.log_root_bound},
                     {"bound_holds", r.bound_holds},
                     {"root_bound_holds", r.root_bound_holds}});
  report.details["rows"] = table;
  report.details["root_bound_strictly_increasing"] = roots_increasing;
  if (!budget_ok) {
    report.verdict = Verdict::Inconclusive;
    report.message = "quadrature error budget exceeds the margin; use a finer grid";
  } else if (all_hold) {
    report.verdict = Verdict::Holds;
  } else {
    report.verdict = Verdict::Violated;
    for (const auto& r : rows)
      if (!r.bound_holds || !r.root_bound_holds) {
        report.witness = {{"n", r.n}, {"log_value_norm", r.log_norm}, {"log_value_bound", r.log_bound}};
        break;
      }
  }
  if (rows_out) *rows_out = rows;
  return report;
}

}  // namespace gaugelab
