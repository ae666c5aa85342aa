#pragma once

#include "gaugelab/probe.hpp"
#include "gaugelab/scale.hpp"
#include "gaugelab/shell_table.hpp"
#include "gaugelab/weighted_function.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gaugelab {

struct GrowthReport {
  GroupSpec group;
  int radius = 0;
  bool truncated = false;
  std::vector<std::size_t> sphere;
  std::vector<std::size_t> ball;
};

GrowthReport growth_table(const ShellTable& table);
GrowthReport growth_table(const GroupSpec& group, const GeneratingSet& gens, int radius,
                          std::size_t cap = 5'000'000);

enum class GrowthModel { Polynomial, Exponential, Undetermined };
std::string model_string(GrowthModel m);

struct GrowthFit {
  GrowthModel model = GrowthModel::Undetermined;
  double slope_loglog = 0;  // fitted polynomial degree before rounding
  int degree = 0;
  double poly_intercept = 0;  // log of the leading coefficient
  double rate = 0;            // fitted exponential rate
  double exp_intercept = 0;
  double poly_residual = 0;   // RMS residual in log space
  double exp_residual = 0;
  int first_n = 0, last_n = 0;
};

/// Least squares of log|B_n| against log n and against n over n in [R/2, R];
/// the smaller RMS residual wins, Undetermined when both exceed `threshold`.
/// Throws std::invalid_argument with fewer than 6 shells.
GrowthFit growth_classify(const GrowthReport& report, double threshold = 0.05);

enum class IntegrabilityVerdict { ConvergesCertified, DivergesEvidence, Inconclusive };
std::string integrability_string(IntegrabilityVerdict v);

struct IntegrabilityRow {
  int n;
  std::size_t sphere;
  std::size_t ball;
  double log_term;         // log sum_{g in S_n} sigma(g)^{-p}
  double log_partial_sum;  // log sum_{g in B_n} sigma(g)^{-p}
};

struct IntegrabilitySum {
  int p = 0;
  int radius = 0;
  std::vector<IntegrabilityRow> rows;
  double partial_sum = 0;
  std::optional<double> tail_bound;
  std::string certificate;  // "geometric", "power" or empty
  double ratio = 0;         // geometric ratio used by the certificate
  double decay_exponent = 0;  // smallest local decay exponent over the window
  IntegrabilityVerdict verdict = IntegrabilityVerdict::Inconclusive;
  std::string note;
};

/// Shell sums of sigma^{-p}. A geometric certificate needs shell-term ratios
/// below 1 and non-increasing over n in [R/2, R]; a power certificate needs a
/// local decay exponent above 1 there and bounds the tail by an integral.
IntegrabilitySum integrability_sum(const Scale& scale, const ShellTable& table, int p);

/// ||sigma^m phi||_r <= C^{1/r} ||sigma^{m+p} phi||_inf, C the certified value
/// of sum sigma^{-p}. No certificate (C absent) gives Inconclusive.
ProbeReport holder_embedding_check(const WeightedFunction& phi, const Scale& scale, int m, double r, int p,
                                   std::optional<double> c);

}  // namespace gaugelab
