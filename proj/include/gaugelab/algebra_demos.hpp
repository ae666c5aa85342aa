#pragma once

#include "gaugelab/probe.hpp"
#include "gaugelab/rational.hpp"
#include "gaugelab/scale.hpp"
#include "gaugelab/scale_probes.hpp"
#include "gaugelab/weighted_function.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaugelab {

/// ||phi * psi||_m <= C ||phi||_{dm} ||psi||_{dm}, exactly when all seminorms
/// are rational, in log space otherwise.
ProbeReport conv_bound_check(const WeightedFunction& phi, const WeightedFunction& psi, const Scale& scale, int m,
                             double c, int d);

struct DeltaRatio {
  double log_ratio;          // log ||e_g1 * ... * e_gn||_m - k * sum log sigma(g_i)
  double log_chain_norm;     // log ||e_g1 * ... * e_gn||_m via convolution
  double log_direct;         // m * log sigma(g1...gn)
  std::optional<Rational> exact_ratio;
};

/// Ratio ||e_g1 * ... * e_gn||_m / (||e_g1||_k ... ||e_gn||_k).
DeltaRatio delta_power_ratio(const Scale& scale, const std::vector<Element>& chain, int m, int k);

/// m = 1 convexity through delta chains: bounds ratio^{1/n} <= C over
/// generator chains with k in [1, k_max]. The witness is reported at k = 1.
ProbeReport mconvexity_probe(const Scale& scale, const GroupSpec& group, const GeneratingSet& gens,
                             const ChainOptions& opts);

enum class DivergenceCase { InverseSqrt, SuperexpSquare };

struct PartialSum {
  long long m;
  double value;      // inverse-sqrt: the sum itself
  double log_value;  // log of the sum
};

struct DivergenceTable {
  DivergenceCase which;
  long long truncation;
  std::vector<PartialSum> rows;
  bool strictly_increasing;
};

/// inverse-sqrt: sum_{|m|<=M} 1/(1+|m|), the value at 0 of psi*psi for
/// psi(n) = (1+|n|)^{-1/2} truncated to |n| <= M; rows at powers of ten and M.
/// superexp-square: sum_{0<m<=M} e^{(2m)^m - 2} in log space, one row per m.
DivergenceTable divergence_partial_sums(DivergenceCase which, long long m_max);

struct TemperedDemo {
  Rational q;
  int n;
  Rational norm;             // ||alpha(delta chain)||_1 in l^1(Q^inf, omega)
  Rational expected;         // (1+q)^n
  bool norm_matches;
  bool action_bound_holds;   // ||alpha_q(phi)|| <= gamma(q) ||phi|| on every constructed element
  int d;
  Rational c;
  Rational strong_bound;     // q^d 2^n C^n
  bool strong_bound_fails;   // (1+q)^n > q^d 2^n C^n
  std::optional<long long> least_failing_q;  // smallest integer q > 1 where the comparison fails
};

/// Builds delta functions on Q^inf, pushes e_i forward by the tuple with q in
/// slot i, convolves them and measures the result with omega(r) = prod(1+|r_i|).
TemperedDemo tempered_action_demo(const Rational& q, int n, int d = 3, const Rational& c = 2);

}  // namespace gaugelab
