#pragma once

#include "gaugelab/group.hpp"
#include "gaugelab/probe.hpp"
#include "gaugelab/scale.hpp"
#include "gaugelab/shell_table.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gaugelab {

/// Identity value, symmetry and subadditivity (gauge) or submultiplicativity
/// and sigma >= 1 (weight). Symmetry and identity are checked on the whole
/// ball, products on all pairs of B_{R/2}.
ProbeReport check_axioms(const Scale& scale, ScaleKind kind, const ShellTable& table);

/// Same checks on an explicit sample list; products over all sample pairs.
ProbeReport check_axioms(const Scale& scale, ScaleKind kind, const std::vector<Element>& samples);

/// sigma1 <= C sigma2^m + D on the ball, m in [0, m_max].
ProbeReport dominates_probe(const Scale& s1, const Scale& s2, const ShellTable& table, int m_max = 8);

/// tau1 <= C tau2 + D on the ball.
ProbeReport strong_dominates_probe(const Scale& t1, const Scale& t2, const ShellTable& table);

/// For every shift g: sigma(g^{-1} h) <= C sigma^d(h) + D with d in [1, d_max].
/// Reports the worst (C, d) over the shifts.
ProbeReport translation_equiv_probe(const Scale& scale, const std::vector<Element>& shifts, const ShellTable& table,
                                    int d_max = 8);

/// sigma(gh) <= C (1 + sigma(g))^d (1 + sigma(h))^d over pairs of B_{R/2}.
ProbeReport sub_polynomial_probe(const Scale& scale, const ShellTable& table, int d_max = 8);

struct ChainOptions {
  int chain_len_max = 12;
  int exponent_max = 8;
  std::uint64_t seed = 0;
  std::size_t exhaustive_limit = std::size_t{1} << 14;
  std::size_t samples_per_length = 2000;
};

/// Chains of generator indices of length n: all of them while
/// |U|^n <= exhaustive_limit, otherwise the constant chains plus seeded samples.
std::vector<std::vector<int>> generator_chains(std::size_t num_gens, int n, const ChainOptions& opts);

/// sigma(g_1...g_n) <= C^n sigma^l(g_1)...sigma^l(g_n) over generator chains.
ProbeReport m_sub_polynomial_probe(const Scale& scale, const GroupSpec& group, const GeneratingSet& gens,
                                   const ChainOptions& opts);

/// Elements of B_n in shell order.
std::vector<Element> ball_elements(const ShellTable& table, int n);

}  // namespace gaugelab
