#pragma once

#include "gaugelab/probe.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gaugelab {

using Vec = std::vector<double>;

/// A group G acting on a space M, with a scale sigma on M and a candidate
/// weight omega on G. Group elements and points are flat parameter vectors.
struct GSpaceSpec {
  std::string name;
  std::string space;
  std::string acting_group;
  std::string omega_name;
  std::string sigma_name;
  double max_width = 10.0;

  Vec identity;
  std::function<Vec(const Vec& g, const Vec& m)> act;
  std::function<Vec(const Vec& g, const Vec& h)> compose;
  std::function<double(const Vec& m)> log_sigma;
  std::function<double(const Vec& g)> log_omega;
  std::function<Vec(double w, std::mt19937_64& rng)> sample_g;
  std::function<Vec(double w, std::mt19937_64& rng)> sample_m;
  /// Deterministic (g, m) pairs at the corners of the box of half-width w.
  std::function<std::vector<std::pair<Vec, Vec>>(double w)> extremes;
};

/// Presets: z-line (Z translating R), r-translate, r-dilate (R acting by
/// m -> e^r m), axb-line (ax+b acting on R), gl-vector (GL(n) on R^n),
/// gl-conj (GL(n) on M(n,R) by conjugation). `omega` overrides the preset's
/// weight: one_plus_abs, exp_abs, const:1, axb_omega, theta.
GSpaceSpec gspace_preset(std::string_view name, std::string_view omega = "", int n = 2);
std::vector<std::string> gspace_preset_names();

/// Fits sigma(g.m) <= C omega^l(g) sigma^l(m) over seeded samples on
/// log-spaced boxes, l in [0, l_max]. Also verifies the action axioms on
/// sampled triples; a failed action check makes the report inconclusive.
ProbeReport gspace_check(const GSpaceSpec& spec, int samples, std::uint64_t seed, int l_max = 8, int levels = 10);

/// Uniform translational equivalence on evidence: for g in the unit box,
/// sigma(g.m) <= C sigma^d(m) + D over growing boxes of m.
ProbeReport gspace_translation_check(const GSpaceSpec& spec, int samples, std::uint64_t seed, int d_max = 8,
                                     int levels = 10);

/// Induced scale for G = R, N = Z:  sigma_G([r, m]) = inf_n omega(r - n) sigma(n.m).
struct InducedSpec {
  std::string name;
  std::function<double(double r)> log_omega;
  std::function<double(const Vec& m)> log_sigma;
  std::function<Vec(std::int64_t n, const Vec& m)> act;
};

/// Z acting on the circle by the rotation sqrt(2)-1, sigma = 1, omega = 1+|r|.
InducedSpec induced_circle_preset();

struct InducedValue {
  double value;
  double log_value;
  std::int64_t argmin;
  std::int64_t window;
  bool upper_bound = true;  // the infimum is taken over a finite window only
};

/// Minimizes over n in [round(r) - window, round(r) + window].
InducedValue induced_scale_eval(const InducedSpec& spec, double r, const Vec& m, std::int64_t window);

}  // namespace gaugelab
