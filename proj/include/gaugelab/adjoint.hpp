#pragma once

#include "gaugelab/group.hpp"
#include "gaugelab/probe.hpp"
#include "gaugelab/scale.hpp"
#include "gaugelab/shell_table.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gaugelab {

/// Real matrix of g: [[e^a,b],[0,1]] for ax+b, the unitriangular matrix for
/// Heisenberg and unipotent groups, the entries for SL2R/GLnR.
Eigen::MatrixXd matrix_of(const GroupSpec& group, const Element& g);

/// Operator 2-norm (largest singular value).
double operator_norm(const Eigen::MatrixXd& m);

/// Dimension of the Lie algebra and the labels of the fixed basis used by
/// ad_matrix and ad_numeric.
int lie_dimension(const GroupSpec& group);
std::vector<std::string> basis_labels(const GroupSpec& group);
std::vector<Eigen::MatrixXd> lie_basis(const GroupSpec& group);

/// Closed-form Ad_g in the fixed basis:
///   ax+b        basis (X=E11, Y=E12):          [[1,0],[-b,e^a]]
///   Heisenberg  basis (E23, E13, E12):         [[1,0,0],[a,1,-c],[0,0,1]]
///   SL2R        basis (diag(1,-1), 2E21, 2E12): for g=[[E,F],[G,H]],
///               [[EH+FG, 2HF, -2GE], [HG, H^2, -G^2], [-FE, -F^2, E^2]]
///   GLnR, unipotent: conjugation of the E_ij basis, read off exactly.
Eigen::MatrixXd ad_matrix(const GroupSpec& group, const Element& g);

/// Independent oracle: central difference of t -> g exp(t X_i) g^{-1} at t=0,
/// projected onto the basis by least squares. Step must lie in (0, 1e-2].
Eigen::MatrixXd ad_numeric(const GroupSpec& group, const Element& g, double step);

/// Seeded element sampler over log-spaced parameter boxes. Level j (1-based)
/// has half-width width^(j/levels); every level also contains deterministic
/// extreme elements of its box.
struct SamplerSpec {
  GroupSpec group;
  double width = 0.0;  // 0 picks a per-group default
  int samples = 200;
  std::uint64_t seed = 0;
  int levels = 10;
};

struct SampleLevel {
  double width;
  std::vector<Element> elements;
};

std::vector<SampleLevel> sample_levels(const SamplerSpec& spec);
double default_sampler_width(const GroupSpec& group);
/// One random element of the box of half-width w.
Element sample_element(const GroupSpec& group, double w, std::mt19937_64& rng);

/// Fits ||Ad_g|| <= C sigma^p(g) + D over the sampled levels, p in [0, p_max].
ProbeReport bounds_ad_probe(const Scale& scale, const SamplerSpec& sampler, int p_max);

struct EigenCheck {
  std::vector<std::complex<double>> eigenvalues;
  double max_deviation;  // max | |lambda| - 1 |
  bool unipotent;        // Ad_g - I detected nilpotent exactly
};
EigenCheck ad_eigen_check(const GroupSpec& group, const Element& g);

/// Holds when every eigenvalue of Ad_g has modulus within tol of 1 on all
/// samples (and on `extra`, which is checked first).
ProbeReport type_r_probe(const GroupSpec& group, const SamplerSpec& sampler, double tol,
                         const std::vector<Element>& extra = {});

/// max |g_ij| over i < j for a unipotent (or Heisenberg) element.
std::int64_t offdiag_max(const GroupSpec& group, const Element& g);

/// Checks ||g||_inf <= P(tau(g)) on the ball with P a fitted degree-q
/// polynomial whose constant term is raised until it dominates every shell.
ProbeReport unipotent_norm_bound(const ShellTable& table);

struct Sl2Scales {
  double sigma;  // max |log s_i|
  double theta;  // max(||g||, ||g^{-1}||)
};
Sl2Scales sl2_scales(const Element& g);

struct AxbDecomposition {
  double a, b;
  bool translation_first;  // g = (0,b)(a,0) instead of (a,0)(0,e^{-a}b)
  double translation;      // x, the translation realized by the (e,gamma) block
  int a_steps;             // ceil(|a|)
  int n;                   // minimal with (e^n - 1)/(e - 1) >= |x|
  double geometric_sum;    // (e^n - 1)/(e - 1)
  double gamma;            // x / geometric_sum, in (0,1] in absolute value
  bool gamma_above_inv_e;  // |gamma| > 1/e
  int word_length;         // a_steps + 2n
  double log_lhs;          // |a| + 2n
  double log_rhs;          // log((e(e-1))^2 omega^2(g))
  bool bound_holds;
  double reconstruction_error;  // relative
  std::vector<Element> word;    // the certificate factors, each in the unit box
};

/// Writes g = (a,b) as a product of factors with |a'|,|b'| <= 1 and checks
/// e^{|a|+2n} <= (e(e-1))^2 omega^2(g), omega(g) = e^|a| + |e^-a b| + |b| + 1.
AxbDecomposition axb_decompose(double a, double b);

}  // namespace gaugelab
