#include "gaugelab/adjoint.hpp"

#include "gaugelab/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaugelab {

namespace {

Eigen::MatrixXd unit(int n, int i, int j, double v = 1.0) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(i, j) = v;
  return m;
}

int matrix_dim(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::AxB:
    case GroupKind::SL2R: return 2;
    case GroupKind::Heisenberg: return 3;
    case GroupKind::GLnR:
    case GroupKind::UnipotentZ: return group.dim;
    default: throw UnsupportedOperation("no matrix form for " + group.to_string());
  }
}

// Coordinates of x in the basis, by least squares on the flattened entries.
Eigen::VectorXd coordinates(const std::vector<Eigen::MatrixXd>& basis, const Eigen::MatrixXd& x) {
  const Eigen::Index n2 = x.size();
  Eigen::MatrixXd b(n2, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    b.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXd>(basis[i].data(), n2);
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), n2);
  return b.colPivHouseholderQr().solve(v);
}

Eigen::MatrixXd rotation(double phi) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

Element element_from_matrix(const GroupSpec&, const Eigen::MatrixXd& m) {
  Element::RealVec v;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return Element(std::move(v));
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

std::vector<Element> extremes(const GroupSpec& group, double w) {
  std::vector<Element> out;
  switch (group.kind) {
    case GroupKind::AxB:
      for (double a : {-w, 0.0, w})
        for (double b : {-w, 0.0, w})
          if (a != 0.0 || b != 0.0) out.emplace_back(Element::RealVec{a, b});
      break;
    case GroupKind::Heisenberg: {
      auto k = static_cast<std::int64_t>(std::llround(w));
      for (std::int64_t a : {-k, std::int64_t{0}, k})
        for (std::int64_t b : {-k, std::int64_t{0}, k})
          for (std::int64_t c : {-k, std::int64_t{0}, k})
            if (a || b || c) out.emplace_back(Element::IntVec{a, b, c});
      break;
    }
    case GroupKind::UnipotentZ: {
      auto k = static_cast<std::int64_t>(std::llround(w));
      std::size_t len = static_cast<std::size_t>(group.dim) * (group.dim - 1) / 2;
      for (std::size_t i = 0; i < len; ++i)
        for (std::int64_t s : {-k, k}) {
          Element::IntVec v(len, 0);
          v[i] = s;
          out.emplace_back(std::move(v));
        }
      out.emplace_back(Element::IntVec(len, k));
      break;
    }
    case GroupKind::SL2R: {
      double e = std::exp(w);
      Eigen::MatrixXd d(2, 2);
      d << e, 0, 0, 1 / e;
      out.push_back(element_from_matrix(group, d));
      out.push_back(element_from_matrix(group, d.inverse()));
      out.emplace_back(Element::RealVec{1, e, 0, 1});
      out.emplace_back(Element::RealVec{1, 0, e, 1});
      out.push_back(element_from_matrix(group, rotation(std::numbers::pi / 4) * d));
      break;
    }
    case GroupKind::GLnR: {
      int n = group.dim;
      for (double s : {w, -w}) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
        a(0, 0) = std::exp(s);
        a(n - 1, n - 1) = std::exp(-s);
        out.push_back(element_from_matrix(group, a));
      }
      out.push_back(element_from_matrix(group, Eigen::MatrixXd::Identity(n, n) + unit(n, 0, n - 1, std::exp(w))));
      out.push_back(element_from_matrix(group, Eigen::MatrixXd::Identity(n, n) + unit(n, n - 1, 0, std::exp(w))));
      break;
    }
    default: throw UnsupportedOperation("no sampler for " + group.to_string());
  }
  return out;
}

}  // namespace

Eigen::MatrixXd matrix_of(const GroupSpec& group, const Element& g) {
  switch (group.kind) {
    case GroupKind::AxB: {
      Eigen::MatrixXd m(2, 2);
      m << std::exp(g.reals()[0]), g.reals()[1], 0, 1;
      return m;
    }
    case GroupKind::Heisenberg:
    case GroupKind::UnipotentZ: {
      int n = matrix_dim(group);
      auto full = unipotent_matrix(group, g);
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(full[i * n + j]);
      return m;
    }
    case GroupKind::SL2R:
    case GroupKind::GLnR: {
      int n = matrix_dim(group);
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g.reals()[i * n + j];
      return m;
    }
    default: throw UnsupportedOperation("no matrix form for " + group.to_string());
  }
}

double operator_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

std::vector<Eigen::MatrixXd> lie_basis(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::AxB: return {unit(2, 0, 0), unit(2, 0, 1)};
    case GroupKind::Heisenberg: return {unit(3, 1, 2), unit(3, 0, 2), unit(3, 0, 1)};
    case GroupKind::SL2R: {
      Eigen::MatrixXd h(2, 2);
      h << 1, 0, 0, -1;
      return {h, unit(2, 1, 0, 2.0), unit(2, 0, 1, 2.0)};
    }
    case GroupKind::UnipotentZ: {
      std::vector<Eigen::MatrixXd> b;
      for (int i = 0; i < group.dim; ++i)
        for (int j = i + 1; j < group.dim; ++j) b.push_back(unit(group.dim, i, j));
      return b;
    }
    case GroupKind::GLnR: {
      std::vector<Eigen::MatrixXd> b;
      for (int i = 0; i < group.dim; ++i)
        for (int j = 0; j < group.dim; ++j) b.push_back(unit(group.dim, i, j));
      return b;
    }
    default: throw UnsupportedOperation("no adjoint representation for " + group.to_string());
  }
}

int lie_dimension(const GroupSpec& group) { return static_cast<int>(lie_basis(group).size()); }

std::vector<std::string> basis_labels(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::AxB: return {"E11", "E12"};
    case GroupKind::Heisenberg: return {"E23", "E13", "E12"};
    case GroupKind::SL2R: return {"diag(1,-1)", "2*E21", "2*E12"};
    case GroupKind::UnipotentZ:
    case GroupKind::GLnR: {
      std::vector<std::string> out;
      bool strict = group.kind == GroupKind::UnipotentZ;
      for (int i = 0; i < group.dim; ++i)
        for (int j = strict ? i + 1 : 0; j < group.dim; ++j)
          out.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      return out;
    }
    default: throw UnsupportedOperation("no adjoint representation for " + group.to_string());
  }
}

Eigen::MatrixXd ad_matrix(const GroupSpec& group, const Element& g) {
  switch (group.kind) {
    case GroupKind::AxB: {
      double a = g.reals()[0], b = g.reals()[1];
      Eigen::MatrixXd m(2, 2);
      m << 1, 0, -b, std::exp(a);
      return m;
    }
    case GroupKind::Heisenberg: {
      double a = static_cast<double>(g.ints()[0]), c = static_cast<double>(g.ints()[2]);
      Eigen::MatrixXd m(3, 3);
      m << 1, 0, 0, a, 1, -c, 0, 0, 1;
      return m;
    }
    case GroupKind::SL2R: {
      const auto& v = g.reals();
      double E = v[0], F = v[1], G = v[2], H = v[3];
      Eigen::MatrixXd m(3, 3);
      m << E * H + F * G, 2 * H * F, -2 * G * E,
           H * G, H * H, -G * G,
           -F * E, -F * F, E * E;
      return m;
    }
    case GroupKind::UnipotentZ: {
      int q = group.dim;
      Eigen::MatrixXd x = matrix_of(group, g), xinv = matrix_of(group, inverse(group, g));
      std::vector<std::pair<int, int>> idx;
      for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) idx.emplace_back(i, j);
      Eigen::MatrixXd m(idx.size(), idx.size());
      for (std::size_t col = 0; col < idx.size(); ++col) {
        Eigen::MatrixXd img = x * unit(q, idx[col].first, idx[col].second) * xinv;
        for (std::size_t row = 0; row < idx.size(); ++row) m(row, col) = img(idx[row].first, idx[row].second);
      }
      return m;
    }
    case GroupKind::GLnR: {
      int n = group.dim;
      Eigen::MatrixXd x = matrix_of(group, g);
      Eigen::MatrixXd xinv = x.inverse();
      Eigen::MatrixXd m(n * n, n * n);
      for (int col = 0; col < n * n; ++col) {
        Eigen::MatrixXd img = x * unit(n, col / n, col % n) * xinv;
        for (int row = 0; row < n * n; ++row) m(row, col) = img(row / n, row % n);
      }
      return m;
    }
    default: throw UnsupportedOperation("no adjoint representation for " + group.to_string());
  }
}

Eigen::MatrixXd ad_numeric(const GroupSpec& group, const Element& g, double step) {
  if (!(step > 0.0) || step > 1e-2) throw std::invalid_argument("finite-difference step must lie in (0, 1e-2]");
  auto basis = lie_basis(group);
  Eigen::MatrixXd x = matrix_of(group, g);
  Eigen::MatrixXd xinv = x.inverse();
  Eigen::MatrixXd out(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Eigen::MatrixXd plus = (step * basis[i]).exp(), minus = (-step * basis[i]).exp();
    Eigen::MatrixXd deriv = (x * plus * xinv - x * minus * xinv) / (2 * step);
    out.col(static_cast<Eigen::Index>(i)) = coordinates(basis, deriv);
  }
  return out;
}

double default_sampler_width(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::AxB: return 8.0;
    case GroupKind::Heisenberg: return 1000.0;
    case GroupKind::UnipotentZ: return 100.0;
    case GroupKind::SL2R: return 6.0;
    case GroupKind::GLnR: return 4.0;
    default: throw UnsupportedOperation("no sampler for " + group.to_string());
  }
}

Element sample_element(const GroupSpec& group, double w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-w, w);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  switch (group.kind) {
    case GroupKind::AxB: {
      double a = u(rng), b = u(rng);
      return Element(Element::RealVec{a, b});
    }
    case GroupKind::Heisenberg:
    case GroupKind::UnipotentZ: {
      std::size_t len = group.kind == GroupKind::Heisenberg ? 3 : static_cast<std::size_t>(group.dim) * (group.dim - 1) / 2;
      Element::IntVec v(len);
      for (auto& x : v) x = static_cast<std::int64_t>(std::llround(u(rng)));
      return Element(std::move(v));
    }
    case GroupKind::SL2R: {
      double t = u(rng), p1 = angle(rng), p2 = angle(rng);
      Eigen::MatrixXd d(2, 2);
      d << std::exp(t), 0, 0, std::exp(-t);
      Eigen::MatrixXd m = rotation(p1) * d * rotation(p2);
      // Restore det = 1 exactly enough for canonical_form.
      m /= std::sqrt(m.determinant());
      return element_from_matrix(group, m);
    }
    case GroupKind::GLnR: {
      int n = group.dim;
      Eigen::MatrixXd a = random_orthogonal(n, rng), b = random_orthogonal(n, rng);
      Eigen::VectorXd s(n);
      for (int i = 0; i < n; ++i) s(i) = std::exp(u(rng));
      return element_from_matrix(group, a * s.asDiagonal() * b);
    }
    default: throw UnsupportedOperation("no sampler for " + group.to_string());
  }
}

std::vector<SampleLevel> sample_levels(const SamplerSpec& spec) {
  double width = spec.width > 0 ? spec.width : default_sampler_width(spec.group);
  if (width <= 1.0) throw std::invalid_argument("sampler width must exceed 1");
  if (spec.levels < 1) throw std::invalid_argument("sampler needs at least one level");
  std::mt19937_64 rng(spec.seed);
  std::vector<SampleLevel> out;
  int per_level = spec.samples / spec.levels;
  for (int j = 1; j <= spec.levels; ++j) {
    double w = std::pow(width, static_cast<double>(j) / spec.levels);
    SampleLevel level{w, extremes(spec.group, w)};
    for (int i = 0; i < per_level; ++i) level.elements.push_back(sample_element(spec.group, w, rng));
    out.push_back(std::move(level));
  }
  return out;
}

ProbeReport bounds_ad_probe(const Scale& scale, const SamplerSpec& sampler, int p_max) {
  ProbeReport report;
  report.probe = "bounds-ad";
  report.details["inequality"] = "||Ad_g|| <= C * sigma(g)^p + D";
  report.details["norm"] = "operator 2-norm";
  report.details["scale"] = scale.name;
  report.evidence = {{"samples", sampler.samples}, {"seed", sampler.seed}, {"levels", sampler.levels},
                     {"group", sampler.group.to_string()}};
  if (sampler.samples < 50) {
    report.message = "fewer than 50 samples";
    return report;
  }
  auto levels = sample_levels(sampler);
  std::vector<Element> flat;
  std::vector<Level> fit_levels;
  for (const auto& level : levels) {
    Level lv{level.width, {}};
    for (const Element& g : level.elements) {
      lv.points.push_back(FitPoint{scale.log_value(g), std::log(operator_norm(ad_matrix(sampler.group, g))),
                                   flat.size()});
      flat.push_back(g);
    }
    fit_levels.push_back(std::move(lv));
  }
  report.evidence["elements"] = flat.size();
  ExponentFit fit = fit_exponent(fit_levels, 0, p_max, true);
  apply_fit(report, fit, "p", true);
  if (fit.verdict == Verdict::Violated && fit.witness_tag) {
    const Element& g = flat[*fit.witness_tag];
    report.witness = {{"g", format_element(sampler.group, g)},
                      {"log_ad_norm", std::log(operator_norm(ad_matrix(sampler.group, g)))},
                      {"log_sigma", scale.log_value(g)},
                      {"p", fit.exponent}};
  }
  return report;
}

EigenCheck ad_eigen_check(const GroupSpec& group, const Element& g) {
  Eigen::MatrixXd a = ad_matrix(group, g);
  const Eigen::Index q = a.rows();
  Eigen::MatrixXd nil = a - Eigen::MatrixXd::Identity(q, q);
  Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(q, q);
  for (Eigen::Index i = 0; i < q; ++i) pw = pw * nil;
  EigenCheck out;
  if (pw.cwiseAbs().maxCoeff() == 0.0) {
    out.eigenvalues.assign(static_cast<std::size_t>(q), std::complex<double>(1.0, 0.0));
    out.max_deviation = 0.0;
    out.unipotent = true;
    return out;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  out.unipotent = false;
  out.max_deviation = 0.0;
  for (Eigen::Index i = 0; i < q; ++i) {
    std::complex<double> l = solver.eigenvalues()(i);
    out.eigenvalues.push_back(l);
    out.max_deviation = std::max(out.max_deviation, std::abs(std::abs(l) - 1.0));
  }
  return out;
}

ProbeReport type_r_probe(const GroupSpec& group, const SamplerSpec& sampler, double tol,
                         const std::vector<Element>& extra) {
  ProbeReport report;
  report.probe = "type-r";
  report.details["condition"] = "every eigenvalue of Ad_g has modulus 1";
  report.evidence = {{"samples", sampler.samples}, {"seed", sampler.seed}, {"tolerance", tol},
                     {"explicit_elements", extra.size()}};
  std::vector<Element> all = extra;
  for (const auto& level : sample_levels(sampler))
    all.insert(all.end(), level.elements.begin(), level.elements.end());
  std::size_t unipotent = 0;
  double worst = 0.0;
  for (const Element& g : all) {
    EigenCheck c = ad_eigen_check(group, g);
    if (c.unipotent) ++unipotent;
    worst = std::max(worst, c.max_deviation);
    if (c.max_deviation > tol) {
      report.verdict = Verdict::Violated;
      nlohmann::json ev = nlohmann::json::array();
      std::complex<double> largest = c.eigenvalues.front();
      for (const auto& l : c.eigenvalues) {
        ev.push_back({{"re", l.real()}, {"im", l.imag()}, {"modulus", std::abs(l)}});
        if (std::abs(l) > std::abs(largest)) largest = l;
      }
      report.witness = {{"g", format_element(group, g)},
                        {"eigenvalues", ev},
                        {"largest_modulus", std::abs(largest)},
                        {"max_deviation", c.max_deviation}};
      report.evidence["checked"] = &g - all.data() + 1;
      return report;
    }
  }
  report.verdict = Verdict::Holds;
  report.evidence["checked"] = all.size();
  report.evidence["exactly_unipotent"] = unipotent;
  report.set_constant("max_deviation", worst);
  return report;
}

std::int64_t offdiag_max(const GroupSpec& group, const Element& g) {
  if (group.kind != GroupKind::Heisenberg && group.kind != GroupKind::UnipotentZ)
    throw UnsupportedOperation("offdiag_max needs heis or unip:q");
  std::int64_t best = 0;
  for (auto x : g.ints()) best = std::max(best, x < 0 ? -x : x);
  return best;
}

ProbeReport unipotent_norm_bound(const ShellTable& table) {
  const GroupSpec& group = table.group;
  ProbeReport report;
  report.probe = "unipotent-bound";
  report.details["inequality"] = "max_{i<j} |g_ij| <= P(tau(g)), deg P = q";
  report.evidence = {{"radius", table.radius}, {"ball_size", table.size()}, {"truncated", table.truncated}};
  if (group.kind != GroupKind::Heisenberg && group.kind != GroupKind::UnipotentZ)
    throw UnsupportedOperation("unipotent-bound needs heis or unip:q");
  int q = group.kind == GroupKind::Heisenberg ? 3 : group.dim;
  if (table.truncated) {
    report.message = "ball enumeration truncated";
    return report;
  }
  int R = table.radius;
  std::vector<double> maxima(R + 1, 0.0);
  for (int n = 0; n <= R; ++n)
    for (const Element& g : table.shells[n]) maxima[n] = std::max(maxima[n], static_cast<double>(offdiag_max(group, g)));
  int deg = std::min(q, R);
  Eigen::MatrixXd v(R + 1, deg + 1);
  Eigen::VectorXd y(R + 1);
  for (int n = 0; n <= R; ++n) {
    for (int k = 0; k <= deg; ++k) v(n, k) = std::pow(static_cast<double>(n), k);
    y(n) = maxima[n];
  }
  Eigen::VectorXd coef = v.colPivHouseholderQr().solve(y);
  double lift = 0.0;
  for (int n = 0; n <= R; ++n) lift = std::max(lift, y(n) - (v.row(n) * coef)(0));
  coef(0) += lift;
  // Tiny margin so the certificate survives the rounding of the fit.
  coef(0) += 1e-9 * std::max(1.0, y.maxCoeff());

  nlohmann::json shells = nlohmann::json::array();
  std::vector<double> absc, ratio;
  bool dominated = true;
  for (int n = 0; n <= R; ++n) {
    double p = (v.row(n) * coef)(0);
    dominated = dominated && maxima[n] <= p;
    shells.push_back({{"n", n}, {"max_offdiag", maxima[n]}, {"polynomial", p}});
    if (n >= 1) {
      absc.push_back(n);
      ratio.push_back(std::log1p(maxima[n]) - q * std::log1p(static_cast<double>(n)));
    }
  }
  report.details["shells"] = shells;
  report.details["coefficients"] = std::vector<double>(coef.data(), coef.data() + coef.size());
  report.set_constant("degree", deg);
  Growth growth = classify_growth(absc, ratio);
  report.details["growth_against_degree"] = growth_string(growth);
  if (!dominated) {
    report.verdict = Verdict::Violated;
  } else if (growth == Growth::Growing) {
    report.verdict = Verdict::Violated;
    report.message = "entries outgrow degree q";
  } else if (growth == Growth::Ambiguous) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = Verdict::Holds;
  }
  return report;
}

Sl2Scales sl2_scales(const Element& g) {
  const auto& v = g.reals();
  Eigen::Matrix2d m;
  m << v[0], v[1], v[2], v[3];
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
  double smax = svd.singularValues()(0), smin = svd.singularValues()(1);
  if (!(smin > 0.0)) throw std::invalid_argument("singular matrix");
  return {std::max(std::abs(std::log(smax)), std::abs(std::log(smin))), std::max(smax, 1.0 / smin)};
}

AxbDecomposition axb_decompose(double a, double b) {
  const double e = std::numbers::e;
  const GroupSpec group = GroupSpec::axb();
  AxbDecomposition d{};
  d.a = a;
  d.b = b;
  double conj = std::exp(-a) * b;
  // g = (a,0)(0,e^{-a}b) = (0,b)(a,0); use whichever translation is shorter.
  d.translation_first = std::abs(b) < std::abs(conj);
  d.translation = d.translation_first ? b : conj;
  double x = std::abs(d.translation);

  d.a_steps = static_cast<int>(std::ceil(std::abs(a)));
  d.n = 0;
  d.geometric_sum = 0.0;
  while (d.geometric_sum < x) {
    ++d.n;
    d.geometric_sum = (std::exp(static_cast<double>(d.n)) - 1.0) / (e - 1.0);
  }
  d.gamma = d.n == 0 ? 0.0 : d.translation / d.geometric_sum;
  d.gamma_above_inv_e = std::abs(d.gamma) > 1.0 / e;
  d.word_length = d.a_steps + 2 * d.n;

  std::vector<Element> a_part;
  for (int i = 0; i < d.a_steps; ++i) a_part.emplace_back(Element::RealVec{a / d.a_steps, 0.0});
  std::vector<Element> t_part;
  for (int i = 0; i < d.n; ++i) t_part.emplace_back(Element::RealVec{1.0, d.gamma});
  for (int i = 0; i < d.n; ++i) t_part.emplace_back(Element::RealVec{-1.0, 0.0});
  if (d.translation_first) {
    d.word = t_part;
    d.word.insert(d.word.end(), a_part.begin(), a_part.end());
  } else {
    d.word = a_part;
    d.word.insert(d.word.end(), t_part.begin(), t_part.end());
  }
  Element prod = identity(group);
  for (const Element& f : d.word) prod = multiply(group, prod, f);
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  d.reconstruction_error =
      std::max(std::abs(prod.reals()[0] - a), std::abs(prod.reals()[1] - b)) / scale;

  double omega = std::exp(std::abs(a)) + std::abs(conj) + std::abs(b) + 1.0;
  d.log_lhs = std::abs(a) + 2.0 * d.n;
  d.log_rhs = 2.0 * std::log(e * (e - 1.0)) + 2.0 * std::log(omega);
  d.bound_holds = d.log_lhs <= d.log_rhs;
  return d;
}

}  // namespace gaugelab
