#include "gaugelab/gspace.hpp"

#include "gaugelab/adjoint.hpp"
#include "gaugelab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gaugelab {

namespace {

Eigen::MatrixXd to_matrix(const Vec& v, int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

Vec from_matrix(const Eigen::MatrixXd& m) {
  Vec v;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

double l1(const Vec& v) {
  double s = 0;
  for (double x : v) s += std::abs(x);
  return s;
}

double uniform(std::mt19937_64& rng, double w) { return std::uniform_real_distribution<double>(-w, w)(rng); }

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

// g = U diag(+-e^{t_i}) V with t_i uniform in [-w, w].
Vec random_gl(int n, double w, std::mt19937_64& rng) {
  Eigen::MatrixXd u = random_orthogonal(n, rng), v = random_orthogonal(n, rng);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(uniform(rng, w));
  return from_matrix(u * d.asDiagonal() * v);
}

Vec diag_extreme(int n, double w) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  a(0, 0) = std::exp(w);
  a(n - 1, n - 1) = std::exp(-w);
  return from_matrix(a);
}

std::function<double(const Vec&)> omega_for(std::string_view name, int n) {
  if (name == "one_plus_abs") return [](const Vec& g) { return std::log1p(l1(g)); };
  if (name == "exp_abs") return [](const Vec& g) { return l1(g); };
  if (name == "const:1") return [](const Vec&) { return 0.0; };
  if (name == "axb_omega")
    return [](const Vec& g) {
      double a = g[0], lb = std::log(std::abs(g[1]));
      return log_add(log_add(std::abs(a), lb - a), log_add(lb, 0.0));
    };
  if (name == "theta")
    return [n](const Vec& g) {
      Eigen::MatrixXd m = to_matrix(g, n);
      return std::log(std::max(operator_norm(m), operator_norm(m.inverse())));
    };
  throw std::invalid_argument("unknown weight for a G-space: " + std::string(name));
}

double log_one_plus_norm(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::log1p(std::sqrt(s));
}

bool close(const Vec& a, const Vec& b) {
  double scale = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-9 * scale) return false;
  return true;
}

std::vector<std::pair<Vec, Vec>> scalar_extremes(double gw, double mw) {
  return {{{gw}, {0.0}}, {{-gw}, {0.0}}, {{0.0}, {mw}}, {{0.0}, {-mw}},
          {{gw}, {mw}},  {{-gw}, {-mw}}, {{gw}, {-mw}}, {{-gw}, {mw}}};
}

}  // namespace

std::vector<std::string> gspace_preset_names() {
  return {"z-line", "r-translate", "r-dilate", "axb-line", "gl-vector", "gl-conj"};
}

GSpaceSpec gspace_preset(std::string_view name, std::string_view omega, int n) {
  GSpaceSpec s;
  s.name = std::string(name);
  auto scalar_space = [&](const std::string& group, const std::string& default_omega, double width) {
    s.space = "R";
    s.acting_group = group;
    s.omega_name = omega.empty() ? default_omega : std::string(omega);
    s.sigma_name = "1+|m|";
    s.max_width = width;
    s.identity = {0.0};
    s.compose = [](const Vec& g, const Vec& h) { return Vec{g[0] + h[0]}; };
    s.log_sigma = [](const Vec& m) { return std::log1p(std::abs(m[0])); };
    s.log_omega = omega_for(s.omega_name, 1);
    s.sample_m = [](double w, std::mt19937_64& rng) { return Vec{uniform(rng, w)}; };
    s.extremes = [](double w) { return scalar_extremes(w, w); };
  };

  if (name == "z-line") {
    scalar_space("Z", "one_plus_abs", 1000.0);
    s.act = [](const Vec& g, const Vec& m) { return Vec{g[0] + m[0]}; };
    s.sample_g = [](double w, std::mt19937_64& rng) { return Vec{std::round(uniform(rng, w))}; };
    s.extremes = [](double w) { return scalar_extremes(std::round(w), w); };
  } else if (name == "r-translate") {
    scalar_space("R", "one_plus_abs", 1000.0);
    s.act = [](const Vec& g, const Vec& m) { return Vec{g[0] + m[0]}; };
    s.sample_g = [](double w, std::mt19937_64& rng) { return Vec{uniform(rng, w)}; };
  } else if (name == "r-dilate") {
    scalar_space("R", "one_plus_abs", 30.0);
    s.act = [](const Vec& g, const Vec& m) { return Vec{std::exp(g[0]) * m[0]}; };
    s.sample_g = [](double w, std::mt19937_64& rng) { return Vec{uniform(rng, w)}; };
  } else if (name == "axb-line") {
    s.space = "R";
    s.acting_group = "axb";
    s.omega_name = omega.empty() ? "axb_omega" : std::string(omega);
    s.sigma_name = "1+|m|";
    s.max_width = 20.0;
    s.identity = {0.0, 0.0};
    s.act = [](const Vec& g, const Vec& m) { return Vec{std::exp(g[0]) * m[0] + g[1]}; };
    s.compose = [](const Vec& g, const Vec& h) { return Vec{g[0] + h[0], g[1] + std::exp(g[0]) * h[1]}; };
    s.log_sigma = [](const Vec& m) { return std::log1p(std::abs(m[0])); };
    s.log_omega = omega_for(s.omega_name, 2);
    s.sample_g = [](double w, std::mt19937_64& rng) { return Vec{uniform(rng, w), uniform(rng, std::exp(w))}; };
    s.sample_m = [](double w, std::mt19937_64& rng) { return Vec{uniform(rng, std::exp(w))}; };
    s.extremes = [](double w) {
      double big = std::exp(w);
      std::vector<std::pair<Vec, Vec>> out;
      for (double a : {-w, 0.0, w})
        for (double b : {-big, 0.0, big})
          for (double m : {-big, 0.0, big}) out.push_back({{a, b}, {m}});
      return out;
    };
  } else if (name == "gl-vector" || name == "gl-conj") {
    if (n < 2) throw std::invalid_argument("gl G-spaces need n >= 2");
    bool conj = name == "gl-conj";
    s.space = conj ? "M(" + std::to_string(n) + ",R)" : "R^" + std::to_string(n);
    s.acting_group = "gl:" + std::to_string(n);
    s.omega_name = omega.empty() ? "theta" : std::string(omega);
    s.sigma_name = "1+||m||";
    s.max_width = 6.0;
    s.identity = from_matrix(Eigen::MatrixXd::Identity(n, n));
    s.compose = [n](const Vec& g, const Vec& h) { return from_matrix(to_matrix(g, n) * to_matrix(h, n)); };
    s.log_omega = omega_for(s.omega_name, n);
    s.sample_g = [n](double w, std::mt19937_64& rng) { return random_gl(n, w, rng); };
    if (conj) {
      s.act = [n](const Vec& g, const Vec& m) {
        Eigen::MatrixXd a = to_matrix(g, n);
        return from_matrix(a * to_matrix(m, n) * a.inverse());
      };
      s.log_sigma = [n](const Vec& m) { return std::log1p(operator_norm(to_matrix(m, n))); };
      s.sample_m = [n](double w, std::mt19937_64& rng) {
        Vec m(static_cast<std::size_t>(n) * n);
        for (double& x : m) x = uniform(rng, std::exp(w));
        return m;
      };
      s.extremes = [n](double w) {
        Vec e1n(static_cast<std::size_t>(n) * n, 0.0), en1 = e1n, id = from_matrix(Eigen::MatrixXd::Identity(n, n));
        e1n[n - 1] = 1.0;
        en1[(n - 1) * n] = 1.0;
        Vec big = id;
        for (double& x : big) x *= std::exp(w);
        return std::vector<std::pair<Vec, Vec>>{
            {diag_extreme(n, w), e1n}, {diag_extreme(n, w), en1}, {diag_extreme(n, -w), en1},
            {id, big}, {diag_extreme(n, w), big}};
      };
    } else {
      s.act = [n](const Vec& g, const Vec& m) {
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(m.data(), n);
        Eigen::VectorXd r = to_matrix(g, n) * v;
        return Vec(r.data(), r.data() + n);
      };
      s.log_sigma = log_one_plus_norm;
      s.sample_m = [n](double w, std::mt19937_64& rng) {
        Vec m(n);
        for (double& x : m) x = uniform(rng, std::exp(w));
        return m;
      };
      s.extremes = [n](double w) {
        Vec e1(n, 0.0), en(n, 0.0), zero(n, 0.0);
        e1[0] = 1.0;
        en[n - 1] = 1.0;
        Vec big = e1;
        big[0] = std::exp(w);
        return std::vector<std::pair<Vec, Vec>>{
            {diag_extreme(n, w), e1}, {diag_extreme(n, -w), en}, {diag_extreme(n, w), zero},
            {from_matrix(Eigen::MatrixXd::Identity(n, n)), big}};
      };
    }
  } else {
    throw std::invalid_argument("unknown G-space preset: " + std::string(name));
  }
  return s;
}

ProbeReport gspace_check(const GSpaceSpec& spec, int samples, std::uint64_t seed, int l_max, int levels) {
  ProbeReport report;
  report.probe = "gspace-check";
  report.details["space"] = spec.space;
  report.details["group"] = spec.acting_group;
  report.details["omega"] = spec.omega_name;
  report.details["sigma"] = spec.sigma_name;
  report.details["inequality"] = "sigma(g.m) <= C * omega(g)^l * sigma(m)^l";
  report.evidence = {{"samples", samples}, {"seed", seed}, {"levels", levels}, {"max_width", spec.max_width}};
  if (samples < levels) {
    report.message = "fewer samples than levels";
    return report;
  }

  std::mt19937_64 rng(seed);
  // Action axioms on small boxes.
  int action_checks = 0;
  for (int t = 0; t < 50; ++t) {
    double w = std::min(spec.max_width, 2.0);
    Vec g = spec.sample_g(w, rng), h = spec.sample_g(w, rng), m = spec.sample_m(w, rng);
    bool ok = close(spec.act(spec.identity, m), m) &&
              close(spec.act(spec.compose(g, h), m), spec.act(g, spec.act(h, m)));
    ++action_checks;
    if (!ok) {
      report.verdict = Verdict::Inconclusive;
      report.message = "action axioms fail on a sampled triple";
      return report;
    }
  }
  report.evidence["action_checks"] = action_checks;

  std::vector<Level> lv;
  std::vector<std::pair<Vec, Vec>> pts;
  int per_level = samples / levels;
  for (int j = 1; j <= levels; ++j) {
    double w = std::pow(spec.max_width, static_cast<double>(j) / levels);
    Level level{w, {}};
    auto add = [&](const Vec& g, const Vec& m) {
      double x = spec.log_omega(g) + spec.log_sigma(m);
      double y = spec.log_sigma(spec.act(g, m));
      level.points.push_back(FitPoint{x, y, pts.size()});
      pts.emplace_back(g, m);
    };
    for (auto& [g, m] : spec.extremes(w)) add(g, m);
    for (int i = 0; i < per_level; ++i) {
      Vec g = spec.sample_g(w, rng), m = spec.sample_m(w, rng);
      add(g, m);
    }
    lv.push_back(std::move(level));
  }
  ExponentFit fit = fit_exponent(lv, 0, l_max, false);
  apply_fit(report, fit, "l", false);
  if (fit.verdict == Verdict::Violated && fit.witness_tag) {
    const auto& [g, m] = pts[*fit.witness_tag];
    report.witness = {{"g", g},
                      {"m", m},
                      {"log_sigma_gm", spec.log_sigma(spec.act(g, m))},
                      {"log_omega_g", spec.log_omega(g)},
                      {"log_sigma_m", spec.log_sigma(m)},
                      {"l", fit.exponent}};
  }
  return report;
}

ProbeReport gspace_translation_check(const GSpaceSpec& spec, int samples, std::uint64_t seed, int d_max, int levels) {
  ProbeReport report;
  report.probe = "gspace-translation";
  report.details["inequality"] = "sigma(g.m) <= C * sigma(m)^d + D for g in the unit box";
  report.evidence = {{"samples", samples}, {"seed", seed}, {"levels", levels}};
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::vector<Level> lv;
  int per_level = std::max(1, samples / levels);
  std::size_t tag = 0;
  for (int j = 1; j <= levels; ++j) {
    double w = std::pow(spec.max_width, static_cast<double>(j) / levels);
    Level level{w, {}};
    for (int i = 0; i < per_level; ++i) {
      Vec g = spec.sample_g(1.0, rng), m = spec.sample_m(w, rng);
      level.points.push_back(FitPoint{spec.log_sigma(m), spec.log_sigma(spec.act(g, m)), tag++});
    }
    lv.push_back(std::move(level));
  }
  ExponentFit fit = fit_exponent(lv, 1, d_max, true);
  apply_fit(report, fit, "d", true);
  return report;
}

InducedSpec induced_circle_preset() {
  InducedSpec s;
  s.name = "R x_Z T, rotation sqrt(2)-1, sigma = 1, omega = 1+|r|";
  const double theta = std::sqrt(2.0) - 1.0;
  s.log_omega = [](double r) { return std::log1p(std::abs(r)); };
  s.log_sigma = [](const Vec&) { return 0.0; };
  s.act = [theta](std::int64_t n, const Vec& m) {
    double t = m[0] + static_cast<double>(n) * theta;
    return Vec{t - std::floor(t)};
  };
  return s;
}

InducedValue induced_scale_eval(const InducedSpec& spec, double r, const Vec& m, std::int64_t window) {
  if (window < 0) throw std::invalid_argument("empty search window");
  auto center = static_cast<std::int64_t>(std::llround(r));
  InducedValue best{0, std::numeric_limits<double>::infinity(), center, window, true};
  for (std::int64_t n = center - window; n <= center + window; ++n) {
    double v = spec.log_omega(r - static_cast<double>(n)) + spec.log_sigma(spec.act(n, m));
    if (v < best.log_value) {
      best.log_value = v;
      best.argmin = n;
    }
  }
  best.value = std::exp(best.log_value);
  return best;
}

}  // namespace gaugelab
