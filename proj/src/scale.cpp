#include "gaugelab/scale.hpp"

#include "gaugelab/adjoint.hpp"
#include "gaugelab/errors.hpp"
#include "gaugelab/probe.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gaugelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScaleValue exact_value(const Rational& v) { return {log_abs(v), v}; }

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  BigInt num = boost::multiprecision::numerator(v), den = boost::multiprecision::denominator(v);
  BigInt rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

Rational ceil_rational(const Rational& v) {
  BigInt num = boost::multiprecision::numerator(v), den = boost::multiprecision::denominator(v);
  BigInt q = num / den;  // truncates toward zero
  if (q * den < num) q += 1;
  return Rational(q);
}

// |x| for the groups with a coordinate norm, as a double where no exact form exists.
double abs_double(const GroupSpec& group, const Element& g) {
  if (auto v = coordinate_abs(group, g)) return to_double(*v);
  if (group.kind == GroupKind::AxB) return std::abs(g.reals()[0]) + std::abs(g.reals()[1]);
  throw UnsupportedOperation("no coordinate norm on " + group.to_string());
}

ScaleValue abs_value(const GroupSpec& group, const Element& g) {
  if (auto v = coordinate_abs(group, g)) return exact_value(*v);
  double d = abs_double(group, g);
  return {std::log(d), std::nullopt};
}

bool coordinate_norm_supported(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::Zd:
    case GroupKind::Heisenberg:
    case GroupKind::UnipotentZ:
    case GroupKind::QVec:
    case GroupKind::AxB: return true;
    default: return false;
  }
}

std::string_view param_of(std::string_view spec, std::string_view& head) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    head = spec;
    return {};
  }
  head = spec.substr(0, colon);
  return spec.substr(colon + 1);
}

Scale load_table_scale(const std::string& path, const GroupSpec& group) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scale table: " + path);
  auto values = std::make_shared<std::unordered_map<Element, double, ElementHash>>();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto last = line.find_last_not_of(" \t\r");
    if (last == std::string::npos) continue;
    line.erase(last + 1);
    auto split = line.find_last_of(" \t");
    if (split == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected '<element> <log value>'");
    Element g = parse_element(group, line.substr(0, split));
    double v = std::stod(line.substr(split + 1));
    (*values)[g] = v;
  }
  Scale s;
  s.name = "file:" + path;
  s.group = group;
  s.eval = [values, group](const Element& g) -> ScaleValue {
    auto it = values->find(g);
    if (it == values->end()) throw NotFound("element not in scale table: " + format_element(group, g));
    return {it->second, std::nullopt};
  };
  return s;
}

}  // namespace

std::string kind_string(ScaleKind k) {
  switch (k) {
    case ScaleKind::Scale: return "scale";
    case ScaleKind::Gauge: return "gauge";
    case ScaleKind::Weight: return "weight";
  }
  return "scale";
}

ScaleKind parse_kind(std::string_view s) {
  if (s == "scale") return ScaleKind::Scale;
  if (s == "gauge") return ScaleKind::Gauge;
  if (s == "weight") return ScaleKind::Weight;
  throw std::invalid_argument("unknown scale kind: " + std::string(s));
}

std::optional<Rational> coordinate_abs(const GroupSpec& group, const Element& g) {
  switch (group.kind) {
    case GroupKind::Zd:
    case GroupKind::Heisenberg:
    case GroupKind::UnipotentZ: {
      BigInt total = 0;
      for (auto x : g.ints()) total += x < 0 ? -BigInt(x) : BigInt(x);
      return Rational(total);
    }
    case GroupKind::QVec: {
      Rational total = 0;
      for (const auto& [i, v] : g.rats()) total += v < 0 ? Rational(-v) : v;
      return total;
    }
    default: return std::nullopt;
  }
}

bool scale_needs_table(std::string_view spec) {
  std::string_view head;
  param_of(spec, head);
  return head == "word" || head == "word_weight" || head == "word_pow" || head == "one_plus_word";
}

Scale make_scale(std::string_view spec, const GroupSpec& group, std::shared_ptr<const ShellTable> table) {
  std::string_view head;
  std::string_view param = param_of(spec, head);
  Scale s;
  s.name = std::string(spec);
  s.group = group;

  auto need_coordinates = [&] {
    if (!coordinate_norm_supported(group))
      throw UnsupportedOperation("scale '" + std::string(spec) + "' needs a coordinate norm; not available on " +
                                 group.to_string());
  };

  if (scale_needs_table(spec)) {
    if (!table) throw std::invalid_argument("scale '" + std::string(spec) + "' needs an enumerated ball");
    s.word_based = true;
    auto tau = [table, group](const Element& g) {
      auto n = table->word_gauge(g);
      if (!n) throw NotFound("element outside enumerated ball: " + format_element(group, g));
      return *n;
    };
    if (head == "word") {
      s.kind = ScaleKind::Gauge;
      s.eval = [tau](const Element& g) { return exact_value(Rational(tau(g))); };
    } else if (head == "one_plus_word") {
      s.kind = ScaleKind::Weight;
      s.eval = [tau](const Element& g) { return exact_value(Rational(1 + tau(g))); };
    } else if (head == "word_weight") {
      s.kind = ScaleKind::Weight;
      s.eval = [tau](const Element& g) -> ScaleValue {
        int n = tau(g);
        return {static_cast<double>(n), n == 0 ? std::optional<Rational>(1) : std::nullopt};
      };
    } else {
      if (param.empty()) throw std::invalid_argument("word_pow needs an exponent, e.g. word_pow:2");
      int k = static_cast<int>(std::stol(std::string(param)));
      if (k < 1) throw std::invalid_argument("word_pow exponent must be >= 1");
      s.kind = k == 1 ? ScaleKind::Weight : ScaleKind::Scale;
      s.eval = [tau, k](const Element& g) -> ScaleValue {
        int n = tau(g);
        return {std::pow(static_cast<double>(n), k), n == 0 ? std::optional<Rational>(1) : std::nullopt};
      };
    }
    return s;
  }

  if (head == "abs") {
    need_coordinates();
    s.kind = ScaleKind::Gauge;
    s.eval = [group](const Element& g) { return abs_value(group, g); };
  } else if (head == "one_plus_abs") {
    need_coordinates();
    s.kind = ScaleKind::Weight;
    s.eval = [group](const Element& g) -> ScaleValue {
      if (auto v = coordinate_abs(group, g)) return exact_value(1 + *v);
      return {std::log1p(abs_double(group, g)), std::nullopt};
    };
  } else if (head == "half_abs") {
    need_coordinates();
    s.kind = ScaleKind::Gauge;
    s.eval = [group](const Element& g) -> ScaleValue {
      if (auto v = coordinate_abs(group, g)) return exact_value(*v / 2);
      return {std::log(abs_double(group, g) / 2), std::nullopt};
    };
  } else if (head == "sq_abs") {
    need_coordinates();
    s.eval = [group](const Element& g) -> ScaleValue {
      if (auto v = coordinate_abs(group, g)) return exact_value(*v * *v);
      return {2 * std::log(abs_double(group, g)), std::nullopt};
    };
  } else if (head == "sqrt_abs") {
    need_coordinates();
    s.kind = ScaleKind::Gauge;
    s.eval = [group](const Element& g) -> ScaleValue {
      if (auto v = coordinate_abs(group, g)) return {0.5 * log_abs(*v), exact_sqrt(*v)};
      return {0.5 * std::log(abs_double(group, g)), std::nullopt};
    };
  } else if (head == "pow_abs") {
    need_coordinates();
    if (param.empty()) throw std::invalid_argument("pow_abs needs an exponent, e.g. pow_abs:1/2");
    Rational r = parse_rational(param);
    if (r < 0) throw std::invalid_argument("pow_abs exponent must be nonnegative");
    bool integral = boost::multiprecision::denominator(r) == 1;
    double rd = to_double(r);
    s.eval = [group, r, rd, integral](const Element& g) -> ScaleValue {
      auto v = coordinate_abs(group, g);
      double base_log = v ? log_abs(*v) : std::log(abs_double(group, g));
      double lv = rd == 0.0 ? 0.0 : rd * base_log;
      std::optional<Rational> exact;
      if (v && integral) {
        Rational acc = 1;
        unsigned long e = boost::multiprecision::numerator(r).convert_to<unsigned long>();
        for (unsigned long i = 0; i < e; ++i) acc *= *v;
        exact = acc;
      }
      return {lv, exact};
    };
  } else if (head == "const") {
    Rational c = param.empty() ? Rational(1) : parse_rational(param);
    if (c < 0) throw std::invalid_argument("constant scale must be nonnegative");
    s.kind = c == 1 ? ScaleKind::Weight : ScaleKind::Scale;
    s.eval = [c](const Element&) { return exact_value(c); };
  } else if (head == "exp_abs") {
    need_coordinates();
    s.kind = ScaleKind::Weight;
    s.eval = [group](const Element& g) -> ScaleValue {
      double v = abs_double(group, g);
      return {v, v == 0.0 ? std::optional<Rational>(1) : std::nullopt};
    };
  } else if (head == "superexp") {
    need_coordinates();
    s.eval = [group](const Element& g) -> ScaleValue {
      double v = abs_double(group, g);
      return {std::pow(v, v), std::nullopt};
    };
  } else if (head == "heis_s") {
    if (group.kind != GroupKind::Heisenberg) throw UnsupportedOperation("heis_s is defined on heis");
    s.eval = [](const Element& g) -> ScaleValue {
      const auto& v = g.ints();
      __int128 a = v[0], b = v[1], c = v[2];
      __int128 t = b - c * a;
      auto abs128 = [](__int128 x) { return x < 0 ? -x : x; };
      BigInt lin = BigInt(static_cast<long long>(abs128(a))) + BigInt(static_cast<long long>(abs128(c)));
      BigInt rb = BigInt(static_cast<long long>(abs128(b)));
      // |b - ca| may exceed 64 bits; assemble it from two halves.
      unsigned __int128 ut = static_cast<unsigned __int128>(abs128(t));
      BigInt rt = (BigInt(static_cast<unsigned long long>(ut >> 64)) << 64) +
                  BigInt(static_cast<unsigned long long>(ut & ~0ULL));
      long double value = static_cast<long double>(lin.convert_to<double>()) +
                          std::sqrt(static_cast<long double>(rb.convert_to<double>())) +
                          std::sqrt(static_cast<long double>(rt.convert_to<double>()));
      std::optional<Rational> exact;
      auto sb = exact_sqrt(Rational(rb)), st = exact_sqrt(Rational(rt));
      if (sb && st) exact = Rational(lin) + *sb + *st;
      return {std::log(static_cast<double>(value)), exact};
    };
  } else if (head == "qinf_gamma") {
    if (group.kind != GroupKind::QTuple) throw UnsupportedOperation("qinf_gamma is defined on qinf");
    s.kind = ScaleKind::Weight;
    s.eval = [](const Element& g) {
      Rational prod = 1;
      for (const auto& [i, q] : g.rats()) prod *= q > 1 ? q : Rational(1 / q);
      return exact_value(prod);
    };
  } else if (head == "qinf_omega") {
    if (group.kind != GroupKind::QVec) throw UnsupportedOperation("qinf_omega is defined on qvec");
    s.kind = ScaleKind::Weight;
    s.eval = [](const Element& g) {
      Rational prod = 1;
      for (const auto& [i, r] : g.rats()) prod *= 1 + (r < 0 ? Rational(-r) : r);
      return exact_value(prod);
    };
  } else if (head == "axb_omega") {
    if (group.kind != GroupKind::AxB) throw UnsupportedOperation("axb_omega is defined on axb");
    s.kind = ScaleKind::Weight;
    s.eval = [](const Element& g) -> ScaleValue {
      double a = g.reals()[0], b = g.reals()[1];
      double lb = std::log(std::abs(b));
      double v = log_add(log_add(std::abs(a), lb - a), log_add(lb, 0.0));
      return {v, std::nullopt};
    };
  } else if (head == "theta") {
    if (group.is_discrete() && group.kind != GroupKind::Heisenberg && group.kind != GroupKind::UnipotentZ)
      throw UnsupportedOperation("theta needs a matrix group");
    s.kind = ScaleKind::Weight;
    s.eval = [group](const Element& g) -> ScaleValue {
      Eigen::MatrixXd m = matrix_of(group, g);
      double v = std::max(operator_norm(m), operator_norm(m.inverse()));
      return {std::log(v), std::nullopt};
    };
  } else if (head == "sl2_sigma") {
    if (group.kind != GroupKind::SL2R && group.kind != GroupKind::GLnR)
      throw UnsupportedOperation("sl2_sigma needs sl2 or gl:n");
    s.kind = ScaleKind::Gauge;
    s.eval = [group](const Element& g) -> ScaleValue {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix_of(group, g));
      double best = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        best = std::max(best, std::abs(std::log(svd.singularValues()(i))));
      return {std::log(best), std::nullopt};
    };
  } else if (head == "file") {
    if (param.empty()) throw std::invalid_argument("file scale needs a path, e.g. file:values.txt");
    return load_table_scale(std::string(param), group);
  } else {
    throw std::invalid_argument("unknown scale: " + std::string(spec));
  }
  return s;
}

Scale normalize_gauge(const Scale& tau) {
  Scale out;
  out.name = "int(" + tau.name + ")";
  out.kind = ScaleKind::Gauge;
  out.group = tau.group;
  out.word_based = tau.word_based;
  GroupSpec group = tau.group;
  Element e = identity(group);
  auto inner = tau.eval;
  out.eval = [inner, group, e](const Element& g) -> ScaleValue {
    if (same_element(group, g, e)) return exact_value(Rational(0));
    ScaleValue v = inner(g);
    Rational c;
    if (v.exact) {
      c = ceil_rational(*v.exact);
    } else {
      double t = std::exp(v.log);
      c = Rational(static_cast<long long>(std::ceil(t - 1e-9 * std::max(1.0, t))));
    }
    if (c <= 0) c = 1;
    return exact_value(c);
  };
  return out;
}

Scale exp_bijection(const Scale& s, ExpDirection dir) {
  Scale out;
  out.group = s.group;
  out.word_based = s.word_based;
  auto inner = s.eval;
  if (dir == ExpDirection::GaugeToWeight) {
    out.name = "exp(" + s.name + ")";
    out.kind = ScaleKind::Weight;
    out.eval = [inner](const Element& g) -> ScaleValue {
      ScaleValue v = inner(g);
      double t = v.exact ? to_double(*v.exact) : std::exp(v.log);
      return {t, t == 0.0 ? std::optional<Rational>(1) : std::nullopt};
    };
  } else {
    out.name = "log(" + s.name + ")";
    out.kind = ScaleKind::Gauge;
    std::string name = s.name;
    out.eval = [inner, name](const Element& g) -> ScaleValue {
      ScaleValue v = inner(g);
      if (v.log < -1e-12) throw std::domain_error("weight " + name + " takes a value below 1");
      if (v.exact && *v.exact == 1) return {-kInf, Rational(0)};
      double l = std::max(v.log, 0.0);
      return {std::log(l), l == 0.0 ? std::optional<Rational>(0) : std::nullopt};
    };
  }
  return out;
}

}  // namespace gaugelab
