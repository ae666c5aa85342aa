#include "gaugelab/group.hpp"

#include "gaugelab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gaugelab {

namespace {

constexpr double kContinuousTol = 1e-9;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("integer overflow in group product");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("integer overflow in group product");
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

std::string_view strip_brackets(std::string_view s, char open, char close) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw std::invalid_argument("expected " + std::string(1, open) + "..." + std::string(1, close) + ": " +
                                std::string(s));
  return trim(s.substr(1, s.size() - 2));
}

std::int64_t parse_int64(std::string_view s) {
  s = trim(s);
  std::string buf(s);
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(buf, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer: " + buf);
  }
  if (pos != buf.size()) throw std::invalid_argument("bad integer: " + buf);
  return v;
}

double parse_real(std::string_view s) {
  s = trim(s);
  std::string buf(s);
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(buf, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad real: " + buf);
  }
  if (pos != buf.size()) throw std::invalid_argument("bad real: " + buf);
  return v;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int matrix_size(const GroupSpec& g) { return g.kind == GroupKind::SL2R ? 2 : g.dim; }

std::size_t unip_len(int q) { return static_cast<std::size_t>(q) * (q - 1) / 2; }

// Full q x q integer matrix from the strictly upper entries (row-major).
std::vector<std::int64_t> unip_full(int q, const Element::IntVec& upper) {
  std::vector<std::int64_t> m(static_cast<std::size_t>(q) * q, 0);
  std::size_t k = 0;
  for (int i = 0; i < q; ++i) {
    m[i * q + i] = 1;
    for (int j = i + 1; j < q; ++j) m[i * q + j] = upper[k++];
  }
  return m;
}

Element::IntVec unip_upper(int q, const std::vector<std::int64_t>& m) {
  Element::IntVec upper;
  upper.reserve(unip_len(q));
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) upper.push_back(m[i * q + j]);
  return upper;
}

Element::Word reduce_word(const Element::Word& w) {
  Element::Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Eigen::MatrixXd to_eigen(int n, const Element::RealVec& v) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

Element::RealVec from_eigen(const Eigen::MatrixXd& m) {
  Element::RealVec v;
  v.reserve(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

void require_finite(const Element::RealVec& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::range_error("numeric overflow in continuous group product");
}

Element::RatMap merge_rats(const Element::RatMap& a, const Element::RatMap& b, bool multiplicative) {
  std::map<int, Rational> acc;
  for (const auto& [i, v] : a) acc[i] = v;
  for (const auto& [i, v] : b) {
    auto it = acc.find(i);
    if (it == acc.end())
      acc[i] = v;
    else
      it->second = multiplicative ? Rational(it->second * v) : Rational(it->second + v);
  }
  Element::RatMap out;
  const Rational neutral = multiplicative ? Rational(1) : Rational(0);
  for (auto& [i, v] : acc)
    if (v != neutral) out.emplace_back(i, v);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::parse(std::string_view text) {
  text = trim(text);
  std::string_view head = text;
  std::optional<int> param;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    param = static_cast<int>(parse_int64(text.substr(colon + 1)));
  }
  auto need = [&](int min) {
    int v = param.value_or(-1);
    if (!param || v < min) throw std::invalid_argument("group '" + std::string(text) + "' needs parameter >= " +
                                                       std::to_string(min));
    return v;
  };
  auto none = [&] {
    if (param) throw std::invalid_argument("group '" + std::string(head) + "' takes no parameter");
  };
  if (head == "z") return z(param ? need(1) : 1);
  if (head == "heis") return none(), heisenberg();
  if (head == "free") {
    int k = need(1);
    if (k > 26) throw std::invalid_argument("free groups support at most 26 generators");
    return free(k);
  }
  if (head == "qinf") return none(), qtuple();
  if (head == "qvec") return none(), qvec();
  if (head == "axb") return none(), axb();
  if (head == "sl2") return none(), sl2();
  if (head == "gl") return gl(need(2));
  if (head == "unip") return unipotent(need(2));
  throw std::invalid_argument("unknown group kind: " + std::string(text));
}

std::string GroupSpec::to_string() const {
  switch (kind) {
    case GroupKind::Zd: return "z:" + std::to_string(dim);
    case GroupKind::Heisenberg: return "heis";
    case GroupKind::Free: return "free:" + std::to_string(dim);
    case GroupKind::QTuple: return "qinf";
    case GroupKind::QVec: return "qvec";
    case GroupKind::AxB: return "axb";
    case GroupKind::SL2R: return "sl2";
    case GroupKind::GLnR: return "gl:" + std::to_string(dim);
    case GroupKind::UnipotentZ: return "unip:" + std::to_string(dim);
  }
  return "?";
}

bool GroupSpec::is_discrete() const {
  return kind != GroupKind::AxB && kind != GroupKind::SL2R && kind != GroupKind::GLnR;
}

// ---------------------------------------------------------------------------
// Element ordering / hashing

bool Element::operator<(const Element& other) const {
  if (data.index() != other.data.index()) return data.index() < other.data.index();
  return std::visit(
      [&](const auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(other.data);
        // Shorter payloads first keeps free words in shortlex order.
        if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
        return lhs < rhs;
      },
      data);
}

std::size_t ElementHash::operator()(const Element& e) const {
  std::size_t h = std::hash<std::size_t>{}(e.data.index());
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, Element::RatMap>) {
          for (const auto& [i, v] : payload) {
            mix(std::hash<int>{}(i));
            mix(std::hash<std::string>{}(format_rational(v)));
          }
        } else {
          for (const auto& v : payload) mix(std::hash<std::decay_t<decltype(v)>>{}(v));
        }
      },
      e.data);
  return h;
}

// ---------------------------------------------------------------------------
// Group operations

Element identity(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::Zd: return Element(Element::IntVec(group.dim, 0));
    case GroupKind::Heisenberg: return Element(Element::IntVec(3, 0));
    case GroupKind::UnipotentZ: return Element(Element::IntVec(unip_len(group.dim), 0));
    case GroupKind::Free: return Element(Element::Word{});
    case GroupKind::QTuple:
    case GroupKind::QVec: return Element(Element::RatMap{});
    case GroupKind::AxB: return Element(Element::RealVec{0.0, 0.0});
    case GroupKind::SL2R:
    case GroupKind::GLnR: {
      int n = matrix_size(group);
      Element::RealVec v(static_cast<std::size_t>(n) * n, 0.0);
      for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
      return Element(std::move(v));
    }
  }
  throw std::logic_error("unreachable");
}

Element multiply(const GroupSpec& group, const Element& lhs, const Element& rhs) {
  switch (group.kind) {
    case GroupKind::Zd: {
      const auto &a = lhs.ints(), &b = rhs.ints();
      Element::IntVec out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
      return Element(std::move(out));
    }
    case GroupKind::Heisenberg: {
      const auto &g = lhs.ints(), &h = rhs.ints();
      return Element(Element::IntVec{checked_add(g[0], h[0]),
                                     checked_add(checked_add(g[1], h[1]), checked_mul(g[0], h[2])),
                                     checked_add(g[2], h[2])});
    }
    case GroupKind::UnipotentZ: {
      int q = group.dim;
      auto a = unip_full(q, lhs.ints());
      auto b = unip_full(q, rhs.ints());
      std::vector<std::int64_t> c(static_cast<std::size_t>(q) * q, 0);
      for (int i = 0; i < q; ++i)
        for (int k = i; k < q; ++k) {
          if (a[i * q + k] == 0) continue;
          for (int j = k; j < q; ++j)
            c[i * q + j] = checked_add(c[i * q + j], checked_mul(a[i * q + k], b[k * q + j]));
        }
      return Element(unip_upper(q, c));
    }
    case GroupKind::Free: {
      Element::Word w = lhs.word();
      for (int letter : rhs.word()) {
        if (!w.empty() && w.back() == -letter)
          w.pop_back();
        else
          w.push_back(letter);
      }
      return Element(std::move(w));
    }
    case GroupKind::QTuple: return Element(merge_rats(lhs.rats(), rhs.rats(), true));
    case GroupKind::QVec: return Element(merge_rats(lhs.rats(), rhs.rats(), false));
    case GroupKind::AxB: {
      const auto &g = lhs.reals(), &h = rhs.reals();
      Element::RealVec out{g[0] + h[0], g[1] + std::exp(g[0]) * h[1]};
      require_finite(out);
      return Element(std::move(out));
    }
    case GroupKind::SL2R:
    case GroupKind::GLnR: {
      int n = matrix_size(group);
      Element::RealVec out = from_eigen(to_eigen(n, lhs.reals()) * to_eigen(n, rhs.reals()));
      require_finite(out);
      return Element(std::move(out));
    }
  }
  throw std::logic_error("unreachable");
}

Element inverse(const GroupSpec& group, const Element& g) {
  switch (group.kind) {
    case GroupKind::Zd: {
      Element::IntVec out = g.ints();
      for (auto& x : out) x = checked_mul(x, -1);
      return Element(std::move(out));
    }
    case GroupKind::Heisenberg: {
      const auto& v = g.ints();
      // (a,b,c)^{-1} = (-a, ac - b, -c)
      return Element(Element::IntVec{-v[0], checked_add(checked_mul(v[0], v[2]), -v[1]), -v[2]});
    }
    case GroupKind::UnipotentZ: {
      // (I + N)^{-1} = I - N + N^2 - ... ; N nilpotent of order q.
      int q = group.dim;
      auto m = unip_full(q, g.ints());
      std::vector<std::int64_t> nil(m);
      for (int i = 0; i < q; ++i) nil[i * q + i] = 0;
      std::vector<std::int64_t> result(static_cast<std::size_t>(q) * q, 0), term(static_cast<std::size_t>(q) * q, 0);
      for (int i = 0; i < q; ++i) result[i * q + i] = term[i * q + i] = 1;
      for (int p = 1; p < q; ++p) {
        std::vector<std::int64_t> next(static_cast<std::size_t>(q) * q, 0);
        for (int i = 0; i < q; ++i)
          for (int k = 0; k < q; ++k) {
            if (term[i * q + k] == 0) continue;
            for (int j = 0; j < q; ++j)
              next[i * q + j] = checked_add(next[i * q + j], checked_mul(term[i * q + k], nil[k * q + j]));
          }
        term = std::move(next);
        std::int64_t sign = (p % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < result.size(); ++i) result[i] = checked_add(result[i], checked_mul(sign, term[i]));
      }
      return Element(unip_upper(q, result));
    }
    case GroupKind::Free: {
      Element::Word w(g.word().rbegin(), g.word().rend());
      for (auto& letter : w) letter = -letter;
      return Element(std::move(w));
    }
    case GroupKind::QTuple: {
      Element::RatMap out = g.rats();
      for (auto& [i, v] : out) v = 1 / v;
      return Element(std::move(out));
    }
    case GroupKind::QVec: {
      Element::RatMap out = g.rats();
      for (auto& [i, v] : out) v = -v;
      return Element(std::move(out));
    }
    case GroupKind::AxB: {
      const auto& v = g.reals();
      Element::RealVec out{-v[0], -std::exp(-v[0]) * v[1]};
      require_finite(out);
      return Element(std::move(out));
    }
    case GroupKind::SL2R: {
      const auto& v = g.reals();
      return Element(Element::RealVec{v[3], -v[1], -v[2], v[0]});
    }
    case GroupKind::GLnR: {
      int n = group.dim;
      Eigen::MatrixXd m = to_eigen(n, g.reals());
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (!lu.isInvertible()) throw std::invalid_argument("matrix is not invertible");
      Element::RealVec out = from_eigen(lu.inverse());
      require_finite(out);
      return Element(std::move(out));
    }
  }
  throw std::logic_error("unreachable");
}

Element power(const GroupSpec& group, const Element& g, std::int64_t exponent) {
  Element base = exponent < 0 ? inverse(group, g) : g;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent) : static_cast<std::uint64_t>(exponent);
  Element result = identity(group);
  while (e > 0) {
    if (e & 1U) result = multiply(group, result, base);
    e >>= 1U;
    if (e > 0) base = multiply(group, base, base);
  }
  return result;
}

Element canonical_form(const GroupSpec& group, Element raw) {
  auto require_ints = [&](std::size_t n) {
    if (!std::holds_alternative<Element::IntVec>(raw.data) || raw.ints().size() != n)
      throw std::invalid_argument("element payload does not match group " + group.to_string());
  };
  switch (group.kind) {
    case GroupKind::Zd: require_ints(group.dim); return raw;
    case GroupKind::Heisenberg: require_ints(3); return raw;
    case GroupKind::UnipotentZ: require_ints(unip_len(group.dim)); return raw;
    case GroupKind::Free: {
      if (!std::holds_alternative<Element::Word>(raw.data))
        throw std::invalid_argument("element payload does not match group " + group.to_string());
      for (int letter : raw.word())
        if (letter == 0 || std::abs(letter) > group.dim)
          throw std::invalid_argument("free-group letter out of range");
      return Element(reduce_word(raw.word()));
    }
    case GroupKind::QTuple:
    case GroupKind::QVec: {
      if (!std::holds_alternative<Element::RatMap>(raw.data))
        throw std::invalid_argument("element payload does not match group " + group.to_string());
      bool mult = group.kind == GroupKind::QTuple;
      for (const auto& [i, v] : raw.rats()) {
        if (i < 0) throw std::invalid_argument("negative tuple index");
        if (mult && v <= 0) throw std::invalid_argument("tuple entries must be positive rationals");
      }
      return Element(merge_rats(Element::RatMap{}, raw.rats(), mult));
    }
    case GroupKind::AxB: {
      if (!std::holds_alternative<Element::RealVec>(raw.data) || raw.reals().size() != 2)
        throw std::invalid_argument("ax+b elements are (a,b)");
      require_finite(raw.reals());
      return raw;
    }
    case GroupKind::SL2R:
    case GroupKind::GLnR: {
      int n = matrix_size(group);
      if (!std::holds_alternative<Element::RealVec>(raw.data) ||
          raw.reals().size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("matrix element has wrong size");
      require_finite(raw.reals());
      double det = to_eigen(n, raw.reals()).determinant();
      if (group.kind == GroupKind::SL2R && std::abs(det - 1.0) > 1e-9)
        throw std::invalid_argument("SL(2,R) element must have determinant 1");
      if (group.kind == GroupKind::GLnR && !(std::abs(det) > 0.0))
        throw std::invalid_argument("matrix is not invertible");
      return raw;
    }
  }
  throw std::logic_error("unreachable");
}

bool same_element(const GroupSpec& group, const Element& a, const Element& b) {
  if (group.is_discrete()) return a == b;
  const auto &x = a.reals(), &y = b.reals();
  if (x.size() != y.size()) return false;
  double scale = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > kContinuousTol * scale) return false;
  return true;
}

GeneratingSet GeneratingSet::symmetrized(const GroupSpec& group) const {
  GeneratingSet out{elements, true};
  for (const auto& g : elements) {
    Element inv = inverse(group, g);
    bool present = std::any_of(out.elements.begin(), out.elements.end(),
                               [&](const Element& h) { return same_element(group, h, inv); });
    if (!present) out.elements.push_back(std::move(inv));
  }
  return out;
}

GeneratingSet standard_generators(const GroupSpec& group) {
  GeneratingSet gens;
  switch (group.kind) {
    case GroupKind::Zd:
      for (int i = 0; i < group.dim; ++i) {
        Element::IntVec v(group.dim, 0);
        v[i] = 1;
        gens.elements.emplace_back(std::move(v));
      }
      break;
    case GroupKind::Heisenberg:
      gens.elements.emplace_back(Element::IntVec{1, 0, 0});
      gens.elements.emplace_back(Element::IntVec{0, 0, 1});
      break;
    case GroupKind::UnipotentZ: {
      int q = group.dim;
      for (int i = 0; i + 1 < q; ++i) {
        std::vector<std::int64_t> m(static_cast<std::size_t>(q) * q, 0);
        for (int d = 0; d < q; ++d) m[d * q + d] = 1;
        m[i * q + i + 1] = 1;
        gens.elements.emplace_back(unip_upper(q, m));
      }
      break;
    }
    case GroupKind::Free:
      for (int i = 1; i <= group.dim; ++i) gens.elements.emplace_back(Element::Word{i});
      break;
    case GroupKind::QTuple:
      gens.elements.emplace_back(Element::RatMap{{0, Rational(2)}});
      gens.elements.emplace_back(Element::RatMap{{1, Rational(2)}});
      break;
    case GroupKind::QVec:
      gens.elements.emplace_back(Element::RatMap{{0, Rational(1)}});
      gens.elements.emplace_back(Element::RatMap{{1, Rational(1)}});
      break;
    case GroupKind::AxB:
      gens.elements.emplace_back(Element::RealVec{1.0, 0.0});
      gens.elements.emplace_back(Element::RealVec{0.0, 1.0});
      break;
    case GroupKind::SL2R: {
      double e = std::exp(1.0);
      gens.elements.emplace_back(Element::RealVec{e, 0.0, 0.0, 1.0 / e});
      gens.elements.emplace_back(Element::RealVec{1.0, 1.0, 0.0, 1.0});
      gens.elements.emplace_back(Element::RealVec{1.0, 0.0, 1.0, 1.0});
      break;
    }
    case GroupKind::GLnR: {
      int n = group.dim;
      for (int i = 0; i < n; ++i) {
        Element::RealVec v = identity(group).reals();
        v[i * n + i] = std::exp(1.0);
        gens.elements.emplace_back(std::move(v));
      }
      for (int i = 0; i + 1 < n; ++i) {
        Element::RealVec up = identity(group).reals(), down = up;
        up[i * n + i + 1] = 1.0;
        down[(i + 1) * n + i] = 1.0;
        gens.elements.emplace_back(std::move(up));
        gens.elements.emplace_back(std::move(down));
      }
      break;
    }
  }
  return gens;
}

Element evaluate_word(const GroupSpec& group, const GeneratingSet& gens, std::span<const int> word) {
  Element result = identity(group);
  for (int letter : word) {
    std::size_t idx = static_cast<std::size_t>(std::abs(letter));
    if (letter == 0 || idx > gens.elements.size())
      throw std::out_of_range("generator index " + std::to_string(letter) + " out of range");
    const Element& g = gens.elements[idx - 1];
    result = multiply(group, result, letter > 0 ? g : inverse(group, g));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Text forms

std::string format_element(const GroupSpec& group, const Element& g) {
  std::ostringstream os;
  switch (group.kind) {
    case GroupKind::Zd:
    case GroupKind::Heisenberg:
    case GroupKind::UnipotentZ: {
      const auto& v = g.ints();
      if (group.kind == GroupKind::Zd && v.size() == 1) return std::to_string(v[0]);
      os << '(';
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << ')';
      return os.str();
    }
    case GroupKind::Free: {
      if (g.word().empty()) return "e";
      std::string s;
      for (int letter : g.word()) {
        char c = static_cast<char>('a' + std::abs(letter) - 1);
        s.push_back(letter > 0 ? c : static_cast<char>(std::toupper(c)));
      }
      return s;
    }
    case GroupKind::QTuple:
    case GroupKind::QVec: {
      os << '{';
      bool first = true;
      for (const auto& [i, v] : g.rats()) {
        os << (first ? "" : ",") << i << ':' << format_rational(v);
        first = false;
      }
      os << '}';
      return os.str();
    }
    case GroupKind::AxB: return "(" + fmt17(g.reals()[0]) + "," + fmt17(g.reals()[1]) + ")";
    case GroupKind::SL2R:
    case GroupKind::GLnR: {
      int n = matrix_size(group);
      os << '[';
      for (int i = 0; i < n; ++i) {
        os << (i ? "," : "") << '[';
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << fmt17(g.reals()[i * n + j]);
        os << ']';
      }
      os << ']';
      return os.str();
    }
  }
  return "?";
}

Element parse_element(const GroupSpec& group, std::string_view text) {
  text = trim(text);
  switch (group.kind) {
    case GroupKind::Zd:
    case GroupKind::Heisenberg:
    case GroupKind::UnipotentZ: {
      Element::IntVec v;
      if (group.kind == GroupKind::Zd && group.dim == 1 && !text.empty() && text.front() != '(') {
        v.push_back(parse_int64(text));
      } else {
        for (auto part : split_top_level(strip_brackets(text, '(', ')'), ',')) v.push_back(parse_int64(part));
      }
      return canonical_form(group, Element(std::move(v)));
    }
    case GroupKind::Free: {
      Element::Word w;
      if (text != "e") {
        for (char c : text) {
          if (!std::isalpha(static_cast<unsigned char>(c))) throw std::invalid_argument("bad free-group word");
          int idx = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
          w.push_back(std::islower(static_cast<unsigned char>(c)) ? idx : -idx);
        }
      }
      return canonical_form(group, Element(std::move(w)));
    }
    case GroupKind::QTuple:
    case GroupKind::QVec: {
      Element::RatMap m;
      auto body = strip_brackets(text, '{', '}');
      if (!body.empty()) {
        for (auto part : split_top_level(body, ',')) {
          auto colon = part.find(':');
          if (colon == std::string_view::npos) throw std::invalid_argument("tuple entries are index:value");
          m.emplace_back(static_cast<int>(parse_int64(part.substr(0, colon))), parse_rational(part.substr(colon + 1)));
        }
      }
      return canonical_form(group, Element(std::move(m)));
    }
    case GroupKind::AxB: {
      Element::RealVec v;
      for (auto part : split_top_level(strip_brackets(text, '(', ')'), ',')) v.push_back(parse_real(part));
      return canonical_form(group, Element(std::move(v)));
    }
    case GroupKind::SL2R:
    case GroupKind::GLnR: {
      Element::RealVec v;
      for (auto row : split_top_level(strip_brackets(text, '[', ']'), ','))
        for (auto entry : split_top_level(strip_brackets(row, '[', ']'), ',')) v.push_back(parse_real(entry));
      return canonical_form(group, Element(std::move(v)));
    }
  }
  throw std::logic_error("unreachable");
}

GeneratingSet parse_generating_set(const GroupSpec& group, std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "std") return standard_generators(group).symmetrized(group);
  GeneratingSet gens;
  for (auto part : split_top_level(text, ';'))
    if (!part.empty()) gens.elements.push_back(parse_element(group, part));
  return gens.symmetrized(group);
}

std::vector<std::int64_t> unipotent_matrix(const GroupSpec& group, const Element& g) {
  if (group.kind == GroupKind::Heisenberg) {
    const auto& v = g.ints();
    return {1, v[0], v[1], 0, 1, v[2], 0, 0, 1};
  }
  if (group.kind == GroupKind::UnipotentZ) return unip_full(group.dim, g.ints());
  throw UnsupportedOperation("unipotent_matrix needs a Heisenberg or unipotent group");
}

}  // namespace gaugelab
