#pragma once

#include "gaugelab/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gaugelab {

enum class GroupKind {
  Zd,          // Z^d, additive
  Heisenberg,  // integer (a,b,c) <-> [[1,a,b],[0,1,c],[0,0,1]]
  Free,        // free group on k generators, reduced words
  QTuple,      // finitely supported positive-rational tuples, pointwise product
  QVec,        // finitely supported rational tuples, pointwise sum
  AxB,         // (a,b) <-> [[e^a,b],[0,1]]
  SL2R,
  GLnR,
  UnipotentZ,  // integer q x q upper unitriangular
};

struct GroupSpec {
  GroupKind kind = GroupKind::Zd;
  int dim = 1;  // d for Z^d, k for Free, n for GLnR, q for UnipotentZ; 2/3 for the fixed kinds

  static GroupSpec z(int d) { return {GroupKind::Zd, d}; }
  static GroupSpec heisenberg() { return {GroupKind::Heisenberg, 3}; }
  static GroupSpec free(int k) { return {GroupKind::Free, k}; }
  static GroupSpec qtuple() { return {GroupKind::QTuple, 0}; }
  static GroupSpec qvec() { return {GroupKind::QVec, 0}; }
  static GroupSpec axb() { return {GroupKind::AxB, 2}; }
  static GroupSpec sl2() { return {GroupKind::SL2R, 2}; }
  static GroupSpec gl(int n) { return {GroupKind::GLnR, n}; }
  static GroupSpec unipotent(int q) { return {GroupKind::UnipotentZ, q}; }

  /// Parses the mini-language: `z:d`, `heis`, `free:k`, `qinf`, `qvec`, `axb`,
  /// `sl2`, `gl:n`, `unip:q`. `z` alone means `z:1`.
  static GroupSpec parse(std::string_view text);
  std::string to_string() const;

  bool is_discrete() const;
  bool operator==(const GroupSpec&) const = default;
};

/// Canonical payload of a group element. Which alternative is active depends on
/// the group kind:
///   IntVec  - Z^d coordinates, Heisenberg (a,b,c), unipotent strictly-upper entries
///   Word    - reduced free word, letters +-(i+1) for generator i and its inverse
///   RatMap  - sorted (index, value) pairs; entries equal to the neutral value omitted
///   RealVec - (a,b) for ax+b, row-major matrix entries for SL2R/GLnR
struct Element {
  using IntVec = std::vector<std::int64_t>;
  using Word = std::vector<int>;
  using RatMap = std::vector<std::pair<int, Rational>>;
  using RealVec = std::vector<double>;

  std::variant<IntVec, Word, RatMap, RealVec> data;

  Element() = default;
  explicit Element(IntVec v) : data(std::move(v)) {}
  explicit Element(Word w) : data(std::move(w)) {}
  explicit Element(RatMap m) : data(std::move(m)) {}
  explicit Element(RealVec r) : data(std::move(r)) {}

  const IntVec& ints() const { return std::get<IntVec>(data); }
  const Word& word() const { return std::get<Word>(data); }
  const RatMap& rats() const { return std::get<RatMap>(data); }
  const RealVec& reals() const { return std::get<RealVec>(data); }

  bool operator==(const Element& other) const { return data == other.data; }
  bool operator<(const Element& other) const;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

struct GeneratingSet {
  std::vector<Element> elements;
  bool symmetric = false;

  /// Appends missing inverses; the result satisfies U = U^{-1}.
  GeneratingSet symmetrized(const GroupSpec& group) const;
};

Element identity(const GroupSpec& group);
Element multiply(const GroupSpec& group, const Element& lhs, const Element& rhs);
Element inverse(const GroupSpec& group, const Element& g);
Element power(const GroupSpec& group, const Element& g, std::int64_t exponent);

/// Normalizes a structurally valid payload: free reduction, lowest terms and
/// dropped neutral entries for rational tuples, determinant checks for matrix
/// kinds. Idempotent.
Element canonical_form(const GroupSpec& group, Element raw);

/// True when equal as group elements; continuous kinds compare with 1e-9
/// relative tolerance.
bool same_element(const GroupSpec& group, const Element& a, const Element& b);

/// The kind-default generating set before symmetrization (e.g. e_1..e_d for
/// Z^d, x and z for Heisenberg, E_{i,i+1} for unipotent groups).
GeneratingSet standard_generators(const GroupSpec& group);

/// Product of the signed letters of `word`: letter +(i+1) is generator i of
/// `gens`, -(i+1) its inverse. The empty word is the identity.
Element evaluate_word(const GroupSpec& group, const GeneratingSet& gens, std::span<const int> word);

std::string format_element(const GroupSpec& group, const Element& g);
Element parse_element(const GroupSpec& group, std::string_view text);

/// `std` or a ';'-separated list of elements in canonical text form. The
/// result is symmetrized.
GeneratingSet parse_generating_set(const GroupSpec& group, std::string_view text);

/// 3x3 row-major integer matrix of a Heisenberg element, or q x q for unipotent.
std::vector<std::int64_t> unipotent_matrix(const GroupSpec& group, const Element& g);

}  // namespace gaugelab
