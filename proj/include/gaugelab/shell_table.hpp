#pragma once

#include "gaugelab/group.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

namespace gaugelab {

/// Cayley ball B_R enumerated breadth-first. shells[n] is the sphere S_n,
/// sorted by canonical payload.
struct ShellTable {
  struct Entry {
    int length;      // minimal word length
    int last_letter; // index into gens.elements of the final generator, -1 for identity
  };

  GroupSpec group;
  GeneratingSet gens;
  int radius = 0;          // largest fully enumerated n
  bool truncated = false;  // true when the cap stopped enumeration before the requested radius
  std::vector<std::vector<Element>> shells;
  std::unordered_map<Element, Entry, ElementHash> index;

  std::size_t sphere_size(int n) const { return shells.at(n).size(); }
  std::size_t ball_size(int n) const;
  std::size_t size() const { return index.size(); }

  /// min{n : g in U^n} when g lies in B_radius, nullopt otherwise.
  std::optional<int> word_gauge(const Element& g) const;

  /// A geodesic word for g as 0-based indices into gens.elements.
  std::vector<int> geodesic_word(const Element& g) const;
};

/// Breadth-first enumeration of B_R for the symmetrization of `gens`. Throws UnsupportedOperation for continuous
/// groups. When the total element count would exceed `cap`, the partially built
/// shell is discarded, `truncated` is set and `radius` is the last full shell.
ShellTable ball_enumerate(const GroupSpec& group, const GeneratingSet& gens, int radius,
                          std::size_t cap = 5'000'000);

}  // namespace gaugelab
