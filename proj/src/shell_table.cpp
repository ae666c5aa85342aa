#include "gaugelab/shell_table.hpp"

#include "gaugelab/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace gaugelab {

std::size_t ShellTable::ball_size(int n) const {
  if (n < 0 || n > radius) throw std::out_of_range("ball radius outside enumerated table");
  std::size_t total = 0;
  for (int i = 0; i <= n; ++i) total += shells[i].size();
  return total;
}

std::optional<int> ShellTable::word_gauge(const Element& g) const {
  auto it = index.find(g);
  if (it == index.end()) return std::nullopt;
  return it->second.length;
}

std::vector<int> ShellTable::geodesic_word(const Element& g) const {
  std::vector<int> word;
  Element cur = g;
  for (;;) {
    auto it = index.find(cur);
    if (it == index.end()) throw NotFound("element outside enumerated ball: " + format_element(group, g));
    if (it->second.last_letter < 0) break;
    word.push_back(it->second.last_letter);
    cur = multiply(group, cur, inverse(group, gens.elements[it->second.last_letter]));
  }
  std::reverse(word.begin(), word.end());
  return word;
}

ShellTable ball_enumerate(const GroupSpec& group, const GeneratingSet& input, int radius, std::size_t cap) {
  if (!group.is_discrete())
    throw UnsupportedOperation("ball enumeration needs a discrete group, got " + group.to_string());
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");

  ShellTable table;
  table.group = group;
  table.gens = input.symmetric ? input : input.symmetrized(group);
  const GeneratingSet& gens = table.gens;
  Element e = identity(group);
  table.shells.push_back({e});
  table.index.emplace(e, ShellTable::Entry{0, -1});

  for (int n = 1; n <= radius; ++n) {
    std::vector<Element> next;
    bool overflow = false;
    for (const Element& g : table.shells[n - 1]) {
      for (std::size_t u = 0; u < gens.elements.size(); ++u) {
        Element h = multiply(group, g, gens.elements[u]);
        if (table.index.count(h)) continue;
        auto [it, inserted] = table.index.emplace(std::move(h), ShellTable::Entry{n, static_cast<int>(u)});
        if (!inserted) continue;
        next.push_back(it->first);
        if (table.index.size() > cap) {
          overflow = true;
          break;
        }
      }
      if (overflow) break;
    }
    if (overflow) {
      for (const Element& h : next) table.index.erase(h);
      table.truncated = true;
      break;
    }
    std::sort(next.begin(), next.end());
    table.shells.push_back(std::move(next));
    table.radius = n;
    if (table.shells.back().empty()) {
      // Finite group exhausted; remaining shells are empty.
      for (int m = n + 1; m <= radius; ++m) table.shells.emplace_back();
      table.radius = radius;
      break;
    }
  }
  return table;
}

}  // namespace gaugelab
