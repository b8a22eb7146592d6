#include "osd/errors.h"
#include "osd/geometry.h"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>

namespace osd {

namespace {
constexpr int kMaxLevelGap = 2;  // side ratio in [1/4, 4]
}

bool is_valid_chain(const Chain& chain) {
  if (chain.squares.empty()) return false;
  for (std::size_t i = 0; i + 1 < chain.squares.size(); ++i) {
    const DyadicSquare& a = chain.squares[i];
    const DyadicSquare& b = chain.squares[i + 1];
    if (!touches(a, b) || interiors_overlap(a, b)) return false;
    if (std::abs(a.level - b.level) > kMaxLevelGap) return false;
  }
  return true;
}

std::vector<std::size_t> find_chain_indices(const WhitneyDecomposition& w,
                                            std::size_t a, std::size_t b) {
  if (a == b) return {a};
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(w.size(), kNone);
  std::deque<std::size_t> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t nb : w.neighbors(cur)) {
      if (parent[nb] != kNone) continue;
      if (std::abs(w.square(cur).level - w.square(nb).level) > kMaxLevelGap) continue;
      parent[nb] = cur;
      if (nb == b) {
        std::vector<std::size_t> path{b};
        while (path.back() != a) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(nb);
    }
  }
  throw UnreachableError("no chain connects the two squares");
}

Chain find_chain(const WhitneyDecomposition& w, const DyadicSquare& a,
                 const DyadicSquare& b) {
  const auto ia = w.index_of(a);
  const auto ib = w.index_of(b);
  if (!ia || !ib) throw PreconditionError("chain endpoints must belong to the decomposition");
  Chain chain;
  for (std::size_t i : find_chain_indices(w, *ia, *ib)) chain.squares.push_back(w.square(i));
  return chain;
}

}  // namespace osd
