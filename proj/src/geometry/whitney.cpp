#include "osd/errors.h"
#include "osd/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace osd {

namespace {

constexpr std::int32_t kPendingLeaf = -2;

enum class Classification { kOutside, kAccepted, kRefine };

struct SquareTest {
  Classification kind = Classification::kRefine;
  double distance = 0.0;
};

// Accept iff the closed square lies in the domain and dist^2 > 2 l^2, i.e.
// dist(Q, complement) > diam(Q). Squared distances keep dyadic inputs exact.
SquareTest classify(const PolygonDomain& domain, const DyadicSquare& q) {
  const Box box = q.box();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < domain.num_edges(); ++i) {
    const auto [a, b] = domain.edge(i);
    if (segment_meets_open_box(a, b, box)) return {Classification::kRefine, 0.0};
    best = std::min(best, segment_square_distance_sq(a, b, box));
  }
  if (!domain.contains(q.center())) return {Classification::kOutside, 0.0};
  const double side = q.side();
  if (best > 2.0 * side * side) return {Classification::kAccepted, std::sqrt(best)};
  return {Classification::kRefine, std::sqrt(best)};
}

}  // namespace

std::int32_t WhitneyDecomposition::build_node(
    const DyadicSquare& q,
    std::vector<std::pair<DyadicSquare, std::int32_t>>& accepted,
    std::vector<double>& accepted_dist) {
  if (q.level > 0) {
    const SquareTest t = classify(domain_, q);
    if (t.kind == Classification::kOutside) return -1;
    if (t.kind == Classification::kAccepted) {
      const auto id = static_cast<std::int32_t>(nodes_.size());
      nodes_.push_back(Node{});
      nodes_[id].leaf = kPendingLeaf;
      accepted.emplace_back(q, id);
      accepted_dist.push_back(t.distance);
      return id;
    }
    if (q.level >= max_level_) return -1;
  }
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{});
  for (int c = 0; c < 4; ++c) {
    const std::int32_t child = build_node(q.child(c), accepted, accepted_dist);
    nodes_[id].child[c] = child;
  }
  return id;
}

WhitneyDecomposition whitney_decompose(const PolygonDomain& domain,
                                       const WhitneyOptions& options) {
  const Box b = domain.bounding_box();
  if (b.x0 < 0.0 || b.y0 < 0.0 || b.x1 > 1.0 || b.y1 > 1.0) {
    throw PreconditionError("domain must lie in the closed unit square; normalize it first");
  }
  if (options.max_level < 1 || options.max_level > 30) {
    throw PreconditionError("max_level must lie in [1, 30]");
  }
  WhitneyDecomposition w(domain);
  w.max_level_ = options.max_level;

  std::vector<std::pair<DyadicSquare, std::int32_t>> accepted;
  std::vector<double> accepted_dist;
  w.build_node(DyadicSquare{0, 0, 0}, accepted, accepted_dist);
  if (accepted.empty()) {
    throw ConstructionError("no Whitney square accepted down to level " +
                            std::to_string(options.max_level) +
                            "; the domain is too thin for this depth");
  }

  std::vector<std::size_t> order(accepted.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return accepted[a].first < accepted[b].first;
  });
  w.squares_.reserve(order.size());
  w.distances_.reserve(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& [sq, node] = accepted[order[rank]];
    w.squares_.push_back(sq);
    w.distances_.push_back(accepted_dist[order[rank]]);
    w.nodes_[node].leaf = static_cast<std::int32_t>(rank);
    w.covered_area_ += sq.area();
  }
  w.root_ = 0;

  // Touching squares: every neighbour of Q either contains one of the eight
  // same-level cells around Q or lies inside one of them.
  w.adjacency_offsets_.assign(w.squares_.size() + 1, 0);
  std::vector<std::size_t> found;
  for (std::size_t i = 0; i < w.squares_.size(); ++i) {
    const DyadicSquare& q = w.squares_[i];
    const std::int64_t extent = std::int64_t{1} << q.level;
    found.clear();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const DyadicSquare cell{q.level, q.ix + dx, q.iy + dy};
        if (cell.ix < 0 || cell.iy < 0 || cell.ix >= extent || cell.iy >= extent) continue;
        const auto [node, at] = w.descend(cell);
        if (node < 0) continue;
        if (w.nodes_[node].leaf >= 0) {
          found.push_back(static_cast<std::size_t>(w.nodes_[node].leaf));
        } else if (at == cell) {
          w.collect_touching(node, cell, q, found);
        }
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    w.adjacency_.insert(w.adjacency_.end(), found.begin(), found.end());
    w.adjacency_offsets_[i + 1] = w.adjacency_.size();
  }
  return w;
}

std::pair<std::int32_t, DyadicSquare> WhitneyDecomposition::descend(
    const DyadicSquare& q) const {
  std::int32_t node = 0;
  DyadicSquare at{0, 0, 0};
  while (at.level < q.level) {
    if (nodes_[node].leaf >= 0) break;
    const DyadicSquare next = q.ancestor(at.level + 1);
    const int c = static_cast<int>((next.ix & 1) | ((next.iy & 1) << 1));
    const std::int32_t child = nodes_[node].child[c];
    if (child < 0) return {-1, at};
    node = child;
    at = next;
  }
  return {node, at};
}

void WhitneyDecomposition::collect_touching(std::int32_t node,
                                            const DyadicSquare& at,
                                            const DyadicSquare& target,
                                            std::vector<std::size_t>& out) const {
  const Node& nd = nodes_[node];
  if (nd.leaf >= 0) {
    if (touches(at, target)) out.push_back(static_cast<std::size_t>(nd.leaf));
    return;
  }
  for (int c = 0; c < 4; ++c) {
    if (nd.child[c] < 0) continue;
    const DyadicSquare sub = at.child(c);
    if (touches(sub, target)) collect_touching(nd.child[c], sub, target, out);
  }
}

void WhitneyDecomposition::query_node(std::int32_t node, const DyadicSquare& at,
                                      const Box& box,
                                      std::vector<std::size_t>& out) const {
  if (!box.intersects(at.box())) return;
  const Node& nd = nodes_[node];
  if (nd.leaf >= 0) {
    out.push_back(static_cast<std::size_t>(nd.leaf));
    return;
  }
  for (int c = 0; c < 4; ++c) {
    if (nd.child[c] >= 0) query_node(nd.child[c], at.child(c), box, out);
  }
}

void WhitneyDecomposition::query_box(const Box& box,
                                     std::vector<std::size_t>& out) const {
  query_node(0, DyadicSquare{0, 0, 0}, box, out);
}

std::span<const std::size_t> WhitneyDecomposition::neighbors(std::size_t i) const {
  return std::span<const std::size_t>(adjacency_).subspan(
      adjacency_offsets_[i], adjacency_offsets_[i + 1] - adjacency_offsets_[i]);
}

std::optional<std::size_t> WhitneyDecomposition::index_of(const DyadicSquare& q) const {
  const auto it = std::lower_bound(squares_.begin(), squares_.end(), q);
  if (it == squares_.end() || *it != q) return std::nullopt;
  return static_cast<std::size_t>(it - squares_.begin());
}

std::optional<std::size_t> WhitneyDecomposition::locate(Point p) const {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) return std::nullopt;
  std::int32_t node = 0;
  DyadicSquare at{0, 0, 0};
  while (true) {
    const Node& nd = nodes_[node];
    if (nd.leaf >= 0) return static_cast<std::size_t>(nd.leaf);
    const Point c = at.center();
    const int q = (p.x >= c.x ? 1 : 0) | (p.y >= c.y ? 2 : 0);
    if (nd.child[q] < 0) return std::nullopt;
    node = nd.child[q];
    at = at.child(q);
  }
}

WhitneyReport check_whitney(const WhitneyDecomposition& w) {
  WhitneyReport r;
  r.num_squares = w.size();
  r.domain_area = w.domain().area();
  r.min_dist_over_side = std::numeric_limits<double>::infinity();
  constexpr double kTol = 1e-12;
  const double upper = 3.0 * std::sqrt(2.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const DyadicSquare& q = w.square(i);
    const double side = q.side();
    double d = 0.0;
    try {
      d = square_boundary_distance(w.domain(), q);
    } catch (const NotContainedError&) {
      ++r.w2_violations;
      continue;
    }
    r.max_dist_over_side = std::max(r.max_dist_over_side, d / side);
    r.min_dist_over_side = std::min(r.min_dist_over_side, d / side);
    if (!(side < d + kTol) || d > upper * side + kTol) ++r.w2_violations;

    for (int lvl = q.level - 1; lvl >= 1; --lvl) {
      if (w.index_of(q.ancestor(lvl))) ++r.overlapping_pairs;
    }
    r.covered_area += q.area();

    for (std::size_t j : w.neighbors(i)) {
      r.max_touching_ratio = std::max(r.max_touching_ratio, side_ratio(q, w.square(j)));
      const auto back = w.neighbors(j);
      if (!std::binary_search(back.begin(), back.end(), i)) r.adjacency_symmetric = false;
      if (!touches(q, w.square(j))) r.adjacency_symmetric = false;
    }
  }
  return r;
}

}  // namespace osd
