#include "osd/errors.h"
#include "osd/layers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace osd {

namespace {

constexpr int kUnassigned = -1;

// Closest pair of points between two boxes.
std::pair<Point, Point> closest_points(const Box& a, const Box& b) {
  const auto axis = [](double a0, double a1, double b0, double b1) -> std::pair<double, double> {
    if (a1 < b0) return {a1, b0};
    if (b1 < a0) return {a0, b1};
    const double m = 0.5 * (std::max(a0, b0) + std::min(a1, b1));
    return {m, m};
  };
  const auto [ax, bx] = axis(a.x0, a.x1, b.x0, b.x1);
  const auto [ay, by] = axis(a.y0, a.y1, b.y0, b.y1);
  return {{ax, ay}, {bx, by}};
}

Point clamp_to(const Box& b, Point p) {
  return {std::clamp(p.x, b.x0, b.x1), std::clamp(p.y, b.y0, b.y1)};
}

// Assigns every non-core square to an arc of the outline: squares just
// outside an outline edge seed their arc, then labels spread by shortest
// center-to-center paths through edge-sharing layer squares.
std::vector<int> assign_arcs(const WhitneyDecomposition& w, const CoreRegion& core,
                             const Outline& outline, const std::vector<int>& arc_of_edge) {
  std::vector<int> label(w.size(), kUnassigned);
  std::vector<double> dist(w.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  const double unit = outline.unit;
  for (std::size_t e = 0; e < outline.num_edges(); ++e) {
    const Point a = outline.point(e);
    const Point b = outline.point(e + 1);
    const Point mid = outline.midpoint(e);
    // The core is on the left; the outside cell is on the right.
    const Point right{(b.y - a.y) / unit, -(b.x - a.x) / unit};
    const auto s = w.locate(mid + (0.5 * unit) * right);
    if (!s || core.contains(*s)) continue;
    const double d = distance(w.square(*s).center(), mid);
    if (d < dist[*s]) {
      dist[*s] = d;
      label[*s] = arc_of_edge[e];
      heap.push({d, *s});
    }
  }

  while (!heap.empty()) {
    const auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[s]) continue;
    for (std::size_t nb : w.neighbors(s)) {
      if (core.contains(nb) || !shares_edge(w.square(s), w.square(nb))) continue;
      const double nd = d + distance(w.square(s).center(), w.square(nb).center());
      if (nd < dist[nb]) {
        dist[nb] = nd;
        label[nb] = label[s];
        heap.push({nd, nb});
      }
    }
  }

  // Squares cut off from every seed fall back to the nearest arc.
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (core.contains(s) || label[s] != kUnassigned) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < outline.num_edges(); ++e) {
      const double d = distance_sq(w.square(s).center(), outline.midpoint(e));
      if (d < best) {
        best = d;
        label[s] = arc_of_edge[e];
      }
    }
  }
  return label;
}

// Pairs of squares from different arcs whose delta-neighbourhoods meet
// inside the domain.
std::vector<std::pair<std::size_t, std::size_t>> contact_pairs(const WhitneyDecomposition& w,
                                                                const std::vector<int>& label,
                                                                double delta) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> near;
  const double reach = 2.0 * delta;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (label[a] < 0) continue;
    const Box ba = w.square(a).box();
    near.clear();
    w.query_box(ba.expanded(reach), near);
    for (std::size_t b : near) {
      if (b <= a || label[b] < 0 || label[b] == label[a]) continue;
      const Box bb = w.square(b).box();
      const double d2 = box_box_distance_sq(ba, bb);
      if (d2 >= reach * reach) continue;
      if (d2 > 0.0) {
        const auto [pa, pb] = closest_points(ba, bb);
        if (w.domain().segment_meets_boundary(pa, pb)) continue;
      }
      pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

bool cyclic_neighbours(int i, int j, int l) {
  const int d = std::abs(i - j);
  return d <= 1 || d == l - 1;
}

}  // namespace

LayerDecomposition build_layers(const WhitneyDecomposition& w, int n,
                                const LayerOptions& options) {
  if (n < 1) throw PreconditionError("layer scale n must be positive");
  if (!(options.arc_length >= 4.0 && options.arc_length <= 8.0)) {
    throw PreconditionError("arc length must lie in [4, 8] units of 2^-n");
  }
  if (n > w.max_level() - 2) {
    throw PreconditionError("layer scale n must leave two levels of Whitney depth");
  }
  LayerDecomposition ld;
  ld.w_ = &w;
  ld.options_ = options;
  ld.core_ = core_region(w, n);
  ld.outline_ = trace_outline(w, ld.core_);
  ld.delta_ = std::ldexp(1.0, -n - 3);
  if (ld.core_.squares.size() == w.size()) {
    throw ConstructionError("the core exhausts the decomposition; no boundary layer at this n");
  }

  const std::size_t num_edges = ld.outline_.num_edges();
  const std::size_t num_arcs =
      std::max<std::size_t>(3, static_cast<std::size_t>(std::lround(num_edges / options.arc_length)));
  std::vector<int> arc_of_edge(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    arc_of_edge[e] = static_cast<int>(e * num_arcs / num_edges);
  }
  const std::vector<int> label = assign_arcs(w, ld.core_, ld.outline_, arc_of_edge);
  const auto pairs = contact_pairs(w, label, ld.delta_);

  // group_of[arc] is the current piece position of each arc; arcs without
  // squares are dropped.
  std::vector<char> used(num_arcs, 0);
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (label[s] >= 0) used[label[s]] = 1;
  }
  std::vector<int> group_of(num_arcs, -1);
  int l = 0;
  for (std::size_t a = 0; a < num_arcs; ++a) {
    if (used[a]) group_of[a] = l++;
  }

  std::vector<std::vector<char>> meets;
  while (true) {
    if (l < 3) throw ConstructionError("boundary pieces merged below three; increase n");
    meets.assign(l, std::vector<char>(l, 0));
    for (int g = 0; g < l; ++g) meets[g][g] = 1;
    for (const auto& [a, b] : pairs) {
      const int ga = group_of[label[a]];
      const int gb = group_of[label[b]];
      meets[ga][gb] = meets[gb][ga] = 1;
    }
    // First violation in (i, j) order decides the merge.
    int mi = -1;
    int mj = -1;
    for (int i = 0; i < l && mi < 0; ++i) {
      for (int j = i + 1; j < l; ++j) {
        if (static_cast<bool>(meets[i][j]) != cyclic_neighbours(i, j, l)) {
          mi = i;
          mj = j;
          break;
        }
      }
    }
    if (mi < 0) break;
    // Collapse the shorter cyclic run from mi to mj into one piece.
    std::vector<int> remap(l);
    if (mj - mi <= l - (mj - mi)) {
      for (int g = 0; g < l; ++g) remap[g] = g <= mi ? g : (g <= mj ? mi : g - (mj - mi));
    } else {
      // Run mj, mj+1, ..., l-1, 0, ..., mi becomes piece 0.
      for (int g = 0; g < l; ++g) remap[g] = (g <= mi || g >= mj) ? 0 : g - mi;
    }
    for (int& g : group_of) {
      if (g >= 0) g = remap[g];
    }
    l = *std::max_element(group_of.begin(), group_of.end()) + 1;
  }
  ld.meets_ = meets;

  ld.owner_.assign(w.size(), 0);
  ld.pieces_.resize(l);
  for (int g = 0; g < l; ++g) ld.pieces_[g].i = g + 1;
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (label[s] < 0) continue;
    const int g = group_of[label[s]];
    ld.owner_[s] = g + 1;
    ld.pieces_[g].tilde.push_back(s);
  }

  std::vector<std::size_t> near;
  for (BoundaryPiece& piece : ld.pieces_) {
    Box bb = w.square(piece.tilde.front()).box();
    double area = 0.0;
    Point moment;
    for (std::size_t s : piece.tilde) {
      const DyadicSquare& q = w.square(s);
      bb = {std::min(bb.x0, q.x0()), std::min(bb.y0, q.y0()), std::max(bb.x1, q.x1()),
            std::max(bb.y1, q.y1())};
      area += q.area();
      moment = moment + q.area() * q.center();
    }
    piece.tilde_bbox = bb;
    piece.centroid = (1.0 / area) * moment;

    // Anchor: a core square of side 2^-n meeting H_i.
    std::set<std::size_t> candidates;
    for (std::size_t s : piece.tilde) {
      const Box b = w.square(s).box();
      near.clear();
      w.query_box(b.expanded(ld.delta_), near);
      for (std::size_t c : near) {
        if (!ld.core_.contains(c) || w.square(c).level != n) continue;
        if (box_box_distance_sq(b, w.square(c).box()) < ld.delta_ * ld.delta_) candidates.insert(c);
      }
    }
    if (candidates.empty()) {
      throw ConstructionError("boundary piece " + std::to_string(piece.i) +
                              " meets no core square of side 2^-n");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c : candidates) {
      const double d = distance_sq(w.square(c).center(), piece.centroid);
      if (d < best) {
        best = d;
        piece.anchor = c;
      }
    }
  }

  for (int g = 0; g < l; ++g) {
    const int h = (g + 1) % l;
    ld.chains_.push_back({g + 1, g + 1, {ld.pieces_[g].anchor}});
    ld.chains_.push_back({g + 1, h + 1,
                          find_chain_indices(w, ld.pieces_[g].anchor, ld.pieces_[h].anchor)});
  }
  for (const AnchorChain& c : ld.chains_) {
    ld.max_chain_length_ = std::max(ld.max_chain_length_, c.squares.size());
  }
  return ld;
}

bool LayerDecomposition::in_expanded(int i, Point p) const {
  if (i < 1 || i > static_cast<int>(pieces_.size())) return false;
  if (!w_->domain().contains(p)) return false;
  std::vector<std::size_t> near;
  w_->query_box(Box{p.x, p.y, p.x, p.y}.expanded(delta_), near);
  double best = std::numeric_limits<double>::infinity();
  Point target;
  for (std::size_t s : near) {
    if (owner_[s] != i) continue;
    const Box b = w_->square(s).box();
    const double d = box_distance_sq(b, p);
    if (d < best) {
      best = d;
      target = clamp_to(b, p);
    }
  }
  if (!(best < delta_ * delta_)) return false;
  return best == 0.0 || !w_->domain().segment_meets_boundary(p, target);
}

bool LayerDecomposition::expanded_intersect(int i, int j) const {
  return meets_.at(i - 1).at(j - 1) != 0;
}

Box LayerDecomposition::expanded_bbox(int i) const {
  const Box b = pieces_.at(i - 1).tilde_bbox.expanded(delta_);
  const Box d = w_->domain().bounding_box();
  return {std::max(b.x0, d.x0), std::max(b.y0, d.y0), std::min(b.x1, d.x1),
          std::min(b.y1, d.y1)};
}

}  // namespace osd
