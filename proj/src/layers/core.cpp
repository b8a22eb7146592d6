#include "osd/errors.h"
#include "osd/layers.h"

#include <cmath>
#include <deque>
#include <map>

namespace osd {

CoreRegion core_region(const WhitneyDecomposition& w, int n) {
  const std::size_t root = w.root();
  if (w.square(root).level > n) {
    throw PreconditionError("root square is smaller than 2^-n for n = " + std::to_string(n));
  }
  CoreRegion core;
  core.n = n;
  core.member.assign(w.size(), 0);
  std::deque<std::size_t> queue{root};
  core.member[root] = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t nb : w.neighbors(cur)) {
      if (core.member[nb] || w.square(nb).level > n) continue;
      if (!shares_edge(w.square(cur), w.square(nb))) continue;
      core.member[nb] = 1;
      queue.push_back(nb);
    }
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (core.member[i]) {
      core.squares.push_back(i);
      core.area += w.square(i).area();
    }
  }
  return core;
}

Point Outline::point(std::size_t i) const {
  const auto& v = vertices[i % vertices.size()];
  return {static_cast<double>(v.first) * unit, static_cast<double>(v.second) * unit};
}

Point Outline::midpoint(std::size_t i) const {
  return 0.5 * (point(i) + point(i + 1));
}

namespace {

using Vertex = std::pair<std::int64_t, std::int64_t>;

struct Edge {
  Vertex from;
  int dx = 0;
  int dy = 0;
  bool used = false;

  Vertex to() const { return {from.first + dx, from.second + dy}; }
};

}  // namespace

Outline trace_outline(const WhitneyDecomposition& w, const CoreRegion& core) {
  const int n = core.n;
  const std::int64_t cells = std::int64_t{1} << n;
  const double unit = std::ldexp(1.0, -n);

  const auto in_core = [&](std::int64_t cx, std::int64_t cy) {
    if (cx < 0 || cy < 0 || cx >= cells || cy >= cells) return false;
    const auto idx = w.locate({(cx + 0.5) * unit, (cy + 0.5) * unit});
    return idx && core.contains(*idx);
  };

  std::vector<Edge> edges;
  for (std::size_t s : core.squares) {
    const DyadicSquare& q = w.square(s);
    const std::int64_t scale = std::int64_t{1} << (n - q.level);
    const std::int64_t x0 = q.ix * scale;
    const std::int64_t y0 = q.iy * scale;
    const std::int64_t x1 = x0 + scale;
    const std::int64_t y1 = y0 + scale;
    for (std::int64_t t = 0; t < scale; ++t) {
      if (!in_core(x0 + t, y0 - 1)) edges.push_back({{x0 + t, y0}, 1, 0});
      if (!in_core(x1, y0 + t)) edges.push_back({{x1, y0 + t}, 0, 1});
      if (!in_core(x0 + t, y1)) edges.push_back({{x0 + t + 1, y1}, -1, 0});
      if (!in_core(x0 - 1, y0 + t)) edges.push_back({{x0, y0 + t + 1}, 0, -1});
    }
  }
  if (edges.empty()) throw ConstructionError("core has no boundary");

  std::map<Vertex, std::vector<std::size_t>> outgoing;
  std::size_t start = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    outgoing[edges[e].from].push_back(e);
    const Edge& a = edges[e];
    const Edge& b = edges[start];
    if (a.dx == 1 && (b.dx != 1 || a.from.second < b.from.second ||
                      (a.from.second == b.from.second && a.from.first < b.from.first))) {
      start = e;
    }
  }

  Outline out;
  out.unit = unit;
  std::size_t cur = start;
  while (true) {
    Edge& e = edges[cur];
    e.used = true;
    out.vertices.push_back(e.from);
    const Vertex v = e.to();
    // Right turn, then straight, then left.
    const int turns[3][2] = {{e.dy, -e.dx}, {e.dx, e.dy}, {-e.dy, e.dx}};
    std::size_t next = edges.size();
    for (const auto& t : turns) {
      for (std::size_t cand : outgoing[v]) {
        if (edges[cand].dx == t[0] && edges[cand].dy == t[1] && (!edges[cand].used || cand == start)) {
          next = cand;
          break;
        }
      }
      if (next != edges.size()) break;
    }
    if (next == edges.size()) throw ConstructionError("core outline is not closed");
    if (next == start) break;
    cur = next;
  }
  return out;
}

}  // namespace osd
