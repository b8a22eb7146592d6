#include "osd/errors.h"
#include "osd/io.h"
#include "osd/layers.h"
#include "osd/verify.h"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <queue>
#include <random>

using namespace osd;

namespace {

PolygonDomain disk_like(int sides) {
  std::vector<Point> v;
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / sides;
    v.push_back({0.5 + 0.45 * std::cos(a), 0.5 + 0.45 * std::sin(a)});
  }
  return PolygonDomain(v);
}

// Area of the edge-connected component of the root among squares of level
// <= n, by a quadratic scan that does not use the adjacency lists.
double flood_fill_area(const WhitneyDecomposition& w, int n) {
  std::vector<char> seen(w.size(), 0);
  std::queue<std::size_t> q;
  q.push(w.root());
  seen[w.root()] = 1;
  double area = 0.0;
  while (!q.empty()) {
    const std::size_t s = q.front();
    q.pop();
    area += w.square(s).area();
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (seen[t] || w.square(t).level > n || !shares_edge(w.square(s), w.square(t))) continue;
      seen[t] = 1;
      q.push(t);
    }
  }
  return area;
}

bool cyclic(int i, int j, int l) {
  const int d = std::abs(i - j);
  return d <= 1 || d == l - 1;
}

void check_structure(const WhitneyDecomposition& w, const LayerDecomposition& layers) {
  const int n = layers.n();
  const int l = static_cast<int>(layers.num_pieces());
  REQUIRE(l >= 3);
  for (int i = 1; i <= l; ++i) {
    for (int j = 1; j <= l; ++j) CHECK(layers.expanded_intersect(i, j) == cyclic(i, j, l));
  }
  std::size_t owned = 0;
  for (const BoundaryPiece& piece : layers.pieces()) {
    CHECK(w.square(piece.anchor).level == n);
    CHECK(layers.core().contains(piece.anchor));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t s : piece.tilde) {
      CHECK(layers.owner(s) == piece.i);
      gap = std::min(gap, box_box_distance_sq(w.square(s).box(), w.square(piece.anchor).box()));
    }
    CHECK(gap < layers.delta() * layers.delta());
    owned += piece.tilde.size();
  }
  CHECK(owned + layers.core().squares.size() == w.size());
  for (const AnchorChain& c : layers.chains()) {
    CHECK(cyclic(c.i, c.j, l));
    if (c.i == c.j) CHECK(c.squares.size() == 1);
    Chain ch;
    for (std::size_t s : c.squares) ch.squares.push_back(w.square(s));
    CHECK(is_valid_chain(ch));
    CHECK(c.squares.front() == layers.pieces()[c.i - 1].anchor);
    CHECK(c.squares.back() == layers.pieces()[c.j - 1].anchor);
  }
}

}  // namespace

TEST_SUITE("layers") {

TEST_CASE("core region against flood fill") {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {6});
  for (int n = 3; n <= 6; ++n) {
    const CoreRegion core = core_region(w, n);
    CHECK(core.area == doctest::Approx(flood_fill_area(w, n)).epsilon(1e-14));
  }
  const CoreRegion all = core_region(w, 6);
  CHECK(all.squares.size() == w.size());
  const int top = w.square(w.root()).level;
  for (std::size_t s : core_region(w, top).squares) CHECK(w.square(s).level == top);
  CHECK_THROWS_AS(core_region(w, top - 1), PreconditionError);
}

TEST_CASE("outline is a closed counterclockwise lattice loop") {
  const WhitneyDecomposition w = whitney_decompose(read_domain(OSD_DATA_DIR "/l_shape.json"), {8});
  for (int n = 3; n <= 6; ++n) {
    const CoreRegion core = core_region(w, n);
    const Outline o = trace_outline(w, core);
    double twice_area = 0.0;
    for (std::size_t e = 0; e < o.num_edges(); ++e) {
      const auto [x0, y0] = o.vertices[e];
      const auto [x1, y1] = o.vertices[(e + 1) % o.num_edges()];
      CHECK(std::abs(x1 - x0) + std::abs(y1 - y0) == 1);
      twice_area += static_cast<double>(x0 * y1 - x1 * y0);
    }
    // The loop encloses exactly the core.
    CHECK(0.5 * twice_area * o.unit * o.unit == doctest::Approx(core.area).epsilon(1e-14));
  }
}

TEST_CASE("pieces, anchors and chains on the reference domains") {
  for (const char* name : {"/unit_square.json", "/l_shape.json", "/comb.json"}) {
    CAPTURE(name);
    const WhitneyDecomposition w = whitney_decompose(read_domain(std::string(OSD_DATA_DIR) + name), {9});
    for (int n = 3; n <= 7; ++n) {
      CAPTURE(n);
      const LayerDecomposition layers = build_layers(w, n);
      check_structure(w, layers);
      CHECK(layers.max_chain_length() <= layers.chain_bound());
    }
  }
}

TEST_CASE("unit square chains stay short") {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {8});
  const LayerDecomposition layers = build_layers(w, 4);
  CHECK(layers.max_chain_length() <= 20);
  CHECK_THROWS_AS(build_layers(w, 7), PreconditionError);
  LayerOptions bad;
  bad.arc_length = 12.0;
  CHECK_THROWS_AS(build_layers(w, 4, bad), PreconditionError);
}

TEST_CASE("piece count follows the perimeter") {
  const PolygonDomain d = disk_like(40);
  const WhitneyDecomposition w = whitney_decompose(d, {9});
  for (int n = 4; n <= 7; ++n) {
    const LayerDecomposition layers = build_layers(w, n);
    const double expected = d.perimeter() * std::ldexp(1.0, n) / 8.0;
    CAPTURE(n);
    CHECK(layers.num_pieces() >= expected / 4.0);
    CHECK(layers.num_pieces() <= expected * 4.0);
    check_structure(w, layers);
  }
}

TEST_CASE("expanded pieces contain their squares") {
  const WhitneyDecomposition w = whitney_decompose(read_domain(OSD_DATA_DIR "/l_shape.json"), {8});
  const LayerDecomposition layers = build_layers(w, 4);
  for (const BoundaryPiece& piece : layers.pieces()) {
    const Box bb = layers.expanded_bbox(piece.i);
    for (std::size_t s : piece.tilde) {
      const Point c = w.square(s).center();
      CHECK(layers.in_expanded(piece.i, c));
      CHECK(bb.contains(c));
    }
  }
  CHECK_FALSE(layers.in_expanded(1, {2.0, 2.0}));
}

TEST_CASE("partition of unity") {
  const WhitneyDecomposition w = whitney_decompose(read_domain(OSD_DATA_DIR "/l_shape.json"), {8});
  const LayerDecomposition layers = build_layers(w, 4);
  const PartitionOfUnity pou(layers, 2);
  CHECK(pou.radius() == std::ldexp(1.0, -9));
  std::vector<std::pair<int, Jet>> members;
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int inside = 0;
  for (int t = 0; t < 3000; ++t) {
    const Point p{u(rng), u(rng)};
    const auto s = w.locate(p);
    if (!s) continue;
    ++inside;
    pou.evaluate(p, 2, members);
    double sum = 0.0;
    Jet total(2);
    for (const auto& [g, jet] : members) {
      CHECK(jet.value() >= 0.0);
      CHECK(jet.value() <= 1.0 + 1e-15);
      sum += jet.value();
      total += jet;
      CHECK(pou.value(g, p) == doctest::Approx(jet.value()).epsilon(1e-14));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // Derivatives of the sum vanish.
    for (int d = 1; d <= 2; ++d) {
      for (const MultiIndex& a : multi_indices_of_order(d)) {
        CHECK(std::abs(total.derivative(a)) < 1e-8 * std::pow(1.0 / pou.radius(), d));
      }
    }
    if (!pou.mixed(*s)) {
      REQUIRE(members.size() == 1);
      CHECK(members.front().first == pou.group(*s));
      CHECK(members.front().second.value() == 1.0);
    }
  }
  CHECK(inside > 2000);
  CHECK_THROWS_AS(pou.evaluate({2.0, 2.0}, 0, members), PreconditionError);
}

}  // TEST_SUITE
