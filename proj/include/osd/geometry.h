#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace osd {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

double distance(Point a, Point b);
double distance_sq(Point a, Point b);

/// Axis-aligned closed box [x0,x1] x [y0,y1].
struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  Box expanded(double margin) const {
    return {x0 - margin, y0 - margin, x1 + margin, y1 + margin};
  }
  bool contains(Point p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  bool intersects(const Box& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
};

/// Squared distance from a point to a closed box (0 inside).
double box_distance_sq(const Box& b, Point p);
/// Squared distance between two closed boxes.
double box_box_distance_sq(const Box& a, const Box& b);

// ─────────────────────────────────────────────────────────────────────────
//  Domains
// ─────────────────────────────────────────────────────────────────────────

/// Affine map applied to an input polygon: normalized = factor * p + offset.
struct Normalization {
  double factor = 1.0;
  Point offset{0.0, 0.0};

  Point apply(Point p) const { return factor * p + offset; }
  Point invert(Point q) const { return (1.0 / factor) * (q - offset); }
};

/// Simple counterclockwise polygon. The ring is implicitly closed.
class PolygonDomain {
 public:
  /// Validates the ring: at least three finite vertices, no repeated
  /// consecutive vertex, no self-intersection, positive signed area.
  /// Throws InputError otherwise.
  explicit PolygonDomain(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t num_edges() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  /// Edge i runs from vertex(i) to vertex(i+1).
  std::pair<Point, Point> edge(std::size_t i) const {
    return {vertex(i), vertex(i + 1)};
  }

  double area() const { return area_; }
  double perimeter() const;
  double diameter() const { return diameter_; }
  Box bounding_box() const { return bbox_; }

  /// Strict interior test by the crossing-number rule. Points on an edge are
  /// reported as outside.
  bool contains(Point p) const;
  bool on_boundary(Point p) const;

  /// Euclidean distance from p to the boundary polygon.
  double boundary_distance(Point p) const;

  /// True iff the closed segment [a,b] crosses or touches the boundary.
  bool segment_meets_boundary(Point a, Point b) const;

  PolygonDomain transformed(const Normalization& t) const;

 private:
  std::vector<Point> vertices_;
  double area_ = 0.0;
  double diameter_ = 0.0;
  Box bbox_;
};

/// Leaves a domain already lying in the closed unit square untouched;
/// otherwise scales and translates it into [1/4, 3/4]^2.
std::pair<PolygonDomain, Normalization> normalize(const PolygonDomain& domain);

bool contains_point(const PolygonDomain& domain, Point p);

// ─────────────────────────────────────────────────────────────────────────
//  Dyadic squares
// ─────────────────────────────────────────────────────────────────────────

/// [ix 2^-level, (ix+1) 2^-level] x [iy 2^-level, (iy+1) 2^-level].
/// Ordering is lexicographic in (level, ix, iy).
struct DyadicSquare {
  int level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  double side() const;
  double area() const { return side() * side(); }
  double x0() const;
  double y0() const;
  double x1() const;
  double y1() const;
  Point center() const;
  Box box() const { return {x0(), y0(), x1(), y1()}; }

  DyadicSquare parent() const { return {level - 1, ix >> 1, iy >> 1}; }
  /// Quadrant q in 0..3, bit 0 selects +x, bit 1 selects +y.
  DyadicSquare child(int q) const {
    return {level + 1, 2 * ix + (q & 1), 2 * iy + ((q >> 1) & 1)};
  }
  /// Ancestor at a coarser level (level_up <= level).
  DyadicSquare ancestor(int at_level) const;
  bool contains(const DyadicSquare& other) const;

  auto operator<=>(const DyadicSquare&) const = default;
};

/// Closed squares intersect (shared edge or corner counts).
bool touches(const DyadicSquare& a, const DyadicSquare& b);
/// Closed squares share a boundary segment of positive length.
bool shares_edge(const DyadicSquare& a, const DyadicSquare& b);
/// Open interiors intersect.
bool interiors_overlap(const DyadicSquare& a, const DyadicSquare& b);
/// max(l(a)/l(b), l(b)/l(a)), exact power of two.
double side_ratio(const DyadicSquare& a, const DyadicSquare& b);

struct DyadicSquareHash {
  std::size_t operator()(const DyadicSquare& q) const noexcept;
};

/// Squared distance between the closed square and the closed segment [a,b].
double segment_square_distance_sq(Point a, Point b, const Box& q);
/// True iff the segment meets the open interior of the box.
bool segment_meets_open_box(Point a, Point b, const Box& q);

/// dist(q, complement of domain). Throws NotContainedError when q is not
/// inside the closed domain; returns 0 when q only touches the boundary.
double square_boundary_distance(const PolygonDomain& domain,
                                const DyadicSquare& q);

// ─────────────────────────────────────────────────────────────────────────
//  Whitney decomposition
// ─────────────────────────────────────────────────────────────────────────

struct WhitneyOptions {
  int max_level = 10;
};

/// Maximal dyadic squares Q inside the domain with dist(Q, complement) >
/// diam(Q), found by refining the unit square down to max_level. The set is
/// immutable; queries are const and safe to share between threads.
class WhitneyDecomposition {
 public:
  const PolygonDomain& domain() const { return domain_; }
  int max_level() const { return max_level_; }

  /// Squares sorted by (level, ix, iy); indices below refer to this order.
  std::span<const DyadicSquare> squares() const { return squares_; }
  const DyadicSquare& square(std::size_t i) const { return squares_[i]; }
  std::size_t size() const { return squares_.size(); }

  /// Index of the root square Q0 (largest side, lexicographically first).
  std::size_t root() const { return root_; }

  /// Squares whose closed sets meet square i, ascending index order.
  std::span<const std::size_t> neighbors(std::size_t i) const;

  std::optional<std::size_t> index_of(const DyadicSquare& q) const;

  /// Square containing p (first found when p lies on a shared edge).
  std::optional<std::size_t> locate(Point p) const;

  /// Appends every square whose closed set meets the closed box.
  void query_box(const Box& box, std::vector<std::size_t>& out) const;

  double covered_area() const { return covered_area_; }
  /// dist(Q, complement) for square i, cached from construction.
  double boundary_distance(std::size_t i) const { return distances_[i]; }

 private:
  friend WhitneyDecomposition whitney_decompose(const PolygonDomain&,
                                                const WhitneyOptions&);

  struct Node {
    std::array<std::int32_t, 4> child{-1, -1, -1, -1};
    std::int32_t leaf = -1;
  };

  explicit WhitneyDecomposition(PolygonDomain domain)
      : domain_(std::move(domain)) {}

  std::int32_t build_node(const DyadicSquare& q,
                          std::vector<std::pair<DyadicSquare, std::int32_t>>&
                              accepted,
                          std::vector<double>& accepted_dist);
  void collect_touching(std::int32_t node, const DyadicSquare& at,
                        const DyadicSquare& target,
                        std::vector<std::size_t>& out) const;
  void query_node(std::int32_t node, const DyadicSquare& at, const Box& box,
                  std::vector<std::size_t>& out) const;
  /// Deepest node on the path to q, with the square it represents.
  std::pair<std::int32_t, DyadicSquare> descend(const DyadicSquare& q) const;

  PolygonDomain domain_;
  int max_level_ = 0;
  std::vector<Node> nodes_;
  std::vector<DyadicSquare> squares_;
  std::vector<double> distances_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<std::size_t> adjacency_;
  std::size_t root_ = 0;
  double covered_area_ = 0.0;
};

/// Throws ConstructionError if no square is accepted by max_level, and
/// PreconditionError if the domain leaves the closed unit square.
WhitneyDecomposition whitney_decompose(const PolygonDomain& domain,
                                       const WhitneyOptions& options = {});

struct WhitneyReport {
  std::size_t num_squares = 0;
  std::size_t w2_violations = 0;   // l(Q) < dist <= 3 sqrt2 l(Q) fails
  double max_dist_over_side = 0.0; // max dist(Q,c)/l(Q)
  double min_dist_over_side = 0.0;
  std::size_t overlapping_pairs = 0;
  double max_touching_ratio = 1.0;
  bool adjacency_symmetric = true;
  double covered_area = 0.0;
  double domain_area = 0.0;

  double deficit_fraction() const {
    return domain_area > 0 ? (domain_area - covered_area) / domain_area : 0.0;
  }
  bool ok() const {
    return w2_violations == 0 && overlapping_pairs == 0 &&
           max_touching_ratio <= 2.0 && adjacency_symmetric &&
           covered_area <= domain_area * (1.0 + 1e-12);
  }
};

/// Checks (W1)-(W4) on a decomposition; distances use tolerance 1e-12.
WhitneyReport check_whitney(const WhitneyDecomposition& w);

// ─────────────────────────────────────────────────────────────────────────
//  Chains
// ─────────────────────────────────────────────────────────────────────────

struct Chain {
  std::vector<DyadicSquare> squares;

  std::size_t length() const { return squares.size(); }
  const DyadicSquare& first() const { return squares.front(); }
  const DyadicSquare& last() const { return squares.back(); }
};

/// Consecutive squares touch and have side ratio in [1/4, 4].
bool is_valid_chain(const Chain& chain);

/// Shortest chain from a to b by breadth-first search over touching squares
/// with side ratio in [1/4, 4]; ties resolve toward lexicographically smaller
/// squares. Throws UnreachableError.
Chain find_chain(const WhitneyDecomposition& w, const DyadicSquare& a,
                 const DyadicSquare& b);

/// Index-based variant used by the layer construction.
std::vector<std::size_t> find_chain_indices(const WhitneyDecomposition& w,
                                            std::size_t a, std::size_t b);

}  // namespace osd
