#include "osd/errors.h"
#include "osd/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace osd {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point a, Point b, Point p) {
  if (cross(a, b, p) != 0.0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

double point_segment_distance_sq(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  return distance_sq(p, a + t * ab);
}

// Liang-Barsky clip of P(t) = a + t (b - a), t in [0,1], against a box.
// With strict=true the box is open.
bool clip_segment(Point a, Point b, const Box& q, bool strict) {
  double lo = strict ? -std::numeric_limits<double>::infinity() : 0.0;
  double hi = strict ? std::numeric_limits<double>::infinity() : 1.0;
  const double start[2] = {a.x, a.y};
  const double delta[2] = {b.x - a.x, b.y - a.y};
  const double bmin[2] = {q.x0, q.y0};
  const double bmax[2] = {q.x1, q.y1};
  for (int axis = 0; axis < 2; ++axis) {
    if (delta[axis] == 0.0) {
      const bool inside = strict ? (bmin[axis] < start[axis] &&
                                    start[axis] < bmax[axis])
                                 : (bmin[axis] <= start[axis] &&
                                    start[axis] <= bmax[axis]);
      if (!inside) return false;
      continue;
    }
    double t1 = (bmin[axis] - start[axis]) / delta[axis];
    double t2 = (bmax[axis] - start[axis]) / delta[axis];
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
    if (strict ? lo >= hi : lo > hi) return false;
  }
  if (strict) return lo < 1.0 && hi > 0.0;
  return true;
}

}  // namespace

double distance(Point a, Point b) { return std::sqrt(distance_sq(a, b)); }

double distance_sq(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double box_distance_sq(const Box& b, Point p) {
  const double dx = std::max({b.x0 - p.x, 0.0, p.x - b.x1});
  const double dy = std::max({b.y0 - p.y, 0.0, p.y - b.y1});
  return dx * dx + dy * dy;
}

double box_box_distance_sq(const Box& a, const Box& b) {
  const double dx = std::max({b.x0 - a.x1, 0.0, a.x0 - b.x1});
  const double dy = std::max({b.y0 - a.y1, 0.0, a.y0 - b.y1});
  return dx * dx + dy * dy;
}

PolygonDomain::PolygonDomain(std::vector<Point> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InputError("domain needs at least three vertices");
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("domain vertex is not finite");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vertex(i) == vertex(i + 1)) {
      throw InputError("domain has a repeated vertex at index " +
                       std::to_string(i));
    }
  }
  // Simplicity: non-adjacent edges must not meet; adjacent edges must not
  // fold back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = edge(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto [c, d] = edge(j);
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        const Point shared = (j == i + 1) ? b : a;
        const Point u = (j == i + 1) ? a : b;
        const Point v = (j == i + 1) ? d : c;
        if (cross(shared, u, v) == 0.0 &&
            (u.x - shared.x) * (v.x - shared.x) +
                    (u.y - shared.y) * (v.y - shared.y) > 0.0) {
          throw InputError("domain edges " + std::to_string(i) + " and " +
                           std::to_string(j) + " overlap");
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) {
        throw InputError("domain is not simple: edges " + std::to_string(i) +
                         " and " + std::to_string(j) + " intersect");
      }
    }
  }
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = edge(i);
    twice_area += a.x * b.y - b.x * a.y;
  }
  area_ = 0.5 * twice_area;
  if (!(area_ > 0.0)) {
    throw InputError("domain vertices must be counterclockwise");
  }
  bbox_ = {vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
  for (const Point& p : vertices_) {
    bbox_.x0 = std::min(bbox_.x0, p.x);
    bbox_.y0 = std::min(bbox_.y0, p.y);
    bbox_.x1 = std::max(bbox_.x1, p.x);
    bbox_.y1 = std::max(bbox_.y1, p.y);
    for (const Point& q : vertices_) diameter_ = std::max(diameter_, distance(p, q));
  }
}

double PolygonDomain::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto [a, b] = edge(i);
    total += distance(a, b);
  }
  return total;
}

bool PolygonDomain::on_boundary(Point p) const {
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto [a, b] = edge(i);
    if (on_segment(a, b, p)) return true;
  }
  return false;
}

bool PolygonDomain::contains(Point p) const {
  if (!bbox_.contains(p)) return false;
  if (on_boundary(p)) return false;
  bool inside = false;
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto [a, b] = edge(i);
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double PolygonDomain::boundary_distance(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto [a, b] = edge(i);
    best = std::min(best, point_segment_distance_sq(p, a, b));
  }
  return std::sqrt(best);
}

bool PolygonDomain::segment_meets_boundary(Point a, Point b) const {
  for (std::size_t i = 0; i < num_edges(); ++i) {
    const auto [c, d] = edge(i);
    if (segments_intersect(a, b, c, d)) return true;
  }
  return false;
}

PolygonDomain PolygonDomain::transformed(const Normalization& t) const {
  std::vector<Point> out;
  out.reserve(vertices_.size());
  for (const Point& p : vertices_) out.push_back(t.apply(p));
  return PolygonDomain(std::move(out));
}

std::pair<PolygonDomain, Normalization> normalize(const PolygonDomain& domain) {
  const Box b = domain.bounding_box();
  if (b.x0 >= 0.0 && b.y0 >= 0.0 && b.x1 <= 1.0 && b.y1 <= 1.0) {
    return {domain, Normalization{}};
  }
  const double extent = std::max(b.x1 - b.x0, b.y1 - b.y0);
  Normalization t;
  t.factor = 0.5 / extent;
  const Point center{0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)};
  t.offset = Point{0.5, 0.5} - t.factor * center;
  return {domain.transformed(t), t};
}

bool contains_point(const PolygonDomain& domain, Point p) {
  return domain.contains(p);
}

bool segment_meets_open_box(Point a, Point b, const Box& q) {
  return clip_segment(a, b, q, true);
}

double segment_square_distance_sq(Point a, Point b, const Box& q) {
  if (clip_segment(a, b, q, false)) return 0.0;
  double best = std::min(box_distance_sq(q, a), box_distance_sq(q, b));
  const Point corners[4] = {{q.x0, q.y0}, {q.x1, q.y0}, {q.x1, q.y1}, {q.x0, q.y1}};
  for (const Point& c : corners) best = std::min(best, point_segment_distance_sq(c, a, b));
  return best;
}

double square_boundary_distance(const PolygonDomain& domain,
                                const DyadicSquare& q) {
  const Box box = q.box();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < domain.num_edges(); ++i) {
    const auto [a, b] = domain.edge(i);
    if (segment_meets_open_box(a, b, box)) {
      throw NotContainedError("square crosses the domain boundary");
    }
    best = std::min(best, segment_square_distance_sq(a, b, box));
  }
  if (!domain.contains(q.center())) {
    throw NotContainedError("square lies outside the domain");
  }
  return std::sqrt(best);
}

}  // namespace osd
