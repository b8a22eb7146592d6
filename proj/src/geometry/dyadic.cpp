#include "osd/geometry.h"

#include <algorithm>
#include <cmath>

namespace osd {

namespace {

struct Span {
  std::int64_t lo;
  std::int64_t hi;
};

// Both intervals of a and b along one axis, expressed at the finer level.
std::pair<Span, Span> aligned(std::int64_t ia, int la, std::int64_t ib, int lb) {
  const int level = std::max(la, lb);
  const int sa = level - la;
  const int sb = level - lb;
  return {{ia << sa, (ia + 1) << sa}, {ib << sb, (ib + 1) << sb}};
}

bool closed_meet(Span a, Span b) { return a.lo <= b.hi && b.lo <= a.hi; }
bool open_meet(Span a, Span b) { return a.lo < b.hi && b.lo < a.hi; }

}  // namespace

double DyadicSquare::side() const { return std::ldexp(1.0, -level); }
double DyadicSquare::x0() const { return std::ldexp(static_cast<double>(ix), -level); }
double DyadicSquare::y0() const { return std::ldexp(static_cast<double>(iy), -level); }
double DyadicSquare::x1() const { return std::ldexp(static_cast<double>(ix + 1), -level); }
double DyadicSquare::y1() const { return std::ldexp(static_cast<double>(iy + 1), -level); }

Point DyadicSquare::center() const {
  return {std::ldexp(2.0 * static_cast<double>(ix) + 1.0, -level - 1),
          std::ldexp(2.0 * static_cast<double>(iy) + 1.0, -level - 1)};
}

DyadicSquare DyadicSquare::ancestor(int at_level) const {
  const int shift = level - at_level;
  return {at_level, ix >> shift, iy >> shift};
}

bool DyadicSquare::contains(const DyadicSquare& other) const {
  return other.level >= level && other.ancestor(level) == *this;
}

bool touches(const DyadicSquare& a, const DyadicSquare& b) {
  const auto [ax, bx] = aligned(a.ix, a.level, b.ix, b.level);
  const auto [ay, by] = aligned(a.iy, a.level, b.iy, b.level);
  return closed_meet(ax, bx) && closed_meet(ay, by);
}

bool interiors_overlap(const DyadicSquare& a, const DyadicSquare& b) {
  const auto [ax, bx] = aligned(a.ix, a.level, b.ix, b.level);
  const auto [ay, by] = aligned(a.iy, a.level, b.iy, b.level);
  return open_meet(ax, bx) && open_meet(ay, by);
}

bool shares_edge(const DyadicSquare& a, const DyadicSquare& b) {
  const auto [ax, bx] = aligned(a.ix, a.level, b.ix, b.level);
  const auto [ay, by] = aligned(a.iy, a.level, b.iy, b.level);
  if (!closed_meet(ax, bx) || !closed_meet(ay, by)) return false;
  const bool ox = open_meet(ax, bx);
  const bool oy = open_meet(ay, by);
  return ox != oy;
}

double side_ratio(const DyadicSquare& a, const DyadicSquare& b) {
  return std::ldexp(1.0, std::abs(a.level - b.level));
}

std::size_t DyadicSquareHash::operator()(const DyadicSquare& q) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(q.level) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(q.ix) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(q.iy) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

}  // namespace osd
