#include "osd/errors.h"
#include "osd/layers.h"
#include "osd/smooth_step.h"

#include <algorithm>
#include <cmath>

namespace osd {

PartitionOfUnity::PartitionOfUnity(const LayerDecomposition& layers, int order)
    : layers_(&layers), order_(order), radius_(std::ldexp(1.0, -layers.n() - 5)) {
  if (order < 0 || order > kMaxOrder) throw PreconditionError("partition order out of range");
  const WhitneyDecomposition& w = layers.whitney();
  mixed_.assign(w.size(), 0);
  for (std::size_t s = 0; s < w.size(); ++s) {
    mixed_[s] = mixed(w.square(s).box(), layers.owner(s)) ? 1 : 0;
  }
}

bool PartitionOfUnity::mixed(const Box& box, int group) const {
  const WhitneyDecomposition& w = layers_->whitney();
  std::vector<std::size_t> near;
  w.query_box(box.expanded(2.0 * radius_), near);
  for (std::size_t s : near) {
    if (layers_->owner(s) != group) return true;
  }
  return false;
}

void PartitionOfUnity::evaluate(Point p, int order, std::vector<std::pair<int, Jet>>& out) const {
  if (order > order_) throw PreconditionError("partition evaluated above its order");
  out.clear();
  const WhitneyDecomposition& w = layers_->whitney();
  thread_local std::vector<std::size_t> near;
  near.clear();
  w.query_box(Box{p.x, p.y, p.x, p.y}.expanded(2.0 * radius_), near);

  for (std::size_t s : near) {
    const DyadicSquare& q = w.square(s);
    const Taylor1 fx = mollified_interval(p.x, q.x0(), q.x1(), radius_, radius_, order);
    if (fx.c[0] == 0.0 && order == 0) continue;
    const Taylor1 fy = mollified_interval(p.y, q.y0(), q.y1(), radius_, radius_, order);
    const Jet bump = Jet::outer(fx, fy);
    const int g = layers_->owner(s);
    auto it = std::find_if(out.begin(), out.end(), [g](const auto& e) { return e.first == g; });
    if (it == out.end()) {
      out.emplace_back(g, bump);
    } else {
      it->second += bump;
    }
  }

  const auto zero = [order](const Jet& j) {
    for (int d = 0; d <= order; ++d) {
      for (int a2 = 0; a2 <= d; ++a2) {
        if (j.coeff(d - a2, a2) != 0.0) return false;
      }
    }
    return true;
  };
  std::erase_if(out, [&](const auto& e) { return zero(e.second); });

  Jet sum(order);
  for (const auto& e : out) sum += e.second;
  if (!(sum.value() > 0.0)) {
    throw PreconditionError("point lies outside the support of the partition of unity");
  }
  if (out.size() == 1) {
    out.front().second = Jet::constant(1.0, order);
    return;
  }
  const Jet inv = sum.reciprocal();
  for (auto& e : out) e.second = e.second * inv;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

Jet PartitionOfUnity::jet(int member, Point p, int order) const {
  std::vector<std::pair<int, Jet>> all;
  evaluate(p, order, all);
  for (const auto& e : all) {
    if (e.first == member) return e.second;
  }
  return Jet(order);
}

double PartitionOfUnity::value(int member, Point p) const { return jet(member, p, 0).value(); }

}  // namespace osd
