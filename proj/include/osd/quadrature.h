#pragma once

#include "osd/geometry.h"

#include <functional>
#include <span>
#include <vector>

namespace osd {

using ScalarFn = std::function<double(Point)>;

/// Tensor Gauss-Legendre rule, `order` nodes per axis, mapped onto squares.
/// Exact for polynomials of degree <= 2*order-1 in each variable; nodes are
/// strictly interior, so they never touch the domain boundary.
class Quadrature {
 public:
  explicit Quadrature(int order = 8);

  int order() const { return static_cast<int>(nodes_.size()); }
  /// Reference nodes and weights on [-1, 1].
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  /// Calls f(point, weight) for every node of the rule mapped onto box.
  template <class F>
  void for_each_node(const Box& box, F&& f) const {
    const double hx = 0.5 * (box.x1 - box.x0);
    const double hy = 0.5 * (box.y1 - box.y0);
    const double cx = 0.5 * (box.x0 + box.x1);
    const double cy = 0.5 * (box.y0 + box.y1);
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      const double y = cy + hy * nodes_[j];
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        f(Point{cx + hx * nodes_[i], y}, weights_[i] * weights_[j] * hx * hy);
      }
    }
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Sum over squares of the tensor rule applied to expr. Throws
/// NonFiniteError when a node value is NaN or infinite.
double integrate(const ScalarFn& expr, std::span<const DyadicSquare> region,
                 const Quadrature& quad);

double region_area(std::span<const DyadicSquare> region);

}  // namespace osd
