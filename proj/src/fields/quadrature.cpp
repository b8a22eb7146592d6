#include "osd/errors.h"
#include "osd/quadrature.h"

#include <cmath>
#include <numbers>

namespace osd {

Quadrature::Quadrature(int order) {
  if (order < 1 || order > 64) throw PreconditionError("quadrature order must lie in [1, 64]");
  nodes_.resize(order);
  weights_.resize(order);
  // Newton iteration on P_n from the Tricomi initial guesses.
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes_[order - 1 - i] = x;
    weights_[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

double integrate(const ScalarFn& expr, std::span<const DyadicSquare> region,
                 const Quadrature& quad) {
  double total = 0.0;
  for (const DyadicSquare& q : region) {
    quad.for_each_node(q.box(), [&](Point p, double w) {
      const double v = expr(p);
      if (!std::isfinite(v)) throw NonFiniteError("non-finite integrand value at a quadrature node");
      total += w * v;
    });
  }
  return total;
}

double region_area(std::span<const DyadicSquare> region) {
  double a = 0.0;
  for (const DyadicSquare& q : region) a += q.area();
  return a;
}

}  // namespace osd
