#include "osd/errors.h"
#include "osd/orlicz.h"

#include <algorithm>
#include <cmath>

namespace osd {

NodalSamples sample(const ScalarFn& f, std::span<const DyadicSquare> region,
                    const Quadrature& quad) {
  NodalSamples s;
  s.values.reserve(region.size() * quad.order() * quad.order());
  s.weights.reserve(s.values.capacity());
  for (const DyadicSquare& q : region) {
    quad.for_each_node(q.box(), [&](Point p, double w) {
      const double v = f(p);
      if (!std::isfinite(v)) throw NonFiniteError("non-finite integrand value at a quadrature node");
      s.add(v, w);
    });
  }
  return s;
}

double modular(std::span<const double> values, std::span<const double> weights,
               const YoungFunction& psi, double scale) {
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += weights[i] * psi(std::abs(values[i]) / scale);
  }
  if (!std::isfinite(total)) throw NonFiniteError("modular overflowed");
  return total;
}

double modular(const NodalSamples& s, const YoungFunction& psi, double scale) {
  return modular(s.values, s.weights, psi, scale);
}

double modular(const ScalarFn& f, std::span<const DyadicSquare> region,
               const YoungFunction& psi, const Quadrature& quad) {
  return modular(sample(f, region, quad), psi);
}

double luxemburg_norm(const NodalSamples& s, const YoungFunction& psi) {
  return luxemburg_norm(s.values, s.weights, psi);
}

double luxemburg_norm(std::span<const double> values, std::span<const double> weights,
                      const YoungFunction& psi) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;

  const auto over = [&](double lambda) {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      total += weights[i] * psi(std::abs(values[i]) / lambda);
    }
    return !(total <= 1.0);  // NaN counts as too small a lambda
  };

  constexpr int kMaxDoublings = 200;
  double lo = peak;
  double hi = peak;
  if (over(peak)) {
    int n = 0;
    while (over(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++n > kMaxDoublings) throw ConstructionError("Luxemburg bracketing failed");
    }
  } else {
    int n = 0;
    while (!over(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++n > kMaxDoublings) throw ConstructionError("Luxemburg bracketing failed");
    }
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (over(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double luxemburg_norm(const ScalarFn& f, std::span<const DyadicSquare> region,
                      const YoungFunction& psi, const Quadrature& quad) {
  return luxemburg_norm(sample(f, region, quad), psi);
}

}  // namespace osd
