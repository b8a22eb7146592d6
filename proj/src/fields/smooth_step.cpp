#include "osd/errors.h"
#include "osd/quadrature.h"
#include "osd/smooth_step.h"

#include <cmath>

namespace osd {

namespace {

// Below this argument exp(-1/t) is under 1e-304 and every Taylor coefficient
// of S is zero to double precision.
constexpr double kFlat = 1.0 / 700.0;

// Taylor data of exp(-1/(c + sign*h)) at h = 0, c > 0.
Taylor1 flat_exp_taylor(double c, double sign, int order) {
  Taylor1 g;
  g.order = order;
  double pw = -1.0 / c;
  for (int m = 0; m <= order; ++m) {
    g.c[m] = pw;
    pw *= -sign / c;
  }
  return exp(g);
}

}  // namespace

double smooth_step(double t) {
  if (t <= kFlat) return 0.0;
  if (t >= 1.0 - kFlat) return 1.0;
  const double f = std::exp(-1.0 / t);
  const double g = std::exp(-1.0 / (1.0 - t));
  return f / (f + g);
}

Taylor1 smooth_step_taylor(double t, int order) {
  if (t <= kFlat) return Taylor1::constant(0.0, order);
  if (t >= 1.0 - kFlat) return Taylor1::constant(1.0, order);
  const Taylor1 f = flat_exp_taylor(t, 1.0, order);
  const Taylor1 g = flat_exp_taylor(1.0 - t, -1.0, order);
  Taylor1 sum = f;
  for (int m = 0; m <= order; ++m) sum.c[m] += g.c[m];
  return f * reciprocal(sum);
}

double smooth_step_integral(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 0.5 + (t - 1.0);
  static const Quadrature rule(16);
  constexpr int kPanels = 32;
  const double h = t / kPanels;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < rule.order(); ++i) {
      total += rule.weights()[i] * 0.5 * h * smooth_step(mid + 0.5 * h * rule.nodes()[i]);
    }
  }
  return total;
}

Taylor1 mollified_interval(double x, double a, double b, double margin,
                           double radius, int order) {
  if (!(radius > 0.0)) throw PreconditionError("mollifier radius must be positive");
  const double scale = 1.0 / (2.0 * radius);
  const Taylor1 rise =
      smooth_step_taylor((x - a + margin + radius) * scale, order).scaled_argument(scale);
  const Taylor1 fall =
      smooth_step_taylor((x - b - margin + radius) * scale, order).scaled_argument(scale);
  Taylor1 out = rise;
  for (int m = 0; m <= order; ++m) out.c[m] -= fall.c[m];
  return out;
}

}  // namespace osd
