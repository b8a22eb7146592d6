#include "osd/approx.h"
#include "osd/errors.h"

#include <cmath>
#include <vector>

namespace osd {

Polynomial project(const FunctionField& u, std::span<const DyadicSquare> region, int k,
                   const Quadrature& quad) {
  if (region.empty()) throw PreconditionError("projection region is empty");
  if (k < 1 || k > u.order() + 1) throw PreconditionError("projection order k out of range");
  const int d = k - 1;
  if (d > kMaxOrder) throw PreconditionError("projection degree exceeds the supported order");

  // rhs[index(a)] = int_E d^a u for |a| <= d.
  std::vector<double> rhs(Jet::size_for(d), 0.0);
  double area = 0.0;
  for (const DyadicSquare& q : region) {
    area += q.area();
    quad.for_each_node(q.box(), [&](Point p, double w) {
      const Jet j = u.jet(p, d);
      for (int g = 0; g <= d; ++g) {
        for (int a2 = 0; a2 <= g; ++a2) {
          const double v = j.derivative({g - a2, a2});
          if (!std::isfinite(v)) throw NonFiniteError("non-finite field derivative in projection");
          rhs[Jet::index(g - a2, a2)] += w * v;
        }
      }
    });
  }
  if (!(area > 0.0)) throw PreconditionError("projection region has zero area");

  std::vector<double> moments(Jet::size_for(d), 0.0);
  for (const DyadicSquare& q : region) {
    for (int g = 0; g <= d; ++g) {
      for (int a2 = 0; a2 <= g; ++a2) moments[Jet::index(g - a2, a2)] += monomial_moment(g - a2, a2, q.box());
    }
  }

  // int_E d^a P = sum_{b >= a} c_b b!/(b-a)! M_{b-a}; the b = a term is
  // c_a a! |E|, so solving from the top degree down is a back-substitution.
  Polynomial p(d);
  for (int g = d; g >= 0; --g) {
    for (int a2 = 0; a2 <= g; ++a2) {
      const int a1 = g - a2;
      double s = rhs[Jet::index(a1, a2)];
      for (int h = g + 1; h <= d; ++h) {
        for (int b2 = a2; b2 <= h - a1; ++b2) {
          const int b1 = h - b2;
          const double falling = factorial(b1) / factorial(b1 - a1) * factorial(b2) / factorial(b2 - a2);
          s -= p.coeff(b1, b2) * falling * moments[Jet::index(b1 - a1, b2 - a2)];
        }
      }
      p.coeff(a1, a2) = s / (factorial(a1) * factorial(a2) * area);
    }
  }
  return p;
}

}  // namespace osd
