#include "osd/approx.h"
#include "osd/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace osd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio(double num, double den, double zero_over_zero) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : zero_over_zero;
}

// a - b, or 0 when the difference is rounding noise.
double clean_difference(double a, double b) {
  const double d = a - b;
  return std::abs(d) <= 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b))
             ? 0.0
             : d;
}

bool inside(std::span<const DyadicSquare> region, const DyadicSquare& q) {
  for (const DyadicSquare& s : region) {
    if (s.level < q.level || !q.contains(s)) return false;
  }
  return true;
}

double gradk_modular(const FunctionField& u, std::span<const DyadicSquare> region, int k,
                     const YoungFunction& psi, const Quadrature& quad) {
  return modular([&](Point p) { return gradk_magnitude(u, k, p); }, region, psi, quad);
}

}  // namespace

double norm_equivalence_ratio(const Polynomial& p, std::span<const DyadicSquare> e,
                              std::span<const DyadicSquare> f, const DyadicSquare& q,
                              const YoungFunction& psi, const Quadrature& quad) {
  if (e.empty() || f.empty()) throw PreconditionError("norm equivalence needs nonempty regions");
  if (!inside(e, q) || !inside(f, q)) throw PreconditionError("regions must lie inside Q");
  const ScalarFn eval = [&](Point x) { return p(x); };
  return ratio(modular(eval, e, psi, quad), modular(eval, f, psi, quad), 1.0);
}

double poincare_ratio(const FunctionField& u, const Chain& chain, int k,
                      const YoungFunction& psi, const Quadrature& quad) {
  if (!is_valid_chain(chain)) throw PreconditionError("invalid chain");
  if (k < 1 || k > u.order()) throw PreconditionError("k exceeds field order");
  const std::span<const DyadicSquare> e = chain.squares;
  const Polynomial pe = project(u, e, k, quad);
  const double scale = std::pow(chain.first().side(), k);
  const double num =
      modular([&](Point x) { return std::abs(clean_difference(u.value(x), pe(x))) / scale; }, e,
              psi, quad);
  const double den = gradk_modular(u, e, k, psi, quad);
  return ratio(num, den, 0.0);
}

double chain_difference_ratio(const FunctionField& u, const Chain& chain, MultiIndex alpha,
                              int k, const YoungFunction& psi, const Quadrature& quad) {
  if (!is_valid_chain(chain)) throw PreconditionError("invalid chain");
  if (k < 1 || k > u.order()) throw PreconditionError("k exceeds field order");
  if (alpha.order() > k) throw PreconditionError("|alpha| exceeds k");
  const DyadicSquare& q1 = chain.first();
  const DyadicSquare& qm = chain.last();
  const Polynomial p1 = project(u, std::span(&q1, 1), k, quad);
  const Polynomial pm = project(u, std::span(&qm, 1), k, quad);
  Polynomial diff(std::max(p1.degree(), pm.degree()));
  for (int d = 0; d <= diff.degree(); ++d) {
    for (int j = 0; j <= d; ++j) {
      const double a = d <= p1.degree() ? p1.coeff(d - j, j) : 0.0;
      const double b = d <= pm.degree() ? pm.coeff(d - j, j) : 0.0;
      diff.coeff(d - j, j) = clean_difference(a, b);
    }
  }
  diff = diff.derivative(alpha);
  const double scale = std::pow(q1.side(), k - alpha.order());
  const double num =
      modular([&](Point x) { return diff(x) / scale; }, std::span(&q1, 1), psi, quad);
  const double den = gradk_modular(u, chain.squares, k, psi, quad);
  return ratio(num, den, 0.0);
}

}  // namespace osd
