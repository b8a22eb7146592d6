#include "osd/density.h"
#include "osd/errors.h"
#include "osd/smooth_step.h"

#include <cmath>
#include <sstream>

namespace osd {

namespace {

// c(s) for s >= 0: identity up to 1, then c' = 1 - S(s - 1) flattens it to
// the constant 3/2 from s = 2 on.
Taylor1 unit_clamp_taylor(double s, int order) {
  Taylor1 out;
  out.order = order;
  out.c[0] = s - smooth_step_integral(s - 1.0);
  if (order == 0) return out;
  const Taylor1 step = smooth_step_taylor(s - 1.0, order - 1);
  for (int m = 1; m <= order; ++m) {
    const double slope = (m == 1 ? 1.0 : 0.0) - step.c[m - 1];
    out.c[m] = slope / m;
  }
  return out;
}

class TruncatedModel final : public FieldModel {
 public:
  TruncatedModel(FunctionField u, double M) : u_(std::move(u)), m_(M) {}
  int max_order() const override { return u_.order(); }
  std::string descriptor() const override {
    std::ostringstream os;
    os.precision(17);
    os << "truncate(" << u_.descriptor() << ", M=" << m_ << ")";
    return os.str();
  }
  Jet jet(Point p, int order) const override {
    const Jet inner = u_.jet(p, order);
    return inner.compose(clamp_taylor(inner.value(), m_, order));
  }

 private:
  FunctionField u_;
  double m_;
};

}  // namespace

Taylor1 clamp_taylor(double t, double M, int order) {
  if (!(M > 0.0)) throw PreconditionError("truncation level M must be positive");
  const double s = t / M;
  Taylor1 c = unit_clamp_taylor(std::abs(s), order);
  if (s < 0.0) {
    // c is odd: c(s + h) = -c(|s| - h).
    for (int m = 0; m <= order; ++m) c.c[m] = (m % 2 == 0 ? -1.0 : 1.0) * c.c[m];
  }
  c = c.scaled_argument(1.0 / M);
  for (int m = 0; m <= order; ++m) c.c[m] *= M;
  return c;
}

FunctionField truncate(const FunctionField& u, double M) {
  if (u.order() < 1) throw PreconditionError("truncation needs a field with first derivatives");
  if (!(M > 0.0) || !std::isfinite(M)) throw PreconditionError("truncation level M must be positive");
  return FunctionField(std::make_shared<TruncatedModel>(u, M));
}

double truncation_error(const FunctionField& u, double M, std::span<const DyadicSquare> region,
                        const YoungFunction& psi, const Quadrature& quad) {
  const FunctionField t = truncate(u, M);
  return modular(
      [&](Point p) {
        const Jet a = t.jet(p, 1);
        const Jet b = u.jet(p, 1);
        return std::hypot(a.coeff(1, 0) - b.coeff(1, 0), a.coeff(0, 1) - b.coeff(0, 1));
      },
      region, psi, quad);
}

}  // namespace osd
