#include "osd/errors.h"
#include "osd/jet.h"

#include <algorithm>
#include <cmath>

namespace osd {

std::vector<MultiIndex> multi_indices_of_order(int k) {
  std::vector<MultiIndex> out;
  for (int a2 = 0; a2 <= k; ++a2) out.push_back({k - a2, a2});
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Taylor1 Taylor1::constant(double v, int order) {
  Taylor1 t;
  t.order = order;
  t.c[0] = v;
  return t;
}

Taylor1 Taylor1::scaled_argument(double s) const {
  Taylor1 t = *this;
  double f = 1.0;
  for (int m = 0; m <= order; ++m) {
    t.c[m] *= f;
    f *= s;
  }
  return t;
}

Taylor1 operator*(const Taylor1& a, const Taylor1& b) {
  Taylor1 r;
  r.order = std::min(a.order, b.order);
  for (int m = 0; m <= r.order; ++m) {
    double s = 0.0;
    for (int j = 0; j <= m; ++j) s += a.c[j] * b.c[m - j];
    r.c[m] = s;
  }
  return r;
}

Taylor1 reciprocal(const Taylor1& a) {
  Taylor1 r;
  r.order = a.order;
  r.c[0] = 1.0 / a.c[0];
  for (int m = 1; m <= a.order; ++m) {
    double s = 0.0;
    for (int j = 1; j <= m; ++j) s += a.c[j] * r.c[m - j];
    r.c[m] = -s * r.c[0];
  }
  return r;
}

Taylor1 exp(const Taylor1& a) {
  // (e^a)' = a' e^a, so m r_m = sum_j j a_j r_{m-j}.
  Taylor1 r;
  r.order = a.order;
  r.c[0] = std::exp(a.c[0]);
  for (int m = 1; m <= a.order; ++m) {
    double s = 0.0;
    for (int j = 1; j <= m; ++j) s += j * a.c[j] * r.c[m - j];
    r.c[m] = s / m;
  }
  return r;
}

Jet Jet::constant(double v, int order) {
  Jet j(order);
  j.c_[0] = v;
  return j;
}

Jet Jet::outer(const Taylor1& fx, const Taylor1& gy) {
  Jet j(std::min(fx.order, gy.order));
  for (int d = 0; d <= j.order_; ++d) {
    for (int a2 = 0; a2 <= d; ++a2) j.c_[index(d - a2, a2)] = fx.c[d - a2] * gy.c[a2];
  }
  return j;
}

double Jet::derivative(MultiIndex a) const {
  if (a.order() > order_) throw PreconditionError("derivative order exceeds jet order");
  return coeff(a.a1, a.a2) * factorial(a.a1) * factorial(a.a2);
}

Jet Jet::truncated(int order) const {
  Jet j(std::min(order, order_));
  std::copy_n(c_.begin(), size_for(j.order_), j.c_.begin());
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < size_for(order_); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < size_for(order_); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (int i = 0; i < size_for(order_); ++i) c_[i] *= s;
  return *this;
}

Jet& Jet::add_scaled(double s, const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < size_for(order_); ++i) c_[i] += s * o.c_[i];
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(std::min(a.order_, b.order_));
  for (int d = 0; d <= r.order_; ++d) {
    for (int g2 = 0; g2 <= d; ++g2) {
      const int g1 = d - g2;
      double s = 0.0;
      for (int b1 = 0; b1 <= g1; ++b1) {
        for (int b2 = 0; b2 <= g2; ++b2) {
          s += a.c_[Jet::index(b1, b2)] * b.c_[Jet::index(g1 - b1, g2 - b2)];
        }
      }
      r.c_[Jet::index(g1, g2)] = s;
    }
  }
  return r;
}

Jet Jet::reciprocal() const {
  if (c_[0] == 0.0) throw PreconditionError("reciprocal of a jet with zero value");
  Jet r(order_);
  const double inv = 1.0 / c_[0];
  r.c_[0] = inv;
  for (int d = 1; d <= order_; ++d) {
    for (int g2 = 0; g2 <= d; ++g2) {
      const int g1 = d - g2;
      double s = 0.0;
      for (int b1 = 0; b1 <= g1; ++b1) {
        for (int b2 = 0; b2 <= g2; ++b2) {
          if (b1 == 0 && b2 == 0) continue;
          s += c_[index(b1, b2)] * r.c_[index(g1 - b1, g2 - b2)];
        }
      }
      r.c_[index(g1, g2)] = -s * inv;
    }
  }
  return r;
}

Jet Jet::compose(const Taylor1& g) const {
  const int order = std::min(order_, g.order);
  Jet delta = truncated(order);
  delta.c_[0] = 0.0;
  Jet result = Jet::constant(g.c[0], order);
  Jet power = Jet::constant(1.0, order);
  for (int m = 1; m <= order; ++m) {
    power = power * delta;
    result.add_scaled(g.c[m], power);
  }
  return result;
}

double gradk_magnitude(const Jet& jet, int k) {
  double s = 0.0;
  for (const MultiIndex& a : multi_indices_of_order(k)) {
    const double v = jet.derivative(a);
    s += v * v;
  }
  return std::sqrt(s);
}

}  // namespace osd
