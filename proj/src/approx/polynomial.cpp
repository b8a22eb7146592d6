#include "osd/errors.h"
#include "osd/polynomial.h"

#include <algorithm>
#include <cmath>

namespace osd {

Polynomial::Polynomial(int degree) : degree_(degree) {
  if (degree < 0) throw PreconditionError("polynomial degree must be nonnegative");
  c_.assign(Jet::size_for(degree), 0.0);
}

Polynomial Polynomial::from_graded(std::span<const double> coeffs) {
  int d = 0;
  while (Jet::size_for(d) < static_cast<int>(coeffs.size())) ++d;
  Polynomial p(d);
  std::copy(coeffs.begin(), coeffs.end(), p.c_.begin());
  return p;
}

double Polynomial::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > degree_) return 0.0;
  return c_[Jet::index(i, j)];
}

double& Polynomial::coeff(int i, int j) {
  if (i < 0 || j < 0) throw PreconditionError("negative monomial exponent");
  if (i + j > degree_) grow(i + j);
  return c_[Jet::index(i, j)];
}

void Polynomial::grow(int degree) {
  if (degree <= degree_) return;
  degree_ = degree;
  c_.resize(Jet::size_for(degree), 0.0);
}

double Polynomial::operator()(Point p) const {
  double outer = 0.0;
  for (int i = degree_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = degree_ - i; j >= 0; --j) inner = inner * p.y + c_[Jet::index(i, j)];
    outer = outer * p.x + inner;
  }
  return outer;
}

double Polynomial::evaluate_monomials(Point p) const {
  double s = 0.0;
  for (int d = 0; d <= degree_; ++d) {
    for (int j = 0; j <= d; ++j) {
      s += c_[Jet::index(d - j, j)] * std::pow(p.x, d - j) * std::pow(p.y, j);
    }
  }
  return s;
}

Polynomial Polynomial::derivative(MultiIndex a) const {
  Polynomial out(std::max(0, degree_ - a.order()));
  for (int d = a.order(); d <= degree_; ++d) {
    for (int j = a.a2; j <= d - a.a1; ++j) {
      const int i = d - j;
      double f = c_[Jet::index(i, j)];
      for (int t = 0; t < a.a1; ++t) f *= i - t;
      for (int t = 0; t < a.a2; ++t) f *= j - t;
      out.c_[Jet::index(i - a.a1, j - a.a2)] = f;
    }
  }
  return out;
}

Jet Polynomial::jet(Point p, int order) const {
  // Coefficient (a1,a2) of the expansion at p is sum_{i>=a1, j>=a2}
  // c_ij C(i,a1) C(j,a2) px^(i-a1) py^(j-a2).
  Jet out(order);
  for (int d = 0; d <= order; ++d) {
    for (int a2 = 0; a2 <= d; ++a2) {
      const int a1 = d - a2;
      double s = 0.0;
      for (int i = a1; i <= degree_; ++i) {
        for (int j = a2; i + j <= degree_; ++j) {
          const double c = c_[Jet::index(i, j)];
          if (c == 0.0) continue;
          s += c * binomial(i, a1) * binomial(j, a2) * std::pow(p.x, i - a1) *
               std::pow(p.y, j - a2);
        }
      }
      out.coeff(a1, a2) = s;
    }
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  grow(o.degree_);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  grow(o.degree_);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double monomial_moment(int i, int j, const Box& box) {
  const auto prim = [](int e, double a, double b) {
    return (std::pow(b, e + 1) - std::pow(a, e + 1)) / (e + 1);
  };
  return prim(i, box.x0, box.x1) * prim(j, box.y0, box.y1);
}

}  // namespace osd
