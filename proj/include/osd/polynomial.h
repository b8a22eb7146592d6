#pragma once

#include "osd/geometry.h"
#include "osd/jet.h"

#include <span>
#include <vector>

namespace osd {

/// Bivariate polynomial sum c_ij x^i y^j with i + j <= degree(). Coefficients
/// are stored in graded order 1, x, y, x^2, xy, y^2, ...
class Polynomial {
 public:
  explicit Polynomial(int degree = 0);
  static Polynomial from_graded(std::span<const double> coeffs);

  int degree() const { return degree_; }
  double coeff(int i, int j) const;
  double& coeff(int i, int j);
  std::span<const double> graded() const { return c_; }

  /// Nested Horner evaluation.
  double operator()(Point p) const;
  /// Plain monomial sum, kept as a reference for the Horner path.
  double evaluate_monomials(Point p) const;

  Polynomial derivative(MultiIndex a) const;
  Jet jet(Point p, int order) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

 private:
  void grow(int degree);

  int degree_ = 0;
  std::vector<double> c_;
};

double binomial(int n, int k);

/// Closed-form integral of x^i y^j over a box.
double monomial_moment(int i, int j, const Box& box);

}  // namespace osd
