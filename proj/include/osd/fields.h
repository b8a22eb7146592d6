#pragma once

#include "osd/geometry.h"
#include "osd/jet.h"

#include <memory>
#include <string>
#include <vector>

namespace osd {

/// Implementation interface for smooth fields. jet() returns the Taylor
/// expansion at p up to the requested order (never above max_order()).
class FieldModel {
 public:
  virtual ~FieldModel() = default;
  virtual int max_order() const = 0;
  virtual std::string descriptor() const = 0;
  virtual Jet jet(Point p, int order) const = 0;
};

/// Smooth scalar field with exact derivatives up to order(). Cheap to copy.
class FunctionField {
 public:
  explicit FunctionField(std::shared_ptr<const FieldModel> model);

  int order() const { return model_->max_order(); }
  std::string descriptor() const { return model_->descriptor(); }

  double value(Point p) const;
  double derivative(MultiIndex a, Point p) const;
  /// Throws PreconditionError when order exceeds order().
  Jet jet(Point p, int order) const;

  const FieldModel& model() const { return *model_; }

 private:
  std::shared_ptr<const FieldModel> model_;
};

/// Coefficients in graded monomial order: 1, x, y, x^2, xy, y^2, x^3, ...
FunctionField polynomial_field(std::vector<double> graded_coeffs);

/// sin(pi fx x) sin(pi fy y); a zero frequency drops its factor.
FunctionField trig_field(double fx, double fy);

/// |p - b|^sigma with derivatives to order K.
FunctionField make_singular_field(Point b, double sigma, int K = 3);

/// sum_i weights[i] * fields[i].
FunctionField linear_combination(std::vector<double> weights,
                                 std::vector<FunctionField> fields);

/// "poly:coeffs=c00;c10;c01;...", "trig:freq=f", "trig:fx=a,fy=b",
/// "rpow:bx=..,by=..,sigma=..[,order=K]". Throws InputError.
FunctionField parse_field(const std::string& spec);

/// Euclidean norm of (d^alpha u(p))_{|alpha| = k}. Throws PreconditionError
/// if k exceeds the field order.
double gradk_magnitude(const FunctionField& u, int k, Point p);

}  // namespace osd
