#include "osd/errors.h"
#include "osd/fields.h"
#include "osd/polynomial.h"

#include "../util/params.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace osd {

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

class PolynomialModel final : public FieldModel {
 public:
  explicit PolynomialModel(Polynomial p) : p_(std::move(p)) {}
  int max_order() const override { return kMaxOrder; }
  std::string descriptor() const override {
    std::string s = "poly:coeffs=";
    auto g = p_.graded();
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ";" : "") + fmt(g[i]);
    return s;
  }
  Jet jet(Point p, int order) const override { return p_.jet(p, order); }

 private:
  Polynomial p_;
};

// Taylor data of sin(w (t + h)) in h.
Taylor1 sine_taylor(double w, double t, int order) {
  Taylor1 s;
  s.order = order;
  if (w == 0.0) {
    s.c[0] = 1.0;
    return s;
  }
  double wp = 1.0;
  for (int m = 0; m <= order; ++m) {
    s.c[m] = wp * std::sin(w * t + m * std::numbers::pi / 2) / factorial(m);
    wp *= w;
  }
  return s;
}

class TrigModel final : public FieldModel {
 public:
  TrigModel(double fx, double fy) : fx_(fx), fy_(fy) {}
  int max_order() const override { return kMaxOrder; }
  std::string descriptor() const override {
    return "trig:fx=" + fmt(fx_) + ",fy=" + fmt(fy_);
  }
  Jet jet(Point p, int order) const override {
    return Jet::outer(sine_taylor(std::numbers::pi * fx_, p.x, order),
                      sine_taylor(std::numbers::pi * fy_, p.y, order));
  }

 private:
  double fx_, fy_;
};

class RadialPowerModel final : public FieldModel {
 public:
  RadialPowerModel(Point b, double sigma, int order) : b_(b), sigma_(sigma), order_(order) {}
  int max_order() const override { return order_; }
  std::string descriptor() const override {
    return "rpow:bx=" + fmt(b_.x) + ",by=" + fmt(b_.y) + ",sigma=" + fmt(sigma_) +
           ",order=" + std::to_string(order_);
  }
  Jet jet(Point p, int order) const override {
    const double dx = p.x - b_.x;
    const double dy = p.y - b_.y;
    Jet s(order);
    s.coeff(0, 0) = dx * dx + dy * dy;
    if (order >= 1) {
      s.coeff(1, 0) = 2.0 * dx;
      s.coeff(0, 1) = 2.0 * dy;
    }
    if (order >= 2) {
      s.coeff(2, 0) = 1.0;
      s.coeff(0, 2) = 1.0;
    }
    const double s0 = s.value();
    if (!(s0 > 0.0)) throw NonFiniteError("radial power field evaluated at its singular point");
    // t^m at s0 with m = sigma/2: coefficient j is C(m, j) s0^(m - j).
    const double m = 0.5 * sigma_;
    Taylor1 g;
    g.order = order;
    double c = std::pow(s0, m);
    for (int j = 0; j <= order; ++j) {
      g.c[j] = c;
      c *= (m - j) / ((j + 1) * s0);
    }
    return s.compose(g);
  }

 private:
  Point b_;
  double sigma_;
  int order_;
};

class CombinationModel final : public FieldModel {
 public:
  CombinationModel(std::vector<double> w, std::vector<FunctionField> f)
      : w_(std::move(w)), f_(std::move(f)) {}
  int max_order() const override {
    int o = kMaxOrder;
    for (const auto& f : f_) o = std::min(o, f.order());
    return o;
  }
  std::string descriptor() const override {
    std::string s = "sum(";
    for (std::size_t i = 0; i < f_.size(); ++i) {
      s += (i ? " + " : "") + fmt(w_[i]) + "*" + f_[i].descriptor();
    }
    return s + ")";
  }
  Jet jet(Point p, int order) const override {
    Jet out(order);
    for (std::size_t i = 0; i < f_.size(); ++i) out.add_scaled(w_[i], f_[i].jet(p, order));
    return out;
  }

 private:
  std::vector<double> w_;
  std::vector<FunctionField> f_;
};

}  // namespace

FunctionField::FunctionField(std::shared_ptr<const FieldModel> model)
    : model_(std::move(model)) {
  if (!model_) throw PreconditionError("null field model");
}

double FunctionField::value(Point p) const { return model_->jet(p, 0).value(); }

double FunctionField::derivative(MultiIndex a, Point p) const {
  return jet(p, a.order()).derivative(a);
}

Jet FunctionField::jet(Point p, int n) const {
  if (n < 0 || n > order()) {
    throw PreconditionError("derivative order " + std::to_string(n) +
                            " exceeds field order " + std::to_string(order()));
  }
  return model_->jet(p, n);
}

FunctionField polynomial_field(std::vector<double> graded_coeffs) {
  if (graded_coeffs.empty()) graded_coeffs.push_back(0.0);
  return FunctionField(std::make_shared<PolynomialModel>(Polynomial::from_graded(graded_coeffs)));
}

FunctionField trig_field(double fx, double fy) {
  return FunctionField(std::make_shared<TrigModel>(fx, fy));
}

FunctionField make_singular_field(Point b, double sigma, int K) {
  if (K < 0 || K > kMaxOrder) throw PreconditionError("field order out of range");
  if (!std::isfinite(sigma)) throw PreconditionError("sigma must be finite");
  return FunctionField(std::make_shared<RadialPowerModel>(b, sigma, K));
}

FunctionField linear_combination(std::vector<double> weights,
                                 std::vector<FunctionField> fields) {
  if (weights.size() != fields.size() || fields.empty()) {
    throw PreconditionError("linear combination needs matching nonempty lists");
  }
  return FunctionField(std::make_shared<CombinationModel>(std::move(weights), std::move(fields)));
}

FunctionField parse_field(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  if (family == "poly") {
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const std::string key = "coeffs=";
    if (body.rfind(key, 0) != 0) throw InputError("poly field needs coeffs=c00;c10;c01;...");
    std::vector<double> coeffs;
    std::string list = body.substr(key.size());
    std::size_t pos = 0;
    while (true) {
      const auto semi = list.find(';', pos);
      coeffs.push_back(detail::Selector::parse_number(
          list.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos), "coeffs"));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    return polynomial_field(std::move(coeffs));
  }
  const detail::Selector s = detail::parse_selector(spec);
  if (s.family == "trig") {
    if (s.has("freq")) {
      const double f = s.number("freq");
      return trig_field(f, f);
    }
    return trig_field(s.number_or("fx", 1.0), s.number_or("fy", 0.0));
  }
  if (s.family == "rpow") {
    const double order = s.number_or("order", 3);
    if (order != std::floor(order) || order < 0 || order > kMaxOrder) {
      throw InputError("rpow order must be an integer in [0, 6]");
    }
    return make_singular_field({s.number("bx"), s.number("by")}, s.number("sigma"),
                               static_cast<int>(order));
  }
  throw InputError("unknown field family '" + s.family + "'");
}

double gradk_magnitude(const FunctionField& u, int k, Point p) {
  return gradk_magnitude(u.jet(p, k), k);
}

}  // namespace osd
