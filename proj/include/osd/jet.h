#pragma once

#include <array>
#include <span>
#include <vector>

namespace osd {

/// Highest derivative order carried by any jet.
inline constexpr int kMaxOrder = 6;

struct MultiIndex {
  int a1 = 0;
  int a2 = 0;

  int order() const { return a1 + a2; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// (k,0), (k-1,1), ..., (0,k).
std::vector<MultiIndex> multi_indices_of_order(int k);

double factorial(int n);

/// Taylor coefficients c_m = g^(m)(t)/m! of a univariate function.
struct Taylor1 {
  int order = 0;
  std::array<double, kMaxOrder + 1> c{};

  static Taylor1 constant(double v, int order);
  Taylor1 scaled_argument(double s) const;  // Taylor data of t -> g(s t)
};

Taylor1 operator*(const Taylor1& a, const Taylor1& b);
Taylor1 reciprocal(const Taylor1& a);
Taylor1 exp(const Taylor1& a);

/// Truncated bivariate Taylor expansion of a smooth function at a point:
/// coefficient (a1,a2) equals d^a1_x d^a2_y f / (a1! a2!). Products of jets
/// realise the Leibniz rule, reciprocal() the quotient rule and compose() the
/// chain rule, all exactly up to the jet order.
class Jet {
 public:
  explicit Jet(int order = 0) : order_(order) {}

  static Jet constant(double v, int order);
  /// f(x) g(y) from the univariate expansions of f and g.
  static Jet outer(const Taylor1& fx, const Taylor1& gy);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int a1, int a2) const { return c_[index(a1, a2)]; }
  double& coeff(int a1, int a2) { return c_[index(a1, a2)]; }
  double derivative(MultiIndex a) const;

  /// Same expansion truncated to a lower order.
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  /// this += s * o
  Jet& add_scaled(double s, const Jet& o);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

  Jet reciprocal() const;
  /// g(f) where g_taylor holds g^(m)(f(p))/m!.
  Jet compose(const Taylor1& g_taylor) const;

  static constexpr int index(int a1, int a2) {
    const int d = a1 + a2;
    return d * (d + 1) / 2 + a2;
  }
  static constexpr int size_for(int order) { return (order + 1) * (order + 2) / 2; }

 private:
  int order_ = 0;
  std::array<double, (kMaxOrder + 1) * (kMaxOrder + 2) / 2> c_{};
};

/// Euclidean norm of (d^alpha f)_{|alpha|=k}.
double gradk_magnitude(const Jet& jet, int k);

}  // namespace osd
