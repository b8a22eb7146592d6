#pragma once

#include "osd/geometry.h"
#include "osd/quadrature.h"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace osd {

enum class YoungFamily { Power, PowerLog, Custom };

/// Convex nondecreasing Psi with Psi(0) = 0, plus its density psi = Psi' and
/// a known doubling constant C with Psi(2t) <= C Psi(t).
class YoungFunction {
 public:
  /// t^p, p in [1, 8].
  static YoungFunction power(double p);
  /// t^p log(e + t), p in [1, 8].
  static YoungFunction power_log(double p);
  /// t log(e + t).
  static YoungFunction llogl();
  /// Caller-supplied evaluator; convexity and doubling are not checked.
  static YoungFunction custom(std::string name, std::function<double(double)> psi,
                              std::function<double(double)> density,
                              double doubling_constant);

  double operator()(double t) const;
  double density(double t) const;
  double doubling_constant() const { return doubling_; }
  YoungFamily family() const { return family_; }
  double exponent() const { return p_; }
  const std::string& descriptor() const { return name_; }

 private:
  YoungFamily family_ = YoungFamily::Power;
  double p_ = 1.0;
  double doubling_ = 2.0;
  std::string name_;
  std::function<double(double)> custom_;
  std::function<double(double)> custom_density_;
};

/// "power:p=1.5", "plog:p=2", "llogl". Throws InputError.
YoungFunction parse_young(const std::string& spec);

/// Quadrature values f(node) with their weights, reusable across the
/// bisection of a Luxemburg norm.
struct NodalSamples {
  std::vector<double> values;
  std::vector<double> weights;

  void add(double value, double weight) {
    values.push_back(value);
    weights.push_back(weight);
  }
};

NodalSamples sample(const ScalarFn& f, std::span<const DyadicSquare> region,
                    const Quadrature& quad);

/// Sum of w Psi(|v| / scale).
double modular(std::span<const double> values, std::span<const double> weights,
               const YoungFunction& psi, double scale = 1.0);
double modular(const NodalSamples& s, const YoungFunction& psi, double scale = 1.0);
double modular(const ScalarFn& f, std::span<const DyadicSquare> region,
               const YoungFunction& psi, const Quadrature& quad);

/// inf{lambda > 0 : modular(f / lambda) <= 1} to relative tolerance 1e-10.
/// Throws ConstructionError if bracketing fails within 200 doublings.
double luxemburg_norm(std::span<const double> values, std::span<const double> weights,
                      const YoungFunction& psi);
double luxemburg_norm(const NodalSamples& s, const YoungFunction& psi);
double luxemburg_norm(const ScalarFn& f, std::span<const DyadicSquare> region,
                      const YoungFunction& psi, const Quadrature& quad);

/// max of Psi(2t)/Psi(t) over a log-spaced grid on [t_min, t_max].
double doubling_constant_estimate(const YoungFunction& psi, double t_min,
                                  double t_max, int samples);

}  // namespace osd
