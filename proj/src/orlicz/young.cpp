#include "osd/errors.h"
#include "osd/orlicz.h"

#include "../util/params.h"

#include <cmath>
#include <numbers>
#include <sstream>

namespace osd {

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0 && p <= 8.0)) throw InputError("Young exponent p must lie in [1, 8]");
}

std::string with_p(const char* family, double p) {
  std::ostringstream os;
  os << family << ":p=" << p;
  return os.str();
}

}  // namespace

YoungFunction YoungFunction::power(double p) {
  check_exponent(p);
  YoungFunction y;
  y.family_ = YoungFamily::Power;
  y.p_ = p;
  y.doubling_ = std::pow(2.0, p);
  y.name_ = with_p("power", p);
  return y;
}

YoungFunction YoungFunction::power_log(double p) {
  check_exponent(p);
  YoungFunction y;
  y.family_ = YoungFamily::PowerLog;
  y.p_ = p;
  // log(e + 2t) <= log 2 + log(e + t) and log(e + t) >= 1.
  y.doubling_ = std::pow(2.0, p) * (1.0 + std::numbers::ln2);
  y.name_ = with_p("plog", p);
  return y;
}

YoungFunction YoungFunction::llogl() {
  YoungFunction y = power_log(1.0);
  y.name_ = "llogl";
  return y;
}

YoungFunction YoungFunction::custom(std::string name, std::function<double(double)> psi,
                                    std::function<double(double)> density,
                                    double doubling_constant) {
  if (!psi) throw PreconditionError("custom Young function needs an evaluator");
  YoungFunction y;
  y.family_ = YoungFamily::Custom;
  y.name_ = std::move(name);
  y.custom_ = std::move(psi);
  y.custom_density_ = std::move(density);
  y.doubling_ = doubling_constant;
  return y;
}

double YoungFunction::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (family_) {
    case YoungFamily::Power:
      return std::pow(t, p_);
    case YoungFamily::PowerLog:
      return std::pow(t, p_) * std::log(std::numbers::e + t);
    case YoungFamily::Custom:
      return custom_(t);
  }
  return 0.0;
}

double YoungFunction::density(double t) const {
  if (t < 0.0) t = 0.0;
  if (t == 0.0 && family_ != YoungFamily::Custom) return p_ == 1.0 ? 1.0 : 0.0;
  switch (family_) {
    case YoungFamily::Power:
      return p_ * std::pow(t, p_ - 1.0);
    case YoungFamily::PowerLog:
      return p_ * std::pow(t, p_ - 1.0) * std::log(std::numbers::e + t) +
             std::pow(t, p_) / (std::numbers::e + t);
    case YoungFamily::Custom:
      if (!custom_density_) throw PreconditionError("custom Young function has no density");
      return custom_density_(t);
  }
  return 0.0;
}

YoungFunction parse_young(const std::string& spec) {
  const detail::Selector s = detail::parse_selector(spec);
  if (s.family == "power") return YoungFunction::power(s.number("p"));
  if (s.family == "plog") return YoungFunction::power_log(s.number("p"));
  if (s.family == "llogl") return YoungFunction::llogl();
  throw InputError("unknown Young function family '" + s.family + "'");
}

double doubling_constant_estimate(const YoungFunction& psi, double t_min, double t_max,
                                  int samples) {
  if (!(t_min > 0.0 && t_min < t_max)) throw PreconditionError("need 0 < t_min < t_max");
  if (samples < 2) samples = 2;
  const double step = std::log(t_max / t_min) / (samples - 1);
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = t_min * std::exp(step * i);
    const double base = psi(t);
    if (base > 0.0) best = std::max(best, psi(2.0 * t) / base);
  }
  return best;
}

}  // namespace osd
