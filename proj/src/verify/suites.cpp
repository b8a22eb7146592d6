#include "osd/approx.h"
#include "osd/density.h"
#include "osd/errors.h"
#include "osd/fields.h"
#include "osd/layers.h"
#include "osd/orlicz.h"
#include "osd/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace osd {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<YoungFunction> builtin_young() {
  return {YoungFunction::power(1.0), YoungFunction::power(1.5), YoungFunction::power(3.0),
          YoungFunction::power_log(2.0), YoungFunction::llogl()};
}

WhitneyDecomposition decompose(const VerifyConfig& c) {
  const PolygonDomain d = c.domain ? normalize(*c.domain).first : unit_square_domain();
  return whitney_decompose(d, {c.lmax});
}

Polynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Polynomial p(degree);
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) p.coeff(d - j, j) = coef(rng);
  }
  return p;
}

FunctionField as_field(const Polynomial& p) {
  const auto g = p.graded();
  return polynomial_field(std::vector<double>(g.begin(), g.end()));
}

SuiteResult suite_whitney(const VerifyConfig& c) {
  const WhitneyDecomposition w = decompose(c);
  const WhitneyReport r = check_whitney(w);
  SuiteResult s{"whitney", r.ok(), ""};
  s.summary = std::to_string(r.num_squares) + " squares, W2 violations " +
              std::to_string(r.w2_violations) + ", overlaps " + std::to_string(r.overlapping_pairs) +
              ", max touching ratio " + fmt(r.max_touching_ratio) + ", deficit " +
              fmt(100.0 * r.deficit_fraction()) + "%";
  return s;
}

SuiteResult suite_jensen(const VerifyConfig& c) {
  std::mt19937_64 rng(c.seed);
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {5});
  const Quadrature quad(c.quad_order);
  double worst = -1e300;
  int trials = 0;
  for (int t = 0; t < 40; ++t) {
    std::vector<DyadicSquare> region;
    std::bernoulli_distribution pick(0.3);
    for (const DyadicSquare& q : w.squares()) {
      if (pick(rng)) region.push_back(q);
    }
    if (region.empty()) region.push_back(w.square(0));
    NodalSamples samples;
    for (const DyadicSquare& q : region) {
      const Polynomial p = random_polynomial(rng, 3);
      quad.for_each_node(q.box(), [&](Point x, double wt) { samples.add(p(x), wt); });
    }
    const double area = region_area(region);
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < samples.values.size(); ++i) {
      mean_abs += samples.weights[i] * std::abs(samples.values[i]);
    }
    mean_abs /= area;
    for (const YoungFunction& psi : builtin_young()) {
      const double lhs = psi(mean_abs);
      const double rhs = modular(samples, psi) / area;
      worst = std::max(worst, lhs - rhs);
      ++trials;
    }
  }
  return {"jensen", worst <= 1e-9,
          std::to_string(trials) + " trials, max Psi(mean) - mean Psi = " + fmt(worst)};
}

SuiteResult suite_doubling(const VerifyConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> logt(-6.0, 6.0);
  bool ok = true;
  std::string summary;
  for (const YoungFunction& psi : builtin_young()) {
    const double est = doubling_constant_estimate(psi, 1e-3, 1e3, 400);
    ok = ok && est <= psi.doubling_constant() * (1.0 + 1e-12) && psi(0.0) == 0.0;
    for (int i = 0; i < 200; ++i) {
      double s = std::exp(logt(rng));
      double t = std::exp(logt(rng));
      if (s > t) std::swap(s, t);
      const double mid = psi(0.5 * (s + t));
      ok = ok && mid <= 0.5 * (psi(s) + psi(t)) * (1.0 + 1e-12);
      ok = ok && psi(s) <= psi(t);
      ok = ok && psi(s) / s <= psi(t) / t * (1.0 + 1e-12);
    }
    summary += psi.descriptor() + " C~" + fmt(est) + " (bound " + fmt(psi.doubling_constant()) + "); ";
  }
  return {"doubling", ok, summary};
}

SuiteResult suite_projection(const VerifyConfig& c) {
  std::mt19937_64 rng(c.seed);
  const Quadrature quad(c.quad_order);
  const DyadicSquare unit{0, 0, 0};
  double worst_coef = 0.0;
  double worst_moment = 0.0;
  std::uniform_int_distribution<int> level(1, 4);
  for (int k = 1; k <= 3; ++k) {
    for (int t = 0; t < 100; ++t) {
      const Polynomial p = random_polynomial(rng, k - 1);
      const FunctionField u = as_field(p);
      const int lv = level(rng);
      std::uniform_int_distribution<std::int64_t> cell(0, (std::int64_t{1} << lv) - 1);
      const std::vector<DyadicSquare> region{{lv, cell(rng), cell(rng)}};
      const Polynomial q = project(u, region, k, quad);
      for (int d = 0; d < k; ++d) {
        for (int j = 0; j <= d; ++j) worst_coef = std::max(worst_coef, std::abs(q.coeff(d - j, j) - p.coeff(d - j, j)));
      }
      // Moment residuals of a non-polynomial field.
      const FunctionField v = trig_field(1.0 + 0.5 * t / 100.0, 1.0);
      const Polynomial pv = project(v, region, k, quad);
      for (int d = 0; d < k; ++d) {
        for (int j = 0; j <= d; ++j) {
          const MultiIndex a{d - j, j};
          const Polynomial da = pv.derivative(a);
          const double r = integrate([&](Point x) { return v.derivative(a, x) - da(x); }, region, quad);
          worst_moment = std::max(worst_moment, std::abs(r) / region_area(region));
        }
      }
    }
  }
  const Polynomial x2 = project(polynomial_field({0, 0, 0, 1}), std::span(&unit, 1), 2, quad);
  const double oracle = std::max({std::abs(x2.coeff(0, 0) + 1.0 / 6.0), std::abs(x2.coeff(1, 0) - 1.0),
                                  std::abs(x2.coeff(0, 1))});
  const bool ok = worst_coef <= 1e-9 && worst_moment <= 1e-9 && oracle <= 1e-10;
  return {"projection", ok,
          "reproduction " + fmt(worst_coef) + ", moment residual " + fmt(worst_moment) +
              ", x^2 oracle " + fmt(oracle)};
}

SuiteResult suite_poincare(const VerifyConfig& c) {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {c.lmax});
  const Quadrature quad(c.quad_order);
  const FunctionField u = trig_field(1.0, 0.0);
  const YoungFunction psi = YoungFunction::power(1.5);
  const auto chains = layer_chains(w, c.n, c.max_chain);
  double worst = 0.0;
  bool finite = true;
  for (const Chain& ch : chains) {
    const double r = poincare_ratio(u, ch, 1, psi, quad);
    finite = finite && std::isfinite(r);
    worst = std::max(worst, r);
  }
  return {"poincare", finite && !chains.empty(),
          std::to_string(chains.size()) + " chains up to length " + std::to_string(c.max_chain) +
              ", max ratio " + fmt(worst)};
}

SuiteResult suite_lemma24(const VerifyConfig& c) {
  std::mt19937_64 rng(c.seed);
  const Quadrature quad(c.quad_order);
  const YoungFunction psi = YoungFunction::power(1.5);
  const DyadicSquare q{0, 0, 0};
  std::vector<DyadicSquare> cells;
  for (std::int64_t i = 0; i < 4; ++i) {
    for (std::int64_t j = 0; j < 4; ++j) cells.push_back({2, i, j});
  }
  // eta = 1/4: each region takes at least 5 of the 16 cells.
  std::uniform_int_distribution<std::size_t> size(5, cells.size());
  const auto draw = [&] {
    std::vector<DyadicSquare> s = cells;
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(size(rng));
    std::sort(s.begin(), s.end());
    return s;
  };
  bool ok = true;
  std::string summary;
  for (int degree : {1, 2}) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Polynomial p = random_polynomial(rng, degree);
      const auto e = draw();
      const auto f = draw();
      const double r = norm_equivalence_ratio(p, e, f, q, psi, quad);
      ok = ok && std::isfinite(r) &&
           std::abs(norm_equivalence_ratio(p, e, e, q, psi, quad) - 1.0) < 1e-12;
      worst = std::max(worst, r);
    }
    summary += "degree " + std::to_string(degree) + " max ratio " + fmt(worst) + "; ";
  }
  return {"lemma24", ok, summary};
}

SuiteResult suite_chain_diff(const VerifyConfig& c) {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {c.lmax});
  const Quadrature quad(c.quad_order);
  const FunctionField u = trig_field(1.0, 1.0);
  const YoungFunction psi = YoungFunction::power(1.5);
  const auto chains = layer_chains(w, c.n, c.max_chain);
  double worst = 0.0;
  bool finite = true;
  for (const Chain& ch : chains) {
    for (int d = 0; d <= 2; ++d) {
      for (const MultiIndex& a : multi_indices_of_order(d)) {
        const double r = chain_difference_ratio(u, ch, a, 2, psi, quad);
        finite = finite && std::isfinite(r);
        worst = std::max(worst, r);
      }
    }
  }
  return {"chain-diff", finite && !chains.empty(),
          std::to_string(chains.size()) + " chains, max ratio " + fmt(worst)};
}

SuiteResult suite_partition(const VerifyConfig& c) {
  const WhitneyDecomposition w = decompose(c);
  const LayerDecomposition layers = build_layers(w, c.n);
  const PartitionOfUnity pou(layers, 2);
  const double tenth = std::ldexp(1.0, -c.n) / 10.0;
  const Box bb = w.domain().bounding_box();
  std::vector<std::pair<int, Jet>> members;
  std::vector<std::size_t> near;
  double worst_sum = 0.0;
  std::size_t support_violations = 0;
  std::size_t range_violations = 0;
  std::size_t points = 0;
  constexpr int kGrid = 100;
  for (int j = 0; j < kGrid; ++j) {
    for (int i = 0; i < kGrid; ++i) {
      const Point p{bb.x0 + (i + 0.5) * (bb.x1 - bb.x0) / kGrid,
                    bb.y0 + (j + 0.5) * (bb.y1 - bb.y0) / kGrid};
      if (!w.locate(p)) continue;
      ++points;
      pou.evaluate(p, 0, members);
      double sum = 0.0;
      for (const auto& [g, jet] : members) {
        const double v = jet.value();
        sum += v;
        if (v < -1e-15 || v > 1.0 + 1e-15) ++range_violations;
        if (v <= 0.0) continue;
        if (g >= 1) {
          if (!layers.in_expanded(g, p)) ++support_violations;
        } else {
          near.clear();
          w.query_box(Box{p.x, p.y, p.x, p.y}.expanded(tenth), near);
          const bool close = std::any_of(near.begin(), near.end(), [&](std::size_t s) {
            return layers.core().contains(s) && box_distance_sq(w.square(s).box(), p) < tenth * tenth;
          });
          if (!close) ++support_violations;
        }
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }

  // Derivatives against central differences in transition squares.
  std::mt19937_64 rng(c.seed);
  double worst_fd = 0.0;
  const double step = pou.radius() * 1e-4;
  std::size_t fd_points = 0;
  for (std::size_t s = 0; s < w.size() && fd_points < 200; ++s) {
    if (!pou.mixed(s)) continue;
    const Box b = w.square(s).box();
    std::uniform_real_distribution<double> ux(b.x0 + 2 * step, b.x1 - 2 * step);
    std::uniform_real_distribution<double> uy(b.y0 + 2 * step, b.y1 - 2 * step);
    const Point p{ux(rng), uy(rng)};
    if (!w.locate(p + Point{step, step}) || !w.locate(p - Point{step, step}) ||
        !w.locate(p + Point{step, -step}) || !w.locate(p + Point{-step, step})) {
      continue;
    }
    ++fd_points;
    pou.evaluate(p, 1, members);
    for (const auto& [g, jet] : members) {
      const double dx = (pou.value(g, p + Point{step, 0}) - pou.value(g, p - Point{step, 0})) / (2 * step);
      const double dy = (pou.value(g, p + Point{0, step}) - pou.value(g, p - Point{0, step})) / (2 * step);
      const double scale = std::max({1.0, std::abs(jet.coeff(1, 0)), std::abs(jet.coeff(0, 1))});
      worst_fd = std::max({worst_fd, std::abs(dx - jet.coeff(1, 0)) / scale,
                           std::abs(dy - jet.coeff(0, 1)) / scale});
    }
  }
  const bool ok = worst_sum <= 1e-8 && support_violations == 0 && range_violations == 0 &&
                  worst_fd <= 1e-4 && points > 0;
  return {"partition", ok,
          std::to_string(points) + " grid points, max |sum - 1| " + fmt(worst_sum) +
              ", support violations " + std::to_string(support_violations) +
              ", finite-difference mismatch " + fmt(worst_fd)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"whitney", "jensen",  "doubling",   "projection",
                                                 "poincare", "lemma24", "chain-diff", "partition"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& config) {
  static const std::map<std::string, std::function<SuiteResult(const VerifyConfig&)>> suites = {
      {"whitney", suite_whitney},       {"jensen", suite_jensen},
      {"doubling", suite_doubling},     {"projection", suite_projection},
      {"poincare", suite_poincare},     {"lemma24", suite_lemma24},
      {"chain-diff", suite_chain_diff}, {"partition", suite_partition}};
  const auto it = suites.find(name);
  if (it == suites.end()) throw InputError("unknown suite '" + name + "'");
  try {
    return it->second(config);
  } catch (const Error& e) {
    return {name, false, std::string("error: ") + e.what()};
  }
}

PolygonDomain unit_square_domain() {
  return PolygonDomain({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

std::vector<Chain> layer_chains(const WhitneyDecomposition& w, int n, std::size_t max_len) {
  const LayerDecomposition layers = build_layers(w, n);
  std::set<std::vector<std::size_t>> seen;
  std::vector<Chain> out;
  const auto add = [&](std::vector<std::size_t> ids) {
    if (!seen.insert(ids).second) return;
    Chain c;
    for (std::size_t s : ids) c.squares.push_back(w.square(s));
    out.push_back(std::move(c));
  };
  for (const AnchorChain& ac : layers.chains()) {
    const auto& ids = ac.squares;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a; b < ids.size() && b - a + 1 <= max_len; ++b) {
        std::vector<std::size_t> sub(ids.begin() + a, ids.begin() + b + 1);
        add(sub);
        std::reverse(sub.begin(), sub.end());
        add(std::move(sub));
      }
    }
  }
  return out;
}

}  // namespace osd
