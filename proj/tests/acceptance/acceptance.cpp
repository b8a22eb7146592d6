// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "osd/approx.h"
#include "osd/density.h"
#include "osd/errors.h"
#include "osd/io.h"
#include "osd/layers.h"
#include "osd/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace osd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string data(const char* name) { return std::string(OSD_DATA_DIR) + "/" + name; }

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_whitney() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const char* name : {"unit_square.json", "l_shape.json", "comb.json"}) {
    const WhitneyDecomposition w = whitney_decompose(normalize(read_domain(data(name))).first, {10});
    const WhitneyReport r = check_whitney(w);
    const bool pass = r.ok() && r.deficit_fraction() < 0.01;
    ok = ok && pass;
    detail += std::string(name) + ": " + std::to_string(r.num_squares) + " squares, dist/side in [" +
              num(r.min_dist_over_side) + ", " + num(r.max_dist_over_side) + "], touching ratio " +
              num(r.max_touching_ratio) + ", deficit " + num(100.0 * r.deficit_fraction()) + "%; ";
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 30.0;
  report(1, ok, detail + num(elapsed) + " s");

  // Informational: the L with a quarter-square notch sits just above 1%.
  const PolygonDomain classic({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
  const WhitneyReport r = check_whitney(whitney_decompose(classic, {10}));
  std::printf("  note: quarter-notch L deficit at depth 10 is %s%% (not an acceptance domain)\n",
              num(100.0 * r.deficit_fraction()).c_str());
}

// ---------------------------------------------------------------------------

Polynomial random_polynomial(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  Polynomial p(degree);
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) p.coeff(d - j, j) = c(rng);
  }
  return p;
}

FunctionField as_field(const Polynomial& p) {
  return polynomial_field(std::vector<double>(p.graded().begin(), p.graded().end()));
}

void criterion_projection() {
  std::mt19937 rng(2);
  const Quadrature quad;
  std::uniform_int_distribution<int> cell(0, 7);
  double worst_coeff = 0.0;
  double worst_moment = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int t = 0; t < 100; ++t) {
      std::vector<DyadicSquare> region{{3, cell(rng), cell(rng)}, {3, cell(rng), cell(rng)}};
      std::sort(region.begin(), region.end());
      region.erase(std::unique(region.begin(), region.end()), region.end());
      const Polynomial p = random_polynomial(rng, k - 1);
      const Polynomial got = project(as_field(p), region, k, quad);
      for (int d = 0; d < k; ++d) {
        for (int j = 0; j <= d; ++j) {
          worst_coeff = std::max(worst_coeff, std::abs(got.coeff(d - j, j) - p.coeff(d - j, j)));
        }
      }
      // Moment conditions for a field outside the polynomial space.
      const FunctionField u = linear_combination({1.0, 1.0}, {as_field(random_polynomial(rng, k + 2)),
                                                              trig_field(1.0, 2.0)});
      const Polynomial q = project(u, region, k, quad);
      for (int d = 0; d < k; ++d) {
        for (const MultiIndex& a : multi_indices_of_order(d)) {
          const Polynomial dq = q.derivative(a);
          const double lhs = integrate([&](Point x) { return dq(x); }, region, quad);
          const double rhs = integrate([&](Point x) { return u.derivative(a, x); }, region, quad);
          worst_moment = std::max(worst_moment, std::abs(lhs - rhs));
        }
      }
    }
  }
  const std::vector<DyadicSquare> unit{{0, 0, 0}};
  const Polynomial x2 = project(polynomial_field({0, 0, 0, 1.0}), unit, 2, quad);
  const double oracle = std::max({std::abs(x2.coeff(0, 0) + 1.0 / 6.0), std::abs(x2.coeff(1, 0) - 1.0),
                                  std::abs(x2.coeff(0, 1))});
  const bool ok = worst_coeff <= 1e-9 && worst_moment <= 1e-9 && oracle <= 1e-10;
  report(2, ok, "300 reproductions, max coefficient error " + num(worst_coeff) +
                    ", max moment residual " + num(worst_moment) + ", x^2 oracle error " + num(oracle));
}

// ---------------------------------------------------------------------------

void criterion_chains() {
  const auto t0 = Clock::now();
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {10});
  const Quadrature quad;
  const std::vector<std::pair<std::string, FunctionField>> fields{
      {"sin(pi x)", trig_field(1.0, 0.0)}, {"sin(pi x)sin(pi y)", trig_field(1.0, 1.0)}};
  const std::vector<YoungFunction> psis{YoungFunction::power(1.5), YoungFunction::llogl()};
  // configuration -> per-n maximum
  std::map<std::string, std::vector<double>> maxima;
  bool finite = true;
  std::size_t evaluated = 0;
  for (int n = 4; n <= 7; ++n) {
    const std::vector<Chain> chains = layer_chains(w, n, 10);
    for (const auto& [fname, u] : fields) {
      for (const YoungFunction& psi : psis) {
        for (int k = 1; k <= 2; ++k) {
          const std::string base = fname + ", " + psi.descriptor() + ", k=" + std::to_string(k);
          double poincare = 0.0;
          double diff = 0.0;
          for (const Chain& ch : chains) {
            const double r = poincare_ratio(u, ch, k, psi, quad);
            finite = finite && std::isfinite(r);
            poincare = std::max(poincare, r);
            for (int d = 0; d < k; ++d) {
              for (const MultiIndex& a : multi_indices_of_order(d)) {
                const double s = chain_difference_ratio(u, ch, a, k, psi, quad);
                finite = finite && std::isfinite(s);
                diff = std::max(diff, s);
              }
            }
            ++evaluated;
          }
          maxima["poincare " + base].push_back(poincare);
          maxima["chain-diff " + base].push_back(diff);
        }
      }
    }
  }
  double worst_spread = 0.0;
  std::string worst_config;
  for (const auto& [config, values] : maxima) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double spread = *lo > 0.0 ? *hi / *lo : INFINITY;
    if (spread > worst_spread) {
      worst_spread = spread;
      worst_config = config;
    }
  }
  const double elapsed = seconds_since(t0);
  const bool ok = finite && worst_spread < 2.0 && elapsed < 120.0;
  report(3, ok, std::to_string(evaluated) + " chain evaluations over " + std::to_string(maxima.size()) +
                    " configurations, all finite: " + (finite ? "yes" : "no") +
                    ", largest max/min across n = 4..7 " + num(worst_spread) + " (" + worst_config +
                    "), " + num(elapsed) + " s");
  for (const auto& [config, values] : maxima) {
    std::printf("  %-45s", config.c_str());
    for (double v : values) std::printf(" %10.4g", v);
    std::printf("\n");
  }
}

// ---------------------------------------------------------------------------

// Largest |grad^d psi_i| over a fine grid inside transition squares.
std::vector<double> partition_derivative_sups(const WhitneyDecomposition& w, int n, int max_d) {
  const LayerDecomposition layers = build_layers(w, n);
  const PartitionOfUnity pou(layers, max_d);
  std::vector<std::size_t> mixed;
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (pou.mixed(s)) mixed.push_back(s);
  }
  std::mt19937 rng(static_cast<unsigned>(n));
  std::shuffle(mixed.begin(), mixed.end(), rng);
  mixed.resize(std::min<std::size_t>(mixed.size(), 40));
  std::vector<double> sup(max_d + 1, 0.0);
  std::vector<std::pair<int, Jet>> members;
  // Sample spacing r / 8 so the steep part of the mollifier is resolved.
  const double step = pou.radius() / 8.0;
  for (std::size_t s : mixed) {
    const Box b = w.square(s).box();
    for (double y = b.y0 + 0.5 * step; y < b.y1; y += step) {
      for (double x = b.x0 + 0.5 * step; x < b.x1; x += step) {
        pou.evaluate({x, y}, max_d, members);
        for (const auto& [g, jet] : members) {
          for (int d = 1; d <= max_d; ++d) sup[d] = std::max(sup[d], gradk_magnitude(jet, d));
        }
      }
    }
  }
  return sup;
}

void criterion_partition() {
  const auto t0 = Clock::now();
  const PolygonDomain l = read_domain(data("l_shape.json"));
  const WhitneyDecomposition w = whitney_decompose(l, {10});
  bool ok = true;
  std::string detail;
  for (int n = 4; n <= 7; ++n) {
    VerifyConfig cfg;
    cfg.domain = l;
    cfg.lmax = 10;
    cfg.n = n;
    const SuiteResult r = run_suite("partition", cfg);
    ok = ok && r.passed;
    if (n == 4 || !r.passed) detail += "n=" + std::to_string(n) + " " + r.summary + "; ";
  }
  constexpr int kMaxD = 2;
  std::vector<std::vector<double>> scaled(kMaxD + 1);
  for (int n = 4; n <= 7; ++n) {
    const auto sup = partition_derivative_sups(w, n, kMaxD);
    for (int d = 1; d <= kMaxD; ++d) scaled[d].push_back(sup[d] / std::ldexp(1.0, n * d));
  }
  for (int d = 1; d <= kMaxD; ++d) {
    const auto [lo, hi] = std::minmax_element(scaled[d].begin(), scaled[d].end());
    const double spread = *hi / *lo;
    ok = ok && spread <= 4.0;
    detail += "|alpha|=" + std::to_string(d) + ": sup / 2^(n|alpha|) =";
    for (double v : scaled[d]) detail += " " + num(v);
    detail += " (spread " + num(spread) + "); ";
  }
  report(4, ok, detail + num(seconds_since(t0)) + " s");
  std::printf("  note: a bound decaying like 2^(-n|alpha|) cannot hold for a partition whose"
              " transition width shrinks like 2^-n; only the growth 2^(n|alpha|) is testable\n");
}

// ---------------------------------------------------------------------------

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

struct Study {
  std::string label;
  std::vector<ConvergenceRow> rows;
};

void criterion_density(std::vector<Study>& studies) {
  const auto t0 = Clock::now();
  const Point b{0.4921875, 1.0};  // top right corner of the sixth tooth
  const PolygonDomain comb = read_domain(data("comb.json"));
  const WhitneyDecomposition w = whitney_decompose(comb, {10});
  StudyConfig cfg;
  cfg.lmax = 10;
  cfg.quad_order = 8;

  struct Run {
    std::string label;
    FunctionField u;
    YoungFunction psi;
    int k;
  };
  const std::vector<Run> runs{
      {"k=1, sigma=0.6, t^1.5", make_singular_field(b, 0.6, 1), YoungFunction::power(1.5), 1},
      {"k=2, sigma=0.9, t log(e+t)", make_singular_field(b, 0.9, 2), YoungFunction::llogl(), 2}};

  bool ok = true;
  std::string detail;
  for (const Run& run : runs) {
    const auto rows = convergence_study(run.u, w, run.psi, run.k, 3, 8, cfg);
    std::printf("  %s\n  %s\n", run.label.c_str(), kCsvHeader);
    bool rows_ok = true;
    bool monotone = true;
    bool bounded = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ConvergenceRow& r = rows[i];
      std::printf("  %d,%.6g,%.6g,%.6g,%zu,%zu,%zu\n", r.n, r.modular_error, r.luxemburg_error,
                  r.sup_gradk_un, r.num_squares, r.num_pieces, r.max_chain_len);
      rows_ok = rows_ok && r.ok;
      bounded = bounded && std::isfinite(r.sup_gradk_un);
      if (i > 0) monotone = monotone && r.modular_error <= 1.1 * rows[i - 1].modular_error;
    }
    const double ratio = rows.back().modular_error / rows.front().modular_error;

    // |grad^k u| on grids closing in on b: its maximum keeps growing like
    // rho^(sigma - k).
    std::vector<double> grid_max;
    for (int m = 4; m <= 14; m += 2) {
      const double rho = std::ldexp(1.0, -m);
      double best = 0.0;
      for (int i = 0; i < 16; ++i) {
        const double a = M_PI + (i + 0.5) * (M_PI / 2.0) / 16.0;  // into the tooth
        const Point p{b.x + rho * std::cos(a), b.y + rho * std::sin(a)};
        if (comb.contains(p)) best = std::max(best, gradk_magnitude(run.u, run.k, p));
      }
      grid_max.push_back(best);
    }
    bool diverges = true;
    for (std::size_t i = 1; i < grid_max.size(); ++i) diverges = diverges && grid_max[i] > 1.5 * grid_max[i - 1];

    const bool pass = rows_ok && ratio < 0.1 && monotone && bounded && diverges;
    ok = ok && pass;
    detail += run.label + ": ratio " + num(ratio) + ", monotone " + (monotone ? "yes" : "no") +
              ", sup|grad^k u_n| finite " + (bounded ? "yes" : "no") + ", grid max |grad^k u| " +
              num(grid_max.front()) + " -> " + num(grid_max.back()) + "; ";
    studies.push_back({run.label, rows});
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 300.0;
  report(5, ok, detail + num(elapsed) + " s");
}

void criterion_co_convergence(const std::vector<Study>& studies) {
  bool ok = studies.size() == 2;
  std::string detail;
  for (const Study& s : studies) {
    std::vector<double> m, l;
    for (const ConvergenceRow& r : s.rows) {
      m.push_back(r.modular_error);
      l.push_back(r.luxemburg_error);
    }
    const double rho = spearman(m, l);
    ok = ok && rho == 1.0;
    detail += s.label + ": rank correlation " + num(rho) + "; ";
  }
  report(6, ok, detail);
}

// ---------------------------------------------------------------------------

void criterion_truncation() {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {8});
  const FunctionField u = polynomial_field({0.0, 30.0, 30.0});  // sup 60, gradient (30, 30)
  const YoungFunction psi = YoungFunction::power(1.5);
  std::vector<double> errors;
  std::string detail = "M, error:";
  for (int j = 0; j <= 6; ++j) {
    const double M = std::ldexp(1.0, j);
    errors.push_back(truncation_error(u, M, w.squares(), psi));
    detail += " " + num(M) + ":" + num(errors.back());
  }
  bool monotone = true;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    monotone = monotone && (errors[i] < errors[i - 1] || (errors[i] == 0.0 && errors[i - 1] == 0.0));
  }
  report(7, monotone && errors.back() < 1e-6, detail);
}

}  // namespace

int main() {
  try {
    criterion_whitney();
    criterion_projection();
    criterion_chains();
    criterion_partition();
    std::vector<Study> studies;
    criterion_density(studies);
    criterion_co_convergence(studies);
    criterion_truncation();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
