#include "osd/density.h"
#include "osd/errors.h"
#include "osd/io.h"
#include "osd/verify.h"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace osd;

namespace {

struct Setup {
  WhitneyDecomposition w;
  LayerDecomposition layers;

  Setup(const char* name, int lmax, int n)
      : w(whitney_decompose(read_domain(std::string(OSD_DATA_DIR) + name), {lmax})),
        layers(build_layers(w, n)) {}
};

}  // namespace

TEST_SUITE("density") {

TEST_CASE("polynomials of degree k-1 are reproduced") {
  const Setup s("/l_shape.json", 7, 4);
  const Quadrature quad(6);
  const YoungFunction psi = YoungFunction::power(1.5);
  const FunctionField lin = polynomial_field({0.5, -1.0, 2.0});
  const Approximant un(lin, s.layers, 2, quad);
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const Point p{u(rng), u(rng)};
    if (!s.w.locate(p)) continue;
    CHECK(un.value(p) == doctest::Approx(lin.value(p)).epsilon(1e-12));
  }
  ErrorOptions all;
  all.exact_everywhere = true;
  const ApproximationError e = approximation_error(un, psi, quad, all);
  CHECK(e.modular_error <= 1e-9);
  CHECK(e.luxemburg_error <= 1e-9);
}

TEST_CASE("u_n equals u on the interior of the core") {
  const Setup s("/comb.json", 8, 5);
  const FunctionField u = trig_field(2.0, 1.0);
  const Approximant un(u, s.layers, 1);
  std::size_t checked = 0;
  for (std::size_t q : s.layers.core().squares) {
    if (s.w.square(q).level > s.layers.n() - 1 || un.partition().mixed(q)) continue;
    const Point c = s.w.square(q).center();
    CHECK(un.value(c) == u.value(c));
    ++checked;
  }
  CHECK(checked > 0);
  // Where a piece member is identically one, grad^k u_n vanishes.
  for (const BoundaryPiece& piece : s.layers.pieces()) {
    for (std::size_t q : piece.tilde) {
      if (un.partition().mixed(q)) continue;
      const Point c = s.w.square(q).center();
      CHECK(un.derivative({1, 0}, c) == 0.0);
      CHECK(un.derivative({0, 1}, c) == 0.0);
      break;
    }
  }
}

TEST_CASE("product-rule derivatives match finite differences") {
  const Setup s("/l_shape.json", 8, 4);
  const FunctionField u = trig_field(1.0, 2.0);
  const Approximant un(u, s.layers, 2);
  const double h = un.partition().radius() * 1e-4;
  std::mt19937 rng(53);
  std::size_t tested = 0;
  for (std::size_t q = 0; q < s.w.size() && tested < 150; ++q) {
    if (!un.partition().mixed(q)) continue;
    const Box b = s.w.square(q).box();
    std::uniform_real_distribution<double> ux(b.x0 + 2 * h, b.x1 - 2 * h);
    std::uniform_real_distribution<double> uy(b.y0 + 2 * h, b.y1 - 2 * h);
    const Point p{ux(rng), uy(rng)};
    ++tested;
    const Jet j = un.jet(p, 2);
    const Jet px = un.jet(p + Point{h, 0}, 1);
    const Jet mx = un.jet(p - Point{h, 0}, 1);
    const Jet py = un.jet(p + Point{0, h}, 1);
    const Jet my = un.jet(p - Point{0, h}, 1);
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); };
    CHECK(rel(j.derivative({1, 0}), (px.value() - mx.value()) / (2 * h)) < 1e-4);
    CHECK(rel(j.derivative({0, 1}), (py.value() - my.value()) / (2 * h)) < 1e-4);
    CHECK(rel(j.derivative({2, 0}), (px.derivative({1, 0}) - mx.derivative({1, 0})) / (2 * h)) < 1e-4);
    CHECK(rel(j.derivative({1, 1}), (py.derivative({1, 0}) - my.derivative({1, 0})) / (2 * h)) < 1e-4);
  }
  CHECK(tested > 50);
}

TEST_CASE("all error lives in the boundary layer") {
  const Setup s("/l_shape.json", 8, 4);
  const FunctionField u = trig_field(1.0, 1.0);
  const YoungFunction psi = YoungFunction::power(1.5);
  const Quadrature quad(6);
  const Approximant un(u, s.layers, 1, quad);
  std::vector<std::size_t> flat, layer;
  for (std::size_t q = 0; q < s.w.size(); ++q) {
    (s.layers.owner(q) == 0 && !un.partition().mixed(q) ? flat : layer).push_back(q);
  }
  ErrorOptions on_flat;
  on_flat.exact_everywhere = true;
  on_flat.subset = flat;
  CHECK(approximation_error(un, psi, quad, on_flat).modular_error <= 1e-9);

  ErrorOptions on_layer;
  on_layer.subset = layer;
  const double total = approximation_error(un, psi, quad).modular_error;
  CHECK(approximation_error(un, psi, quad, on_layer).modular_error ==
        doctest::Approx(total).epsilon(1e-12));
  CHECK(total > 0.0);
  // The shortcut on single-member squares agrees with full evaluation.
  ErrorOptions exact;
  exact.exact_everywhere = true;
  CHECK(approximation_error(un, psi, quad, exact).modular_error ==
        doctest::Approx(total).epsilon(1e-10));
}

TEST_CASE("truncation") {
  const FunctionField u = trig_field(1.0, 1.0);
  const FunctionField big = linear_combination({30.0}, {u});
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  const FunctionField same = truncate(u, 1.0);
  const FunctionField cut = truncate(big, 4.0);
  for (int t = 0; t < 300; ++t) {
    const Point p{x(rng), x(rng)};
    CHECK(same.value(p) == u.value(p));
    CHECK(std::abs(cut.value(p)) <= 8.0);
  }
  for (double s = -10.0; s <= 10.0; s += 0.01) {
    const Taylor1 c = clamp_taylor(s, 2.0, 2);
    CHECK(c.c[1] >= 0.0);
    CHECK(c.c[1] <= 1.0 + 1e-15);
    if (std::abs(s) <= 2.0) CHECK(c.c[0] == s);
    if (std::abs(s) >= 4.0) CHECK(c.c[0] == doctest::Approx(s > 0 ? clamp_taylor(4.0, 2.0, 0).c[0]
                                                                   : -clamp_taylor(4.0, 2.0, 0).c[0]));
    const double h = 1e-6;
    const double fd = (clamp_taylor(s + h, 2.0, 0).c[0] - clamp_taylor(s - h, 2.0, 0).c[0]) / (2 * h);
    CHECK(c.c[1] == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK_THROWS_AS(truncate(u, 0.0), PreconditionError);

  // An unbounded field: the truncation error shrinks as M grows.
  const FunctionField spike = make_singular_field({0.5, 1.0}, -0.1, 1);
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {8});
  const YoungFunction psi = YoungFunction::power(1.5);
  double previous = std::numeric_limits<double>::infinity();
  for (double M = 1.0; M <= 2.0; M += 0.25) {
    const double e = truncation_error(spike, M, w.squares(), psi);
    CHECK(e <= previous);
    previous = e;
  }
  CHECK(truncation_error(spike, 100.0, w.squares(), psi) == 0.0);
}

TEST_CASE("convergence study bookkeeping") {
  const PolygonDomain d = read_domain(OSD_DATA_DIR "/unit_square.json");
  StudyConfig cfg;
  cfg.lmax = 7;
  cfg.quad_order = 5;
  const FunctionField lin = polynomial_field({1.0, 2.0, 3.0});
  const auto rows = convergence_study(lin, d, YoungFunction::power(1.5), 2, 3, 5, cfg);
  REQUIRE(rows.size() == 3);
  for (const ConvergenceRow& r : rows) {
    CHECK(r.ok);
    CHECK(r.modular_error <= 1e-9);
    CHECK(r.num_pieces >= 3);
    CHECK(r.sliver_area > 0.0);
  }
  CHECK_THROWS_AS(convergence_study(lin, d, YoungFunction::power(1.5), 1, 3, 6, cfg),
                  PreconditionError);
  CHECK_THROWS_AS(convergence_study(lin, d, YoungFunction::power(1.5), 1, 1, 3, cfg),
                  PreconditionError);

  const FunctionField u = trig_field(1.0, 1.0);
  const auto a = convergence_study(u, d, YoungFunction::llogl(), 1, 3, 4, cfg);
  const auto b = convergence_study(u, d, YoungFunction::llogl(), 1, 3, 4, cfg);
  CHECK(rows_to_csv(a) == rows_to_csv(b));
  CHECK(a[1].modular_error < a[0].modular_error);
}

}  // TEST_SUITE
