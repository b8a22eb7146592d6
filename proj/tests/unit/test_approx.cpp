#include "osd/approx.h"
#include "osd/errors.h"
#include "osd/verify.h"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace osd;

namespace {

const std::vector<DyadicSquare> kUnit{{0, 0, 0}};

Polynomial random_polynomial(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  Polynomial p(degree);
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) p.coeff(d - j, j) = c(rng);
  }
  return p;
}

FunctionField as_field(const Polynomial& p) {
  return polynomial_field(std::vector<double>(p.graded().begin(), p.graded().end()));
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("polynomial evaluation and calculus") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const Polynomial p = random_polynomial(rng, 4);
    const Point x{u(rng), u(rng)};
    CHECK(p(x) == doctest::Approx(p.evaluate_monomials(x)).epsilon(1e-13));
    const Jet j = p.jet(x, 3);
    CHECK(j.derivative({2, 1}) == doctest::Approx(p.derivative({2, 1})(x)).epsilon(1e-12));
    CHECK(p.derivative({5, 0}).degree() == 0);
    CHECK(p.derivative({5, 0})(x) == 0.0);
  }
  Polynomial q(1);
  q.coeff(3, 1) = 2.0;  // grows the degree
  CHECK(q.degree() == 4);
  CHECK(q({2.0, 3.0}) == doctest::Approx(2.0 * 8.0 * 3.0));
  CHECK(monomial_moment(2, 1, {0, 0, 1, 2}) == doctest::Approx(1.0 / 3.0 * 2.0));
  CHECK(binomial(6, 2) == 15.0);
}

TEST_CASE("projection examples") {
  const Quadrature quad;
  const FunctionField x2 = polynomial_field({0, 0, 0, 1.0});
  const Polynomial p = project(x2, kUnit, 2, quad);
  CHECK(std::abs(p.coeff(0, 0) + 1.0 / 6.0) < 1e-10);
  CHECK(std::abs(p.coeff(1, 0) - 1.0) < 1e-10);
  CHECK(std::abs(p.coeff(0, 1)) < 1e-10);

  const FunctionField s = trig_field(1.0, 0.0);
  const Polynomial mean = project(s, kUnit, 1, quad);
  CHECK(mean.degree() == 0);
  CHECK(mean.coeff(0, 0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));

  CHECK_THROWS_AS(project(s, {}, 1, quad), PreconditionError);
  CHECK_THROWS_AS(project(make_singular_field({0, 0}, 0.5, 1), kUnit, 3, quad), PreconditionError);
}

TEST_CASE("projection reproduces polynomials of degree k-1") {
  std::mt19937 rng(31);
  const Quadrature quad;
  const std::vector<DyadicSquare> region{{2, 1, 1}, {2, 2, 1}, {3, 6, 2}};
  for (int k = 1; k <= 3; ++k) {
    for (int t = 0; t < 100; ++t) {
      const Polynomial p = random_polynomial(rng, k - 1);
      const Polynomial got = project(as_field(p), region, k, quad);
      for (int d = 0; d < k; ++d) {
        for (int j = 0; j <= d; ++j) CHECK(std::abs(got.coeff(d - j, j) - p.coeff(d - j, j)) < 1e-9);
      }
    }
  }
}

TEST_CASE("projection meets its moment conditions") {
  const Quadrature quad;
  const FunctionField u = trig_field(1.5, 1.0);
  const std::vector<DyadicSquare> region{{2, 0, 0}, {2, 1, 0}, {3, 4, 1}};
  for (int k = 1; k <= 3; ++k) {
    const Polynomial p = project(u, region, k, quad);
    for (int d = 0; d < k; ++d) {
      for (const MultiIndex& a : multi_indices_of_order(d)) {
        const Polynomial dp = p.derivative(a);
        const double lhs = integrate([&](Point x) { return dp(x); }, region, quad);
        const double rhs = integrate([&](Point x) { return u.derivative(a, x); }, region, quad);
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("norm equivalence ratio conventions") {
  const YoungFunction psi = YoungFunction::power(1.5);
  const DyadicSquare q{0, 0, 0};
  const std::vector<DyadicSquare> e{{1, 0, 0}, {1, 1, 1}};
  const std::vector<DyadicSquare> f{{1, 1, 0}, {1, 0, 1}};
  std::mt19937 rng(37);
  const Polynomial p = random_polynomial(rng, 2);
  CHECK(norm_equivalence_ratio(p, e, e, q, psi) == doctest::Approx(1.0).epsilon(1e-14));
  Polynomial c(0);
  c.coeff(0, 0) = 3.0;
  CHECK(norm_equivalence_ratio(c, e, f, q, psi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm_equivalence_ratio(Polynomial(0), e, f, q, psi) == 1.0);
  Polynomial x(1);
  x.coeff(1, 0) = 1.0;
  // A polynomial vanishing on a square vanishes identically, so x/0 needs an
  // empty F, which is refused.
  CHECK_THROWS_AS(norm_equivalence_ratio(x, e, std::vector<DyadicSquare>{}, q, psi), PreconditionError);
  CHECK_THROWS_AS(norm_equivalence_ratio(x, e, f, DyadicSquare{1, 0, 0}, psi), PreconditionError);
}

TEST_CASE("Poincare ratio on the unit square") {
  const FunctionField s = trig_field(1.0, 0.0);
  const YoungFunction psi = YoungFunction::power(2.0);
  const Chain single{{{0, 0, 0}}};
  const double got = poincare_ratio(s, single, 1, psi);
  // avg (sin(pi x) - 2/pi)^2 over avg (pi cos(pi x))^2.
  const double pi = std::numbers::pi;
  const double closed = (0.5 - 4.0 / (pi * pi)) / (pi * pi / 2.0);
  CHECK(got == doctest::Approx(closed).epsilon(1e-10));
  // Midpoint Riemann sum on a dense grid, independent of the Gauss rule.
  constexpr int kN = 4000;
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double x = (i + 0.5) / kN;
    num += std::pow(std::sin(pi * x) - 2.0 / pi, 2);
    den += std::pow(pi * std::cos(pi * x), 2);
  }
  CHECK(std::abs(got - num / den) < 1e-4);

  const FunctionField lin = polynomial_field({1.0, 2.0, -1.0});
  CHECK(poincare_ratio(lin, single, 2, psi) == 0.0);
  // 0/0: constant field with k = 1.
  CHECK(poincare_ratio(polynomial_field({2.0}), single, 1, psi) == 0.0);
}

TEST_CASE("Poincare ratios stay bounded along chains") {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {6});
  const FunctionField s = trig_field(1.0, 0.0);
  const YoungFunction psi = YoungFunction::power(2.0);
  std::mt19937 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
  double worst = 0.0;
  int counted = 0;
  while (counted < 60) {
    const Chain ch = find_chain(w, w.square(pick(rng)), w.square(pick(rng)));
    if (ch.length() > 6) continue;
    ++counted;
    const double r = poincare_ratio(s, ch, 1, psi);
    CHECK(std::isfinite(r));
    worst = std::max(worst, r);
  }
  // The ratio carries l(Q1)^-k, so a chain starting small and growing by 4
  // per step can reach a few dozen; it must not blow up.
  CHECK(worst < 100.0);
}

TEST_CASE("chain difference ratio") {
  const WhitneyDecomposition w = whitney_decompose(unit_square_domain(), {6});
  const YoungFunction psi = YoungFunction::power(1.5);
  const FunctionField u = trig_field(1.0, 1.0);
  const Chain one{{{3, 3, 3}}};
  CHECK(chain_difference_ratio(u, one, {1, 0}, 2, psi) == 0.0);
  const Chain ch = find_chain(w, {3, 3, 3}, {5, 2, 20});
  const FunctionField lin = polynomial_field({1.0, 2.0, -1.0});
  CHECK(chain_difference_ratio(lin, ch, {0, 0}, 2, psi) == 0.0);
  for (int d = 0; d <= 2; ++d) {
    for (const MultiIndex& a : multi_indices_of_order(d)) {
      const double r = chain_difference_ratio(u, ch, a, 2, psi);
      CHECK(std::isfinite(r));
      CHECK(r >= 0.0);
    }
  }
}

}  // TEST_SUITE
