#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cornerheat/spectrum.hpp"
#include "cornerheat/tridiagonal.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace cornerheat;

TEST_CASE("effective potential plug-ins") {
  CornerParamsd critical(3, 1, 2.25);  // m = 0
  CHECK(effective_potential(critical, 1.0) == doctest::Approx(-0.1875).epsilon(1e-15));

  CornerParamsd half(3, 0, 0.0);  // m = 1/2: inverse-square term vanishes
  CHECK(effective_potential(half, 2.0) == doctest::Approx(0.25).epsilon(1e-15));

  CornerParamsd one(2, 1, 0.0);  // m = 1
  CHECK(effective_potential(one, 1.0) == doctest::Approx(0.8125).epsilon(1e-15));

  CHECK_THROWS_AS(effective_potential(half, 0.0), std::domain_error);
  CHECK_THROWS_AS(effective_potential(half, -1.0), std::domain_error);
}

TEST_CASE("assembled operator structure") {
  CornerParamsd p(3, 1, 1.0);
  RadialGridd g(0.01, 15.0, 1500);
  const auto op = assemble(p, g);
  const double h2 = g.h() * g.h();
  CHECK(op.diag.size() == 1500);
  CHECK(op.offdiag.size() == 1499);
  for (Index i = 0; i < op.offdiag.size(); ++i) {
    CHECK(op.offdiag[i] == doctest::Approx(-1.0 / h2).epsilon(1e-15));
  }
  for (Index i = 0; i < op.diag.size(); i += 97) {
    CHECK(op.diag[i] == doctest::Approx(2.0 / h2 +
                                        effective_potential(p, g.node(i)))
                            .epsilon(1e-15));
  }
  CHECK_FALSE(op.singular_endpoint);
  CHECK(assemble(CornerParamsd(3, 1, 2.25), g).singular_endpoint);
}

TEST_CASE("assembly rejects grids that cannot resolve the potential") {
  // coarse grid: the confining well varies by order one per cell
  CornerParamsd p(3, 1, 2.25);
  CHECK_THROWS_AS(assemble(p, RadialGridd(1e-4, 20.0, 50)), std::invalid_argument);
  // the steep inner barrier at m = 3 stays just inside the rule at defaults
  CornerParamsd big(4, 2, 0.0);
  CHECK_NOTHROW(assemble(big, RadialGridd::defaults()));
}

TEST_CASE("dirichlet laplacian closed-form eigenvalues (zero potential)") {
  // hand-built operator with V = 0
  const Index n = 400;
  const double h = 1.0 / double(n + 1);
  RadialGridd g(1.0, 2.0, n);  // geometry irrelevant for this check
  CornerParamsd p(3, 0, 0.0);
  TridiagonalOperator<double> op{Vector<double>::Constant(n, 2.0 / (h * h)),
                                 Vector<double>::Constant(n - 1, -1.0 / (h * h)),
                                 g, p, false};
  auto spec = lowest_eigenvalues(op, 5, 1e-10);
  for (Index j = 0; j < 5; ++j) {
    const double exact =
        2.0 / (h * h) * (1.0 - std::cos((j + 1) * std::numbers::pi / (n + 1)));
    CHECK(spec.eigenvalues[j] == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("rayleigh quotient of the sampled exact ground state") {
  for (auto [dim, k, lambda] : {std::tuple{3, 0, 0.0}, {3, 1, 1.0}, {4, 2, 3.0}}) {
    CornerParamsd p(dim, k, lambda);
    const auto g = RadialGridd::defaults();
    const auto op = assemble(p, g);
    const auto w0 = ground_sample(p, g);
    const double quotient = g.h() * w0.dot(op.apply(w0)) /
                            (g.h() * w0.squaredNorm());
    CHECK(quotient == doctest::Approx(ground_eigenvalue(p)).epsilon(2e-3));
  }
}

TEST_CASE("closed-form eigenpair residual, analytic derivatives") {
  for (auto [dim, k, lambda] : {std::tuple{3, 1, 1.0}, {2, 0, 0.0}, {4, 2, 9.0},
                                {3, 0, 0.25}, {2, 2, 2.0}}) {
    CornerParamsd p(dim, k, lambda);
    CHECK(ground_equation_residual(p, RadialGridd::defaults()) < 1e-10);
    CHECK(ground_equation_residual(p, RadialGridd(0.05, 30.0, 5000)) < 1e-10);
  }
}

TEST_CASE("closed-form eigenpair residual, finite differences") {
  RadialGridd g(0.5, 20.0, 5000);
  for (auto [dim, k, lambda] : {std::tuple{3, 1, 1.0}, {2, 0, 0.0}, {4, 2, 3.0}}) {
    CornerParamsd p(dim, k, lambda);
    CHECK(ground_equation_residual(p, g, DerivativeMode::finite_difference,
                                   1e-4) < 1e-4);
  }
  // fd step must stay below the inner truncation
  CHECK_THROWS_AS(ground_equation_residual(CornerParamsd(3, 1, 1.0),
                                           RadialGridd(1e-5, 20.0, 100000),
                                           DerivativeMode::finite_difference,
                                           1e-4),
                  std::invalid_argument);
}

TEST_CASE("perturbed eigenvalue breaks the equation by the perturbation") {
  // residual against mu0 + 0.1 must be at least 0.1 - 1e-8
  CornerParamsd p(3, 1, 1.0);
  RadialGridd g(0.1, 10.0, 500);
  const double mu0 = ground_eigenvalue(p);
  double worst = 0.0;
  for (Index i = 0; i < g.n; ++i) {
    const double r = g.node(i);
    const double res = -ground_radial_log_deriv2(p, r) -
                       (p.dim() - 1) / r * ground_radial_log_deriv(p, r) +
                       (p.corner() * (p.dim() - 2 + p.corner()) - p.lambda()) /
                           (r * r) +
                       r * r / 16 - (mu0 + 0.1);
    worst = std::max(worst, std::abs(res));
  }
  CHECK(worst >= 0.1 - 1e-8);
}

TEST_CASE("ground eigenvalue converges at second order in h") {
  CornerParamsd p(3, 0, 0.0);
  const double a = 0.002, b = 20.0;
  double mu[4];
  Index n = 2500;
  for (int level = 0; level < 4; ++level) {
    const auto op = assemble(p, RadialGridd(a, b, n));
    mu[level] = lowest_eigenvalues(op, 1, 1e-12).eigenvalues[0];
    n = 2 * n + 1;  // halves h exactly
  }
  const double order1 = std::log2(std::abs((mu[0] - mu[1]) / (mu[1] - mu[2])));
  const double order2 = std::log2(std::abs((mu[1] - mu[2]) / (mu[2] - mu[3])));
  CHECK(order1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(order2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("outer truncation beyond 20 is converged") {
  for (auto [dim, k, lambda] : {std::tuple{3, 1, 0.0}, {4, 2, 0.0}}) {
    CornerParamsd p(dim, k, lambda);  // m = 1.5 and m = 3
    const double h = 1e-3;
    auto solve = [&](double rmax) {
      const Index n = static_cast<Index>((rmax - 2e-3) / h) - 1;
      const auto op = assemble(p, RadialGridd(2e-3, rmax, n));
      return lowest_eigenvalues(op, 1, 1e-12).eigenvalues[0];
    };
    CHECK(std::abs(solve(25.0) - solve(20.0)) < 1e-10);
    CHECK(std::abs(solve(30.0) - solve(20.0)) < 1e-10);
  }
}

TEST_CASE("inner truncation: regular regime is insensitive, critical is log-slow") {
  // m = 1.5: shrinking r_min below 1e-3 * r_max changes mu0 by < 1e-6
  CornerParamsd reg(3, 1, 0.0);
  auto solve = [](const CornerParamsd& p, double a, double h) {
    const Index n = static_cast<Index>((16.0 - a) / h) - 1;
    const auto op = assemble(p, RadialGridd(a, 16.0, n));
    return lowest_eigenvalues(op, 1, 1e-12).eigenvalues[0];
  };
  const double mu_a = solve(reg, 0.016, 4e-4);
  const double mu_b = solve(reg, 0.004, 4e-4);
  CHECK(std::abs(mu_a - mu_b) < 1e-6);

  // critical coupling: the shift follows c / |log r_min| with c near 1/2,
  // so plain truncation cannot reach the closed form at any feasible r_min
  CornerParamsd crit(3, 0, 0.25);
  for (double a : {2e-2, 2e-3}) {
    const double mu = solve(crit, a, a / 12);
    const double shift = mu - ground_eigenvalue(crit);
    const double model = 0.5 / std::abs(std::log(a));
    CHECK(shift / model > 0.8);
    CHECK(shift / model < 1.1);
  }
}

TEST_CASE("inner truncation shift scales like r_min^{2m} for 0 < m < 1/2") {
  CornerParamsd p(3, 0, 0.125);  // m = 0.3536
  const double m = p.criticality();
  auto solve = [&](double a) {
    const double h = a / 12;
    const Index n = static_cast<Index>((12.0 - a) / h) - 1;
    const auto op = assemble(p, RadialGridd(a, 12.0, n));
    return lowest_eigenvalues(op, 1, 1e-12).eigenvalues[0];
  };
  const double exact = ground_eigenvalue(p);
  const double s1 = solve(0.02) - exact;
  const double s2 = solve(0.005) - exact;
  const double measured = std::log(s1 / s2) / std::log(4.0);
  CHECK(measured == doctest::Approx(2 * m).epsilon(0.12));
}
