#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cornerheat/spectrum.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace cornerheat;
namespace oracle = cornerheat::test;

TEST_CASE("sturm bisection vs dense QL iteration on the same matrix") {
  CornerParamsd p(4, 2, 3.0);
  RadialGridd g(0.05, 20.0, 2000);
  const auto op = assemble(p, g);
  const auto spec = lowest_eigenvalues(op, 5, 1e-11);
  const auto dense = oracle::dense_tridiag_eigenvalues(op.diag, op.offdiag);
  for (Index j = 0; j < 5; ++j) {
    CHECK(spec.eigenvalues[j] ==
          doctest::Approx(dense[j]).epsilon(1e-12).scale(std::abs(dense[j]) + 1));
  }
}

TEST_CASE("oscillator cross-check: mu0 = 3/4 on R^3 without coupling") {
  // independent closed form: isotropic oscillator energy N * b with b = 1/4
  CornerParamsd p(3, 0, 0.0);
  RadialGridd g(2e-5, 20.0, 40000);
  const auto spec = lowest_eigenvalues(assemble(p, g), 1, 1e-11);
  CHECK(std::abs(spec.eigenvalues[0] - 0.75) < 1e-4);
}

TEST_CASE("ground state report at (4,2,3)") {
  CornerParamsd p(4, 2, 3.0);
  const auto rep = ground_state_check(p, RadialGridd::defaults(), 1e-10);
  CHECK(rep.mu0_exact == doctest::Approx((1 + std::sqrt(6.0)) / 2).epsilon(1e-15));
  CHECK(rep.abs_err < 1e-4);
  CHECK(rep.eigvec_l2_distance < 1e-4);
  CHECK(rep.sign_definite);
}

TEST_CASE("ground vector is sign definite across parameters") {
  for (auto [dim, k, lambda] : {std::tuple{3, 0, 0.0}, {3, 1, 2.25}, {2, 2, 2.0}}) {
    CornerParamsd p(dim, k, lambda);
    const auto rep = ground_state_check(p, RadialGridd(0.02, 20.0, 4000), 1e-10);
    CHECK(rep.sign_definite);
  }
}

TEST_CASE("eigenvector orthogonality and residuals") {
  CornerParamsd p(3, 1, 1.125);
  const auto g = RadialGridd::defaults();
  const auto op = assemble(p, g);
  const auto spec = lowest_eigenvalues(op, 4, 1e-10);
  for (Index i = 0; i < 4; ++i) {
    CHECK(std::abs(spec.dot(spec.eigenvectors.col(i), spec.eigenvectors.col(i)) -
                   1.0) < 1e-12);
    for (Index j = 0; j < i; ++j) {
      CHECK(std::abs(spec.dot(spec.eigenvectors.col(i),
                              spec.eigenvectors.col(j))) < 1e-8);
    }
    CHECK(spec.residuals[i] <= 10 * 1e-10 * op.inf_norm());
  }
}

TEST_CASE("no eigenvalue below the sharp constant (discrete Sturm count)") {
  for (auto [dim, k] : {std::pair{2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}, {4, 0},
                        {4, 1}, {4, 2}}) {
    const double sharp = hardy_constant(dim, k);
    for (double lambda : {0.0, sharp / 2, sharp}) {
      CornerParamsd p(dim, k, lambda);
      const auto op = assemble(p, RadialGridd::defaults());
      // tolerance at the discretization scale, not the solver scale
      const double x = ground_eigenvalue(p) * (1.0 - 1e-3);
      CHECK(sturm_count_below(op, x) == 0);
    }
  }
}

TEST_CASE("eigenvalues are monotone non-increasing in the coupling") {
  const int dim = 3, k = 1;
  const double sharp = hardy_constant(dim, k);
  RadialGridd g(0.02, 20.0, 4000);
  double prev[3] = {1e300, 1e300, 1e300};
  for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CornerParamsd p(dim, k, frac * sharp);
    const auto spec = lowest_eigenvalues(assemble(p, g), 3, 1e-11);
    for (int j = 0; j < 3; ++j) {
      CHECK(spec.eigenvalues[j] <= prev[j] + 1e-12);
      prev[j] = spec.eigenvalues[j];
    }
  }
}

TEST_CASE("radial ladder at clean parameters") {
  // mu_n = n + (1+m)/2 in the sector, first certified against the dense
  // oracle at a coarse grid, then asserted at the default grid
  CornerParamsd p(3, 1, 0.0);  // m = 3/2
  {
    RadialGridd coarse(0.05, 20.0, 2000);
    const auto op = assemble(p, coarse);
    const auto spec = lowest_eigenvalues(op, 4, 1e-11);
    const auto dense = oracle::dense_tridiag_eigenvalues(op.diag, op.offdiag);
    for (Index j = 0; j < 4; ++j) {
      CHECK(std::abs(spec.eigenvalues[j] - dense[j]) < 1e-9);
    }
  }
  const auto rep = radial_ladder_check(p, RadialGridd::defaults(), 4);
  for (Index j = 0; j < 4; ++j) CHECK(rep.deviations[j] < 1e-3);
  CHECK(rep.gaps[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spectral gap exceeds one half everywhere tested") {
  for (auto [dim, k] : {std::pair{2, 0}, {3, 1}, {4, 2}, {2, 2}}) {
    const double sharp = hardy_constant(dim, k);
    for (double lambda : {0.0, sharp}) {
      CornerParamsd p(dim, k, lambda);
      const auto rep = radial_ladder_check(p, RadialGridd(0.02, 20.0, 8000), 2);
      CHECK(rep.gaps[0] > 0.5);
    }
  }
}

TEST_CASE("critical ladder needs the truncation-limit estimate") {
  // (2,2) at critical coupling: every level carries the same logarithmic
  // truncation shift, so gaps are clean at the default grid while absolute
  // levels require extrapolation
  CornerParamsd p(2, 2, 4.0);
  const auto rep = radial_ladder_check(p, RadialGridd::defaults(), 3);
  CHECK(rep.gaps[0] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(rep.gaps[1] == doctest::Approx(1.0).epsilon(1e-2));

  ExtrapolationOptions opt;
  opt.points = 8;
  const auto ex2 = extrapolate_eigenvalue(p, Index(2), opt);
  CHECK(std::abs(ex2.value - 2.5) < 1e-2);
}

TEST_CASE("truncation-limit estimate in the singular regime") {
  // m = 0 and 0 < m < 1/2 couplings at 5e-3 relative accuracy
  for (auto [dim, k, lambda] : {std::tuple{3, 0, 0.25}, {3, 1, 2.25},
                                {3, 0, 0.125}}) {
    CornerParamsd p(dim, k, lambda);
    const auto ex = extrapolate_eigenvalue(p, Index(0));
    const double exact = ground_eigenvalue(p);
    CHECK(std::abs(ex.value - exact) / exact < 5e-3);
    CHECK(ex.fit_residual < 1e-4);
  }
}

TEST_CASE("solver input validation") {
  CornerParamsd p(3, 1, 1.0);
  const auto op = assemble(p, RadialGridd(0.01, 10.0, 200));
  CHECK_THROWS_AS(lowest_eigenvalues(op, 0, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenvalues(op, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenvalues(op, 500, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(radial_ladder_check(p, RadialGridd(0.01, 10.0, 200), 7),
                  std::invalid_argument);
}
