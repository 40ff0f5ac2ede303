#pragma once

// Liouville-form radial reduction.  Substituting u = phi(r) f_{N,k} and
// w = r^{(N-1)/2} phi turns the operator -Lap - lambda/|x|^2 + |x|^2/16,
// restricted to the product-harmonic sector, into
//   -w'' + [(m^2 - 1/4)/r^2 + r^2/16] w
// acting on L^2(dr).  Second-order central differences with homogeneous
// Dirichlet conditions at both truncation ends give a symmetric tridiagonal
// matrix with constant offdiagonal -1/h^2.

#include "cornerheat/corner_params.hpp"
#include "cornerheat/ground_state.hpp"
#include "cornerheat/radial_grid.hpp"
#include "cornerheat/types.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cornerheat {

// V(r) = (m^2 - 1/4)/r^2 + r^2/16
template <std::floating_point Scalar>
Scalar effective_potential(const CornerParams<Scalar>& p, Scalar r) {
  if (!(r > Scalar(0))) {
    throw std::domain_error("effective_potential: requires r > 0");
  }
  const Scalar m = p.criticality();
  return (m * m - Scalar(0.25)) / (r * r) + r * r / 16;
}

template <std::floating_point Scalar>
struct TridiagonalOperator {
  Vector<Scalar> diag;     // 2/h^2 + V(r_j)
  Vector<Scalar> offdiag;  // constant -1/h^2, n-1 entries
  RadialGrid<Scalar> grid;
  CornerParams<Scalar> params;
  // m < 1/2 puts the inverse-square well in its strongly singular regime;
  // eigenvalue convergence in r_min degrades there.
  bool singular_endpoint = false;

  Index size() const { return diag.size(); }

  Vector<Scalar> apply(const Vector<Scalar>& v) const {
    const Index n = size();
    if (v.size() != n) throw std::invalid_argument("TridiagonalOperator::apply: size mismatch");
    Vector<Scalar> out(n);
    for (Index i = 0; i < n; ++i) {
      Scalar acc = diag[i] * v[i];
      if (i > 0) acc += offdiag[i - 1] * v[i - 1];
      if (i + 1 < n) acc += offdiag[i] * v[i + 1];
      out[i] = acc;
    }
    return out;
  }

  Scalar inf_norm() const {
    const Index n = size();
    Scalar best = 0;
    for (Index i = 0; i < n; ++i) {
      Scalar row = std::abs(diag[i]);
      if (i > 0) row += std::abs(offdiag[i - 1]);
      if (i + 1 < n) row += std::abs(offdiag[i]);
      best = std::max(best, row);
    }
    return best;
  }

  // Enclosure of the whole spectrum.
  std::pair<Scalar, Scalar> gershgorin_bounds() const {
    const Index n = size();
    Scalar lo = diag[0], hi = diag[0];
    for (Index i = 0; i < n; ++i) {
      Scalar rad = 0;
      if (i > 0) rad += std::abs(offdiag[i - 1]);
      if (i + 1 < n) rad += std::abs(offdiag[i]);
      lo = std::min(lo, diag[i] - rad);
      hi = std::max(hi, diag[i] + rad);
    }
    return {lo, hi};
  }
};

// Rejects grids with h^2 * max|V| > 1 at the nodes: the sampled potential
// then varies by order one across a single cell and the central-difference
// discretization stops meaning anything.
template <std::floating_point Scalar>
TridiagonalOperator<Scalar> assemble(const CornerParams<Scalar>& p,
                                     const RadialGrid<Scalar>& g) {
  const Scalar h = g.h();
  const Scalar h2 = h * h;
  const Index n = g.n;
  TridiagonalOperator<Scalar> op{Vector<Scalar>(n), Vector<Scalar>(n - 1), g, p,
                                 p.criticality() < Scalar(0.5)};
  Scalar max_abs = 0;
  for (Index i = 0; i < n; ++i) {
    const Scalar v = effective_potential(p, g.node(i));
    max_abs = std::max(max_abs, std::abs(v));
    op.diag[i] = Scalar(2) / h2 + v;
  }
  if (h2 * max_abs > Scalar(1)) {
    throw std::invalid_argument(
        "assemble: h^2 * max|V| > 1, grid cannot resolve the potential");
  }
  op.offdiag.setConstant(Scalar(-1) / h2);
  return op;
}

// LDL^T-style factorization of (A - shift I) without pivoting; pivots equal
// to zero are reported so callers can retry with a perturbed shift.
template <std::floating_point Scalar>
struct TridiagonalFactor {
  Vector<Scalar> pivot;  // u_i
  Vector<Scalar> lower;  // l_i = e_{i-1}/u_{i-1}
  const Vector<Scalar>* offdiag = nullptr;
  bool ok = false;
};

template <std::floating_point Scalar>
TridiagonalFactor<Scalar> factorize_shifted(const TridiagonalOperator<Scalar>& op,
                                            Scalar shift) {
  const Index n = op.size();
  TridiagonalFactor<Scalar> f;
  f.pivot.resize(n);
  f.lower.resize(n > 0 ? n - 1 : 0);
  f.offdiag = &op.offdiag;
  f.pivot[0] = op.diag[0] - shift;
  for (Index i = 1; i < n; ++i) {
    if (f.pivot[i - 1] == Scalar(0)) return f;  // ok stays false
    f.lower[i - 1] = op.offdiag[i - 1] / f.pivot[i - 1];
    f.pivot[i] = op.diag[i] - shift - f.lower[i - 1] * op.offdiag[i - 1];
  }
  if (f.pivot[n - 1] == Scalar(0)) return f;
  f.ok = true;
  return f;
}

template <std::floating_point Scalar>
void solve_in_place(const TridiagonalFactor<Scalar>& f, Vector<Scalar>& b) {
  if (!f.ok) throw std::runtime_error("solve_in_place: factorization not valid");
  const Index n = f.pivot.size();
  const Vector<Scalar>& e = *f.offdiag;
  for (Index i = 1; i < n; ++i) b[i] -= f.lower[i - 1] * b[i - 1];
  b[n - 1] /= f.pivot[n - 1];
  for (Index i = n - 2; i >= 0; --i) b[i] = (b[i] - e[i] * b[i + 1]) / f.pivot[i];
}

enum class DerivativeMode { analytic, finite_difference };

// Residual of the closed-form ground pair pushed through the radial
// reduction: at each node,
//   | -phi''/phi - (N-1)/r phi'/phi + (k(N-2+k)-lambda)/r^2 + r^2/16 - (1+m)/2 |
// for phi(r) = exp(-r^2/8) r^{m-(N-2)/2}.  With analytic derivative ratios
// every term is exact and the maximum is pure floating-point cancellation
// noise; finite differences of phi expose the same identity at O(fd_step^2).
// The per-node combination runs in extended precision: near the inner
// truncation the individual terms reach |V(r)| ~ 1/r^2 and double rounding
// alone would leave a residual of order 1e-15/r_min^2.
template <std::floating_point Scalar>
Scalar ground_equation_residual(const CornerParams<Scalar>& p,
                                const RadialGrid<Scalar>& g,
                                DerivativeMode mode = DerivativeMode::analytic,
                                Scalar fd_step = Scalar(1e-4)) {
  const int dim = p.dim();
  const int k = p.corner();
  const long double angular = static_cast<long double>(k) * (dim - 2 + k);
  const long double lambda = static_cast<long double>(p.lambda());
  const long double m =
      std::sqrt(std::max(0.0L, static_cast<long double>(p.hardy_const()) - lambda));
  const long double expo = m - static_cast<long double>(dim - 2) / 2;
  const long double mu0 = (1 + m) / 2;
  if (mode == DerivativeMode::finite_difference && !(fd_step < g.r_min)) {
    throw std::invalid_argument(
        "ground_equation_residual: fd_step must stay below r_min");
  }
  const auto profile = [&](long double r) {
    return std::exp(-r * r / 8) * std::pow(r, expo);
  };
  long double worst = 0;
  for (Index i = 0; i < g.n; ++i) {
    const long double r = static_cast<long double>(g.node(i));
    long double d1, d2;  // phi'/phi and phi''/phi
    if (mode == DerivativeMode::analytic) {
      d1 = expo / r - r / 4;
      d2 = d1 * d1 - expo / (r * r) - 0.25L;
    } else {
      const long double h = static_cast<long double>(fd_step);
      const long double fm = profile(r - h);
      const long double f0 = profile(r);
      const long double fp = profile(r + h);
      d1 = (fp - fm) / (2 * h * f0);
      d2 = (fp - 2 * f0 + fm) / (h * h * f0);
    }
    const long double res = -d2 - (dim - 1) / r * d1 +
                            (angular - lambda) / (r * r) + r * r / 16 - mu0;
    worst = std::max(worst, std::abs(res));
  }
  return static_cast<Scalar>(worst);
}

}  // namespace cornerheat
