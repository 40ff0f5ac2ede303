#pragma once

// Eigenpairs of the discretized radial operator.  Eigenvalues come from
// Sturm-sequence bisection inside Gershgorin brackets, so the index of every
// returned eigenvalue is certified by the count; eigenvectors come from
// inverse iteration with pivot-free tridiagonal solves.

#include "cornerheat/ground_state.hpp"
#include "cornerheat/tridiagonal.hpp"
#include "cornerheat/types.hpp"

#include <Eigen/QR>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace cornerheat {

// Number of eigenvalues of the operator strictly below x.
template <std::floating_point Scalar>
Index sturm_count_below(const Vector<Scalar>& diag, const Vector<Scalar>& offdiag,
                        Scalar x) {
  const Index n = diag.size();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Index count = 0;
  Scalar u = diag[0] - x;
  if (u < Scalar(0)) ++count;
  for (Index i = 1; i < n; ++i) {
    const Scalar e = offdiag[i - 1];
    // recurrence on LDL^T pivots; a vanished pivot is replaced in the
    // standard way to keep the sign count exact
    const Scalar v = (u != Scalar(0)) ? e * e / u : std::abs(e) / eps;
    u = diag[i] - x - v;
    if (u < Scalar(0)) ++count;
  }
  return count;
}

template <std::floating_point Scalar>
Index sturm_count_below(const TridiagonalOperator<Scalar>& op, Scalar x) {
  return sturm_count_below(op.diag, op.offdiag, x);
}

template <std::floating_point Scalar>
struct SpectralResult {
  Vector<Scalar> eigenvalues;  // ascending
  Matrix<Scalar> eigenvectors; // columns, unit norm in the h-weighted metric
  Vector<Scalar> residuals;    // ||A v - mu v||_h per pair
  Scalar h = 0;                // node spacing of the originating grid
  Index grid_n = 0;

  // discrete inner product matching the corner L^2 pairing
  Scalar dot(const Vector<Scalar>& a, const Vector<Scalar>& b) const {
    return h * a.dot(b);
  }
};

namespace detail {

// Bisect inside [lo, hi] for the eigenvalue of certified index k (0-based).
// The upper end is first tightened by doubling from lo, which keeps the
// bisection range near the eigenvalue scale instead of the Gershgorin one.
template <std::floating_point Scalar>
Scalar bisect_eigenvalue(const TridiagonalOperator<Scalar>& op, Index k,
                         Scalar lo, Scalar hi, Scalar tol) {
  Scalar width = std::max(Scalar(1), std::abs(lo));
  while (lo + width < hi && sturm_count_below(op, lo + width) <= k) width *= 2;
  hi = std::min(hi, lo + width);
  while (hi - lo > tol) {
    const Scalar mid = lo + (hi - lo) / 2;
    if (mid == lo || mid == hi) break;  // interval at rounding resolution
    if (sturm_count_below(op, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

template <std::floating_point Scalar>
Vector<Scalar> inverse_iteration(const TridiagonalOperator<Scalar>& op,
                                 Scalar mu, Scalar tol,
                                 const Matrix<Scalar>& prev, Index nprev,
                                 const Vector<Scalar>& gaps,
                                 Scalar* residual_out) {
  const Index n = op.size();
  const Scalar scale = op.inf_norm();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar target = Scalar(1e3) * eps * scale;
  const Scalar accept = Scalar(10) * tol * scale;

  std::mt19937_64 rng(0x5eed5eedULL + static_cast<unsigned long long>(nprev));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector<Scalar> start(n);
  for (Index i = 0; i < n; ++i) start[i] = Scalar(unif(rng));
  start /= start.norm();

  Scalar shift = mu;
  Scalar best_res = std::numeric_limits<Scalar>::max();
  Vector<Scalar> best = start;
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto fac = factorize_shifted(op, shift);
    if (!fac.ok) {
      shift += Scalar(1e-12) * scale;
      continue;
    }
    Vector<Scalar> v = start;
    for (int it = 0; it < 20; ++it) {
      solve_in_place(fac, v);
      if (!v.allFinite()) break;  // pivot blowup, retry with perturbed shift
      // re-orthogonalize against close neighbors to keep clusters clean
      for (Index j = 0; j < nprev; ++j) {
        if (gaps[j] < Scalar(1e-6) * std::max(Scalar(1), std::abs(mu))) {
          v -= (prev.col(j).dot(v) / prev.col(j).squaredNorm()) * prev.col(j);
        }
      }
      const Scalar norm = v.norm();
      if (norm == Scalar(0)) break;
      v /= norm;
      const Scalar res = (op.apply(v) - mu * v).norm();
      if (res < best_res) {
        best_res = res;
        best = v;
      }
      if (res <= target) break;
    }
    if (best_res <= target) break;
    shift += Scalar(1e-12) * scale;
  }
  if (best_res > accept) {
    throw std::runtime_error(
        "inverse_iteration: stagnated, residual above 10*tol*scale");
  }
  if (residual_out) *residual_out = best_res;
  return best;
}

}  // namespace detail

// The `count` smallest eigenvalues, each bracketed to width <= tol, with
// h-normalized eigenvectors.  Ground vectors are sign-normalized so that
// their largest component is positive.
template <std::floating_point Scalar>
SpectralResult<Scalar> lowest_eigenvalues(const TridiagonalOperator<Scalar>& op,
                                          Index count, Scalar tol) {
  if (count < 1) throw std::invalid_argument("lowest_eigenvalues: count >= 1");
  if (!(tol > Scalar(0))) throw std::invalid_argument("lowest_eigenvalues: tol > 0");
  const Index n = op.size();
  if (count > n) throw std::invalid_argument("lowest_eigenvalues: count exceeds size");

  const auto [glo, ghi] = op.gershgorin_bounds();
  SpectralResult<Scalar> out;
  out.h = op.grid.h();
  out.grid_n = n;
  out.eigenvalues.resize(count);
  out.eigenvectors.resize(n, count);
  out.residuals.resize(count);

  for (Index k = 0; k < count; ++k) {
    out.eigenvalues[k] = detail::bisect_eigenvalue(op, k, glo, ghi, tol);
  }

  Vector<Scalar> gaps(count);
  for (Index k = 0; k < count; ++k) {
    gaps.head(k).setZero();
    for (Index j = 0; j < k; ++j) {
      gaps[j] = std::abs(out.eigenvalues[k] - out.eigenvalues[j]);
    }
    Scalar res = 0;
    Vector<Scalar> v = detail::inverse_iteration(op, out.eigenvalues[k], tol,
                                                 out.eigenvectors, k, gaps, &res);
    Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < Scalar(0)) v = -v;
    out.eigenvectors.col(k) = v / std::sqrt(out.h);  // unit h-norm
    out.residuals[k] = res;
  }
  return out;
}

// Exact discrete ground state sampled from the closed form
// w0(r) = r^{(N-1)/2} phi(r) = r^{m+1/2} exp(-r^2/8), unit h-norm.
template <std::floating_point Scalar>
Vector<Scalar> ground_sample(const CornerParams<Scalar>& p,
                             const RadialGrid<Scalar>& g) {
  Vector<Scalar> w(g.n);
  const Scalar q = p.criticality() + Scalar(0.5);
  for (Index i = 0; i < g.n; ++i) {
    const Scalar r = g.node(i);
    w[i] = std::pow(r, q) * std::exp(-r * r / 8);
  }
  w /= std::sqrt(g.h()) * w.norm();
  return w;
}

template <std::floating_point Scalar>
struct GroundStateReport {
  Scalar mu0;
  Scalar mu0_exact;
  Scalar abs_err;
  Scalar eigvec_l2_distance;
  bool sign_definite;
};

template <std::floating_point Scalar>
GroundStateReport<Scalar> ground_state_check(const CornerParams<Scalar>& p,
                                             const RadialGrid<Scalar>& g,
                                             Scalar tol) {
  const auto op = assemble(p, g);
  const auto spec = lowest_eigenvalues(op, Index(1), tol);
  const Vector<Scalar> exact = ground_sample(p, g);
  const Vector<Scalar> v = spec.eigenvectors.col(0);
  const Scalar h = g.h();
  const Scalar dplus = std::sqrt(h) * (v - exact).norm();
  const Scalar dminus = std::sqrt(h) * (v + exact).norm();
  // sign pattern judged above the inverse-iteration noise floor; the exact
  // vector decays below that floor near both truncation ends
  const Scalar floor = Scalar(1e-10) * v.cwiseAbs().maxCoeff();
  bool positive = true, negative = true;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < floor) continue;
    positive = positive && v[i] > Scalar(0);
    negative = negative && v[i] < Scalar(0);
  }
  return {spec.eigenvalues[0], ground_eigenvalue(p),
          std::abs(spec.eigenvalues[0] - ground_eigenvalue(p)),
          std::min(dplus, dminus), positive || negative};
}

template <std::floating_point Scalar>
struct LadderReport {
  Vector<Scalar> eigenvalues;
  Vector<Scalar> deviations;  // |mu_n - (n + (1+m)/2)|
  Vector<Scalar> gaps;        // mu_{n+1} - mu_n
};

// Deviation of the lowest `count` sector eigenvalues from the equally
// spaced ladder n + (1+m)/2.
template <std::floating_point Scalar>
LadderReport<Scalar> radial_ladder_check(const CornerParams<Scalar>& p,
                                         const RadialGrid<Scalar>& g,
                                         Index count, Scalar tol = Scalar(1e-10)) {
  if (count > 6) throw std::invalid_argument("radial_ladder_check: count <= 6");
  const auto op = assemble(p, g);
  const auto spec = lowest_eigenvalues(op, count, tol);
  LadderReport<Scalar> rep;
  rep.eigenvalues = spec.eigenvalues;
  rep.deviations.resize(count);
  rep.gaps.resize(count > 1 ? count - 1 : 0);
  const Scalar mu0 = ground_eigenvalue(p);
  for (Index i = 0; i < count; ++i) {
    rep.deviations[i] = std::abs(spec.eigenvalues[i] - (Scalar(i) + mu0));
    if (i > 0) rep.gaps[i - 1] = spec.eigenvalues[i] - spec.eigenvalues[i - 1];
  }
  return rep;
}

template <std::floating_point Scalar>
struct ExtrapolationResult {
  Scalar value;                    // extrapolated eigenvalue
  Vector<Scalar> r_min_points;
  Vector<Scalar> eigenvalues;      // direct values at those truncations
  Scalar fit_residual;             // rms misfit of the model
  double max_solve_ms = 0;         // slowest single truncated solve
};

struct ExtrapolationOptions {
  double r_min_start = 0.02;
  double ratio = 2.0;
  int points = 9;
  double r_max = 12.0;
  int nodes_per_r_min = 12;  // h = r_min / nodes_per_r_min
  double tol = 1e-10;
};

// Truncation-limit estimate of a low eigenvalue in the strongly singular
// regime m < 1/2, where the Dirichlet wall at r_min converges only like
// r_min^{2m} (and like 1/|log r_min| at m = 0).  Solves on a sequence of
// shrinking truncations, with h tied to r_min, and extrapolates a cubic
// least-squares model in the appropriate convergence variable.
template <std::floating_point Scalar>
ExtrapolationResult<Scalar> extrapolate_eigenvalue(
    const CornerParams<Scalar>& p, Index index = 0,
    const ExtrapolationOptions& opt = {}) {
  const Scalar m = p.criticality();
  const int np = opt.points;
  ExtrapolationResult<Scalar> out;
  out.r_min_points.resize(np);
  out.eigenvalues.resize(np);

  Scalar a = Scalar(opt.r_min_start);
  for (int i = 0; i < np; ++i, a /= Scalar(opt.ratio)) {
    const auto t0 = std::chrono::steady_clock::now();
    const Scalar h = a / Scalar(opt.nodes_per_r_min);
    const Index n = static_cast<Index>((Scalar(opt.r_max) - a) / h) - 1;
    RadialGrid<Scalar> g(a, Scalar(opt.r_max), n);
    const auto op = assemble(p, g);
    const auto [glo, ghi] = op.gershgorin_bounds();
    out.r_min_points[i] = a;
    out.eigenvalues[i] = detail::bisect_eigenvalue(op, index, glo, ghi,
                                                   Scalar(opt.tol));
    out.max_solve_ms = std::max(
        out.max_solve_ms, std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
  }

  // convergence variable: 1/|log a| at (numerically) critical coupling,
  // a^{2m} otherwise
  Vector<Scalar> x(np);
  for (int i = 0; i < np; ++i) {
    const Scalar ai = out.r_min_points[i];
    x[i] = (m < Scalar(0.05)) ? Scalar(1) / std::abs(std::log(ai))
                              : std::pow(ai, 2 * m);
  }
  constexpr int order = 3;
  Matrix<Scalar> basis(np, order + 1);
  for (int i = 0; i < np; ++i) {
    Scalar t = 1;
    for (int j = 0; j <= order; ++j, t *= x[i]) basis(i, j) = t;
  }
  Vector<Scalar> coef = basis.colPivHouseholderQr().solve(out.eigenvalues);
  out.value = coef[0];
  out.fit_residual = std::sqrt((basis * coef - out.eigenvalues).squaredNorm() /
                               Scalar(np));
  return out;
}

}  // namespace cornerheat
