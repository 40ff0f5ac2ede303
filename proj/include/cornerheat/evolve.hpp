#pragma once

// Time stepping of the self-similar problem  d_s v + A v = 0  in the
// Liouville-form radial sector, where A is the symmetric tridiagonal
// discretization from tridiagonal.hpp.  Node vectors carry the full corner
// calibration: a sector function u = phi(r) f_{N,k} is represented by
//   V_j = sqrt(omega_{N,k}/2^k) r_j^{(N-1)/2} phi(r_j),
// so the h-weighted inner product h * sum V_j W_j matches the corner L^2
// pairing and every norm below is directly comparable with the closed forms.

#include "cornerheat/corner_params.hpp"
#include "cornerheat/ground_state.hpp"
#include "cornerheat/radial_grid.hpp"
#include "cornerheat/separated_function.hpp"
#include "cornerheat/spectrum.hpp"
#include "cornerheat/tridiagonal.hpp"
#include "cornerheat/types.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cornerheat {

// Crank-Nicolson step with the factors of (I + ds/2 A) cached.
// Unconditionally stable for the nonnegative operator; second order in ds.
template <std::floating_point Scalar>
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const TridiagonalOperator<Scalar>& op, Scalar ds)
      : op_(&op), ds_(ds) {
    if (!(ds > Scalar(0))) throw std::invalid_argument("CrankNicolson: ds > 0");
    const Index n = op.size();
    implicit_diag_ = Vector<Scalar>::Ones(n) + (ds / 2) * op.diag;
    implicit_off_ = (ds / 2) * op.offdiag;
    pivot_.resize(n);
    lower_.resize(n - 1);
    pivot_[0] = implicit_diag_[0];
    for (Index i = 1; i < n; ++i) {
      if (pivot_[i - 1] == Scalar(0)) {
        throw std::runtime_error("CrankNicolson: zero pivot in factorization");
      }
      lower_[i - 1] = implicit_off_[i - 1] / pivot_[i - 1];
      pivot_[i] = implicit_diag_[i] - lower_[i - 1] * implicit_off_[i - 1];
    }
    if (pivot_[n - 1] == Scalar(0)) {
      throw std::runtime_error("CrankNicolson: zero pivot in factorization");
    }
  }

  Scalar ds() const { return ds_; }

  void step_in_place(Vector<Scalar>& v) const {
    const Index n = v.size();
    if (n != pivot_.size()) throw std::invalid_argument("CrankNicolson: size mismatch");
    // rhs = (I - ds/2 A) v
    Vector<Scalar> rhs(n);
    for (Index i = 0; i < n; ++i) {
      Scalar acc = (Scalar(2) - implicit_diag_[i]) * v[i];
      if (i > 0) acc -= implicit_off_[i - 1] * v[i - 1];
      if (i + 1 < n) acc -= implicit_off_[i] * v[i + 1];
      rhs[i] = acc;
    }
    for (Index i = 1; i < n; ++i) rhs[i] -= lower_[i - 1] * rhs[i - 1];
    rhs[n - 1] /= pivot_[n - 1];
    for (Index i = n - 2; i >= 0; --i) {
      rhs[i] = (rhs[i] - implicit_off_[i] * rhs[i + 1]) / pivot_[i];
    }
    v.swap(rhs);
  }

 private:
  const TridiagonalOperator<Scalar>* op_;
  Scalar ds_;
  Vector<Scalar> implicit_diag_, implicit_off_;
  Vector<Scalar> pivot_, lower_;
};

template <std::floating_point Scalar>
Vector<Scalar> step(const Vector<Scalar>& v, const TridiagonalOperator<Scalar>& op,
                    Scalar ds) {
  CrankNicolsonStepper<Scalar> s(op, ds);
  Vector<Scalar> out = v;
  s.step_in_place(out);
  return out;
}

// Decay rate of the discrete ground mode under one CN step,
// -log(g)/ds with g = (1 - ds mu/2)/(1 + ds mu/2).  Differs from mu by
// O(ds^2 mu^3); it is the rate the discrete semigroup actually realizes.
template <std::floating_point Scalar>
Scalar cn_effective_rate(Scalar mu, Scalar ds) {
  return -std::log((Scalar(1) - ds * mu / 2) / (Scalar(1) + ds * mu / 2)) / ds;
}

template <std::floating_point Scalar>
struct EvolutionTrace {
  Vector<Scalar> s_values;             // snapshot times
  std::vector<Vector<Scalar>> snapshots;  // v(s) node vectors
  Vector<Scalar> l2_norms;             // ||v(s)||_h at snapshot times
  Vector<Scalar> s_norm_values;        // denser norm cadence for fitting
  Vector<Scalar> norms;
  Scalar h = 0;
  Scalar ds = 0;                       // step used to generate the trace
  Scalar v0_norm = 0;                  // ||v(0)||_h = K-weighted norm of u0
};

struct EvolveOptions {
  double ds = 1e-3;
  double s_end = 8.0;
  int snapshot_stride = 100;  // snapshots every stride steps
  int norm_stride = 10;
};

template <std::floating_point Scalar>
Scalar h_norm(const Vector<Scalar>& v, Scalar h) {
  return std::sqrt(h) * v.norm();
}

// ||w(s)|| = ||u(t)||: the plain L^2 norm of the solution in physical
// variables, obtained from the v snapshot through the K^{-1/2} weight.
template <std::floating_point Scalar>
Scalar w_norm(const Vector<Scalar>& v, const RadialGrid<Scalar>& g) {
  Scalar acc = 0;
  for (Index i = 0; i < v.size(); ++i) {
    const Scalar r = g.node(i);
    acc += v[i] * v[i] * std::exp(-r * r / 4);
  }
  return std::sqrt(g.h() * acc);
}

template <std::floating_point Scalar>
EvolutionTrace<Scalar> evolve(const TridiagonalOperator<Scalar>& op,
                              const Vector<Scalar>& v0,
                              const EvolveOptions& opt = {}) {
  if (v0.size() != op.size()) throw std::invalid_argument("evolve: size mismatch");
  const Scalar ds = Scalar(opt.ds);
  const long steps = std::lround(opt.s_end / opt.ds);
  CrankNicolsonStepper<Scalar> stepper(op, ds);
  const Scalar h = op.grid.h();

  EvolutionTrace<Scalar> trace;
  trace.h = h;
  trace.ds = ds;
  trace.v0_norm = h_norm(v0, h);
  const long nsnap = steps / opt.snapshot_stride + 1;
  const long nnorm = steps / opt.norm_stride + 1;
  trace.s_values.resize(nsnap);
  trace.l2_norms.resize(nsnap);
  trace.snapshots.reserve(nsnap);
  trace.s_norm_values.resize(nnorm);
  trace.norms.resize(nnorm);

  Vector<Scalar> v = v0;
  long isnap = 0, inorm = 0;
  for (long j = 0; j <= steps; ++j) {
    const Scalar s = Scalar(j) * ds;
    if (j % opt.norm_stride == 0 && inorm < nnorm) {
      trace.s_norm_values[inorm] = s;
      trace.norms[inorm] = h_norm(v, h);
      ++inorm;
    }
    if (j % opt.snapshot_stride == 0 && isnap < nsnap) {
      trace.s_values[isnap] = s;
      trace.l2_norms[isnap] = h_norm(v, h);
      trace.snapshots.push_back(v);
      ++isnap;
    }
    if (j < steps) stepper.step_in_place(v);
  }
  trace.s_norm_values.conservativeResize(inorm);
  trace.norms.conservativeResize(inorm);
  trace.s_values.conservativeResize(isnap);
  trace.l2_norms.conservativeResize(isnap);
  return trace;
}

// Initial node vector for the v problem from the radial profile of u0.
// v0 = K^{1/2} u0, so the profile picks up the weight exp(r^2/8); data whose
// weighted tail has not decayed at the outer truncation is rejected.
template <std::floating_point Scalar, typename ProfileFn>
Vector<Scalar> initial_data_from_profile(const CornerParams<Scalar>& p,
                                         const RadialGrid<Scalar>& g,
                                         ProfileFn&& u0_profile) {
  Vector<Scalar> v0(g.n);
  const Scalar w = std::sqrt(sector_weight(p));
  for (Index i = 0; i < g.n; ++i) {
    const Scalar r = g.node(i);
    v0[i] = w * std::pow(r, Scalar(p.dim() - 1) / 2) * std::exp(r * r / 8) *
            Scalar(u0_profile(r));
  }
  const Scalar peak = v0.cwiseAbs().maxCoeff();
  if (peak == Scalar(0)) return v0;
  const Scalar tail = std::abs(v0[g.n - 1]);
  if (tail > Scalar(1e-8) * peak) {
    throw std::invalid_argument(
        "initial_data_from_profile: K-weighted data has not decayed at r_max; "
        "initial data must lie in the Gaussian-weighted L^2 class");
  }
  return v0;
}

// Coefficients of v0 against the computed eigenvectors,
// beta_n = h <v0, e_n>.  The partial Parseval sum never exceeds ||v0||^2.
template <std::floating_point Scalar>
Vector<Scalar> spectral_expand(const Vector<Scalar>& v0,
                               const SpectralResult<Scalar>& spec) {
  if (v0.size() != spec.eigenvectors.rows()) {
    throw std::invalid_argument("spectral_expand: grid mismatch");
  }
  Vector<Scalar> beta(spec.eigenvalues.size());
  for (Index k = 0; k < beta.size(); ++k) {
    beta[k] = spec.dot(v0, spec.eigenvectors.col(k));
  }
  return beta;
}

template <std::floating_point Scalar>
struct DecayReport {
  Scalar fitted_exponent;   // slope of log||v(s)|| vs s over the fit window
  Scalar exponent_exact;    // -(1+m)/2
  Scalar fit_rel_err;       // |fitted - exact| / |exact|
  Scalar max_bound_ratio;   // max over snapshots of the hard-bound ratio
  Scalar u0_weighted_norm;  // ||u0||_{L^2(K)} = ||v0||
  bool fit_ok;
};

// Least-squares slope of log||v(s)|| over [s_burn, s_end].  The hard decay
// bound is checked in physical variables at every snapshot:
// (1+t)^{(1+m)/2} ||u(t)|| <= ||u0||_{L^2(K)}, with ||u(t)|| = ||w(s)||.
template <std::floating_point Scalar>
DecayReport<Scalar> decay_fit(const EvolutionTrace<Scalar>& trace,
                              const CornerParams<Scalar>& p,
                              const RadialGrid<Scalar>& g,
                              Scalar s_burn = Scalar(1)) {
  DecayReport<Scalar> rep{};
  rep.exponent_exact = -ground_eigenvalue(p);
  rep.u0_weighted_norm = trace.v0_norm;

  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  long count = 0;
  for (Index i = 0; i < trace.s_norm_values.size(); ++i) {
    const Scalar s = trace.s_norm_values[i];
    if (s < s_burn || trace.norms[i] <= Scalar(0)) continue;
    const Scalar y = std::log(trace.norms[i]);
    sx += s; sy += y; sxx += s * s; sxy += s * y;
    ++count;
  }
  const Scalar span = trace.s_norm_values.size() > 0
                          ? trace.s_norm_values[trace.s_norm_values.size() - 1] - s_burn
                          : Scalar(0);
  rep.fit_ok = count >= 3 && span >= Scalar(3);
  if (rep.fit_ok) {
    const Scalar denom = Scalar(count) * sxx - sx * sx;
    rep.fitted_exponent = (Scalar(count) * sxy - sx * sy) / denom;
    rep.fit_rel_err = std::abs(rep.fitted_exponent - rep.exponent_exact) /
                      std::abs(rep.exponent_exact);
  }

  rep.max_bound_ratio = 0;
  for (Index i = 0; i < trace.s_values.size(); ++i) {
    const Scalar u_norm = w_norm(trace.snapshots[i], g);
    const Scalar ratio = std::exp(ground_eigenvalue(p) * trace.s_values[i]) *
                         u_norm / trace.v0_norm;
    rep.max_bound_ratio = std::max(rep.max_bound_ratio, ratio);
  }
  return rep;
}

// Scaled distance to the leading profile,
//   e^{mu0 s} || v(s) - beta0 e^{-mu0 s} e0 ||,
// per snapshot, with the discrete ground pair (mu0, e0) and beta0 the first
// expansion coefficient of v0.  Tends to zero at the spectral-gap rate.
// The subtracted mode decays at the rate the stepped semigroup realizes for
// it, so single-mode data yields a series at round-off level.
template <std::floating_point Scalar>
Vector<Scalar> profile_error(const EvolutionTrace<Scalar>& trace,
                             const SpectralResult<Scalar>& spec,
                             Scalar beta0) {
  const Scalar mu0 = spec.eigenvalues[0];
  const Scalar mu_lead = trace.ds > Scalar(0)
                             ? cn_effective_rate(mu0, trace.ds)
                             : mu0;
  Vector<Scalar> series(trace.s_values.size());
  for (Index i = 0; i < trace.s_values.size(); ++i) {
    const Scalar s = trace.s_values[i];
    const Vector<Scalar> lead =
        beta0 * std::exp(-mu_lead * s) * spec.eigenvectors.col(0);
    series[i] = std::exp(mu0 * s) *
                h_norm<Scalar>(trace.snapshots[i] - lead, trace.h);
  }
  return series;
}

// First normalized expansion coefficient by radial quadrature,
//   beta = ||alpha||^{-1} (omega/2^k) int phi_u0(r) e^{r^2/8} phi_alpha(r)
//          r^{N-1} dr,
// consistent with the spectral route beta0 / ||alpha||.
template <std::floating_point Scalar>
Scalar beta_coefficient(const CornerParams<Scalar>& p,
                        const SeparatedFunction<Scalar>& u0) {
  u0.validate();
  const Index n = u0.r.size();
  Vector<Scalar> f(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar r = u0.r[i];
    f[i] = u0.phi[i] * std::exp(r * r / 8) * ground_radial_profile(p, r) *
           std::pow(r, Scalar(p.dim() - 1));
  }
  return sector_weight(p) * trapezoid(u0.r, f) / ground_norm(p);
}

}  // namespace cornerheat
