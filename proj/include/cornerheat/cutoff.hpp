#pragma once

// Mollified two-sided radial cutoff psi_eps = eta_eps * rho_eps, sampled on
// a log-spaced grid.  eta_eps ramps up logarithmically on [eps^2, eps] and
// back down linearly on [1/eps, 1/eps^2]; rho_eps is a unit-mass bump of
// width eps^4.  The family satisfies
//   supp(psi) in [eps^2 - eps^4, eps^{-2} + eps^4],
//   0 <= psi <= 1 with psi = 1 on [eps + eps^4, 1/eps - eps^4],
// and its weighted gradient integrals vanish as eps -> 0, which drives the
// sharpness scans in hardy.hpp.

#include "cornerheat/quadrature.hpp"
#include "cornerheat/types.hpp"

#include <cmath>
#include <stdexcept>

namespace cornerheat {

template <std::floating_point Scalar>
Scalar cutoff_ramp_value(Scalar eps, Scalar r) {
  if (r <= eps * eps || r >= Scalar(1) / (eps * eps)) return Scalar(0);
  if (r < eps) return (std::log(r) - 2 * std::log(eps)) / (-std::log(eps));
  if (r <= Scalar(1) / eps) return Scalar(1);
  return (Scalar(1) - r * eps * eps) / (Scalar(1) - eps);
}

template <std::floating_point Scalar>
struct CutoffSequence {
  Scalar epsilon;
  Vector<Scalar> r;     // log-spaced nodes covering [eps^2/2, 2/eps^2]
  Vector<Scalar> eta;   // ramp samples
  Vector<Scalar> psi;   // mollified ramp, in [0, 1]
  Vector<Scalar> dpsi;  // centered differences of psi
  Vector<Scalar> rho_nodes;  // mollifier quadrature grid on [-eps^4, eps^4]
  Vector<Scalar> rho;        // normalized mollifier samples
  Scalar rho_mass;           // mass of rho on its grid after normalization
};

// min_nodes controls the log-grid resolution; the default resolves the
// mollifier width for eps >= 1e-2 and is accurate for smaller eps as well
// because psi degenerates to the piecewise ramp between grid nodes.
template <std::floating_point Scalar>
CutoffSequence<Scalar> build_cutoff(Scalar eps, Index min_nodes = 200000) {
  if (!(eps > Scalar(0)) || !(eps < Scalar(0.25))) {
    throw std::invalid_argument("build_cutoff: requires 0 < eps < 1/4");
  }
  const Scalar eps4 = eps * eps * eps * eps;
  if (!(eps + eps4 < Scalar(1) / eps - eps4)) {
    throw std::invalid_argument("build_cutoff: eps too close to 1/4");
  }

  CutoffSequence<Scalar> c;
  c.epsilon = eps;

  // mollifier c0 * exp(-1/(1-x^2)) scaled to [-eps^4, eps^4], unit mass
  const Index ns = 513;
  c.rho_nodes.resize(ns);
  c.rho.resize(ns);
  const Scalar ds = 2 * eps4 / Scalar(ns - 1);
  for (Index j = 0; j < ns; ++j) {
    const Scalar s = -eps4 + Scalar(j) * ds;
    const Scalar x = s / eps4;
    const Scalar x2 = x * x;
    c.rho_nodes[j] = s;
    c.rho[j] = x2 < Scalar(1) ? std::exp(-Scalar(1) / (Scalar(1) - x2)) : Scalar(0);
  }
  c.rho /= trapezoid_uniform(ds, c.rho);
  c.rho_mass = trapezoid_uniform(ds, c.rho);

  const Scalar lo = eps * eps / 2;
  const Scalar hi = 2 / (eps * eps);
  const Index m = min_nodes;
  c.r.resize(m);
  c.eta.resize(m);
  c.psi.resize(m);
  c.dpsi.resize(m);
  const Scalar dlog = (std::log(hi) - std::log(lo)) / Scalar(m - 1);
  for (Index i = 0; i < m; ++i) c.r[i] = lo * std::exp(Scalar(i) * dlog);

  const Scalar plateau_lo = eps + eps4, plateau_hi = Scalar(1) / eps - eps4;
  const Scalar supp_lo = eps * eps - eps4, supp_hi = Scalar(1) / (eps * eps) + eps4;
  for (Index i = 0; i < m; ++i) {
    const Scalar ri = c.r[i];
    c.eta[i] = cutoff_ramp_value(eps, ri);
    if (ri >= plateau_lo && ri <= plateau_hi) {
      c.psi[i] = Scalar(1);
    } else if (ri <= supp_lo || ri >= supp_hi) {
      c.psi[i] = Scalar(0);
    } else {
      // convolution against the mollifier on its own quadrature grid
      Scalar acc = 0;
      for (Index j = 0; j < ns; ++j) {
        const Scalar w = (j == 0 || j == ns - 1) ? Scalar(0.5) : Scalar(1);
        acc += w * c.rho[j] * cutoff_ramp_value(eps, ri - c.rho_nodes[j]);
      }
      c.psi[i] = acc * ds;
    }
  }
  for (Index i = 1; i + 1 < m; ++i) {
    c.dpsi[i] = (c.psi[i + 1] - c.psi[i - 1]) / (c.r[i + 1] - c.r[i - 1]);
  }
  c.dpsi[0] = c.dpsi[m - 1] = Scalar(0);
  return c;
}

// int_0^inf exp(-r^2/4) r^{1+zeta} |psi'(r)|^2 dr on the cutoff grid.
template <std::floating_point Scalar>
Scalar weighted_gradient_integral(const CutoffSequence<Scalar>& c, Scalar zeta) {
  if (!(zeta >= Scalar(0))) {
    throw std::invalid_argument("weighted_gradient_integral: requires zeta >= 0");
  }
  Vector<Scalar> f(c.r.size());
  for (Index i = 0; i < c.r.size(); ++i) {
    f[i] = std::exp(-c.r[i] * c.r[i] / 4) * std::pow(c.r[i], Scalar(1) + zeta) *
           c.dpsi[i] * c.dpsi[i];
  }
  return trapezoid(c.r, f);
}

}  // namespace cornerheat
