#pragma once

// Quadratic-form checks for sector functions.  The form of the operator
// -Lap - lambda/|x|^2 + |x|^2/16 evaluated on u = phi(r) f_{N,k} is
//   l[u] = (omega_{N,k}/2^k) int [ phi'^2
//            + ((k(N-2+k) - lambda)/r^2) phi^2 + (r^2/16) phi^2 ] r^{N-1} dr,
// bounded below by (1+m)/2 ||u||^2, with the excess given exactly by the
// ground-state substitution identity
//   l[u] - (1+m)/2 ||u||^2 = int alpha^2 |grad(u/alpha)|^2.

#include "cornerheat/corner_params.hpp"
#include "cornerheat/cutoff.hpp"
#include "cornerheat/ground_state.hpp"
#include "cornerheat/quadrature.hpp"
#include "cornerheat/separated_function.hpp"
#include "cornerheat/types.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cornerheat {

template <std::floating_point Scalar>
struct RayleighParts {
  Scalar form_value;  // l[u]
  Scalar norm_sq;     // ||u||^2
  Scalar quotient;    // l[u] / ||u||^2
};

namespace detail {

template <std::floating_point Scalar>
std::pair<Scalar, Scalar> form_and_mass(const CornerParams<Scalar>& p,
                                        const SeparatedFunction<Scalar>& u) {
  u.validate();
  const Vector<Scalar> du = radial_derivative(u);
  const Scalar angular = Scalar(p.corner()) * Scalar(p.dim() - 2 + p.corner());
  const Index n = u.r.size();
  Vector<Scalar> form(n), mass(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar r = u.r[i];
    const Scalar weight = std::pow(r, Scalar(p.dim() - 1));
    const Scalar phi2 = u.phi[i] * u.phi[i];
    form[i] = (du[i] * du[i] +
               ((angular - p.lambda()) / (r * r) + r * r / 16) * phi2) *
              weight;
    mass[i] = phi2 * weight;
  }
  const Scalar w = sector_weight(p);
  return {w * trapezoid(u.r, form), w * trapezoid(u.r, mass)};
}

}  // namespace detail

template <std::floating_point Scalar>
RayleighParts<Scalar> rayleigh_quotient(const CornerParams<Scalar>& p,
                                        const SeparatedFunction<Scalar>& u) {
  const auto [form_value, norm_sq] = detail::form_and_mass(p, u);
  if (norm_sq == Scalar(0)) {
    throw std::invalid_argument("rayleigh_quotient: zero function");
  }
  return {form_value, norm_sq, form_value / norm_sq};
}

template <std::floating_point Scalar>
struct IdentityCheck {
  Scalar lhs;      // l[u] - (1+m)/2 ||u||^2
  Scalar rhs;      // int alpha^2 |grad(u/alpha)|^2
  Scalar abs_err;  // |lhs - rhs|
};

// In the sector, alpha^2 |grad(u/alpha)|^2 reduces to
// (phi' - phi * alpha'/alpha)^2 r^{N-1}, so the ground profile itself never
// needs to be evaluated and the integrand stays finite up to r = 0.
template <std::floating_point Scalar>
IdentityCheck<Scalar> substitution_identity_check(
    const CornerParams<Scalar>& p, const SeparatedFunction<Scalar>& u) {
  const auto [form_value, norm_sq] = detail::form_and_mass(p, u);
  const Vector<Scalar> du = radial_derivative(u);
  const Index n = u.r.size();
  Vector<Scalar> f(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar r = u.r[i];
    const Scalar g = du[i] - u.phi[i] * ground_radial_log_deriv(p, r);
    f[i] = g * g * std::pow(r, Scalar(p.dim() - 1));
  }
  const Scalar rhs = sector_weight(p) * trapezoid(u.r, f);
  const Scalar lhs = form_value - ground_eigenvalue(p) * norm_sq;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

template <std::floating_point Scalar>
struct SharpnessRow {
  Scalar epsilon;
  Scalar quotient;           // Rayleigh quotient of alpha * psi_eps
  Scalar gap;                // quotient - (1+m)/2
  Scalar gap_times_log_eps;  // gap * |log eps|
  Scalar trial_norm;         // L^2 norm of the trial function
};

// Rayleigh-quotient gaps of the cutoff trial functions alpha * psi_eps for
// a list of cutoff scales.  Along a decreasing eps list the gaps decrease
// toward zero; at the critical coupling they do so like 1/|log eps|, so the
// scaled column stays bounded.
template <std::floating_point Scalar>
std::vector<SharpnessRow<Scalar>> sharpness_scan(const CornerParams<Scalar>& p,
                                                 const std::vector<Scalar>& eps_list,
                                                 Index min_nodes = 200000) {
  std::vector<SharpnessRow<Scalar>> rows;
  rows.reserve(eps_list.size());
  for (const Scalar eps : eps_list) {
    const auto c = build_cutoff(eps, min_nodes);
    const Index n = c.r.size();
    SeparatedFunction<Scalar> trial{p, c.r, Vector<Scalar>(n), Vector<Scalar>(n)};
    for (Index i = 0; i < n; ++i) {
      const Scalar r = c.r[i];
      const Scalar a = ground_radial_profile(p, r);
      trial.phi[i] = a * c.psi[i];
      trial.dphi[i] =
          a * (ground_radial_log_deriv(p, r) * c.psi[i] + c.dpsi[i]);
    }
    const auto parts = rayleigh_quotient(p, trial);
    const Scalar gap = parts.quotient - ground_eigenvalue(p);
    rows.push_back({eps, parts.quotient, gap,
                    gap * std::abs(std::log(eps)), std::sqrt(parts.norm_sq)});
  }
  return rows;
}

}  // namespace cornerheat
