#pragma once

// Closed-form ground eigenpair of the harmonic oscillator with inverse-square
// potential, -Lap - lambda/|x|^2 + |x|^2/16, on the corner R^{N-k} x (0,inf)^k.
// The ground eigenfunction separates into a radial factor
//   phi(r) = exp(-r^2/8) r^{m - (N-2)/2}
// and the degree-k product harmonic (x_{N-k+1}...x_N)/|x|^k; its eigenvalue
// is (1+m)/2 with m the criticality index.

#include "cornerheat/corner_params.hpp"
#include "cornerheat/special.hpp"
#include "cornerheat/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cornerheat {

// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
template <std::floating_point Scalar = double>
Scalar sphere_surface_area(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_surface_area: dim must be >= 1");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return Scalar(2) * std::pow(pi, Scalar(dim) / 2) /
         gamma_lanczos(Scalar(dim) / 2);
}

// Moment of the squared product harmonic over the unit sphere,
//   int_{S^{N-1}} sigma_{N-k+1}^2 ... sigma_N^2 dsigma
//     = 2 pi^{N/2} / (2^k Gamma(N/2 + k)).
template <std::floating_point Scalar = double>
Scalar sphere_moment(int dim, int corner) {
  if (dim < 2) throw std::invalid_argument("sphere_moment: dim must be >= 2");
  if (corner < 0 || corner > dim) {
    throw std::invalid_argument("sphere_moment: corner must lie in [0, dim]");
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return Scalar(2) * std::pow(pi, Scalar(dim) / 2) /
         (std::pow(Scalar(2), Scalar(corner)) *
          gamma_lanczos(Scalar(dim) / 2 + Scalar(corner)));
}

// Weight (omega_{N,k} / 2^k) relating a sector integral over the corner to
// its 1D radial integral; even-symmetry folding contributes the 2^{-k}.
template <std::floating_point Scalar>
Scalar sector_weight(const CornerParams<Scalar>& p) {
  return sphere_moment<Scalar>(p.dim(), p.corner()) /
         std::pow(Scalar(2), Scalar(p.corner()));
}

template <std::floating_point Scalar>
Scalar ground_eigenvalue(const CornerParams<Scalar>& p) {
  return (Scalar(1) + p.criticality()) / 2;
}

// Exponent of the radial factor, m - (N-2)/2.
template <std::floating_point Scalar>
Scalar ground_radial_exponent(const CornerParams<Scalar>& p) {
  return p.criticality() - Scalar(p.dim() - 2) / 2;
}

template <std::floating_point Scalar>
Scalar ground_radial_profile(const CornerParams<Scalar>& p, Scalar r) {
  if (!(r > Scalar(0))) {
    throw std::domain_error("ground_radial_profile: requires r > 0");
  }
  return std::exp(-r * r / 8) * std::pow(r, ground_radial_exponent(p));
}

// phi'/phi = p/r - r/4 for phi(r) = exp(-r^2/8) r^p
template <std::floating_point Scalar>
Scalar ground_radial_log_deriv(const CornerParams<Scalar>& p, Scalar r) {
  return ground_radial_exponent(p) / r - r / 4;
}

// phi''/phi = (p/r - r/4)^2 - p/r^2 - 1/4
template <std::floating_point Scalar>
Scalar ground_radial_log_deriv2(const CornerParams<Scalar>& p, Scalar r) {
  const Scalar q = ground_radial_log_deriv(p, r);
  return q * q - ground_radial_exponent(p) / (r * r) - Scalar(0.25);
}

// Pointwise value of the ground eigenfunction.  Strictly positive on the
// open corner.  On the corner boundary (some of the last k coordinates
// zero, x != 0) the continuous extension is 0 whenever the net vanishing
// exponent m - (N-2)/2 + k is positive; otherwise the point is rejected.
template <std::floating_point Scalar>
Scalar ground_eigenfunction_value(const CornerParams<Scalar>& p,
                                  const Vector<Scalar>& x) {
  if (x.size() != p.dim()) {
    throw std::invalid_argument("ground_eigenfunction_value: point has size " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(p.dim()));
  }
  const Scalar r = x.norm();
  if (r == Scalar(0)) {
    throw std::domain_error("ground_eigenfunction_value: undefined at x = 0");
  }
  bool on_boundary = false;
  for (int j = p.dim() - p.corner(); j < p.dim(); ++j) {
    if (x[j] < Scalar(0)) {
      throw std::domain_error(
          "ground_eigenfunction_value: point lies outside the closed corner");
    }
    if (x[j] == Scalar(0)) on_boundary = true;
  }
  const Scalar expo = ground_radial_exponent(p);
  if (on_boundary) {
    if (expo + Scalar(p.corner()) > Scalar(0)) return Scalar(0);
    throw std::domain_error(
        "ground_eigenfunction_value: no continuous extension at this boundary point");
  }
  Scalar prod = Scalar(1);
  for (int j = p.dim() - p.corner(); j < p.dim(); ++j) prod *= x[j];
  return std::exp(-r * r / 8) * std::pow(r, expo - Scalar(p.corner())) * prod;
}

// Squared L^2 norm over the corner:
//   (omega_{N,k}/2^k) int_0^inf exp(-r^2/4) r^{2m+1} dr
//     = (omega_{N,k}/2^k) 2^{2m+1} Gamma(m+1).
template <std::floating_point Scalar>
Scalar ground_norm_sq(const CornerParams<Scalar>& p) {
  const Scalar m = p.criticality();
  return sector_weight(p) * std::pow(Scalar(2), 2 * m + 1) *
         gamma_lanczos(m + Scalar(1));
}

template <std::floating_point Scalar>
Scalar ground_norm(const CornerParams<Scalar>& p) {
  return std::sqrt(ground_norm_sq(p));
}

}  // namespace cornerheat
