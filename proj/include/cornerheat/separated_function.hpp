#pragma once

// Functions of the separated form u(x) = phi(|x|) * f_{N,k}(x/|x|), sampled
// on a 1D radial grid.  All corner integrals of such functions reduce to
// weighted radial integrals with the sector weight omega_{N,k}/2^k.

#include "cornerheat/corner_params.hpp"
#include "cornerheat/ground_state.hpp"
#include "cornerheat/quadrature.hpp"
#include "cornerheat/types.hpp"

#include <stdexcept>

namespace cornerheat {

template <std::floating_point Scalar>
struct SeparatedFunction {
  CornerParams<Scalar> params;
  Vector<Scalar> r;     // strictly increasing sample nodes, r[0] > 0
  Vector<Scalar> phi;   // radial factor at the nodes
  Vector<Scalar> dphi;  // radial derivative; empty means centered differences

  void validate() const {
    if (r.size() != phi.size() || r.size() < 3) {
      throw std::invalid_argument("SeparatedFunction: bad sample sizes");
    }
    if (dphi.size() != 0 && dphi.size() != r.size()) {
      throw std::invalid_argument("SeparatedFunction: derivative size mismatch");
    }
    if (!(r[0] > Scalar(0))) {
      throw std::invalid_argument("SeparatedFunction: nodes must satisfy r > 0");
    }
  }
};

template <std::floating_point Scalar>
Vector<Scalar> radial_derivative(const SeparatedFunction<Scalar>& u) {
  if (u.dphi.size() == u.r.size()) return u.dphi;
  const Index n = u.r.size();
  Vector<Scalar> d(n);
  for (Index i = 1; i + 1 < n; ++i) {
    d[i] = (u.phi[i + 1] - u.phi[i - 1]) / (u.r[i + 1] - u.r[i - 1]);
  }
  d[0] = (u.phi[1] - u.phi[0]) / (u.r[1] - u.r[0]);
  d[n - 1] = (u.phi[n - 1] - u.phi[n - 2]) / (u.r[n - 1] - u.r[n - 2]);
  return d;
}

// ||u||^2 over the corner = (omega_{N,k}/2^k) int phi^2 r^{N-1} dr
template <std::floating_point Scalar>
Scalar l2_norm_sq(const SeparatedFunction<Scalar>& u) {
  u.validate();
  Vector<Scalar> integrand(u.r.size());
  for (Index i = 0; i < u.r.size(); ++i) {
    integrand[i] =
        u.phi[i] * u.phi[i] * std::pow(u.r[i], Scalar(u.params.dim() - 1));
  }
  return sector_weight(u.params) * trapezoid(u.r, integrand);
}

}  // namespace cornerheat
