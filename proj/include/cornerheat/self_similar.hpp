#pragma once

// Self-similarity change of variables s = ln(t+1), y = x/sqrt(t+1) and the
// associated amplitude rescalings.  The w-map keeps the L^2 norm invariant;
// the v-map additionally folds in the Gaussian half-weight K^{1/2}.

#include "cornerheat/types.hpp"

#include <cmath>
#include <stdexcept>

namespace cornerheat {

template <std::floating_point Scalar>
struct SimilarityVars {
  Scalar s;
  Vector<Scalar> y;
};

template <std::floating_point Scalar>
struct PhysicalVars {
  Scalar t;
  Vector<Scalar> x;
};

template <std::floating_point Scalar>
SimilarityVars<Scalar> sst_forward(Scalar t, const Vector<Scalar>& x) {
  if (!(t >= Scalar(0))) throw std::domain_error("sst_forward: requires t >= 0");
  return {std::log1p(t), x / std::sqrt(t + Scalar(1))};
}

template <std::floating_point Scalar>
PhysicalVars<Scalar> sst_inverse(Scalar s, const Vector<Scalar>& y) {
  if (!(s >= Scalar(0))) throw std::domain_error("sst_inverse: requires s >= 0");
  return {std::expm1(s), y * std::exp(s / 2)};
}

// K(y) = exp(|y|^2/4)
template <std::floating_point Scalar>
Scalar gaussian_weight(const Vector<Scalar>& y) {
  return std::exp(y.squaredNorm() / 4);
}

// w(s,y) = e^{Ns/4} u(e^s - 1, e^{s/2} y); satisfies ||w(s)|| = ||u(t)||.
template <std::floating_point Scalar>
Scalar w_from_u(Scalar u_value, Scalar t, int dim) {
  const Scalar s = std::log1p(t);
  return std::exp(Scalar(dim) * s / 4) * u_value;
}

// v(s,y) = K^{1/2}(y) e^{Ns/4} u(e^s - 1, e^{s/2} y)
template <std::floating_point Scalar>
Scalar v_from_u(Scalar u_value, Scalar t, const Vector<Scalar>& x) {
  const auto sim = sst_forward(t, x);
  return std::exp(sim.y.squaredNorm() / 8) *
         w_from_u(u_value, t, static_cast<int>(x.size()));
}

template <std::floating_point Scalar>
Scalar u_from_w(Scalar w_value, Scalar s, int dim) {
  return std::exp(-Scalar(dim) * s / 4) * w_value;
}

template <std::floating_point Scalar>
Scalar u_from_v(Scalar v_value, Scalar s, const Vector<Scalar>& y, int dim) {
  return std::exp(-y.squaredNorm() / 8) * u_from_w(v_value, s, dim);
}

}  // namespace cornerheat
