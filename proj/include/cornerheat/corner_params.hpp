#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>

namespace cornerheat {

// Sharp constant ((N-2)/2 + k)^2 of the Hardy inequality on the corner
// R^{N-k} x (0,inf)^k with Dirichlet boundary.
template <std::floating_point Scalar = double>
Scalar hardy_constant(int dim, int corner) {
  if (dim < 2) {
    throw std::invalid_argument("hardy_constant: dim must be >= 2, got " +
                                std::to_string(dim));
  }
  if (corner < 0 || corner > dim) {
    throw std::invalid_argument("hardy_constant: corner must lie in [0, dim], got " +
                                std::to_string(corner));
  }
  const Scalar s = Scalar(dim - 2) / Scalar(2) + Scalar(corner);
  return s * s;
}

// Problem triple (N, k, lambda).  The coupling lambda may not exceed the
// Hardy constant; its distance to criticality is criticality() =
// sqrt(hardy_const - lambda), which vanishes exactly at the critical
// coupling.
template <std::floating_point Scalar>
class CornerParams {
 public:
  CornerParams(int dim, int corner, Scalar lambda)
      : dim_(dim), corner_(corner), lambda_(lambda),
        hardy_(hardy_constant<Scalar>(dim, corner)) {
    if (!(lambda <= hardy_)) {
      throw std::domain_error(
          "CornerParams: lambda = " + std::to_string(lambda) +
          " exceeds the sharp Hardy constant " + std::to_string(hardy_) +
          " (supercritical coupling, problem ill-posed)");
    }
    const Scalar gap = hardy_ - lambda_;
    crit_ = gap > Scalar(0) ? std::sqrt(gap) : Scalar(0);
  }

  int dim() const { return dim_; }
  int corner() const { return corner_; }
  Scalar lambda() const { return lambda_; }
  Scalar hardy_const() const { return hardy_; }

  // m = sqrt(hardy_const - lambda), zero iff the coupling is critical
  Scalar criticality() const { return crit_; }
  bool critical() const { return crit_ == Scalar(0); }

 private:
  int dim_;
  int corner_;
  Scalar lambda_;
  Scalar hardy_;
  Scalar crit_;
};

template <std::floating_point Scalar>
Scalar criticality_index(const CornerParams<Scalar>& p) {
  return p.criticality();
}

using CornerParamsd = CornerParams<double>;

}  // namespace cornerheat
