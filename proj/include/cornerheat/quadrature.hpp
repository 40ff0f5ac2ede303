#pragma once

#include "cornerheat/types.hpp"

#include <stdexcept>

namespace cornerheat {

// Composite trapezoid on arbitrary sorted nodes.
template <std::floating_point Scalar>
Scalar trapezoid(const Vector<Scalar>& r, const Vector<Scalar>& f) {
  if (r.size() != f.size()) throw std::invalid_argument("trapezoid: size mismatch");
  if (r.size() < 2) return Scalar(0);
  Scalar acc = 0;
  for (Index i = 0; i + 1 < r.size(); ++i) {
    acc += (r[i + 1] - r[i]) * (f[i] + f[i + 1]);
  }
  return acc / 2;
}

template <std::floating_point Scalar>
Scalar trapezoid_uniform(Scalar h, const Vector<Scalar>& f) {
  if (f.size() < 2) return Scalar(0);
  return h * (f.sum() - (f[0] + f[f.size() - 1]) / 2);
}

}  // namespace cornerheat
