#pragma once

#include "cornerheat/types.hpp"

#include <stdexcept>
#include <string>

namespace cornerheat {

// Uniform 1D grid for the radial coordinate, truncated to [r_min, r_max].
// The n interior nodes are r_j = r_min + j h, j = 1..n, with
// h = (r_max - r_min)/(n+1); both endpoints carry homogeneous Dirichlet
// conditions.
template <std::floating_point Scalar>
struct RadialGrid {
  Scalar r_min;
  Scalar r_max;
  Index n;

  RadialGrid(Scalar r_min_, Scalar r_max_, Index n_)
      : r_min(r_min_), r_max(r_max_), n(n_) {
    if (!(r_min > Scalar(0)) || !(r_min < r_max)) {
      throw std::invalid_argument("RadialGrid: requires 0 < r_min < r_max");
    }
    if (n < 3) {
      throw std::invalid_argument("RadialGrid: requires n >= 3, got " +
                                  std::to_string(n));
    }
  }

  static RadialGrid defaults() {
    return RadialGrid(Scalar(20) * Scalar(1e-4), Scalar(20), 20000);
  }

  Scalar h() const { return (r_max - r_min) / Scalar(n + 1); }

  Scalar node(Index i) const { return r_min + Scalar(i + 1) * h(); }

  Vector<Scalar> nodes() const {
    Vector<Scalar> r(n);
    const Scalar step = h();
    for (Index i = 0; i < n; ++i) r[i] = r_min + Scalar(i + 1) * step;
    return r;
  }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.r_min == b.r_min && a.r_max == b.r_max && a.n == b.n;
  }
};

using RadialGridd = RadialGrid<double>;

}  // namespace cornerheat
