#pragma once

// Smooth compactly supported radial profiles assembled from C-infinity bumps,
// with analytic derivatives.  Used for randomized test data and as seeded
// initial data for the evolution runs.

#include "cornerheat/types.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cornerheat {

// exp(1 - 1/(1-x^2)) on (-1,1), zero outside; peak value 1 at x = 0
template <std::floating_point Scalar>
Scalar bump_value(Scalar x) {
  const Scalar x2 = x * x;
  if (x2 >= Scalar(1)) return Scalar(0);
  return std::exp(Scalar(1) - Scalar(1) / (Scalar(1) - x2));
}

template <std::floating_point Scalar>
Scalar bump_deriv(Scalar x) {
  const Scalar x2 = x * x;
  if (x2 >= Scalar(1)) return Scalar(0);
  const Scalar d = Scalar(1) - x2;
  return bump_value(x) * (Scalar(-2) * x / (d * d));
}

template <std::floating_point Scalar>
struct BumpSum {
  std::vector<Scalar> centers;
  std::vector<Scalar> widths;
  std::vector<Scalar> amps;

  Scalar value(Scalar r) const {
    Scalar acc = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      acc += amps[i] * bump_value((r - centers[i]) / widths[i]);
    }
    return acc;
  }

  Scalar deriv(Scalar r) const {
    Scalar acc = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      acc += amps[i] / widths[i] * bump_deriv((r - centers[i]) / widths[i]);
    }
    return acc;
  }

  std::pair<Scalar, Scalar> support() const {
    Scalar lo = centers[0] - widths[0], hi = centers[0] + widths[0];
    for (std::size_t i = 1; i < centers.size(); ++i) {
      lo = std::min(lo, centers[i] - widths[i]);
      hi = std::max(hi, centers[i] + widths[i]);
    }
    return {lo, hi};
  }
};

struct ProfileOptions {
  int bumps = 3;
  double center_lo = 1.5;
  double center_hi = 6.0;
  double width_lo = 0.6;
  double width_hi = 1.4;
  double amp_lo = 0.5;
  double amp_hi = 2.0;
  bool positive = true;  // false allows sign flips per bump
};

// Support stays inside (center_lo - width_hi, center_hi + width_hi), hence
// away from both the origin and any reasonable outer truncation.
template <std::floating_point Scalar>
BumpSum<Scalar> random_bump_profile(std::mt19937_64& rng,
                                    const ProfileOptions& opt = {}) {
  if (opt.bumps < 1 || !(opt.center_lo > opt.width_hi)) {
    throw std::invalid_argument("random_bump_profile: support would touch r = 0");
  }
  std::uniform_real_distribution<double> center(opt.center_lo, opt.center_hi);
  std::uniform_real_distribution<double> width(opt.width_lo, opt.width_hi);
  std::uniform_real_distribution<double> amp(opt.amp_lo, opt.amp_hi);
  std::uniform_int_distribution<int> coin(0, 1);
  BumpSum<Scalar> b;
  for (int i = 0; i < opt.bumps; ++i) {
    b.centers.push_back(Scalar(center(rng)));
    b.widths.push_back(Scalar(width(rng)));
    Scalar a = Scalar(amp(rng));
    if (!opt.positive && coin(rng)) a = -a;
    b.amps.push_back(a);
  }
  return b;
}

}  // namespace cornerheat
