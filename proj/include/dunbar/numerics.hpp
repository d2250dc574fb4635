#pragma once

#include <cmath>
#include <utility>

namespace dunbar::numerics {

struct BisectionResult {
  double root;
  int iterations;
  bool converged;
};

// Root of a monotone function on [lo, hi] where f(lo) and f(hi) bracket zero
// (either may be exactly zero). Stops once the bracket is narrower than tol.
template <class Fn>
BisectionResult bisect(Fn&& fn, double lo, double hi, double tol = 1e-9, int max_iterations = 200) {
  double f_lo = fn(lo);
  if (f_lo == 0.0) return {lo, 0, true};
  if (fn(hi) == 0.0) return {hi, 0, true};
  int it = 0;
  while (it < max_iterations && hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = fn(mid);
    ++it;
    if (f_mid == 0.0) return {mid, it, true};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), it, hi - lo <= tol};
}

}  // namespace dunbar::numerics
