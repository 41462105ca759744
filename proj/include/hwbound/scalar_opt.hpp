#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hwbound {

// Bisection root finder. f must change sign on [lo, hi]; the bracket is
// shrunk to absolute width <= xtol and the midpoint is returned.
template <typename F>
double bisectRoot(F&& f, double lo, double hi, double xtol, int maxIter = 200) {
  if (!(xtol > 0.0)) throw std::invalid_argument("bisectRoot: xtol must be positive");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisectRoot: no sign change on the bracket");
  for (int i = 0; i < maxIter && (hi - lo) > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimizer for a unimodal f on [lo, hi], to absolute
// x-tolerance xtol. Returns {argmin, min}.
template <typename F>
std::pair<double, double> goldenMinimize(F&& f, double lo, double hi, double xtol) {
  if (!(hi > lo)) throw std::invalid_argument("goldenMinimize: empty bracket");
  if (!(xtol > 0.0)) throw std::invalid_argument("goldenMinimize: xtol must be positive");
  constexpr double invPhi = 0.6180339887498949;  // 1/golden ratio
  double a = lo;
  double b = hi;
  double c = b - invPhi * (b - a);
  double d = a + invPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  // each iteration shrinks the bracket by 1/phi; 200 iterations is ~43 decades
  for (int i = 0; i < 200 && (b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc < fd) return {c, fc};
  return {d, fd};
}

}  // namespace hwbound
