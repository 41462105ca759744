#include "hwbound/constants.hpp"

#include "hwbound/scalar_opt.hpp"

#include <cmath>
#include <stdexcept>

namespace hwbound {

namespace {

void checkOpenUnit(double r, const char* fn) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument(std::string(fn) + ": r must lie in (0, 1)");
}

}  // namespace

XiValue xiSeries(double r, double relTol) {
  checkOpenUnit(r, "xiSeries");
  if (!(relTol > 0.0)) throw std::invalid_argument("xiSeries: relTol must be positive");
  // terms r^k/(k+2) are positive and eventually geometric, so the tail after
  // the stopping term is at most next/(1-r)
  double sum = 0.5;  // k = 0
  double power = 1.0;
  for (long k = 0; k < 100000000; ++k) {
    power *= r;
    const double next = power / static_cast<double>(k + 3);
    if (next < relTol * sum) break;
    sum += next;
  }
  return {r, sum};
}

XiValue xiClosed(double r) {
  checkOpenUnit(r, "xiClosed");
  if (r < 1e-4) {
    // -ln(1-r) and r agree to O(r^2); sum the leading series terms instead
    const double xi = 0.5 + r * (1.0 / 3.0 + r * (0.25 + r * (0.2 + r / 6.0)));
    return {r, xi};
  }
  return {r, (-std::log1p(-r) - r) / (r * r)};
}

KappaResult solveKappa(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solveKappa: tol must be positive");
  // r and 1/(2 xi_r) are strictly increasing/decreasing, so the max of their
  // min sits at the crossing 2 r xi_r = 1, a sign change of g on the bracket:
  // g -> -1 as r -> 0 and g -> +inf as r -> 1.
  auto g = [](double r) { return 2.0 * r * xiClosed(r).xi - 1.0; };
  const double rStar = bisectRoot(g, 1e-6, 1.0 - 1e-6, tol);
  return {rStar, rStar / 4.0, g(rStar)};
}

std::vector<FigureRow> figureGrid(int steps) {
  if (steps < 2) throw std::invalid_argument("figureGrid: steps must be >= 2");
  std::vector<FigureRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 1; i <= steps; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(steps + 1);
    const double quarterR = r / 4.0;
    const double inv8Xi = 1.0 / (8.0 * xiClosed(r).xi);
    rows.push_back({r, quarterR, inv8Xi, std::min(quarterR, inv8Xi)});
  }
  return rows;
}

}  // namespace hwbound
