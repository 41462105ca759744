#pragma once

#include <vector>

namespace hwbound {

// The power series xi_r = sum_{k>=0} r^k/(k+2), defined for 0 < r < 1.
// Closed form: (-ln(1-r) - r)/r^2.
struct XiValue {
  double r;
  double xi;
};

// Solution of the max-min problem kappa = (1/4) max_r min{r, 1/(2 xi_r)}.
// r is strictly increasing and 1/(2 xi_r) strictly decreasing on (0,1), so
// the maximum sits at the unique crossing 2 r xi_r = 1; residual is the
// value of 2 rStar xi_{rStar} - 1 at the returned root.
struct KappaResult {
  double rStar;
  double kappa;
  double residual;
};

struct FigureRow {
  double r;
  double quarterR;  // r/4
  double inv8Xi;    // 1/(8 xi_r)
  double minTerm;   // min of the two
};

inline constexpr char kFigureCsvHeader[] = "r,quarter_r,inv_8xi,min_term";

// Direct summation of the series, stopping once the next term falls below
// relTol times the current partial sum. Serves as the independent check on
// xiClosed; the closed form is the production path.
XiValue xiSeries(double r, double relTol);

// (-ln(1-r) - r)/r^2, with a truncated-series branch below r = 1e-4 where
// the subtraction would cancel catastrophically.
XiValue xiClosed(double r);

// Bisection on g(r) = 2 r xi_r - 1 over [1e-6, 1-1e-6] to bracket width tol.
KappaResult solveKappa(double tol);

// Samples r/4 and 1/(8 xi_r) at r = i/(steps+1), i = 1..steps.
std::vector<FigureRow> figureGrid(int steps);

}  // namespace hwbound
