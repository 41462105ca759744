#pragma once

#include "hwbound/spectral.hpp"

namespace hwbound {

enum class Side { Upper, Lower, TwoSided };

// Tail threshold: P(x^T A x - E[x^T A x] deviates by >= a), on the chosen side.
struct TailQuery {
  double a;
  Side side = Side::TwoSided;
};

// One bound tier: exponent e >= 0 and the clamped probability
// min(1, factor * exp(-e)), factor 2 for two-sided queries.
struct ExponentBound {
  double exponent;
  double probability;
};

// The optimal Chernoff point. exponent is +inf (probability 0) when the
// queried deviation is impossible for the spectrum.
struct ChernoffBound {
  double tStar;
  double exponent;
  double probability;
};

// All three nested tiers for one (spectrum, query) pair.
struct BoundReport {
  double a = 0;
  Side side = Side::TwoSided;
  double rUsed = 0;
  double kappaUsed = 0;
  double universalExponent = 0;
  double parametrizedExponent = 0;
  double chernoffExponent = 0;
  double tStar = 0;  // optimizer of the exact Chernoff bound
  double probUniversal = 1;
  double probParametrized = 1;
  double probChernoff = 1;
};

// kappa * min{a^2/||A||_2^2, a/||A||}, clamped probability per side.
ExponentBound universalBound(const Spectrum& spec, const TailQuery& q, double kappa);

// min{a^2/(8 xi_r ||A||_2^2), r a/(4 ||A||)} for a chosen radius r in (0,1).
ExponentBound parametrizedBound(const Spectrum& spec, const TailQuery& q, double r);

// The upper-tail log Chernoff objective
// E(t) = -t a + sum_i [-t lambda_i - ln(1 - 2 t lambda_i)/2],
// finite while 2 t max_i lambda_i < 1. Convex, E(0) = 0, E'(0) = -a.
// exactChernoffBound minimizes it; exposed for diagnostics and tests.
double chernoffObjective(const Vector& eigenvalues, double a, double t);

// The constrained optimum of the quadratic-in-t exponent:
// t = min{a/(4 xi_r ||A||_2^2), r/(2 ||A||)} and the value of
// t a - 2 t^2 xi_r ||A||_2^2 there. Sits between the exact Chernoff
// exponent and the parametrized one.
struct IntermediatePoint {
  double t;
  double exponent;
};
IntermediatePoint intermediateExponent(const Spectrum& spec, double a, double r);

// Exact per-matrix Chernoff bound: minimizes
// E(t) = -t a + sum_i [-t lambda_i - ln(1 - 2 t lambda_i)/2]
// over the admissible t-range by golden-section search. The lower tail uses
// the negated spectrum; two-sided sums the one-sided probabilities and
// reports the smaller exponent.
ChernoffBound exactChernoffBound(const Spectrum& spec, const TailQuery& q);

// Evaluates all three tiers and checks the exponent chain
// chernoff >= intermediate >= parametrized >= (1/4)min{r, 1/(2 xi_r)} * universal term
// before returning; a chain violation is a bug, reported as std::logic_error.
BoundReport assembleReport(const Spectrum& spec, const TailQuery& q, double r,
                           double kappa);

}  // namespace hwbound
