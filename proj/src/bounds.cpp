#include "hwbound/bounds.hpp"

#include "hwbound/constants.hpp"
#include "hwbound/scalar_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hwbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// keeps the golden-section search away from the log singularity at
// t = 1/(2 lambda_max)
constexpr double kDomainGuard = 1e-9;

void checkQuery(const TailQuery& q) {
  if (!(q.a > 0.0)) throw std::invalid_argument("tail bound: a must be positive");
}

void checkRadius(double r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("tail bound: r must lie in (0, 1)");
}

double clampedProbability(double exponent, Side side) {
  const double factor = side == Side::TwoSided ? 2.0 : 1.0;
  return std::min(1.0, factor * std::exp(-exponent));
}

// min{a^2/||A||_2^2, a/||A||}, the scale-free deviation measure shared by
// the universal and parametrized exponents
double minDeviationTerm(const Spectrum& spec, double a) {
  return std::min(a * a / spec.hsNormSq, a / spec.opNorm);
}

// Minimizes E over its t-domain for the given (upper-tail) eigenvalues,
// sorted descending. E is convex with E(0) = 0 and E'(0) = -a < 0, so the
// minimum is interior whenever it exists.
ChernoffBound chernoffOneSided(const Vector& lam, double a) {
  const Eigen::Index n = lam.size();
  const double lamMax = lam[0];

  // log singularity at 1/(2 lamMax) when some eigenvalue is positive; with
  // all eigenvalues <= 0 the domain is unbounded, but past the almost-sure
  // deviation ceiling sum |li| the tail is exactly zero and E has no minimum
  double cap = kInf;
  if (lamMax > 0.0) {
    cap = (1.0 - kDomainGuard) / (2.0 * lamMax);
  } else {
    const double sumAbs = -lam.sum();
    if (a >= sumAbs) return {kInf, kInf, 0.0};
  }

  // expand from the operator-norm scale until E turns upward, so the bracket
  // (and the golden-section tolerance derived from it) tracks the scale of
  // the minimizer even when the singularity cap is many orders farther out;
  // by convexity E(hi) > E(hi/2) certifies the minimum lies left of hi
  const double opNorm = std::max(std::abs(lam[0]), std::abs(lam[n - 1]));
  double hi = std::min(0.5 / opNorm, cap);
  int doublings = 0;
  while (hi < cap && chernoffObjective(lam, a, hi) <= chernoffObjective(lam, a, 0.5 * hi)) {
    if (++doublings > 200)
      throw std::runtime_error("exactChernoffBound: bracket expansion did not terminate");
    hi = std::min(2.0 * hi, cap);
  }

  auto objective = [&lam, a](double t) { return chernoffObjective(lam, a, t); };
  const auto [tStar, minValue] = goldenMinimize(objective, 0.0, hi, 1e-12 * hi);
  // E(t*) <= E(0) = 0, so the exponent is nonnegative up to rounding
  return {tStar, std::max(0.0, -minValue), std::min(1.0, std::exp(minValue))};
}

// Eigenvalues of -A, kept in descending order so both tails walk the
// spectrum the same way.
Vector negatedSpectrum(const Vector& lam) {
  return (-lam).reverse();
}

}  // namespace

double chernoffObjective(const Vector& eigenvalues, double a, double t) {
  double sum = -t * a;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double li = eigenvalues[i];
    sum += -t * li - 0.5 * std::log1p(-2.0 * t * li);
  }
  return sum;
}

ExponentBound universalBound(const Spectrum& spec, const TailQuery& q, double kappa) {
  checkQuery(q);
  if (!(kappa > 0.0)) throw std::invalid_argument("universalBound: kappa must be positive");
  const double exponent = kappa * minDeviationTerm(spec, q.a);
  return {exponent, clampedProbability(exponent, q.side)};
}

ExponentBound parametrizedBound(const Spectrum& spec, const TailQuery& q, double r) {
  checkQuery(q);
  checkRadius(r);
  const double xi = xiClosed(r).xi;
  const double exponent = std::min(q.a * q.a / (8.0 * xi * spec.hsNormSq),
                                   r * q.a / (4.0 * spec.opNorm));
  return {exponent, clampedProbability(exponent, q.side)};
}

IntermediatePoint intermediateExponent(const Spectrum& spec, double a, double r) {
  if (!(a > 0.0)) throw std::invalid_argument("intermediateExponent: a must be positive");
  checkRadius(r);
  const double xi = xiClosed(r).xi;
  const double t = std::min(a / (4.0 * xi * spec.hsNormSq), r / (2.0 * spec.opNorm));
  return {t, t * a - 2.0 * t * t * xi * spec.hsNormSq};
}

ChernoffBound exactChernoffBound(const Spectrum& spec, const TailQuery& q) {
  checkQuery(q);
  switch (q.side) {
    case Side::Upper:
      return chernoffOneSided(spec.eigenvalues, q.a);
    case Side::Lower:
      return chernoffOneSided(negatedSpectrum(spec.eigenvalues), q.a);
    case Side::TwoSided: {
      const ChernoffBound up = chernoffOneSided(spec.eigenvalues, q.a);
      const ChernoffBound low = chernoffOneSided(negatedSpectrum(spec.eigenvalues), q.a);
      const ChernoffBound& binding = up.exponent <= low.exponent ? up : low;
      return {binding.tStar, binding.exponent,
              std::min(1.0, up.probability + low.probability)};
    }
  }
  throw std::logic_error("exactChernoffBound: unknown side");
}

BoundReport assembleReport(const Spectrum& spec, const TailQuery& q, double r,
                           double kappa) {
  const ExponentBound uni = universalBound(spec, q, kappa);
  const ExponentBound par = parametrizedBound(spec, q, r);
  const ChernoffBound che = exactChernoffBound(spec, q);
  const IntermediatePoint mid = intermediateExponent(spec, q.a, r);

  // numeric form of the proof chain; a failure here is a software bug
  const double kappaR = 0.25 * std::min(r, 1.0 / (2.0 * xiClosed(r).xi));
  const double base = kappaR * minDeviationTerm(spec, q.a);
  auto slack = [](double x) { return 1e-9 * std::max(1.0, std::abs(x)); };
  if (che.exponent < mid.exponent - slack(mid.exponent) ||
      mid.exponent < par.exponent - slack(par.exponent) ||
      par.exponent < base - slack(base))
    throw std::logic_error("assembleReport: exponent nesting violated");

  BoundReport report;
  report.a = q.a;
  report.side = q.side;
  report.rUsed = r;
  report.kappaUsed = kappa;
  report.universalExponent = uni.exponent;
  report.parametrizedExponent = par.exponent;
  report.chernoffExponent = che.exponent;
  report.tStar = che.tStar;
  report.probUniversal = uni.probability;
  report.probParametrized = par.probability;
  report.probChernoff = che.probability;
  return report;
}

}  // namespace hwbound
