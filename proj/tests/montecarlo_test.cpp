#include "hwbound/montecarlo.hpp"

#include "hwbound/constants.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace hwbound;

namespace {

// two-sample Kolmogorov-Smirnov statistic
double ksStatistic(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] <= y[j])
      ++i;
    else
      ++j;
    const double fx = static_cast<double>(i) / x.size();
    const double fy = static_cast<double>(j) / y.size();
    d = std::max(d, std::abs(fx - fy));
  }
  return d;
}

}  // namespace

TEST_CASE("splitmix64 reproduces the reference sequence") {
  // frozen from the published algorithm (seeds 42, 0, 2^64-1)
  SplitMix64 a(42);
  CHECK(a.next() == 0xbdd732262feb6e95ULL);
  CHECK(a.next() == 0x28efe333b266f103ULL);
  CHECK(a.next() == 0x47526757130f9f52ULL);
  CHECK(a.next() == 0x581ce1ff0e4ae394ULL);
  CHECK(a.next() == 0x09bc585a244823f2ULL);

  SplitMix64 b(0);
  CHECK(b.next() == 0xe220a8397b1dcdafULL);
  CHECK(b.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(b.next() == 0x06c45d188009454fULL);

  SplitMix64 c(0xffffffffffffffffULL);
  CHECK(c.next() == 0xe4d971771b652c20ULL);
  CHECK(c.next() == 0xe99ff867dbf682c9ULL);
}

TEST_CASE("chunk seeds are successive outputs of the master stream") {
  CHECK(chunkSeed(42, 0) == 0xbdd732262feb6e95ULL);
  CHECK(chunkSeed(42, 1) == 0x28efe333b266f103ULL);
  CHECK(chunkSeed(42, 2) == 0x47526757130f9f52ULL);
  CHECK(chunkSeed(42, 3) == 0x581ce1ff0e4ae394ULL);
}

TEST_CASE("uniform doubles take the top 53 bits") {
  SplitMix64 rng(42);
  CHECK(std::abs(rng.nextUniform() - 0.7415648787718233) < 1e-16);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.nextUniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal sampler reproduces the frozen polar-method outputs") {
  NormalSampler rng(42);
  const double expected[6] = {0.49295065581737485, -0.6940056672160174,
                              -1.2810773478777024, -0.901557193497174,
                              -0.6018779810957331, 0.6425676289796471};
  for (const double want : expected) CHECK(std::abs(rng.next() - want) < 1e-14);
}

TEST_CASE("normal tail and quantile oracles") {
  CHECK(normalUpperTail(0.0) == 0.5);
  CHECK(std::abs(normalUpperTail(2.0) - 0.022750131948179207) < 1e-16);
  CHECK(std::abs(normalQuantile(0.995) - 2.5758293035489008) < 1e-10);
  CHECK(std::abs(normalQuantile(0.5)) < 1e-12);
  CHECK_THROWS_AS(normalQuantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normalQuantile(1.0), std::invalid_argument);
}

TEST_CASE("Wilson interval frozen case and edge behavior") {
  const WilsonInterval w = wilsonScoreInterval(45, 1000, 0.99);
  CHECK(std::abs(w.low - 0.030903682638183675) < 1e-12);
  CHECK(std::abs(w.high - 0.06509427742391654) < 1e-12);

  const WilsonInterval zero = wilsonScoreInterval(0, 1000, 0.99);
  CHECK(zero.low == 0.0);
  CHECK(zero.high > 0.0);
  const WilsonInterval full = wilsonScoreInterval(1000, 1000, 0.99);
  CHECK(full.high == 1.0);
  CHECK(full.low < 1.0);

  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t n = 1000 + rng.next() % 100000;
    const std::uint64_t h = rng.next() % (n + 1);
    const WilsonInterval ci = wilsonScoreInterval(h, n, 0.99);
    const double p = static_cast<double>(h) / static_cast<double>(n);
    CHECK(ci.low <= p);
    CHECK(p <= ci.high);
  }

  CHECK_THROWS_AS(wilsonScoreInterval(5, 0, 0.99), std::invalid_argument);
  CHECK_THROWS_AS(wilsonScoreInterval(5, 4, 0.99), std::invalid_argument);
  CHECK_THROWS_AS(wilsonScoreInterval(5, 10, 1.0), std::invalid_argument);
}

TEST_CASE("sampleDeviation ignores zero eigenvalues") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector{{1.0, 0.0}});
  NormalSampler a(11);
  NormalSampler b(11);
  for (int i = 0; i < 100; ++i) {
    const double dev = sampleDeviation(s, a);
    const double y1 = b.next();
    b.next();  // consumed by the zero eigenvalue
    CHECK(dev == y1 * y1 - 1.0);
  }
}

TEST_CASE("sampleDeviation moments for the chi-square(1) spectrum") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  NormalSampler rng(2024);
  const int n = 1000000;
  double sum = 0.0, sumSq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = sampleDeviation(s, rng);
    sum += d;
    sumSq += d * d;
  }
  const double mean = sum / n;
  const double var = sumSq / n - mean * mean;
  // E = 0 with std error sqrt(2/n); Var = 2 within 5%
  CHECK(std::abs(mean) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(var - 2.0) < 0.1);
}

TEST_CASE("estimateTail reproduces the frozen cross-implementation hit counts") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  const TailEstimate est = estimateTail(s, {3.0, Side::TwoSided}, 1000000, 42, 0.99, 1);
  CHECK(est.hits == 45337);  // replicated in an independent implementation
  CHECK(est.pointEstimate == 0.045337);
  // the 99% interval contains the exact tail 2 Phibar(2)
  const double exact = 0.045500263896358414;
  CHECK(est.ciLow <= exact);
  CHECK(exact <= est.ciHigh);

  const TailEstimate four = estimateTail(s, {3.0, Side::TwoSided}, 1000000, 42, 0.99, 4);
  CHECK(four.hits == 45649);  // different chunk layout, same replica

  const Spectrum mixed = Spectrum::fromEigenvalues(Vector{{2.0, -1.0}});
  const TailEstimate up = estimateTail(mixed, {2.5, Side::Upper}, 5000, 7, 0.99, 1);
  CHECK(up.hits == 748);
}

TEST_CASE("upper and two-sided events coincide for the chi-square(1) spectrum at a = 3") {
  // y^2 - 1 >= -1 > -3, so the lower event is empty
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  const TailEstimate two = estimateTail(s, {3.0, Side::TwoSided}, 50000, 9, 0.99, 1);
  const TailEstimate up = estimateTail(s, {3.0, Side::Upper}, 50000, 9, 0.99, 1);
  const TailEstimate low = estimateTail(s, {3.0, Side::Lower}, 50000, 9, 0.99, 1);
  CHECK(two.hits == up.hits);
  CHECK(low.hits == 0);
}

TEST_CASE("rare events report tiny upper confidence bounds") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  const TailEstimate est = estimateTail(s, {1000.0, Side::TwoSided}, 10000, 5, 0.99, 1);
  CHECK(est.hits == 0);
  CHECK(est.pointEstimate == 0.0);
  CHECK(est.ciHigh < 1e-3);
}

TEST_CASE("estimateTail is deterministic, serial or chunked") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector{{1.5, -0.5, 0.25}});
  const TailQuery q{2.0, Side::TwoSided};
  for (const unsigned chunks : {1u, 3u}) {
    const TailEstimate a = estimateTail(s, q, 40000, 123, 0.99, chunks);
    const TailEstimate b = estimateTail(s, q, 40000, 123, 0.99, chunks);
    CHECK(a.hits == b.hits);
    CHECK(a.pointEstimate == b.pointEstimate);
    CHECK(a.ciLow == b.ciLow);
    CHECK(a.ciHigh == b.ciHigh);
  }
}

TEST_CASE("estimateTail input validation") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  CHECK_THROWS_AS(estimateTail(s, {3.0, Side::Upper}, 999, 42), std::invalid_argument);
  CHECK_THROWS_AS(estimateTail(s, {0.0, Side::Upper}, 10000, 42), std::invalid_argument);
  CHECK_THROWS_AS(estimateTail(s, {3.0, Side::Upper}, 10000, 42, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(estimateTail(s, {3.0, Side::Upper}, 10000, 42, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(estimateTail(s, {3.0, Side::Upper}, 10000, 42, 0.99, 0), std::invalid_argument);
}

TEST_CASE("99% interval covers the exact chi-square(1) tail in at least 95 of 100 runs") {
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  const double exact = 0.045500263896358414;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TailEstimate est = estimateTail(s, {3.0, Side::TwoSided}, 100000, seed, 0.99, 1);
    if (est.ciLow <= exact && exact <= est.ciHigh) ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("verifyBound verdicts") {
  const KappaResult k = solveKappa(1e-12);
  const Spectrum s = Spectrum::fromEigenvalues(Vector::Constant(1, 1.0));
  const TailQuery q{3.0, Side::TwoSided};
  const TailEstimate est = estimateTail(s, q, 100000, 42, 0.99, 1);

  // universal bound clamps to 1 here: trivially consistent
  const BoundReport rep = assembleReport(s, q, k.rStar, k.kappa);
  CHECK(verifyBound(est, rep) == Verdict::Consistent);

  // deep tail: bound far above the estimate, still consistent
  const TailQuery deep{30.0, Side::TwoSided};
  const TailEstimate deepEst = estimateTail(s, deep, 100000, 42, 0.99, 1);
  const BoundReport deepRep = assembleReport(s, deep, k.rStar, k.kappa);
  CHECK(verifyBound(deepEst, deepRep) == Verdict::Consistent);

  // fabricated impossible report must be flagged
  BoundReport broken = rep;
  broken.probUniversal = 0.0;
  CHECK(verifyBound(est, broken) == Verdict::Violation);

  // mismatched query metadata is an error
  BoundReport other = rep;
  other.a = 4.0;
  CHECK_THROWS_AS(verifyBound(est, other), std::invalid_argument);
  BoundReport flipped = rep;
  flipped.side = Side::Upper;
  CHECK_THROWS_AS(verifyBound(est, flipped), std::invalid_argument);
}

TEST_CASE("no violation across random spectra and thresholds") {
  const KappaResult k = solveKappa(1e-12);
  SplitMix64 rng(777);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<Eigen::Index>(1 + rng.next() % 8);
    Vector lam(n);
    for (Eigen::Index j = 0; j < n; ++j) lam[j] = 6.0 * rng.nextUniform() - 3.0;
    if (lam.cwiseAbs().maxCoeff() < 0.1) lam[0] = 1.0;
    const Spectrum s = Spectrum::fromEigenvalues(lam);
    // sweep a from the clamped regime into the deep tail
    const double scale = std::sqrt(s.hsNormSq);
    const double a = scale * (0.2 + 8.0 * rng.nextUniform());
    const TailQuery q{a, Side::TwoSided};
    const TailEstimate est = estimateTail(s, q, 100000, 1000 + i, 0.99, 1);
    const BoundReport rep = assembleReport(s, q, k.rStar, k.kappa);
    CHECK(verifyBound(est, rep) == Verdict::Consistent);
  }
}

TEST_CASE("spectral and dense sampling routes have the same distribution") {
  // 4x4 symmetric A: compare sum lambda_i (y_i^2 - 1) with x^T A x - tr A
  SplitMix64 init(140);
  Matrix m(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = 2.0 * init.nextUniform() - 1.0;
  m = symmetrized(m);
  const SymmetricMatrix a = SymmetricMatrix::fromMatrix(m, SymmetryMode::Strict);
  const Spectrum s = decompose(a);

  const int samplesPerSide = 10000;
  NormalSampler eigRng(21);
  std::vector<double> viaSpectrum;
  viaSpectrum.reserve(samplesPerSide);
  for (int i = 0; i < samplesPerSide; ++i) viaSpectrum.push_back(sampleDeviation(s, eigRng));

  NormalSampler denseRng(22);
  std::vector<double> viaDense;
  viaDense.reserve(samplesPerSide);
  const double tr = m.trace();
  for (int i = 0; i < samplesPerSide; ++i) {
    Vector x(4);
    for (Eigen::Index j = 0; j < 4; ++j) x[j] = denseRng.next();
    viaDense.push_back(x.dot(m * x) - tr);
  }

  const double d = ksStatistic(std::move(viaSpectrum), std::move(viaDense));
  // 1% critical value: 1.6276 * sqrt((n+m)/(n m))
  const double critical = 1.6276236307187293 * std::sqrt(2.0 / samplesPerSide);
  CHECK(d < critical);
}
