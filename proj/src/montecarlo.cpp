#include "hwbound/montecarlo.hpp"

#include "hwbound/scalar_opt.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hwbound {

double NormalSampler::next() {
  if (hasSpare_) {
    hasSpare_ = false;
    return spare_;
  }
  // Marsaglia polar method: accept (v1, v2) uniform in the unit disk
  double v1;
  double v2;
  double s;
  do {
    v1 = 2.0 * rng_.nextUniform() - 1.0;
    v2 = 2.0 * rng_.nextUniform() - 1.0;
    s = v1 * v1 + v2 * v2;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v2 * m;
  hasSpare_ = true;
  return v1 * m;
}

double normalUpperTail(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double normalQuantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("normalQuantile: p must lie in (0, 1)");
  auto f = [p](double z) { return (1.0 - normalUpperTail(z)) - p; };
  return bisectRoot(f, -40.0, 40.0, 1e-13, 200);
}

WilsonInterval wilsonScoreInterval(std::uint64_t hits, std::uint64_t samples,
                                   double confidence) {
  if (samples == 0) throw std::invalid_argument("wilsonScoreInterval: samples must be positive");
  if (hits > samples) throw std::invalid_argument("wilsonScoreInterval: hits exceed samples");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("wilsonScoreInterval: confidence must lie in (0, 1)");

  const double z = normalQuantile(1.0 - (1.0 - confidence) / 2.0);
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // the endpoints are exactly 0 and 1 at the degenerate proportions; pin them
  // so rounding cannot push the interval off the point estimate
  const double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = hits == samples ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

double sampleDeviation(const Spectrum& spec, NormalSampler& rng) {
  double dev = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double y = rng.next();
    dev += spec.eigenvalues[i] * (y * y - 1.0);
  }
  return dev;
}

namespace {

std::uint64_t countHits(const Spectrum& spec, const TailQuery& q,
                        std::uint64_t count, std::uint64_t chunkSeedValue) {
  NormalSampler rng(chunkSeedValue);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double dev = sampleDeviation(spec, rng);
    switch (q.side) {
      case Side::Upper:
        hits += dev >= q.a;
        break;
      case Side::Lower:
        hits += dev <= -q.a;
        break;
      case Side::TwoSided:
        hits += std::abs(dev) >= q.a;
        break;
    }
  }
  return hits;
}

}  // namespace

TailEstimate estimateTail(const Spectrum& spec, const TailQuery& q,
                          std::uint64_t samples, std::uint64_t seed,
                          double confidence, unsigned chunks) {
  if (!(q.a > 0.0)) throw std::invalid_argument("estimateTail: a must be positive");
  if (samples < 1000)
    throw std::invalid_argument("estimateTail: samples below the floor of 1000");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("estimateTail: confidence must lie in (0, 1)");
  if (chunks == 0) throw std::invalid_argument("estimateTail: chunks must be >= 1");

  // chunk sizes depend only on (samples, chunks); hit counts are summed, so
  // serial and parallel execution give identical results
  const std::uint64_t base = samples / chunks;
  const std::uint64_t rem = samples % chunks;
  auto chunkSize = [base, rem](unsigned c) { return base + (c < rem ? 1 : 0); };

  std::uint64_t hits = 0;
  if (chunks == 1) {
    hits = countHits(spec, q, samples, chunkSeed(seed, 0));
  } else {
    std::vector<std::future<std::uint64_t>> futures;
    futures.reserve(chunks);
    for (unsigned c = 0; c < chunks; ++c) {
      futures.push_back(std::async(std::launch::async, countHits, std::cref(spec),
                                   std::cref(q), chunkSize(c), chunkSeed(seed, c)));
    }
    for (auto& f : futures) hits += f.get();
  }

  TailEstimate est;
  est.samples = samples;
  est.hits = hits;
  est.pointEstimate = static_cast<double>(hits) / static_cast<double>(samples);
  const WilsonInterval ci = wilsonScoreInterval(hits, samples, confidence);
  est.ciLow = ci.low;
  est.ciHigh = ci.high;
  est.confidence = confidence;
  est.seed = seed;
  est.a = q.a;
  est.side = q.side;
  return est;
}

Verdict verifyBound(const TailEstimate& estimate, const BoundReport& report) {
  if (estimate.a != report.a || estimate.side != report.side)
    throw std::invalid_argument("verifyBound: estimate and report describe different queries");
  // compare against the lower confidence bound so sampling noise alone
  // cannot flag a violation
  const bool violated = estimate.ciLow > report.probUniversal ||
                        estimate.ciLow > report.probParametrized ||
                        estimate.ciLow > report.probChernoff;
  return violated ? Verdict::Violation : Verdict::Consistent;
}

}  // namespace hwbound
