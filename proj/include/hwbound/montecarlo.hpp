#pragma once

#include "hwbound/bounds.hpp"
#include "hwbound/spectral.hpp"

#include <cstdint>

namespace hwbound {

// splitmix64 (Vigna, https://prng.di.unimi.it/splitmix64.c): a 64-bit
// counter stepped by the golden-gamma constant and finalized by an avalanche
// mix. Chosen as the project generator because the sequence is a pure
// function of the seed, identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double nextUniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Seed for chunk c of a run with master seed s: the (c+1)-th output of the
// splitmix64 stream seeded with s. Fixed by (seed, chunk) alone, so serial
// and parallel executions of the same chunk layout agree bit for bit.
inline std::uint64_t chunkSeed(std::uint64_t seed, std::uint64_t chunk) {
  return SplitMix64(seed + chunk * 0x9E3779B97F4A7C15ULL).next();
}

// Standard normal draws by the Marsaglia polar method on splitmix64
// uniforms. Pairs are produced per acceptance; the second of each pair is
// cached, so consumption order is part of the deterministic contract.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
  double next();

 private:
  SplitMix64 rng_;
  double spare_ = 0;
  bool hasSpare_ = false;
};

// Upper tail of the standard normal, Phi_bar(x) = erfc(x/sqrt(2))/2.
double normalUpperTail(double x);

// Inverse standard normal CDF, by bisection on normalUpperTail.
double normalQuantile(double p);

struct WilsonInterval {
  double low;
  double high;
};

// Wilson score interval for a binomial proportion at the given two-sided
// confidence level. https://en.wikipedia.org/wiki/Binomial_proportion_confidence_interval
WilsonInterval wilsonScoreInterval(std::uint64_t hits, std::uint64_t samples,
                                   double confidence);

struct TailEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double pointEstimate = 0;
  double ciLow = 0;
  double ciHigh = 1;
  double confidence = 0.99;
  std::uint64_t seed = 0;
  // query echo, checked by verifyBound
  double a = 0;
  Side side = Side::TwoSided;
};

// One draw of x^T A x - E[x^T A x], sampled through the spectrum:
// sum_i lambda_i (y_i^2 - 1) with y standard normal.
double sampleDeviation(const Spectrum& spec, NormalSampler& rng);

// Counts deviations meeting the side condition over `samples` draws split
// into `chunks` chunks (sizes fixed by samples and chunks; chunk c is seeded
// with chunkSeed(seed, c) and may run on its own thread). samples must be at
// least 1000.
TailEstimate estimateTail(const Spectrum& spec, const TailQuery& q,
                          std::uint64_t samples, std::uint64_t seed,
                          double confidence = 0.99, unsigned chunks = 1);

enum class Verdict { Consistent, Violation };

// Violation iff the lower Wilson bound exceeds any of the report's clamped
// probabilities. The estimate and report must describe the same query.
Verdict verifyBound(const TailEstimate& estimate, const BoundReport& report);

}  // namespace hwbound
