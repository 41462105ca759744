#include "hwbound/bounds.hpp"
#include "hwbound/constants.hpp"
#include "hwbound/montecarlo.hpp"
#include "hwbound/spectral.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

using namespace hwbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string matrixPath;
  double a = 0.0;
  double r = -1.0;  // negative: use rStar from solveKappa
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
  double confidence = 0.99;
  int steps = 999;
  std::string side = "two-sided";
  bool symmetrize = false;
  std::string outputFormat = "text";
  unsigned chunks = 1;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Side parseSide(const std::string& name) {
  if (name == "upper") return Side::Upper;
  if (name == "lower") return Side::Lower;
  return Side::TwoSided;
}

bool wantCsv(const RunConfig& cfg) { return cfg.outputFormat == "csv"; }

int runKappa(const RunConfig& cfg) {
  const KappaResult k = solveKappa(1e-12);
  if (wantCsv(cfg)) {
    std::cout << "r_star,kappa,residual\n"
              << fmt(k.rStar) << ',' << fmt(k.kappa) << ',' << fmt(k.residual) << '\n';
    return kExitOk;
  }
  std::cout << "r_star   = " << fmt(k.rStar) << '\n'
            << "kappa    = " << fmt(k.kappa) << '\n'
            << "residual = " << fmt(k.residual) << '\n'
            << "crossing height min{r*, 1/(2 xi_r*)} = " << fmt(k.rStar)
            << " (approx 0.583)\n"
            << "quarter-scaled constant kappa = r*/4 = " << fmt(k.kappa)
            << " (approx 0.1457)\n";
  return kExitOk;
}

int runFigure(const RunConfig& cfg) {
  std::cout << kFigureCsvHeader << '\n';
  for (const FigureRow& row : figureGrid(cfg.steps)) {
    std::cout << fmt(row.r) << ',' << fmt(row.quarterR) << ',' << fmt(row.inv8Xi)
              << ',' << fmt(row.minTerm) << '\n';
  }
  return kExitOk;
}

Spectrum loadSpectrum(const RunConfig& cfg) {
  const Matrix raw = readMatrixFile(cfg.matrixPath);
  const auto mode = cfg.symmetrize ? SymmetryMode::Symmetrize : SymmetryMode::Strict;
  return decompose(SymmetricMatrix::fromMatrix(raw, mode));
}

void printBoundText(const Spectrum& spec, const RunConfig& cfg, const BoundReport& rep) {
  const Eigen::Index n = spec.eigenvalues.size();
  std::cout << "n           = " << n << '\n'
            << "op_norm     = " << fmt(spec.opNorm) << '\n'
            << "hs_norm_sq  = " << fmt(spec.hsNormSq) << '\n'
            << "trace       = " << fmt(spec.trace) << '\n'
            << "eig_max     = " << fmt(spec.eigenvalues[0]) << '\n'
            << "eig_min     = " << fmt(spec.eigenvalues[n - 1]) << '\n'
            << "side        = " << cfg.side << '\n'
            << "a           = " << fmt(rep.a) << '\n'
            << "r           = " << fmt(rep.rUsed) << '\n'
            << "kappa       = " << fmt(rep.kappaUsed) << '\n'
            << "universal    : exponent = " << fmt(rep.universalExponent)
            << "  probability = " << fmt(rep.probUniversal) << '\n'
            << "parametrized : exponent = " << fmt(rep.parametrizedExponent)
            << "  probability = " << fmt(rep.probParametrized) << '\n'
            << "chernoff     : exponent = " << fmt(rep.chernoffExponent)
            << "  probability = " << fmt(rep.probChernoff)
            << "  t_star = " << fmt(rep.tStar) << '\n';
}

BoundReport makeReport(const Spectrum& spec, const RunConfig& cfg) {
  if (cfg.r >= 0.0 && (cfg.r <= 0.0 || cfg.r >= 1.0))
    throw std::invalid_argument("--r must lie strictly inside (0, 1)");
  const KappaResult k = solveKappa(1e-12);
  const double r = cfg.r < 0.0 ? k.rStar : cfg.r;
  const TailQuery q{cfg.a, parseSide(cfg.side)};
  return assembleReport(spec, q, r, k.kappa);
}

int runBound(const RunConfig& cfg) {
  const Spectrum spec = loadSpectrum(cfg);
  const BoundReport rep = makeReport(spec, cfg);
  if (wantCsv(cfg)) {
    std::cout << "universal_exponent,parametrized_exponent,chernoff_exponent,"
                 "t_star,r_used,prob_universal,prob_parametrized,prob_chernoff\n"
              << fmt(rep.universalExponent) << ',' << fmt(rep.parametrizedExponent)
              << ',' << fmt(rep.chernoffExponent) << ',' << fmt(rep.tStar) << ','
              << fmt(rep.rUsed) << ',' << fmt(rep.probUniversal) << ','
              << fmt(rep.probParametrized) << ',' << fmt(rep.probChernoff) << '\n';
    return kExitOk;
  }
  printBoundText(spec, cfg, rep);
  return kExitOk;
}

int runVerify(const RunConfig& cfg) {
  const Spectrum spec = loadSpectrum(cfg);
  const BoundReport rep = makeReport(spec, cfg);
  const TailQuery q{cfg.a, parseSide(cfg.side)};
  const TailEstimate est =
      estimateTail(spec, q, cfg.samples, cfg.seed, cfg.confidence, cfg.chunks);
  const Verdict verdict = verifyBound(est, rep);
  const char* verdictName = verdict == Verdict::Consistent ? "consistent" : "violation";

  if (wantCsv(cfg)) {
    // run metadata goes to stderr so stdout stays schema-clean
    std::cerr << "# samples = " << est.samples << ", seed = " << est.seed
              << ", chunks = " << cfg.chunks << ", confidence = " << fmt(est.confidence)
              << '\n';
    std::cout << "prob_universal,prob_parametrized,prob_chernoff,"
                 "estimate,ci_low,ci_high,verdict\n"
              << fmt(rep.probUniversal) << ',' << fmt(rep.probParametrized) << ','
              << fmt(rep.probChernoff) << ',' << fmt(est.pointEstimate) << ','
              << fmt(est.ciLow) << ',' << fmt(est.ciHigh) << ',' << verdictName << '\n';
  } else {
    printBoundText(spec, cfg, rep);
    std::cout << "samples     = " << est.samples << '\n'
              << "seed        = " << est.seed << '\n'
              << "chunks      = " << cfg.chunks << '\n'
              << "confidence  = " << fmt(est.confidence) << '\n'
              << "hits        = " << est.hits << '\n'
              << "estimate    = " << fmt(est.pointEstimate) << '\n'
              << "ci          = [" << fmt(est.ciLow) << ", " << fmt(est.ciHigh) << "]\n"
              << "verdict     : " << verdictName << '\n';
  }
  return verdict == Verdict::Consistent ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hwbound: explicit-constant tail bounds for Gaussian quadratic forms,\n"
      "with Monte Carlo verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.chunks = std::max(1u, std::thread::hardware_concurrency());

  const auto addOutputFormat = [&cfg](CLI::App* sub) {
    sub->add_option("--output-format", cfg.outputFormat, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
  };
  const auto addMatrixOptions = [&cfg](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrixPath, "path to a matrix text file")->required();
    sub->add_option("--a", cfg.a, "deviation threshold, > 0")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--r", cfg.r, "radius in (0,1); defaults to the optimal r*");
    sub->add_option("--side", cfg.side, "tail side (default two-sided)")
        ->check(CLI::IsMember({"upper", "lower", "two-sided"}));
    sub->add_flag("--symmetrize", cfg.symmetrize,
                  "replace the input by (A + A^T)/2 instead of rejecting asymmetry");
  };

  CLI::App* kappaCmd =
      app.add_subcommand("kappa", "solve for the optimal radius r* and constant kappa");
  addOutputFormat(kappaCmd);

  CLI::App* figureCmd =
      app.add_subcommand("figure", "emit the r/4 and 1/(8 xi_r) curves as CSV");
  figureCmd->add_option("--steps", cfg.steps, "grid resolution (default 999)")
      ->check(CLI::Range(2, 100000000));
  addOutputFormat(figureCmd);  // accepted for symmetry; figure output is CSV

  CLI::App* boundCmd =
      app.add_subcommand("bound", "evaluate all three tail bounds for a matrix");
  addMatrixOptions(boundCmd);
  addOutputFormat(boundCmd);

  CLI::App* verifyCmd = app.add_subcommand(
      "verify", "check the bounds against a seeded Monte Carlo tail estimate");
  addMatrixOptions(verifyCmd);
  addOutputFormat(verifyCmd);
  verifyCmd->add_option("--samples", cfg.samples, "Monte Carlo sample count (>= 1000)");
  verifyCmd->add_option("--seed", cfg.seed, "64-bit generator seed (default 42)")
      ->envname("HWBOUND_SEED");
  verifyCmd->add_option("--confidence", cfg.confidence,
                        "Wilson interval confidence (default 0.99)");
  verifyCmd->add_option("--chunks", cfg.chunks,
                        "independent sample chunks (default: hardware threads)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*kappaCmd) return runKappa(cfg);
    if (*figureCmd) return runFigure(cfg);
    if (*boundCmd) return runBound(cfg);
    return runVerify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (std::string(e.what()).find("asymmetric") != std::string::npos)
      std::cerr << "hint: pass --symmetrize to work with (A + A^T)/2; the quadratic "
                   "form x^T A x is identical\n";
    return kExitUsage;
  }
}
