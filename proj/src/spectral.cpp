#include "hwbound/spectral.hpp"

#include "hwbound/jacobi.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hwbound {

namespace {

constexpr Eigen::Index kMaxDim = 10000;

bool isZeroMatrix(const Matrix& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

SymmetricMatrix SymmetricMatrix::fromMatrix(Matrix m, SymmetryMode mode) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("SymmetricMatrix: matrix must be square");
  if (m.rows() < 1) throw std::invalid_argument("SymmetricMatrix: n must be >= 1");

  if (mode == SymmetryMode::Symmetrize) {
    m = symmetrized(m);
  } else {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double worst = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (worst > kSymmetryTol * scale)
      throw std::invalid_argument(
          "SymmetricMatrix: input is asymmetric beyond tolerance (pass "
          "Symmetrize to replace it by (A + A^T)/2, which preserves the "
          "quadratic form)");
  }
  if (isZeroMatrix(m))
    throw std::invalid_argument("SymmetricMatrix: matrix must be nonzero");
  return SymmetricMatrix(std::move(m));
}

SymmetricMatrix makeSymmetric(Eigen::Index n, std::span<const double> entries,
                              SymmetryMode mode) {
  if (n < 1) throw std::invalid_argument("makeSymmetric: n must be >= 1");
  if (static_cast<Eigen::Index>(entries.size()) != n * n)
    throw std::invalid_argument("makeSymmetric: expected n*n entries");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
  return SymmetricMatrix::fromMatrix(std::move(m), mode);
}

namespace {

// Descending by value; stable so ties keep the order they were produced in.
std::vector<Eigen::Index> descendingOrder(const Vector& values) {
  std::vector<Eigen::Index> idx(values.size());
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&values](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });
  return idx;
}

}  // namespace

Spectrum Spectrum::fromEigenvalues(Vector lambdas) {
  if (lambdas.size() < 1) throw std::invalid_argument("Spectrum: empty eigenvalue list");
  const auto order = descendingOrder(lambdas);
  Vector sorted(lambdas.size());
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) sorted[k] = lambdas[order[k]];

  Spectrum s;
  s.eigenvalues = std::move(sorted);
  s.hsNormSq = s.eigenvalues.squaredNorm();
  s.opNorm = s.eigenvalues.cwiseAbs().maxCoeff();
  s.trace = s.eigenvalues.sum();
  if (s.opNorm == 0.0)
    throw std::invalid_argument("Spectrum: all eigenvalues are zero");
  return s;
}

Spectrum decompose(const SymmetricMatrix& a, bool wantVectors) {
  auto jac = jacobiEigen<double>(a.matrix(), wantVectors);
  const auto order = descendingOrder(jac.eigenvalues);
  const Eigen::Index n = a.dim();

  Spectrum s;
  s.eigenvalues.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) s.eigenvalues[k] = jac.eigenvalues[order[k]];
  s.hsNormSq = a.matrix().squaredNorm();
  s.opNorm = std::max(std::abs(s.eigenvalues[0]), std::abs(s.eigenvalues[n - 1]));
  s.trace = s.eigenvalues.sum();
  if (wantVectors) {
    // Jacobi accumulates A = V Lambda V^T with eigenvectors in columns of V;
    // store U = V^T (rows reordered with the eigenvalues) so A = U^T Lambda U.
    Matrix u(n, n);
    for (Eigen::Index k = 0; k < n; ++k) u.row(k) = jac.vectors.col(order[k]).transpose();
    s.eigenvectors = std::move(u);
  }
  return s;
}

namespace {

[[noreturn]] void parseFail(const std::string& what) {
  throw std::runtime_error("matrix parse error: " + what);
}

}  // namespace

Matrix readMatrix(std::istream& in) {
  // Tokenize: strip '#' comments, treat commas as separators.
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) parseFail("empty input");

  std::size_t pos = 0;
  long n = 0;
  try {
    n = std::stol(tokens[0], &pos);
  } catch (const std::exception&) {
    parseFail("first token must be the dimension n, got '" + tokens[0] + "'");
  }
  if (pos != tokens[0].size() || n < 1)
    parseFail("first token must be a positive integer dimension, got '" + tokens[0] + "'");
  if (n > kMaxDim) parseFail("dimension too large");

  const std::size_t want = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (tokens.size() - 1 != want)
    parseFail("expected " + std::to_string(want) + " entries for n = " +
              std::to_string(n) + ", got " + std::to_string(tokens.size() - 1));

  Matrix m(n, n);
  for (std::size_t k = 0; k < want; ++k) {
    const std::string& tok = tokens[k + 1];
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(tok, &used);
    } catch (const std::exception&) {
      parseFail("invalid number '" + tok + "'");
    }
    if (used != tok.size()) parseFail("invalid number '" + tok + "'");
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = value;
  }
  return m;
}

Matrix readMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  return readMatrix(in);
}

}  // namespace hwbound
