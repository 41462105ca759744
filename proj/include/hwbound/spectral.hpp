#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

namespace hwbound {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative symmetry tolerance enforced on construction: off-diagonal pairs
// may differ by at most this times max(1, largest absolute entry).
inline constexpr double kSymmetryTol = 1e-12;

enum class SymmetryMode { Strict, Symmetrize };

// (A + A^T)/2. The quadratic form x^T A x is unchanged by this map.
template <typename Derived>
Matrix symmetrized(const Eigen::MatrixBase<Derived>& a) {
  return (a.derived() + a.derived().transpose()) / 2.0;
}

// A validated real symmetric matrix: square, n >= 1, symmetric within
// kSymmetryTol and not identically zero.
class SymmetricMatrix {
 public:
  // Validates (Strict) or replaces the input by (A + A^T)/2 (Symmetrize).
  static SymmetricMatrix fromMatrix(Matrix m, SymmetryMode mode);

  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  explicit SymmetricMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

// Eigenvalues and the derived quantities the tail bounds consume.
struct Spectrum {
  Vector eigenvalues;   // sorted descending
  double hsNormSq = 0;  // ||A||_2^2, squared Hilbert-Schmidt norm
  double opNorm = 0;    // max_i |lambda_i|
  double trace = 0;     // sum of eigenvalues = E[x^T A x]
  // Rows map A to diagonal form: A = U^T diag(eigenvalues) U.
  std::optional<Matrix> eigenvectors;

  // Builds a Spectrum directly from an eigenvalue list (no matrix involved).
  // Sorts descending and derives the norms; rejects an all-zero list.
  static Spectrum fromEigenvalues(Vector lambdas);
};

// Builds a SymmetricMatrix from n*n row-major entries.
SymmetricMatrix makeSymmetric(Eigen::Index n, std::span<const double> entries,
                              SymmetryMode mode);

template <typename Derived>
SymmetricMatrix makeSymmetric(const Eigen::MatrixBase<Derived>& m, SymmetryMode mode) {
  return SymmetricMatrix::fromMatrix(m.derived(), mode);
}

// Full eigendecomposition via cyclic Jacobi sweeps. Eigenvalues come back
// sorted descending, ties in the order produced; eigenvectors only when
// requested.
Spectrum decompose(const SymmetricMatrix& a, bool wantVectors = false);

// Matrix text format: '#' starts a comment running to end of line; the first
// non-comment token is n, followed by n*n whitespace- or comma-separated
// reals in row-major order. Decimal and scientific notation accepted.
Matrix readMatrix(std::istream& in);
Matrix readMatrixFile(const std::string& path);

}  // namespace hwbound
