#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace hwbound {

template <typename Scalar>
struct JacobiDecomposition {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;  // unordered (diagonal order)
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns are eigenvectors
  int sweeps = 0;
};

// Cyclic Jacobi eigensolver for a symmetric matrix. Rotations are applied
// pivot by pivot over the strict upper triangle; a sweep visits every pivot
// once. Converged when the squared off-diagonal mass drops below
// offTol * ||A||_2^2 (the squared Hilbert-Schmidt norm of the input, which
// plane rotations preserve). Throws after maxSweeps sweeps: the quadratic
// convergence of Jacobi makes that a bug signal, not a tuning knob.
template <typename Scalar>
JacobiDecomposition<Scalar> jacobiEigen(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, bool wantVectors,
    int maxSweeps = 30, Scalar offTol = Scalar(1e-24)) {
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  if (n != a.cols() || n < 1) throw std::invalid_argument("jacobiEigen: matrix must be square, n >= 1");

  const Scalar hsNormSq = a.squaredNorm();
  const Scalar offThreshold = offTol * hsNormSq;

  MatrixType v;
  if (wantVectors) v = MatrixType::Identity(n, n);

  auto offDiagSq = [&a, n]() {
    Scalar s = Scalar(0);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += Scalar(2) * a(p, q) * a(p, q);
    return s;
  };

  JacobiDecomposition<Scalar> result;
  int sweep = 0;
  while (offDiagSq() > offThreshold) {
    if (sweep >= maxSweeps)
      throw std::runtime_error("jacobiEigen: no convergence within the sweep cap");
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (std::abs(theta) > Scalar(1e150)) {
          t = Scalar(1) / (Scalar(2) * theta);  // avoids overflow in theta^2
        } else {
          t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
          if (theta < Scalar(0)) t = -t;
        }
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        // A <- J^T A J with J the plane rotation in the (p, q) plane
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);

        if (wantVectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Scalar vkp = v(k, p);
            const Scalar vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    ++sweep;
  }

  result.eigenvalues = a.diagonal();
  if (wantVectors) result.vectors = std::move(v);
  result.sweeps = sweep;
  return result;
}

}  // namespace hwbound
