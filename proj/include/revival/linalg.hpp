#pragma once

// Dense real symmetric eigensolvers. Two independent routes are provided:
// Householder tridiagonalisation followed by implicit-shift QL (the default,
// O(n^3) with a small constant) and cyclic Jacobi rotations (slower, used as
// a cross-check). Both are single-threaded and fully deterministic.

#include <cstddef>
#include <span>
#include <vector>

namespace revival::linalg {

/// Row-major dense square matrix; symmetry is the caller's contract.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  double frobenius_norm() const;
  double max_asymmetry() const;

  /// Plain O(n^3) product; the caller guarantees the result is symmetric
  /// (true for powers and congruences of symmetric matrices).
  SymmetricMatrix multiply(const SymmetricMatrix& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenOptions {
  // Off-diagonal entries are treated as zero once below
  // relative_tolerance * ||A||. Machine epsilon keeps well inside 1e-12 ||A||.
  double relative_tolerance = 2.220446049250313e-16;
  int max_iterations = 60;  // per eigenvalue (QL) or total sweeps (Jacobi)
  bool compute_vectors = true;
};

/// Eigenvalues ascending; column k of `vectors` belongs to values[k].
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<double> vectors;  // row-major n x n, empty if not requested
  std::size_t n = 0;
  int iterations = 0;

  double vector(std::size_t row, std::size_t k) const { return vectors[row * n + k]; }
};

/// Householder reduction to tridiagonal form plus implicit QL iteration.
/// Throws ConvergenceError when an eigenvalue needs more than max_iterations.
EigenDecomposition eigh_tridiagonal_ql(const SymmetricMatrix& a,
                                       const EigenOptions& options = {});

/// Cyclic Jacobi. max_iterations bounds the number of full sweeps.
EigenDecomposition eigh_jacobi(const SymmetricMatrix& a, const EigenOptions& options = {});

}  // namespace revival::linalg
