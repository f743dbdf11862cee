#include "revival/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "revival/error.hpp"

namespace revival::linalg {

double SymmetricMatrix::frobenius_norm() const {
  double s = 0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double SymmetricMatrix::max_asymmetry() const {
  double worst = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

SymmetricMatrix SymmetricMatrix::multiply(const SymmetricMatrix& other) const {
  SymmetricMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * other(k, j);
    }
  }
  return out;
}

namespace {

// Sorts eigenpairs ascending. Columns of `v` (row-major n x n) follow values.
void sort_pairs(std::vector<double>& d, std::vector<double>& v, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = d[order[k]];
  d.swap(sorted);
  if (v.empty()) return;
  std::vector<double> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) w[i * n + k] = v[i * n + order[k]];
  v.swap(w);
}

// Householder reduction of the symmetric matrix held in v to tridiagonal
// form. On exit d holds the diagonal, e the subdiagonal in e[1..n-1] and v the
// accumulated orthogonal transformation.
void tridiagonalize(std::vector<double>& v, std::vector<double>& d,
                    std::vector<double>& e, std::size_t n) {
  auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };

  for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  V(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL with Wilkinson-type shifts on the tridiagonal (d, e).
int ql_implicit(std::vector<double>& v, std::vector<double>& d, std::vector<double>& e,
                std::size_t n, const EigenOptions& options, double norm) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const double threshold = options.relative_tolerance * norm;
  double shift_sum = 0.0;
  int total_iterations = 0;

  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > threshold) ++m;

    int iter = 0;
    while (m > l) {
      if (++iter > options.max_iterations) {
        std::ostringstream os;
        os << "QL eigensolver did not converge: eigenvalue " << l << " still has "
           << "off-diagonal " << std::abs(e[l]) << " after " << options.max_iterations
           << " iterations (threshold " << threshold << ")";
        throw ConvergenceError(os.str(), iter - 1, std::abs(e[l]));
      }
      ++total_iterations;

      double g = d[l];
      double p = (d[l + 1] - g) / (2.0 * e[l]);
      double r = std::hypot(p, 1.0);
      if (p < 0) r = -r;
      d[l] = e[l] / (p + r);
      d[l + 1] = e[l] * (p + r);
      const double dl1 = d[l + 1];
      double h = g - d[l];
      for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
      shift_sum += h;

      p = d[m];
      double c = 1.0, c2 = 1.0, c3 = 1.0;
      const double el1 = e[l + 1];
      double s = 0.0, s2 = 0.0;
      for (std::size_t ii = m; ii-- > l;) {
        c3 = c2;
        c2 = c;
        s2 = s;
        g = c * e[ii];
        h = c * p;
        r = std::hypot(p, e[ii]);
        e[ii + 1] = s * r;
        s = e[ii] / r;
        c = p / r;
        p = c * d[ii] - s * g;
        d[ii + 1] = h + s * (c * g + s * d[ii]);
        if (options.compute_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            double& vk1 = v[k * n + ii + 1];
            double& vk0 = v[k * n + ii];
            const double t = vk1;
            vk1 = s * vk0 + c * t;
            vk0 = c * vk0 - s * t;
          }
        }
      }
      p = -s * s2 * c3 * el1 * e[l] / dl1;
      e[l] = s * p;
      d[l] = c * p;

      m = l;
      while (m < n - 1 && std::abs(e[m]) > threshold) ++m;
    }
    d[l] += shift_sum;
    e[l] = 0.0;
  }
  return total_iterations;
}

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

void require_square_symmetric(const SymmetricMatrix& a) {
  const double tol = 1e-12 * std::max(1.0, a.frobenius_norm());
  if (a.max_asymmetry() > tol) {
    throw ValidationError("eigensolver: matrix is not symmetric");
  }
}

}  // namespace

EigenDecomposition eigh_tridiagonal_ql(const SymmetricMatrix& a, const EigenOptions& options) {
  require_square_symmetric(a);
  const std::size_t n = a.size();
  EigenDecomposition out;
  out.n = n;
  if (n == 0) return out;

  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v[i * n + j] = a(i, j);
  std::vector<double> d(n), e(n);

  if (n == 1) {
    out.values = {a(0, 0)};
    if (options.compute_vectors) out.vectors = {1.0};
    return out;
  }

  tridiagonalize(v, d, e, n);
  out.iterations = ql_implicit(v, d, e, n, options, a.frobenius_norm());
  if (!options.compute_vectors) v.clear();
  sort_pairs(d, v, n);
  out.values = std::move(d);
  out.vectors = std::move(v);
  return out;
}

EigenDecomposition eigh_jacobi(const SymmetricMatrix& input, const EigenOptions& options) {
  require_square_symmetric(input);
  const std::size_t n = input.size();
  EigenDecomposition out;
  out.n = n;

  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = input(i, j);
  std::vector<double> v;
  if (options.compute_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  const double target = options.relative_tolerance * input.frobenius_norm();
  int sweep = 0;
  double off = off_diagonal_norm(a, n);
  while (off > target) {
    if (++sweep > options.max_iterations) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge: off-diagonal norm " << off
         << " after " << options.max_iterations << " sweeps (target " << target << ")";
      throw ConvergenceError(os.str(), sweep - 1, off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Rutishauser's stable rotation.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        if (!v.empty()) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p];
            const double vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
    off = off_diagonal_norm(a, n);
  }

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
  sort_pairs(d, v, n);
  out.values = std::move(d);
  out.vectors = std::move(v);
  out.iterations = sweep;
  return out;
}

}  // namespace revival::linalg
