#include "revival/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "revival/diagnostics.hpp"
#include "revival/error.hpp"
#include "revival/quadrature.hpp"
#include "revival/units.hpp"

namespace revival::spectrum {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Wkb: return "wkb";
    case Method::Perturbation1: return "pt1";
    case Method::Perturbation2: return "pt2";
    case Method::Exact: return "exact";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "wkb") return Method::Wkb;
  if (name == "pt1") return Method::Perturbation1;
  if (name == "pt2") return Method::Perturbation2;
  if (name == "exact") return Method::Exact;
  throw ValidationError("unknown spectrum method '" + std::string(name) +
                        "' (expected wkb, pt1, pt2 or exact)");
}

double barrier_energy(double beta) {
  return beta < 0 ? 1.0 / (4.0 * -beta) : std::numeric_limits<double>::infinity();
}

TurningPoint turning_point(double energy, double beta) {
  if (!std::isfinite(energy) || energy <= 0) {
    throw ValidationError("turning_point: energy must be positive");
  }
  const double disc = 1.0 + 4.0 * beta * energy;
  if (beta < 0 && disc <= 0) {
    std::ostringstream os;
    os << "turning_point: energy " << energy << " is above the barrier "
       << barrier_energy(beta) << " for beta " << beta;
    throw ValidationError(os.str());
  }
  // a^2 = (-1 + sqrt(disc)) / beta, rationalised so beta -> 0 is smooth.
  const double a2 = 4.0 * energy / (1.0 + std::sqrt(disc));
  return {std::sqrt(a2), energy};
}

double action_of_energy_series(double energy, double beta) {
  if (std::abs(beta) * energy > 0.2) {
    std::ostringstream os;
    os << "action series used at |beta| E = " << std::abs(beta) * energy << " > 0.2";
    warn(os.str());
  }
  return energy - 0.375 * beta * energy * energy +
         (35.0 / 64.0) * beta * beta * energy * energy * energy;
}

double action_of_energy_quadrature(double energy, double beta) {
  const TurningPoint tp = turning_point(energy, beta);
  const double a = tp.amplitude;
  const double a2 = a * a;
  const double a4 = a2 * a2;
  // p dx with x = a sin(theta): a cos^2(theta) sqrt(a^2 + beta a^4 (1 + sin^2) / 2).
  auto integrand = [=](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double inner = a2 + 0.5 * beta * a4 * (1.0 + s * s);
    return a * c * c * std::sqrt(std::max(inner, 0.0));
  };
  const auto result = quadrature::integrate_to_tolerance(
      integrand, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, 1e-13);
  return result.value / std::numbers::pi;
}

double energy_of_action(double action, double beta) {
  return action + 0.375 * beta * action * action -
         (17.0 / 64.0) * beta * beta * action * action * action;
}

double wkb_level(int n, double beta) {
  if (n < 0) throw ValidationError("wkb_level: n must be non-negative");
  const double m = n;
  return (m + 0.5) + 0.375 * beta * (m * m + m + 0.25) -
         beta * beta *
             ((17.0 / 64.0) * m * m * m + (51.0 / 128.0) * m * m + (51.0 / 256.0) * m +
              17.0 / 512.0);
}

double quartic_matrix_element(int m, int n) {
  if (m < 0 || n < 0) return 0.0;
  if (m < n) std::swap(m, n);
  // <n + k| (a + a^dagger)^4 |n> / 4, collected from the ladder-operator words.
  const double k = n;
  switch (m - n) {
    case 0: return 0.75 * (2.0 * k * k + 2.0 * k + 1.0);
    case 2: return 0.5 * (2.0 * k + 3.0) * std::sqrt((k + 1.0) * (k + 2.0));
    case 4: return 0.25 * std::sqrt((k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0));
    default: return 0.0;
  }
}

double perturbation_level(int n, double beta, int order) {
  if (n < 0) throw ValidationError("perturbation_level: n must be non-negative");
  if (order != 1 && order != 2) {
    throw ValidationError("perturbation_level: order must be 1 or 2");
  }
  const double coupling = beta / 4.0;
  double e = (n + 0.5) + coupling * quartic_matrix_element(n, n);
  if (order == 2) {
    for (int m : {n - 4, n - 2, n + 2, n + 4}) {
      if (m < 0) continue;
      const double v = coupling * quartic_matrix_element(m, n);
      e += v * v / static_cast<double>(n - m);
    }
  }
  return e;
}

namespace {

// Lowers valid_up_to to the last level below the barrier (beta < 0).
int series_valid_up_to(const std::vector<double>& levels, double beta) {
  const double top = barrier_energy(beta);
  int valid = -1;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (!(levels[n] < top)) break;
    if (n > 0 && !(levels[n] > levels[n - 1])) break;
    valid = static_cast<int>(n);
  }
  return valid;
}

}  // namespace

SpectrumTable wkb_spectrum(double beta, std::size_t count) {
  SpectrumTable t;
  t.method = Method::Wkb;
  t.beta = beta;
  t.levels.reserve(count);
  for (std::size_t n = 0; n < count; ++n) t.levels.push_back(wkb_level(static_cast<int>(n), beta));
  t.valid_up_to = series_valid_up_to(t.levels, beta);
  return t;
}

SpectrumTable perturbation_spectrum(double beta, std::size_t count, int order) {
  SpectrumTable t;
  t.method = order == 1 ? Method::Perturbation1 : Method::Perturbation2;
  t.beta = beta;
  t.levels.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    t.levels.push_back(perturbation_level(static_cast<int>(n), beta, order));
  }
  t.valid_up_to = series_valid_up_to(t.levels, beta);
  return t;
}

linalg::SymmetricMatrix position_operator(std::size_t basis_size) {
  linalg::SymmetricMatrix x(basis_size);
  for (std::size_t n = 0; n + 1 < basis_size; ++n) {
    const double v = std::sqrt((static_cast<double>(n) + 1.0) / 2.0);
    x(n, n + 1) = v;
    x(n + 1, n) = v;
  }
  return x;
}

linalg::SymmetricMatrix hamiltonian_matrix(double beta, std::size_t basis_size) {
  const auto x = position_operator(basis_size);
  const auto x2 = x.multiply(x);
  const auto x4 = x2.multiply(x2);
  linalg::SymmetricMatrix h(basis_size);
  const double coupling = beta / 4.0;
  for (std::size_t i = 0; i < basis_size; ++i) {
    // x^4 is banded (|i - j| <= 4); only that band is copied.
    const std::size_t lo = i >= 4 ? i - 4 : 0;
    const std::size_t hi = std::min(basis_size, i + 5);
    for (std::size_t j = lo; j < hi; ++j) h(i, j) = coupling * x4(i, j);
    h(i, i) += static_cast<double>(i) + 0.5;
  }
  return h;
}

int default_valid_up_to(std::size_t basis_size) {
  const double n = static_cast<double>(basis_size);
  const double guard = std::max(10.0, 4.0 * std::sqrt(n));
  const double top = std::floor(n - guard);
  return top < 0 ? -1 : static_cast<int>(std::min(top, n - 1));
}

std::size_t basis_size_for_levels(std::size_t count) {
  std::size_t n = std::max<std::size_t>(count, 4);
  while (default_valid_up_to(n) < static_cast<int>(count) - 1) ++n;
  return n;
}

ExactEigensystem exact_eigensystem(double beta, std::size_t basis_size,
                                   const ExactOptions& options) {
  if (basis_size < 4) throw ValidationError("exact_spectrum: basis size must be at least 4");
  units::ModelParams{beta, 0.0}.validate();

  const auto h = hamiltonian_matrix(beta, basis_size);
  linalg::EigenOptions eig = options.eigen;
  // Negative beta needs vectors to separate well states from spurious ones.
  eig.compute_vectors = options.compute_vectors || beta < 0;
  linalg::EigenDecomposition dec = options.solver == Solver::Jacobi
                                       ? linalg::eigh_jacobi(h, eig)
                                       : linalg::eigh_tridiagonal_ql(h, eig);

  int guard = options.valid_up_to == -2 ? default_valid_up_to(basis_size)
                                        : options.valid_up_to;
  guard = std::min(guard, static_cast<int>(basis_size) - 1);

  if (beta < 0) {
    const double top = barrier_energy(beta);
    const std::size_t n = basis_size;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k) {
      const double e = dec.values[k];
      if (!(e > 0 && e < top)) continue;
      double lower = 0;
      for (std::size_t i = 0; i < n / 2; ++i) lower += dec.vector(i, k) * dec.vector(i, k);
      if (lower >= 0.99) keep.push_back(k);
    }
    linalg::EigenDecomposition filtered;
    filtered.n = n;
    filtered.iterations = dec.iterations;
    for (std::size_t k : keep) filtered.values.push_back(dec.values[k]);
    if (options.compute_vectors) {
      filtered.vectors.assign(n * n, 0.0);
      for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < n; ++i)
          filtered.vectors[i * n + c] = dec.vector(i, keep[c]);
    }
    dec = std::move(filtered);
    guard = std::min(guard, static_cast<int>(dec.values.size()) - 1);
  } else {
    if (!options.compute_vectors) dec.vectors.clear();
    // A hardening well has strictly growing level spacing. Truncation shows up
    // first as near-degenerate pairs, well below the basis edge for larger beta.
    if (beta > 0 && options.valid_up_to == -2) {
      const auto& e = dec.values;
      for (int k = 0; k + 2 <= guard; ++k) {
        if (e[k + 2] - e[k + 1] <= e[k + 1] - e[k]) {
          guard = k + 1;
          break;
        }
      }
    }
  }

  ExactEigensystem out;
  out.table.method = Method::Exact;
  out.table.beta = beta;
  out.table.levels = dec.values;
  out.table.valid_up_to = guard;
  out.table.basis_size = basis_size;
  out.decomposition = std::move(dec);
  return out;
}

SpectrumTable exact_spectrum(double beta, std::size_t basis_size, const ExactOptions& options) {
  ExactOptions opts = options;
  opts.compute_vectors = false;
  return exact_eigensystem(beta, basis_size, opts).table;
}

}  // namespace revival::spectrum
