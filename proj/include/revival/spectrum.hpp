#pragma once

// Energy levels of H = p^2/2 + x^2/2 + (beta/4) x^4 by three routes:
// the second-order WKB series, Rayleigh-Schroedinger perturbation theory and
// diagonalisation in a truncated harmonic-oscillator (Fock) basis. The action
// integral is additionally available by direct quadrature as an oracle for the
// series.

#include <cstddef>
#include <string_view>
#include <vector>

#include "revival/linalg.hpp"

namespace revival::spectrum {

enum class Method { Wkb, Perturbation1, Perturbation2, Exact };

std::string_view method_name(Method method);
/// Accepts "wkb", "pt1", "pt2", "exact"; throws ValidationError otherwise.
Method parse_method(std::string_view name);

struct SpectrumTable {
  Method method = Method::Wkb;
  double beta = 0;
  std::vector<double> levels;   // E_n, n = 0, 1, ...
  int valid_up_to = -1;         // highest trustworthy index, -1 if none
  std::size_t basis_size = 0;   // Fock truncation (Exact only)

  std::size_t size() const noexcept { return levels.size(); }
};

struct TurningPoint {
  double amplitude = 0;  // classical turning point a >= 0
  double energy = 0;
};

/// Energy of the top of the barrier for beta < 0, +inf otherwise.
double barrier_energy(double beta);

/// Solves E = a^2/2 + (beta/4) a^4 for the root continuous in beta.
/// Throws ValidationError for E <= 0 or for beta < 0 at or above the barrier.
TurningPoint turning_point(double energy, double beta);

/// I(E) = E - (3/8) beta E^2 + (35/64) beta^2 E^3. Warns when |beta| E > 0.2.
double action_of_energy_series(double energy, double beta);

/// I(E) = (1/pi) * integral of p dx between the turning points, evaluated by
/// Gauss-Legendre after x = a sin(theta) removes the endpoint square roots.
double action_of_energy_quadrature(double energy, double beta);

/// E(I) = I + (3/8) beta I^2 - (17/64) beta^2 I^3.
double energy_of_action(double action, double beta);

/// E_n from quantising I = n + 1/2 in energy_of_action.
double wkb_level(int n, double beta);

/// <m| x^4 |n> in the harmonic basis, from ladder operators (no truncation).
double quartic_matrix_element(int m, int n);

/// Rayleigh-Schroedinger perturbation theory in (beta/4) x^4, order 1 or 2.
/// The second-order term is summed over the nonzero elements m = n+-2, n+-4.
double perturbation_level(int n, double beta, int order);

/// Tables of the series methods for n = 0 .. count-1. Levels at or above the
/// barrier (beta < 0) lower valid_up_to.
SpectrumTable wkb_spectrum(double beta, std::size_t count);
SpectrumTable perturbation_spectrum(double beta, std::size_t count, int order);

// ---- Fock-basis diagonalisation ---------------------------------------------

enum class Solver { TridiagonalQL, Jacobi };

/// Tridiagonal position operator, <n|x|n+1> = sqrt((n+1)/2).
linalg::SymmetricMatrix position_operator(std::size_t basis_size);

/// diag(n + 1/2) + (beta/4) (x^2)^2 with x^2 squared inside the truncation.
linalg::SymmetricMatrix hamiltonian_matrix(double beta, std::size_t basis_size);

/// Largest n with n <= N - max(10, 4 sqrt(N)); -1 when the basis is too small.
int default_valid_up_to(std::size_t basis_size);

/// Smallest basis whose default guard trusts levels 0 .. count-1.
std::size_t basis_size_for_levels(std::size_t count);

struct ExactOptions {
  Solver solver = Solver::TridiagonalQL;
  int valid_up_to = -2;  // -2 selects default_valid_up_to
  bool compute_vectors = false;
  linalg::EigenOptions eigen{};
};

struct ExactEigensystem {
  SpectrumTable table;
  // Eigenpairs in table order; vectors are empty unless requested. For
  // beta < 0 only metastable-well states are kept (see exact_spectrum).
  linalg::EigenDecomposition decomposition;
};

/// Diagonalises the truncated Hamiltonian. Requires basis_size >= 4 and
/// |beta| within the hard cap. For beta < 0 the table keeps only states below
/// the barrier whose weight lies mostly in the lower half of the basis; the
/// unbounded outer region produces spurious states that are dropped.
ExactEigensystem exact_eigensystem(double beta, std::size_t basis_size,
                                   const ExactOptions& options = {});

SpectrumTable exact_spectrum(double beta, std::size_t basis_size,
                             const ExactOptions& options = {});

}  // namespace revival::spectrum
