#pragma once

// Displaced harmonic ground state and its <x(t)>, <p(t)> under the anharmonic
// Hamiltonian, either from a spectrum with harmonic eigenstates assumed
// (trigonometric gap sums) or by exact evolution in the diagonalised Fock basis.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "revival/linalg.hpp"
#include "revival/spectrum.hpp"

namespace revival::dynamics {

/// Tail mass 1 - sum |c_n|^2 tolerated by a truncated coherent state.
inline constexpr double kTailTolerance = 1e-8;

struct CoherentState {
  double gamma = 0;                   // d / sqrt(2)
  std::vector<double> coefficients;   // c_n = exp(-gamma^2/2) gamma^n / sqrt(n!)

  std::size_t truncation() const noexcept { return coefficients.size(); }
  double displacement() const;
  double norm_squared() const;
};

/// ceil(gamma^2 + 10 gamma + 10): smallest truncation coherent_state accepts.
std::size_t minimum_truncation(double displacement);
/// ceil(gamma^2 + 10 gamma + 20): truncation used when none is given.
std::size_t default_truncation(double displacement);

/// Coefficients by log accumulation. Requires d >= 0 (negative displacements
/// are handled by parity in the evolution routines). Throws TruncationError
/// naming the required N when the truncation is too small.
CoherentState coherent_state(double displacement, std::size_t truncation);

struct OccupationStats {
  double mean = 0;
  double variance = 0;
};

OccupationStats occupation_stats(const CoherentState& state);

enum class Provenance { ExactDiag, AnalyticSpectrumSum, Envelope };
std::string_view provenance_name(Provenance p);

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<double> p;
  Provenance provenance = Provenance::ExactDiag;

  std::size_t size() const noexcept { return times.size(); }
  /// Throws ValidationError on unequal lengths or non-increasing times.
  void validate() const;
};

/// `samples` points evenly spaced over [t0, t1], endpoints included.
std::vector<double> uniform_times(double t0, double t1, std::size_t samples);

/// Throws ValidationError unless times are finite and strictly increasing.
void validate_times(std::span<const double> times);

/// Gap sums with harmonic eigenstates assumed:
///   x(t) =  sqrt(2) sum c_n c_{n+1} sqrt(n+1) cos((E_{n+1} - E_n) t)
///   p(t) = -sqrt(2) sum c_n c_{n+1} sqrt(n+1) sin((E_{n+1} - E_n) t)
/// Requires spectrum.valid_up_to >= truncation - 1.
TimeSeries expectation_series(const CoherentState& state,
                              const spectrum::SpectrumTable& spectrum,
                              std::span<const double> times, unsigned threads = 1);

/// Smallest Fock basis whose diagonalisation guard covers a state truncated
/// at `state_truncation`.
std::size_t exact_basis_size(std::size_t state_truncation);

/// Exact unitary evolution of a real initial vector in the Fock basis:
/// diagonalise once, then rotate eigen-amplitudes by exp(-i E_k t).
class ExactEvolution {
 public:
  ExactEvolution(double beta, std::size_t basis_size, std::span<const double> initial,
                 spectrum::Solver solver = spectrum::Solver::TridiagonalQL);

  std::size_t basis_size() const noexcept { return basis_size_; }
  double beta() const noexcept { return beta_; }
  const std::vector<double>& energies() const noexcept { return energies_; }

  /// <x(t)> and <p(t)> from the eigenbasis; parity blocks keep this O(K^2/2).
  std::pair<double, double> expectation(double t) const;

  /// Full state in the harmonic basis at time t.
  std::vector<std::complex<double>> harmonic_state(double t) const;

  TimeSeries sample(std::span<const double> times, unsigned threads = 1) const;

 private:
  double beta_;
  std::size_t basis_size_;
  std::vector<double> energies_;
  linalg::EigenDecomposition eigen_;
  std::vector<double> overlaps_;  // eigen-amplitudes at t = 0

  // Active eigenstates (non-negligible overlap) split by parity, with the
  // position and momentum couplings between the two blocks.
  std::vector<std::size_t> even_, odd_;
  std::vector<double> x_block_;  // even_.size() x odd_.size(), row-major
  std::vector<double> a_block_;  // momentum p = i A; A block, same layout
};

/// Exact pipeline for a displaced ground state. N is the state truncation;
/// the Fock basis is enlarged by exact_basis_size. Negative d evolves |d| and
/// negates both outputs.
TimeSeries expectation_exact(double beta, double displacement, std::size_t truncation,
                             std::span<const double> times, unsigned threads = 1);

}  // namespace revival::dynamics
