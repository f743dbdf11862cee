#pragma once

// Conversion between physical (SI) quantities and the oscillator's natural
// units: length sqrt(hbar/(m w0)), time 1/w0, energy hbar w0, momentum
// sqrt(hbar m w0), quartic coefficient m^2 w0^3 / hbar.

#include <string>
#include <vector>

namespace revival::units {

/// CODATA 2018 reduced Planck constant [J s].
inline constexpr double kHbar = 1.054571817e-34;

/// Rb-87 atomic mass [kg], pinned to 1.4432e-25 so cold-atom numbers reproduce.
inline constexpr double kRb87Mass = 1.4432e-25;

/// Hard cap on |beta|; the second-order spectrum series is meaningless beyond it.
inline constexpr double kBetaHardCap = 0.5;
/// Above this |beta| the small-anharmonicity model is trusted less; warn.
inline constexpr double kBetaWarnThreshold = 0.1;

struct PhysicalScale {
  double mass = kRb87Mass;    // kg
  double trap_frequency = 0;  // rad/s
  double hbar = kHbar;        // J s

  /// Throws ValidationError unless every field is finite and positive.
  void validate() const;

  double length_unit() const;    // m
  double momentum_unit() const;  // kg m/s
  double energy_unit() const;    // J
  double beta_unit() const;      // J/m^4
};

/// Dimensionless problem definition for H = p^2/2 + x^2/2 + (beta/4) x^4 with
/// the ground state displaced by `displacement`.
struct ModelParams {
  double beta = 0;
  double displacement = 0;

  /// Enforces |beta| <= kBetaHardCap and finiteness. Returns soft warnings.
  std::vector<std::string> validate() const;
};

enum class Direction { ToDimensionless, ToPhysical };

double length_to_dimensionless(double x_phys, const PhysicalScale& scale);
double length_to_physical(double x, const PhysicalScale& scale);

double momentum_to_dimensionless(double p_phys, const PhysicalScale& scale);
double momentum_to_physical(double p, const PhysicalScale& scale);

double energy_to_dimensionless(double e_phys, const PhysicalScale& scale);
double energy_to_physical(double e, const PhysicalScale& scale);

double beta_to_dimensionless(double beta_phys, const PhysicalScale& scale);
double beta_to_physical(double beta, const PhysicalScale& scale);

/// t = w0 t' (ToDimensionless) or t' = t / w0 (ToPhysical).
double time_between_units(double t, const PhysicalScale& scale, Direction direction);

}  // namespace revival::units
