#pragma once

// Physical parameter pipelines for two cold-atom realisations: a single well
// of an optical lattice, and a quasi-1D crossed-beam dipole trap whose
// frequencies and anharmonicity are supplied by the caller.

#include "revival/units.hpp"

namespace revival::experiments {

struct LatticeSpec {
  double depth = 35;             // K' in J, or in recoil energies if depth_in_recoils
  double wavelength = 838e-9;    // m
  double mass = units::kRb87Mass;
  double alpha = 0.25;           // q d' = alpha pi, 0 < alpha < 1/2
  bool depth_in_recoils = true;

  void validate() const;
};

struct LatticeDerived {
  double q = 0;               // 1/m
  double recoil_energy = 0;   // J
  double depth = 0;           // J
  double depth_recoils = 0;
  double omega0 = 0;          // rad/s
  double beta_phys = 0;       // J/m^4, negative for a cosine well
  double beta = 0;            // dimensionless, signed
  double d = 0;               // dimensionless displacement
  double d_phys = 0;          // m
  double t_osc = 0;           // dimensionless (2 pi)
  double t_revival = 0;       // dimensionless, leading order
  double t_collapse = 0;      // dimensionless, leading order
  double t_osc_phys = 0;      // s
  double t_revival_phys = 0;  // s
  double t_collapse_phys = 0; // s
  double ratio_revival_collapse = 0;
};

/// V = K (1 - cos q x) expanded to quartic order around a minimum.
LatticeDerived lattice_derive(const LatticeSpec& spec, double hbar = units::kHbar);

struct TrapSpec {
  double omega_z = 0;  // longitudinal, rad/s
  double omega_x = 0;  // transverse, rad/s
  double beta = 0;     // dimensionless anharmonicity along z

  void validate() const;
};

struct TrapLimits {
  double n_max_ratio = 0;  // omega_x / omega_z
  int n_max = 0;           // floor of the ratio
  double gamma_max = 0;    // gamma^2 + 3 gamma = n_max
  double d_max = 0;        // sqrt(2) gamma_max
  double t_revival_phys = 0;  // (8 pi / 3 |beta|) / omega_z, s
};

/// Quasi-1D bound: the mean occupation plus three standard deviations must
/// stay below the transverse excitation threshold.
TrapLimits trap_limits(const TrapSpec& spec);

struct ConfinementSpec {
  double omega_ext = 0;  // rad/s, external harmonic trap
  double omega0 = 0;     // rad/s, lattice well frequency
  double mass = units::kRb87Mass;

  void validate() const;
};

struct ConfinementShift {
  double delta_x = 0;            // w_ext^2 / (w_ext^2 + w0^2)
  double delta_x_approx = 0;     // (w_ext / w0)^2
  double unshifted_minimum = 0;  // n lambda / 2, m
  double shifted_minimum = 0;    // (n lambda / 2)(1 - delta_x), m
  double quadratic_coefficient = 0;  // m w_ext^2 / 2, J/m^2
  double cubic_coefficient = 0;      // K q^4 (n lambda / 2) delta_x / 6, J/m^3
};

/// Shift of the n-th lattice minimum by a weak external harmonic trap. The
/// cubic term is reported only; it never enters the dynamics.
ConfinementShift confinement_shift(const ConfinementSpec& spec, int site_index,
                                   double wavelength);

}  // namespace revival::experiments
