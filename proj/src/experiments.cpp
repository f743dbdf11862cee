#include "revival/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "revival/error.hpp"

namespace revival::experiments {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0) {
    throw ValidationError(std::string(what) + " must be finite and positive");
  }
}

}  // namespace

void LatticeSpec::validate() const {
  require_positive(depth, "lattice depth");
  require_positive(wavelength, "lattice wavelength");
  require_positive(mass, "atomic mass");
  if (!(alpha > 0 && alpha < 0.5)) {
    throw ValidationError("lattice alpha must lie in (0, 1/2): the displacement cannot "
                          "exceed a quarter wavelength");
  }
}

LatticeDerived lattice_derive(const LatticeSpec& spec, double hbar) {
  spec.validate();
  require_positive(hbar, "hbar");
  constexpr double pi = std::numbers::pi;
  const double m = spec.mass;

  LatticeDerived r;
  r.q = 2.0 * pi / spec.wavelength;
  const double q = r.q;
  r.recoil_energy = hbar * hbar * q * q / (2.0 * m);
  r.depth = spec.depth_in_recoils ? spec.depth * r.recoil_energy : spec.depth;
  r.depth_recoils = r.depth / r.recoil_energy;
  const double k = r.depth;

  r.omega0 = std::sqrt(k / m) * q;
  r.beta_phys = -k * q * q * q * q / 6.0;
  r.beta = -q * hbar / (6.0 * std::sqrt(m * k));

  const double km_quarter = std::pow(k * m, 0.25);
  const double qh_half = std::sqrt(q * hbar);
  r.d = spec.alpha * pi * km_quarter / qh_half;
  r.d_phys = spec.alpha * pi / q;

  r.t_osc = 2.0 * pi;
  r.t_revival = 16.0 * pi * std::sqrt(m * k) / (q * hbar);
  r.t_collapse = 16.0 / (spec.alpha * pi) * km_quarter / qh_half;

  r.t_osc_phys = 2.0 * pi / q * std::sqrt(m / k);
  r.t_revival_phys = 16.0 * pi * m / (q * q * hbar);
  r.t_collapse_phys = 16.0 / (spec.alpha * pi) *
                      std::pow(m * m * m / (hbar * hbar * k * std::pow(q, 6)), 0.25);
  r.ratio_revival_collapse = pi * pi * spec.alpha * km_quarter / qh_half;
  return r;
}

void TrapSpec::validate() const {
  require_positive(omega_z, "omega_z");
  require_positive(omega_x, "omega_x");
  if (!(omega_x > omega_z)) {
    throw ValidationError("quasi-1D trap needs omega_x > omega_z");
  }
  if (!std::isfinite(beta)) throw ValidationError("trap beta must be finite");
}

TrapLimits trap_limits(const TrapSpec& spec) {
  spec.validate();
  TrapLimits r;
  r.n_max_ratio = spec.omega_x / spec.omega_z;
  r.n_max = static_cast<int>(std::floor(r.n_max_ratio));
  const double n = r.n_max;
  r.gamma_max = 0.5 * (-3.0 + std::sqrt(9.0 + 4.0 * n));
  r.d_max = std::numbers::sqrt2 * r.gamma_max;
  r.t_revival_phys = spec.beta == 0.0
                         ? std::numeric_limits<double>::infinity()
                         : 8.0 * std::numbers::pi / (3.0 * std::abs(spec.beta)) / spec.omega_z;
  return r;
}

void ConfinementSpec::validate() const {
  if (!std::isfinite(omega_ext) || omega_ext < 0) {
    throw ValidationError("omega_ext must be finite and non-negative");
  }
  require_positive(omega0, "omega0");
  require_positive(mass, "mass");
  if (!(omega_ext < omega0)) throw ValidationError("confinement needs omega_ext < omega0");
}

ConfinementShift confinement_shift(const ConfinementSpec& spec, int site_index,
                                   double wavelength) {
  spec.validate();
  require_positive(wavelength, "wavelength");
  const double we2 = spec.omega_ext * spec.omega_ext;
  const double w02 = spec.omega0 * spec.omega0;
  const double q = 2.0 * std::numbers::pi / wavelength;

  ConfinementShift r;
  r.delta_x = we2 / (we2 + w02);
  r.delta_x_approx = we2 / w02;
  r.unshifted_minimum = site_index * wavelength / 2.0;
  r.shifted_minimum = r.unshifted_minimum * (1.0 - r.delta_x);
  r.quadratic_coefficient = 0.5 * spec.mass * we2;
  // K q^4 = m w0^2 q^2 for the lattice well.
  r.cubic_coefficient = spec.mass * w02 * q * q * r.unshifted_minimum * r.delta_x / 6.0;
  return r;
}

}  // namespace revival::experiments
