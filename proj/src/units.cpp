#include "revival/units.hpp"

#include <cmath>
#include <sstream>

#include "revival/error.hpp"

namespace revival::units {
namespace {

double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(what) + " must be finite");
  }
  return value;
}

}  // namespace

void PhysicalScale::validate() const {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0) {
      throw ValidationError(std::string("physical scale: ") + name +
                            " must be finite and positive");
    }
  };
  positive(mass, "mass");
  positive(trap_frequency, "trap_frequency");
  positive(hbar, "hbar");
}

double PhysicalScale::length_unit() const {
  return std::sqrt(hbar / (mass * trap_frequency));
}

double PhysicalScale::momentum_unit() const {
  return std::sqrt(hbar * mass * trap_frequency);
}

double PhysicalScale::energy_unit() const { return hbar * trap_frequency; }

double PhysicalScale::beta_unit() const {
  return mass * mass * trap_frequency * trap_frequency * trap_frequency / hbar;
}

std::vector<std::string> ModelParams::validate() const {
  checked(beta, "beta");
  checked(displacement, "displacement");
  if (std::abs(beta) > kBetaHardCap) {
    std::ostringstream os;
    os << "|beta| = " << std::abs(beta) << " exceeds the hard cap " << kBetaHardCap
       << " of the small-anharmonicity model";
    throw ValidationError(os.str());
  }
  std::vector<std::string> warnings;
  if (std::abs(beta) > kBetaWarnThreshold) {
    std::ostringstream os;
    os << "|beta| = " << std::abs(beta) << " > " << kBetaWarnThreshold
       << ": second-order series results are unreliable";
    warnings.push_back(os.str());
  }
  return warnings;
}

double length_to_dimensionless(double x_phys, const PhysicalScale& scale) {
  scale.validate();
  return checked(x_phys, "length") / scale.length_unit();
}

double length_to_physical(double x, const PhysicalScale& scale) {
  scale.validate();
  return checked(x, "length") * scale.length_unit();
}

double momentum_to_dimensionless(double p_phys, const PhysicalScale& scale) {
  scale.validate();
  return checked(p_phys, "momentum") / scale.momentum_unit();
}

double momentum_to_physical(double p, const PhysicalScale& scale) {
  scale.validate();
  return checked(p, "momentum") * scale.momentum_unit();
}

double energy_to_dimensionless(double e_phys, const PhysicalScale& scale) {
  scale.validate();
  return checked(e_phys, "energy") / scale.energy_unit();
}

double energy_to_physical(double e, const PhysicalScale& scale) {
  scale.validate();
  return checked(e, "energy") * scale.energy_unit();
}

double beta_to_dimensionless(double beta_phys, const PhysicalScale& scale) {
  scale.validate();
  return checked(beta_phys, "beta") / scale.beta_unit();
}

double beta_to_physical(double beta, const PhysicalScale& scale) {
  scale.validate();
  return checked(beta, "beta") * scale.beta_unit();
}

double time_between_units(double t, const PhysicalScale& scale, Direction direction) {
  scale.validate();
  checked(t, "time");
  return direction == Direction::ToDimensionless ? t * scale.trap_frequency
                                                 : t / scale.trap_frequency;
}

}  // namespace revival::units
