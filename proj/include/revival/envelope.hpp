#pragma once

// Analytic collapse-and-revival model. The level gap is expanded around the
// mean occupation n_bar = gamma^2 as b0 + b1 n' + b2 n'^2; the oscillation of
// <x(t)> is a carrier of frequency b0 under a train of Gaussians of width
// sigma centred on multiples of the revival time.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revival/dynamics.hpp"

namespace revival::envelope {

/// E_{n+1} - E_n of the second-order WKB spectrum.
double gap(int n, double beta);

enum class Order { LeadingBeta, SecondOrderBeta };

std::string_view order_name(Order order);
/// Accepts "leading" or "second".
Order parse_order(std::string_view name);

/// Gate on T_c / T_r below which the Gaussian-sum envelope is trusted.
inline constexpr double kMaxCollapseToRevival = 0.2;
/// Gate on the b2 phase spread |b2| n_bar T_r, as a fraction of 2 pi.
inline constexpr double kMaxBlurFraction = 0.1;

struct EnvelopeModel {
  double beta = 0;
  double displacement = 0;
  double gamma = 0;
  double n_bar = 0;
  double b0 = 0, b1 = 0, b2 = 0;
  double t_osc = 0, t_revival = 0, t_collapse = 0, sigma = 0;
  Order order = Order::LeadingBeta;
  double blur_ratio = 0;  // |b2| n_bar T_r
  bool regime_valid = false;

  /// Carrier frequency of x(t) = f_env cos(b0 t).
  double carrier_frequency() const noexcept { return b0; }
};

/// Builds the model at the requested order. beta = 0 is rejected (no revival);
/// d must be positive. For beta < 0 the time scales use |b1| and b0 keeps its
/// sign. At second order T_r and sigma carry the first correction in beta in
/// expanded form, so T_r / T_c = pi d holds exactly at both orders.
EnvelopeModel build_model(double beta, double displacement, Order order);

/// f_env(t) = sqrt(2) gamma sum_m exp(-((t - m T_r) / sigma)^2 / 2), m >= 0.
double envelope_value(const EnvelopeModel& model, double t);

/// x = f_env cos(b0 t), p = -f_env sin(b0 t).
dynamics::TimeSeries analytic_xp(const EnvelopeModel& model, std::span<const double> times);

/// Flat key/value summary (beta, d, gamma, n_bar, b0, b1, b2, T_osc, T_r, T_c,
/// sigma, order, blur_ratio, regime_valid).
std::vector<std::pair<std::string, std::string>> model_report(const EnvelopeModel& model);

}  // namespace revival::envelope
