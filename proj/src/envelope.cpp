#include "revival/envelope.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "revival/error.hpp"
#include "revival/io.hpp"
#include "revival/units.hpp"

namespace revival::envelope {

double gap(int n, double beta) {
  if (n < 0) throw ValidationError("gap: n must be non-negative");
  const double m = n;
  return 1.0 + 0.75 * beta * (m + 1.0) -
         beta * beta * ((51.0 / 32.0) * m + (51.0 / 64.0) * m * m + 221.0 / 256.0);
}

std::string_view order_name(Order order) {
  return order == Order::LeadingBeta ? "leading" : "second";
}

Order parse_order(std::string_view name) {
  if (name == "leading" || name == "1") return Order::LeadingBeta;
  if (name == "second" || name == "2") return Order::SecondOrderBeta;
  throw ValidationError("unknown envelope order '" + std::string(name) +
                        "' (expected leading or second)");
}

EnvelopeModel build_model(double beta, double displacement, Order order) {
  units::ModelParams{beta, displacement}.validate();
  if (beta == 0.0) {
    throw ValidationError("envelope model needs nonzero beta: no anharmonicity, no revival");
  }
  if (!(displacement > 0)) throw ValidationError("envelope model needs displacement d > 0");

  EnvelopeModel m;
  m.beta = beta;
  m.displacement = displacement;
  m.order = order;
  m.gamma = displacement / std::numbers::sqrt2;
  m.n_bar = m.gamma * m.gamma;
  m.b2 = -(51.0 / 64.0) * beta * beta;

  const double abs_beta = std::abs(beta);
  const double leading_revival = 8.0 * std::numbers::pi / (3.0 * abs_beta);
  const double leading_sigma = 4.0 / (3.0 * m.gamma * abs_beta);
  if (order == Order::LeadingBeta) {
    m.b0 = 1.0 + 0.75 * beta * (m.n_bar + 1.0);
    m.b1 = 0.75 * beta;
    m.t_revival = leading_revival;
    m.sigma = leading_sigma;
  } else {
    m.b0 = 1.0 + 0.75 * beta * (m.n_bar + 1.0) -
           beta * beta * (221.0 / 256.0 + (51.0 / 32.0) * m.n_bar +
                          (51.0 / 64.0) * m.n_bar * m.n_bar);
    m.b1 = (3.0 / 32.0) * (8.0 * beta - 17.0 * beta * beta - 17.0 * m.n_bar * beta * beta);
    // |b1| = (3|beta|/4)(1 - eps); first-order expansion of 1/(1 - eps).
    const double eps = (17.0 / 8.0) * beta * (1.0 + m.n_bar);
    m.t_revival = leading_revival * (1.0 + eps);
    m.sigma = leading_sigma * (1.0 + eps);
  }
  m.t_osc = 2.0 * std::numbers::pi / std::abs(m.b0);
  m.t_collapse = std::numbers::sqrt2 * m.sigma;
  m.blur_ratio = std::abs(m.b2) * m.n_bar * m.t_revival;
  m.regime_valid = m.t_collapse / m.t_revival < kMaxCollapseToRevival &&
                   m.blur_ratio < kMaxBlurFraction * 2.0 * std::numbers::pi;
  return m;
}

double envelope_value(const EnvelopeModel& model, double t) {
  const double peak = std::numbers::sqrt2 * model.gamma;
  const long last = static_cast<long>(std::ceil(std::max(t, 0.0) / model.t_revival)) + 1;
  double sum = 0;
  for (long m = 0; m <= last; ++m) {
    const double u = (t - static_cast<double>(m) * model.t_revival) / model.sigma;
    sum += std::exp(-0.5 * u * u);
  }
  return peak * sum;
}

dynamics::TimeSeries analytic_xp(const EnvelopeModel& model, std::span<const double> times) {
  dynamics::validate_times(times);
  dynamics::TimeSeries out;
  out.provenance = dynamics::Provenance::Envelope;
  out.times.assign(times.begin(), times.end());
  out.x.reserve(times.size());
  out.p.reserve(times.size());
  for (double t : times) {
    const double f = envelope_value(model, t);
    const double phase = model.b0 * t;
    out.x.push_back(f * std::cos(phase));
    out.p.push_back(-f * std::sin(phase));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> model_report(const EnvelopeModel& m) {
  using io::format_double;
  return {
      {"beta", format_double(m.beta)},
      {"d", format_double(m.displacement)},
      {"gamma", format_double(m.gamma)},
      {"n_bar", format_double(m.n_bar)},
      {"b0", format_double(m.b0)},
      {"b1", format_double(m.b1)},
      {"b2", format_double(m.b2)},
      {"T_osc", format_double(m.t_osc)},
      {"T_r", format_double(m.t_revival)},
      {"T_c", format_double(m.t_collapse)},
      {"sigma", format_double(m.sigma)},
      {"order", std::string(order_name(m.order))},
      {"blur_ratio", format_double(m.blur_ratio)},
      {"regime_valid", m.regime_valid ? "true" : "false"},
  };
}

}  // namespace revival::envelope
