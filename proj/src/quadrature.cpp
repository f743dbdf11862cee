#include "revival/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "revival/error.hpp"

namespace revival::quadrature {

GaussLegendreRule gauss_legendre(std::size_t points) {
  if (points == 0) throw ValidationError("gauss_legendre: need at least one point");
  GaussLegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const std::size_t half = (points + 1) / 2;
  const double n = static_cast<double>(points);
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= points; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[points - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.weights[points - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

AdaptiveResult integrate_to_tolerance(const std::function<double(double)>& f, double a,
                                      double b, double abs_tolerance,
                                      std::size_t start_points, std::size_t max_points) {
  std::size_t n = start_points;
  double previous = integrate(f, a, b, gauss_legendre(n));
  while (n * 2 <= max_points) {
    n *= 2;
    const double current = integrate(f, a, b, gauss_legendre(n));
    const double err = std::abs(current - previous);
    if (err < abs_tolerance) return {current, err, n};
    previous = current;
  }
  std::ostringstream os;
  os << "quadrature did not reach tolerance " << abs_tolerance << " with " << max_points
     << " points";
  throw NumericError(os.str());
}

}  // namespace revival::quadrature
