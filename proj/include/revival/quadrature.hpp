#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace revival::quadrature {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; nodes from Newton iteration on P_n.
GaussLegendreRule gauss_legendre(std::size_t points);

/// Integral of f over [a, b] with the given rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const GaussLegendreRule& rule);

struct AdaptiveResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t points = 0;
};

/// Doubles the point count until successive estimates agree to abs_tolerance.
/// Throws NumericError when max_points is exhausted.
AdaptiveResult integrate_to_tolerance(const std::function<double(double)>& f, double a,
                                      double b, double abs_tolerance,
                                      std::size_t start_points = 16,
                                      std::size_t max_points = 4096);

}  // namespace revival::quadrature
