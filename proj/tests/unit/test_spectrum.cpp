#include <doctest.h>

#include <cmath>
#include <vector>

#include "revival/diagnostics.hpp"
#include "revival/error.hpp"
#include "revival/spectrum.hpp"

using namespace revival;
using namespace revival::spectrum;

namespace {

// Dense x^4 in a basis far larger than the indices probed, so truncation
// never reaches them. Independent of the ladder-operator closed form.
std::vector<std::vector<double>> dense_x4(std::size_t n) {
  std::vector<std::vector<double>> x(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) x[i][i + 1] = x[i + 1][i] = std::sqrt((i + 1) / 2.0);
  auto mul = [n](const auto& a, const auto& b) {
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  const auto x2 = mul(x, x);
  return mul(x2, x2);
}

struct SilenceWarnings {
  SilenceWarnings() { set_warning_handler([](std::string_view) {}); }
  ~SilenceWarnings() { set_warning_handler(nullptr); }
};

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("method names round trip") {
  for (auto m : {Method::Wkb, Method::Perturbation1, Method::Perturbation2, Method::Exact}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("dvr"), ValidationError);
}

TEST_CASE("turning point examples") {
  CHECK(turning_point(0.5, 0).amplitude == doctest::Approx(1.0).epsilon(1e-15));
  const auto tp = turning_point(1.0, 1e-4);
  const double a2 = tp.amplitude * tp.amplitude;
  CHECK(a2 == doctest::Approx((-1 + std::sqrt(1.0004)) / 1e-4).epsilon(1e-9));
  CHECK(std::abs(a2 / 2 + 1e-4 / 4 * a2 * a2 - 1.0) < 1e-12);
  CHECK(std::abs(turning_point(2, 1e-12).amplitude - turning_point(2, 0).amplitude) < 1e-10);
  CHECK_THROWS_AS(turning_point(0, 0.1), ValidationError);
  CHECK_THROWS_AS(turning_point(7, -0.0398), ValidationError);  // barrier 6.28
  CHECK_NOTHROW(turning_point(6, -0.0398));
}

TEST_CASE("turning point residual property") {
  for (double beta : {-0.04, -1e-3, 0.0, 1e-4, 0.0398, 0.5}) {
    for (double e : {0.1, 0.5, 1.0, 3.0, 6.0}) {
      if (e >= barrier_energy(beta)) continue;
      const double a = turning_point(e, beta).amplitude;
      const double back = a * a / 2 + beta / 4 * a * a * a * a;
      CHECK(std::abs(back - e) < 1e-12 * e);
    }
  }
}

TEST_CASE("action series examples") {
  CHECK(action_of_energy_series(1, 0) == 1);
  CHECK(action_of_energy_series(10, 1e-4) == doctest::Approx(9.99625546875).epsilon(1e-15));
  SilenceWarnings quiet;
  int warnings = 0;
  set_warning_handler([&](std::string_view) { ++warnings; });
  action_of_energy_series(10, 0.03);
  CHECK(warnings == 1);
}

TEST_CASE("action quadrature examples") {
  CHECK(action_of_energy_quadrature(0.5, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(action_of_energy_quadrature(10, 1e-4) - 9.996255457498) < 1e-11);
  const double q = action_of_energy_quadrature(2, 0.0398);
  const double s = action_of_energy_series(2, 0.0398);
  CHECK(std::abs(q - s) < std::pow(0.0398, 3) * 16);
  CHECK_THROWS_AS(action_of_energy_quadrature(7, -0.0398), ValidationError);
}

TEST_CASE("quadrature minus series scales as beta^3") {
  const double e = 5;
  const double d1 = action_of_energy_quadrature(e, 0.01) - action_of_energy_series(e, 0.01);
  const double d2 = action_of_energy_quadrature(e, 0.005) - action_of_energy_series(e, 0.005);
  CHECK(d1 / d2 == doctest::Approx(8.0).epsilon(1.0 / 8));
}

TEST_CASE("quadrature agreement bounded by C beta^3 E^4 on the grid") {
  SilenceWarnings quiet;
  for (double beta : {1e-4, 1e-3, 1e-2}) {
    for (double e : {1.0, 5.0, 10.0}) {
      const double dev =
          std::abs(action_of_energy_quadrature(e, beta) - action_of_energy_series(e, beta));
      CHECK(dev <= 2.0 * std::pow(beta, 3) * std::pow(e, 4) + 1e-12);
    }
  }
}

TEST_CASE("energy of action examples") {
  CHECK(energy_of_action(0.5, 0) == 0.5);
  const double b = 0.0398;
  const double expected = 8.5 + 3.0 / 8 * b * 8.5 * 8.5 - 17.0 / 64 * b * b * std::pow(8.5, 3);
  CHECK(energy_of_action(8.5, b) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(energy_of_action(8.5, b) == doctest::Approx(9.3199).epsilon(1e-4));
}

TEST_CASE("series inverse deviates at O(beta^3)") {
  const double e = 5;
  auto dev = [e](double beta) {
    return energy_of_action(action_of_energy_series(e, beta), beta) - e;
  };
  CHECK(std::abs(dev(0.01)) < 10 * std::pow(0.01, 3) * std::pow(e, 4));
  CHECK(dev(0.01) / dev(0.005) == doctest::Approx(8.0).epsilon(1.0 / 8));
}

TEST_CASE("WKB level examples") {
  CHECK(wkb_level(0, 0) == 0.5);
  const double b = 1e-4;
  const double closed = 3.5 + 3 * b / 8 * 12.25 - b * b * 11.388671875;
  CHECK(wkb_level(3, b) == doctest::Approx(closed).epsilon(1e-15));
  CHECK(wkb_level(3, b) == doctest::Approx(3.5004592611).epsilon(1e-10));
  for (int n = 0; n <= 60; ++n) {
    for (double beta : {-0.04, 1e-4, 0.0398}) {
      CHECK(std::abs(wkb_level(n, beta) - energy_of_action(n + 0.5, beta)) <
            1e-12 * std::abs(wkb_level(n, beta)));
    }
  }
}

TEST_CASE("quartic matrix elements match a dense matrix power") {
  const auto x4 = dense_x4(40);
  for (int n = 0; n < 20; ++n) {
    CHECK(quartic_matrix_element(n, n) == doctest::Approx(0.75 * (2.0 * n * n + 2 * n + 1)));
    for (int m = 0; m < 20; ++m) {
      CHECK(quartic_matrix_element(m, n) == doctest::Approx(x4[m][n]).epsilon(1e-13));
      CHECK(quartic_matrix_element(m, n) == quartic_matrix_element(n, m));
    }
  }
  CHECK(quartic_matrix_element(0, 0) == 0.75);
}

TEST_CASE("perturbation examples") {
  CHECK(perturbation_level(0, 0, 1) == 0.5);
  CHECK(perturbation_level(0, 0, 2) == 0.5);
  CHECK(perturbation_level(0, 0.01, 1) == doctest::Approx(0.501875).epsilon(1e-15));
  CHECK_THROWS_AS(perturbation_level(0, 0.01, 3), ValidationError);
  CHECK_THROWS_AS(perturbation_level(-1, 0.01, 1), ValidationError);
}

TEST_CASE("second-order perturbation is the brute-force sum") {
  const double b = 0.02;
  for (int n = 0; n < 12; ++n) {
    double sum = 0;
    for (int m = 0; m < n + 10; ++m) {
      if (m == n) continue;
      const double v = quartic_matrix_element(m, n);
      sum -= (b / 4) * (b / 4) * v * v / (m - n);
    }
    const double first = n + 0.5 + b / 4 * quartic_matrix_element(n, n);
    CHECK(perturbation_level(n, b, 2) == doctest::Approx(first + sum).epsilon(1e-15));
  }
}

TEST_CASE("harmonic limit for all three methods") {
  const auto w = wkb_spectrum(0, 50);
  const auto p1 = perturbation_spectrum(0, 50, 1);
  const auto p2 = perturbation_spectrum(0, 50, 2);
  const auto ex = exact_spectrum(0, 50);
  REQUIRE(ex.levels.size() == 50);
  for (std::size_t n = 0; n < 50; ++n) {
    CHECK(w.levels[n] == n + 0.5);
    CHECK(p1.levels[n] == n + 0.5);
    CHECK(p2.levels[n] == n + 0.5);
    if (n < 46) CHECK(std::abs(ex.levels[n] - (n + 0.5)) < 1e-10);
  }
}

TEST_CASE("basis guard") {
  CHECK(default_valid_up_to(50) == 21);
  CHECK(default_valid_up_to(400) == 320);
  CHECK(default_valid_up_to(100) == 60);
  CHECK(default_valid_up_to(4) == -1);
  for (std::size_t count : {1u, 10u, 57u, 200u}) {
    const auto n = basis_size_for_levels(count);
    CHECK(default_valid_up_to(n) >= static_cast<int>(count) - 1);
    CHECK(default_valid_up_to(n - 1) < static_cast<int>(count) - 1);
  }
  CHECK(exact_spectrum(1e-3, 400).valid_up_to == 320);
  ExactOptions opts;
  opts.valid_up_to = 5;
  CHECK(exact_spectrum(1e-3, 40, opts).valid_up_to == 5);
  CHECK_THROWS_AS(exact_spectrum(1e-3, 3), ValidationError);
  CHECK_THROWS_AS(exact_spectrum(0.6, 40), ValidationError);
}

TEST_CASE("Hamiltonian matrix is symmetric with the expected band") {
  const auto h = hamiltonian_matrix(0.01, 30);
  CHECK(h.max_asymmetry() == 0);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 30; ++j) {
      const auto gap = i > j ? i - j : j - i;
      if (gap % 2 == 1 || gap > 4) CHECK(h(i, j) == 0);
    }
  }
  // Interior rows are untouched by the truncation.
  for (int n = 0; n < 20; ++n) {
    CHECK(h(n, n) == doctest::Approx(n + 0.5 + 0.0025 * quartic_matrix_element(n, n)));
    CHECK(h(n, n + 4) == doctest::Approx(0.0025 * quartic_matrix_element(n, n + 4)));
  }
  const auto x = position_operator(5);
  CHECK(x(0, 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(x(3, 4) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("exact levels differ from WKB by the constant 3 beta / 32") {
  // The second-order WKB series omits the hbar^2 correction (3/32) beta that
  // quantum perturbation theory carries, so exact - WKB is flat in n.
  const double b = 1e-4;
  const auto ex = exact_spectrum(b, 200);
  for (int n : {0, 5, 10, 20, 40}) {
    const double offset = ex.levels[n] - wkb_level(n, b);
    CHECK(offset == doctest::Approx(3 * b / 32).epsilon(0.01));
    CHECK(std::abs(ex.levels[n] - perturbation_level(n, b, 2)) < 1e-6);
  }
  CHECK(std::abs(ex.levels[10] - perturbation_level(10, b, 2)) < 5e-9);
  CHECK(std::abs((ex.levels[11] - ex.levels[10]) - (wkb_level(11, b) - wkb_level(10, b))) < 5e-9);
}

TEST_CASE("exact spectrum converges in basis size") {
  const auto a = exact_spectrum(0.0398, 400);
  const auto b = exact_spectrum(0.0398, 600);
  for (int n = 0; n <= 50; ++n) CHECK(std::abs(a.levels[n] - b.levels[n]) < 1e-9);
}

TEST_CASE("QL and Jacobi give the same exact spectrum") {
  ExactOptions opts;
  opts.solver = Solver::Jacobi;
  const auto a = exact_spectrum(0.0398, 80);
  const auto b = exact_spectrum(0.0398, 80, opts);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t n = 0; n < a.levels.size(); ++n) {
    CHECK(std::abs(a.levels[n] - b.levels[n]) < 1e-12 * a.levels.back());
  }
}

TEST_CASE("monotone levels and growing spacing for beta > 0") {
  for (double beta : {1e-4, 1e-2, 0.0398, 0.3}) {
    const auto ex = exact_spectrum(beta, 200);
    for (int n = 0; n < ex.valid_up_to; ++n) CHECK(ex.levels[n + 1] > ex.levels[n]);
    for (int n = 0; n + 1 < ex.valid_up_to; ++n) {
      CHECK(ex.levels[n + 2] - ex.levels[n + 1] > ex.levels[n + 1] - ex.levels[n]);
    }
  }
}

TEST_CASE("negative beta keeps metastable levels below the barrier") {
  const double b = -0.0398;
  const auto ex = exact_spectrum(b, 200);
  const double top = barrier_energy(b);
  REQUIRE(ex.levels.size() >= 3);
  CHECK(ex.valid_up_to == static_cast<int>(ex.levels.size()) - 1);
  for (double e : ex.levels) CHECK(e < top);
  CHECK(std::abs(ex.levels[0] - perturbation_level(0, b, 2)) < 1e-4);
  const auto w = wkb_spectrum(b, 40);
  CHECK(w.valid_up_to < 39);
  CHECK(w.levels[w.valid_up_to] < top);
}

}
