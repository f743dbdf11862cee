#include "revival/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "revival/error.hpp"
#include "revival/parallel.hpp"
#include "revival/units.hpp"

namespace revival::dynamics {

double CoherentState::displacement() const { return std::numbers::sqrt2 * gamma; }

double CoherentState::norm_squared() const {
  double s = 0;
  for (double c : coefficients) s += c * c;
  return s;
}

namespace {

double gamma_of(double displacement) { return displacement / std::numbers::sqrt2; }

std::size_t guard_truncation(double displacement, double extra) {
  const double g = gamma_of(std::abs(displacement));
  return static_cast<std::size_t>(std::ceil(g * g + 10.0 * g + extra));
}

std::vector<double> coefficients(double gamma, std::size_t n) {
  std::vector<double> c(n, 0.0);
  if (n == 0) return c;
  if (gamma == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_gamma = std::log(gamma);
  const double base = -0.5 * gamma * gamma;
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    c[k] = std::exp(base + kk * log_gamma - 0.5 * std::lgamma(kk + 1.0));
  }
  return c;
}

}  // namespace

std::size_t minimum_truncation(double displacement) {
  return guard_truncation(displacement, 10.0);
}

std::size_t default_truncation(double displacement) {
  return guard_truncation(displacement, 20.0);
}

CoherentState coherent_state(double displacement, std::size_t truncation) {
  if (!std::isfinite(displacement) || displacement < 0) {
    throw ValidationError("coherent_state: displacement must be finite and non-negative");
  }
  const double gamma = gamma_of(displacement);
  std::size_t required = std::max<std::size_t>(minimum_truncation(displacement), 1);
  // The guard is generous; confirm the actual tail mass and extend if needed.
  auto tail = [&](std::size_t n) {
    double s = 0;
    for (double c : coefficients(gamma, n)) s += c * c;
    return 1.0 - s;
  };
  while (tail(required) > kTailTolerance) ++required;

  if (truncation < required) {
    std::ostringstream os;
    os << "truncation N = " << truncation << " is too small for displacement "
       << displacement << "; requires N >= " << required;
    throw TruncationError(os.str(), required);
  }
  return {gamma, coefficients(gamma, truncation)};
}

OccupationStats occupation_stats(const CoherentState& state) {
  double mass = 0, mean = 0;
  for (std::size_t n = 0; n < state.coefficients.size(); ++n) {
    const double w = state.coefficients[n] * state.coefficients[n];
    mass += w;
    mean += static_cast<double>(n) * w;
  }
  if (mass <= 0) return {};
  mean /= mass;
  double var = 0;
  for (std::size_t n = 0; n < state.coefficients.size(); ++n) {
    const double w = state.coefficients[n] * state.coefficients[n];
    const double dn = static_cast<double>(n) - mean;
    var += dn * dn * w;
  }
  return {mean, var / mass};
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ExactDiag: return "exact-diag";
    case Provenance::AnalyticSpectrumSum: return "analytic-spectrum-sum";
    case Provenance::Envelope: return "envelope";
  }
  return "unknown";
}

void validate_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw ValidationError("time grid contains a non-finite value");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ValidationError("time grid must be strictly increasing");
    }
  }
}

void TimeSeries::validate() const {
  if (x.size() != times.size() || p.size() != times.size()) {
    throw ValidationError("time series columns have unequal lengths");
  }
  validate_times(times);
}

std::vector<double> uniform_times(double t0, double t1, std::size_t samples) {
  if (samples == 0) return {};
  if (samples == 1) throw ValidationError("uniform_times: need at least 2 samples");
  if (!(t1 > t0)) throw ValidationError("uniform_times: need t1 > t0");
  std::vector<double> t(samples);
  const double span = t1 - t0;
  const double last = static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    t[i] = t0 + span * (static_cast<double>(i) / last);
  }
  t.back() = t1;
  return t;
}

TimeSeries expectation_series(const CoherentState& state,
                              const spectrum::SpectrumTable& spectrum,
                              std::span<const double> times, unsigned threads) {
  validate_times(times);
  const std::size_t n = state.truncation();
  if (n < 2 || spectrum.valid_up_to < static_cast<int>(n) - 1 || spectrum.size() < n) {
    std::ostringstream os;
    os << "spectrum (" << spectrum::method_name(spectrum.method) << ") trusts levels up to "
       << spectrum.valid_up_to << " but the state needs levels 0.." << (n - 1);
    throw ValidationError(os.str());
  }

  std::vector<double> weight(n - 1), gap(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    weight[k] = std::numbers::sqrt2 * state.coefficients[k] * state.coefficients[k + 1] *
                std::sqrt(static_cast<double>(k) + 1.0);
    gap[k] = spectrum.levels[k + 1] - spectrum.levels[k];
  }

  TimeSeries out;
  out.provenance = Provenance::AnalyticSpectrumSum;
  out.times.assign(times.begin(), times.end());
  out.x.resize(times.size());
  out.p.resize(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    double x = 0, p = 0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      const double phase = gap[k] * times[i];
      x += weight[k] * std::cos(phase);
      p -= weight[k] * std::sin(phase);
    }
    out.x[i] = x;
    out.p[i] = p;
  });
  return out;
}

std::size_t exact_basis_size(std::size_t state_truncation) {
  return spectrum::basis_size_for_levels(state_truncation);
}

ExactEvolution::ExactEvolution(double beta, std::size_t basis_size,
                               std::span<const double> initial, spectrum::Solver solver)
    : beta_(beta), basis_size_(basis_size) {
  if (basis_size < 4) throw ValidationError("ExactEvolution: basis size must be at least 4");
  if (initial.size() > basis_size) {
    throw ValidationError("ExactEvolution: initial vector longer than the basis");
  }
  units::ModelParams{beta, 0.0}.validate();

  const auto h = spectrum::hamiltonian_matrix(beta, basis_size);
  linalg::EigenOptions opts;
  opts.compute_vectors = true;
  eigen_ = solver == spectrum::Solver::Jacobi ? linalg::eigh_jacobi(h, opts)
                                              : linalg::eigh_tridiagonal_ql(h, opts);
  energies_ = eigen_.values;

  const std::size_t n = basis_size;
  overlaps_.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < initial.size(); ++i) s += eigen_.vector(i, k) * initial[i];
    overlaps_[k] = s;
  }

  // Eigenstates have definite parity since H commutes with x -> -x.
  constexpr double kNegligible = 1e-14;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(overlaps_[k]) < kNegligible) continue;
    double even_weight = 0;
    for (std::size_t i = 0; i < n; i += 2) even_weight += eigen_.vector(i, k) * eigen_.vector(i, k);
    (even_weight > 0.5 ? even_ : odd_).push_back(k);
  }

  auto s = [](std::size_t m) { return std::sqrt((static_cast<double>(m) + 1.0) / 2.0); };
  const std::size_t ne = even_.size(), no = odd_.size();
  x_block_.assign(ne * no, 0.0);
  a_block_.assign(ne * no, 0.0);
  std::vector<double> xv(n), av(n);
  for (std::size_t c = 0; c < no; ++c) {
    const std::size_t o = odd_[c];
    for (std::size_t i = 0; i < n; ++i) {
      const double up = i + 1 < n ? eigen_.vector(i + 1, o) : 0.0;
      const double down = i > 0 ? eigen_.vector(i - 1, o) : 0.0;
      const double s_up = i + 1 < n ? s(i) : 0.0;
      const double s_down = i > 0 ? s(i - 1) : 0.0;
      xv[i] = s_up * up + s_down * down;
      av[i] = -s_up * up + s_down * down;
    }
    for (std::size_t r = 0; r < ne; ++r) {
      const std::size_t e = even_[r];
      double xs = 0, as = 0;
      for (std::size_t i = 0; i < n; ++i) {
        xs += eigen_.vector(i, e) * xv[i];
        as += eigen_.vector(i, e) * av[i];
      }
      x_block_[r * no + c] = xs;
      a_block_[r * no + c] = as;
    }
  }
}

std::pair<double, double> ExactEvolution::expectation(double t) const {
  const std::size_t ne = even_.size(), no = odd_.size();
  if (ne == 0 || no == 0) return {0.0, 0.0};
  // A common energy offset only changes a global phase.
  const double ref = energies_[even_.front()];

  auto amplitude = [&](std::size_t k) {
    const double phase = (energies_[k] - ref) * t;
    return std::complex<double>(overlaps_[k] * std::cos(phase), -overlaps_[k] * std::sin(phase));
  };
  std::vector<std::complex<double>> zo(no);
  for (std::size_t c = 0; c < no; ++c) zo[c] = amplitude(odd_[c]);

  double x = 0, p = 0;
  for (std::size_t r = 0; r < ne; ++r) {
    const std::complex<double> ze = std::conj(amplitude(even_[r]));
    const double* xr = &x_block_[r * no];
    const double* ar = &a_block_[r * no];
    double xre = 0, xim = 0, are = 0, aim = 0;
    for (std::size_t c = 0; c < no; ++c) {
      xre += xr[c] * zo[c].real();
      xim += xr[c] * zo[c].imag();
      are += ar[c] * zo[c].real();
      aim += ar[c] * zo[c].imag();
    }
    x += (ze * std::complex<double>(xre, xim)).real();
    p += (ze * std::complex<double>(are, aim)).imag();
  }
  return {2.0 * x, -2.0 * p};
}

std::vector<std::complex<double>> ExactEvolution::harmonic_state(double t) const {
  const std::size_t n = basis_size_;
  std::vector<std::complex<double>> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = energies_[k] * t;
    a[k] = overlaps_[k] * std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  std::vector<std::complex<double>> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < n; ++k) s += eigen_.vector(i, k) * a[k];
    psi[i] = s;
  }
  return psi;
}

TimeSeries ExactEvolution::sample(std::span<const double> times, unsigned threads) const {
  validate_times(times);
  TimeSeries out;
  out.provenance = Provenance::ExactDiag;
  out.times.assign(times.begin(), times.end());
  out.x.resize(times.size());
  out.p.resize(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const auto [x, p] = expectation(times[i]);
    out.x[i] = x;
    out.p[i] = p;
  });
  return out;
}

TimeSeries expectation_exact(double beta, double displacement, std::size_t truncation,
                             std::span<const double> times, unsigned threads) {
  if (!std::isfinite(displacement)) throw ValidationError("displacement must be finite");
  units::ModelParams{beta, displacement}.validate();
  const double magnitude = std::abs(displacement);
  coherent_state(magnitude, truncation);  // truncation check only

  const std::size_t basis = exact_basis_size(truncation);
  const CoherentState state = coherent_state(magnitude, basis);
  ExactEvolution evolution(beta, basis, state.coefficients);
  TimeSeries out = evolution.sample(times, threads);
  if (displacement < 0) {
    for (double& v : out.x) v = -v;
    for (double& v : out.p) v = -v;
  }
  return out;
}

}  // namespace revival::dynamics
