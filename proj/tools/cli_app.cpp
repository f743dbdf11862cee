#include "cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "revival/diagnostics.hpp"
#include "revival/dynamics.hpp"
#include "revival/error.hpp"
#include "revival/experiments.hpp"
#include "revival/units.hpp"

namespace revival::cli {

using io::format_double;

void ScenarioConfig::validate() const {
  const auto warnings = units::ModelParams{beta, displacement}.validate();
  for (const auto& w : warnings) warn(w);
  if (t_end < 0 || !std::isfinite(t_end)) throw ValidationError("t_end must be non-negative");
  if (t_end == 0 && !(revivals > 0)) throw ValidationError("time span must be positive");
  if (samples == 1) throw ValidationError("need at least 2 samples");
  if (samples == 0 && !(samples_per_period > 0)) {
    throw ValidationError("samples_per_period must be positive");
  }
  if (beta == 0.0 && envelope) {
    throw ValidationError("beta = 0: the envelope is undefined (infinite revival time); "
                          "pass --no-envelope");
  }
  if (beta == 0.0 && t_end == 0) {
    throw ValidationError("beta = 0: no revival time to scale the span; give t_end");
  }
  if (beta == 0.0 && compare_orders) {
    throw ValidationError("beta = 0: cannot compare envelope orders");
  }
}

ScenarioConfig preset_scenario(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  if (name == "fig1") {
    c.beta = 1e-4;
    c.displacement = 4.0;
    c.revivals = 2.2;
    c.order = envelope::Order::LeadingBeta;
    return c;
  }
  // Lattice wells at 35, 175 and 350 recoil energies with alpha = 0.25. The
  // cosine well has beta < 0; the revival picture uses its magnitude.
  double depth = 0;
  if (name == "fig2a") depth = 35;
  if (name == "fig2b") depth = 175;
  if (name == "fig2c") depth = 350;
  if (depth == 0) {
    throw ValidationError("unknown evolve preset '" + name +
                          "' (expected fig1, fig2a, fig2b or fig2c)");
  }
  experiments::LatticeSpec spec;
  spec.depth = depth;
  const auto lattice = experiments::lattice_derive(spec);
  c.beta = std::abs(lattice.beta);
  c.displacement = lattice.d;
  c.revivals = 3.2;
  c.order = envelope::Order::SecondOrderBeta;
  c.compare_orders = true;
  return c;
}

ScenarioConfig scenario_from_file(const io::KeyValueFile& file, ScenarioConfig base) {
  ScenarioConfig c = std::move(base);
  if (file.contains("preset")) c = preset_scenario(file.get("preset"));
  c.beta = file.get_double("beta", c.beta);
  c.displacement = file.get_double("d", c.displacement);
  if (file.contains("truncation")) {
    const double n = file.get_double("truncation");
    if (n < 0 || n != std::floor(n)) throw ValidationError("truncation must be a whole number");
    c.truncation = static_cast<std::size_t>(n);
  }
  c.t_end = file.get_double("t_end", c.t_end);
  c.revivals = file.get_double("revivals", c.revivals);
  if (file.contains("samples")) {
    const double s = file.get_double("samples");
    if (s < 0 || s != std::floor(s)) throw ValidationError("samples must be a whole number");
    c.samples = static_cast<std::size_t>(s);
  }
  c.samples_per_period = file.get_double("samples_per_period", c.samples_per_period);
  if (file.contains("method")) c.method = spectrum::parse_method(file.get("method"));
  if (file.contains("order")) c.order = envelope::parse_order(file.get("order"));
  c.envelope = file.get_bool("envelope", c.envelope);
  c.exact = file.get_bool("exact", c.exact);
  c.compare_orders = file.get_bool("compare_orders", c.compare_orders);
  if (const auto unused = file.unused_keys(); !unused.empty()) {
    throw ValidationError("unknown scenario key '" + unused.front() + "'");
  }
  return c;
}

namespace {

spectrum::SpectrumTable series_spectrum(spectrum::Method method, double beta, std::size_t n) {
  switch (method) {
    case spectrum::Method::Wkb: return spectrum::wkb_spectrum(beta, n);
    case spectrum::Method::Perturbation1: return spectrum::perturbation_spectrum(beta, n, 1);
    case spectrum::Method::Perturbation2: return spectrum::perturbation_spectrum(beta, n, 2);
    case spectrum::Method::Exact:
      return spectrum::exact_spectrum(beta, dynamics::exact_basis_size(n));
  }
  throw ValidationError("unknown spectrum method");
}

}  // namespace

void run_evolve(const ScenarioConfig& config, std::ostream& out, unsigned threads) {
  config.validate();
  const double magnitude = std::abs(config.displacement);
  const double sign = config.displacement < 0 ? -1.0 : 1.0;
  const std::size_t truncation = config.truncation > 0
                                     ? config.truncation
                                     : dynamics::default_truncation(magnitude);
  const dynamics::CoherentState state = dynamics::coherent_state(magnitude, truncation);

  std::optional<envelope::EnvelopeModel> model, leading, second;
  if (config.beta != 0.0 && magnitude > 0) {
    model = envelope::build_model(config.beta, magnitude, config.order);
    leading = envelope::build_model(config.beta, magnitude, envelope::Order::LeadingBeta);
    second = envelope::build_model(config.beta, magnitude, envelope::Order::SecondOrderBeta);
  } else if (config.envelope || config.compare_orders) {
    throw ValidationError("envelope needs nonzero beta and displacement; pass --no-envelope");
  }

  const double t_end = config.t_end > 0 ? config.t_end : config.revivals * model->t_revival;
  const std::size_t samples =
      config.samples > 0
          ? config.samples
          : static_cast<std::size_t>(
                std::ceil(t_end / (2.0 * std::numbers::pi) * config.samples_per_period)) +
                1;
  const auto times = dynamics::uniform_times(0.0, t_end, std::max<std::size_t>(samples, 2));

  const auto table = series_spectrum(config.method, config.beta, truncation);
  dynamics::TimeSeries series = dynamics::expectation_series(state, table, times, threads);

  std::optional<dynamics::TimeSeries> exact;
  std::size_t basis = 0;
  if (config.exact) {
    basis = dynamics::exact_basis_size(truncation);
    exact = dynamics::expectation_exact(config.beta, config.displacement, truncation, times,
                                        threads);
  }

  io::Preamble pre{{"tool", std::string(io::kToolVersion)},
                   {"command", "evolve"},
                   {"scenario", config.name},
                   {"beta", format_double(config.beta)},
                   {"d", format_double(config.displacement)},
                   {"N", std::to_string(truncation)},
                   {"method", std::string(spectrum::method_name(config.method))},
                   {"order", std::string(envelope::order_name(config.order))},
                   {"t_end", format_double(t_end)},
                   {"samples", std::to_string(times.size())}};
  if (config.exact) pre.emplace_back("exact_basis_size", std::to_string(basis));
  if (model) {
    pre.emplace_back("T_osc", format_double(model->t_osc));
    pre.emplace_back("T_r", format_double(model->t_revival));
    pre.emplace_back("T_c", format_double(model->t_collapse));
  }
  io::write_preamble(out, pre);

  out << 't';
  if (config.exact) out << ",x_exact,p_exact";
  out << ",x_series,p_series";
  if (config.envelope) out << ",x_env_hi,x_env_lo";
  if (config.compare_orders) out << ",env_leading,env_second";
  out << '\n';

  std::string line;
  for (std::size_t i = 0; i < times.size(); ++i) {
    line.clear();
    line += format_double(times[i]);
    auto col = [&line](double v) {
      line += ',';
      line += format_double(v);
    };
    if (exact) {
      col(exact->x[i]);
      col(exact->p[i]);
    }
    col(sign * series.x[i]);
    col(sign * series.p[i]);
    if (config.envelope) {
      const double f = envelope::envelope_value(*model, times[i]);
      col(f);
      col(-f);
    }
    if (config.compare_orders) {
      col(envelope::envelope_value(*leading, times[i]));
      col(envelope::envelope_value(*second, times[i]));
    }
    line += '\n';
    out << line;
  }
}

std::vector<std::pair<std::string, std::string>> experiment_report(const io::KeyValueFile& spec) {
  const std::string kind = spec.get("kind");
  std::vector<std::pair<std::string, std::string>> r;
  r.emplace_back("kind", kind);

  if (kind == "lattice") {
    experiments::LatticeSpec ls;
    ls.depth = spec.get_double("depth");
    ls.depth_in_recoils = spec.get_bool("depth_in_recoils", true);
    ls.wavelength = spec.get_double("wavelength");
    ls.mass = spec.get_double("mass", units::kRb87Mass);
    ls.alpha = spec.get_double("alpha");
    const double ext_hz = spec.get_double("ext_frequency_hz", 0.0);
    const double site = spec.get_double("site_index", 1.0);
    if (const auto unused = spec.unused_keys(); !unused.empty()) {
      throw ValidationError("unknown lattice key '" + unused.front() + "'");
    }
    const auto d = experiments::lattice_derive(ls);
    r.insert(r.end(), {
        {"depth_J", format_double(d.depth)},
        {"depth_recoils", format_double(d.depth_recoils)},
        {"recoil_energy_J", format_double(d.recoil_energy)},
        {"wavelength_m", format_double(ls.wavelength)},
        {"mass_kg", format_double(ls.mass)},
        {"alpha", format_double(ls.alpha)},
        {"q_per_m", format_double(d.q)},
        {"omega0_per_s", format_double(d.omega0)},
        {"beta_phys_J_per_m4", format_double(d.beta_phys)},
        {"beta", format_double(d.beta)},
        {"beta_abs", format_double(std::abs(d.beta))},
        {"d", format_double(d.d)},
        {"d_phys_m", format_double(d.d_phys)},
        {"d_phys_um", format_double(d.d_phys * 1e6)},
        {"T_osc", format_double(d.t_osc)},
        {"T_r", format_double(d.t_revival)},
        {"T_c", format_double(d.t_collapse)},
        {"T_osc_phys_s", format_double(d.t_osc_phys)},
        {"T_osc_us", format_double(d.t_osc_phys * 1e6)},
        {"T_r_phys_s", format_double(d.t_revival_phys)},
        {"T_r_ms", format_double(d.t_revival_phys * 1e3)},
        {"T_c_phys_s", format_double(d.t_collapse_phys)},
        {"T_c_ms", format_double(d.t_collapse_phys * 1e3)},
        {"ratio_Tr_Tc", format_double(d.ratio_revival_collapse)},
    });
    if (ext_hz > 0) {
      experiments::ConfinementSpec cs;
      cs.omega_ext = 2.0 * std::numbers::pi * ext_hz;
      cs.omega0 = d.omega0;
      cs.mass = ls.mass;
      const auto shift = experiments::confinement_shift(cs, static_cast<int>(site), ls.wavelength);
      r.insert(r.end(), {
          {"omega_ext_per_s", format_double(cs.omega_ext)},
          {"delta_x", format_double(shift.delta_x)},
          {"delta_x_approx", format_double(shift.delta_x_approx)},
          {"site_index", std::to_string(static_cast<int>(site))},
          {"minimum_unshifted_m", format_double(shift.unshifted_minimum)},
          {"minimum_shifted_m", format_double(shift.shifted_minimum)},
          {"confinement_quadratic_J_per_m2", format_double(shift.quadratic_coefficient)},
          {"confinement_cubic_J_per_m3", format_double(shift.cubic_coefficient)},
      });
    }
    return r;
  }

  if (kind == "crossed-beam") {
    experiments::TrapSpec ts;
    ts.omega_z = spec.get_double("omega_z");
    ts.omega_x = spec.get_double("omega_x");
    ts.beta = spec.get_double("beta");
    if (const auto unused = spec.unused_keys(); !unused.empty()) {
      throw ValidationError("unknown crossed-beam key '" + unused.front() + "'");
    }
    const auto t = experiments::trap_limits(ts);
    r.insert(r.end(), {
        {"omega_z_per_s", format_double(ts.omega_z)},
        {"omega_x_per_s", format_double(ts.omega_x)},
        {"beta", format_double(ts.beta)},
        {"n_max_ratio", format_double(t.n_max_ratio)},
        {"n_max", std::to_string(t.n_max)},
        {"gamma_max", format_double(t.gamma_max)},
        {"d_max", format_double(t.d_max)},
        {"T_r_s", format_double(t.t_revival_phys)},
    });
    return r;
  }
  throw ValidationError("unknown experiment kind '" + kind +
                        "' (expected lattice or crossed-beam)");
}

std::string default_preset_directory() {
  if (const char* env = std::getenv("REVIVAL_SIM_PRESETS"); env && *env) return env;
#ifdef REVIVAL_PRESET_DIR
  return REVIVAL_PRESET_DIR;
#else
  return "presets";
#endif
}

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("REVIVAL_SIM_THREADS");
  if (!env || !*env) return 1;
  const double v = io::parse_double(env, "REVIVAL_SIM_THREADS");
  if (v < 1 || v != std::floor(v)) {
    throw ValidationError("REVIVAL_SIM_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(v);
}

// Output goes to `fallback` unless a path was given.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ValidationError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_spectrum_command(double beta, std::size_t levels, const std::string& method,
                            std::size_t basis, spectrum::Solver solver, std::ostream& out) {
  for (const auto& w : units::ModelParams{beta, 0.0}.validate()) warn(w);
  if (levels == 0) throw ValidationError("--levels must be positive");
  if (basis == 0) basis = std::max<std::size_t>(400, spectrum::basis_size_for_levels(levels));
  if (basis < levels) throw ValidationError("--basis must be at least --levels");
  spectrum::ExactOptions opts;
  opts.solver = solver;

  if (method != "all") {
    const auto m = spectrum::parse_method(method);
    spectrum::SpectrumTable table;
    switch (m) {
      case spectrum::Method::Wkb: table = spectrum::wkb_spectrum(beta, levels); break;
      case spectrum::Method::Perturbation1:
        table = spectrum::perturbation_spectrum(beta, levels, 1);
        break;
      case spectrum::Method::Perturbation2:
        table = spectrum::perturbation_spectrum(beta, levels, 2);
        break;
      case spectrum::Method::Exact:
        table = spectrum::exact_spectrum(beta, basis, opts);
        if (table.levels.size() > levels) table.levels.resize(levels);
        break;
    }
    io::write_spectrum_csv(out, table);
    return;
  }

  const auto wkb = spectrum::wkb_spectrum(beta, levels);
  const auto pt2 = spectrum::perturbation_spectrum(beta, levels, 2);
  const auto exact = spectrum::exact_spectrum(beta, basis, opts);
  io::write_preamble(out, {{"tool", std::string(io::kToolVersion)},
                           {"method", "all"},
                           {"beta", format_double(beta)},
                           {"basis_size", std::to_string(basis)},
                           {"exact_valid_up_to", std::to_string(exact.valid_up_to)}});
  out << "n,E_wkb,E_pt2,E_exact,abs_err_wkb,abs_err_pt2\n";
  for (std::size_t n = 0; n < levels; ++n) {
    const bool have_exact = n < exact.levels.size();
    const double e = have_exact ? exact.levels[n] : std::nan("");
    out << n << ',' << format_double(wkb.levels[n]) << ',' << format_double(pt2.levels[n])
        << ',' << format_double(e) << ',' << format_double(std::abs(wkb.levels[n] - e)) << ','
        << format_double(std::abs(pt2.levels[n] - e)) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collapse and revival of a displaced ground state in a weakly anharmonic "
               "oscillator",
               "revival-sim"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "Worker threads for time-grid evaluation (env REVIVAL_SIM_THREADS)")
      ->check(CLI::PositiveNumber);

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "Energy levels by WKB, perturbation theory and "
                                            "exact diagonalisation");
  double sp_beta = 0;
  std::size_t sp_levels = 10;
  std::string sp_method = "all";
  std::size_t sp_basis = 0;
  std::string sp_solver = "ql";
  std::string sp_output;
  sp->add_option("--beta", sp_beta, "Dimensionless anharmonicity")->required();
  sp->add_option("--levels,--n", sp_levels, "Number of levels");
  sp->add_option("--method", sp_method, "wkb, pt1, pt2, exact or all");
  sp->add_option("--basis", sp_basis, "Fock basis size for exact (default: max(400, guard))");
  sp->add_option("--solver", sp_solver, "ql or jacobi");
  sp->add_option("--output,-o", sp_output, "CSV path (default stdout)");

  // evolve
  auto* ev = app.add_subcommand("evolve", "Time series of <x>, <p> with envelope");
  std::string ev_preset, ev_config, ev_output, ev_method, ev_order;
  std::optional<double> ev_beta, ev_d, ev_t_end, ev_revivals, ev_spp;
  std::optional<std::size_t> ev_truncation, ev_samples;
  bool ev_no_env = false, ev_no_exact = false, ev_compare = false;
  ev->add_option("--preset", ev_preset, "fig1, fig2a, fig2b or fig2c");
  ev->add_option("--config", ev_config, "key = value scenario file");
  ev->add_option("--beta", ev_beta, "Dimensionless anharmonicity");
  ev->add_option("--d", ev_d, "Dimensionless displacement");
  ev->add_option("--truncation,-N", ev_truncation, "Coherent-state truncation");
  ev->add_option("--t-end", ev_t_end, "End time (dimensionless)");
  ev->add_option("--revivals", ev_revivals, "End time in units of T_r");
  ev->add_option("--samples", ev_samples, "Number of time samples");
  ev->add_option("--samples-per-period", ev_spp, "Samples per 2 pi");
  ev->add_option("--method", ev_method, "Spectrum for the series pipeline");
  ev->add_option("--order", ev_order, "Envelope order: leading or second");
  ev->add_flag("--no-envelope", ev_no_env, "Omit envelope columns");
  ev->add_flag("--no-exact", ev_no_exact, "Skip exact diagonalisation");
  ev->add_flag("--compare-orders", ev_compare, "Add leading and second order envelopes");
  ev->add_option("--output,-o", ev_output, "CSV path (default stdout)");

  // experiment
  auto* ex = app.add_subcommand("experiment", "Cold-atom parameter report");
  std::string ex_preset, ex_spec, ex_dir, ex_output;
  ex->add_option("preset", ex_preset,
                 "lattice-35Er, lattice-175Er, lattice-350Er or crossed-beam-rb");
  ex->add_option("--spec", ex_spec, "key = value scenario file");
  ex->add_option("--preset-dir", ex_dir, "Directory of preset files");
  ex->add_option("--output,-o", ex_output, "Report path (default stdout)");

  // envelope-report
  auto* er = app.add_subcommand("envelope-report", "Analytic envelope model summary");
  double er_beta = 0, er_d = 0;
  std::string er_order = "leading", er_output;
  er->add_option("--beta", er_beta, "Dimensionless anharmonicity")->required();
  er->add_option("--d", er_d, "Dimensionless displacement")->required();
  er->add_option("--order", er_order, "leading or second");
  er->add_option("--output,-o", er_output, "Report path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const unsigned threads =
        threads_flag > 0 ? static_cast<unsigned>(threads_flag) : threads_from_env();

    if (sp->parsed()) {
      const auto solver = sp_solver == "jacobi" ? spectrum::Solver::Jacobi
                          : sp_solver == "ql"
                              ? spectrum::Solver::TridiagonalQL
                              : throw ValidationError("--solver must be ql or jacobi");
      OutputTarget target(sp_output, out);
      write_spectrum_command(sp_beta, sp_levels, sp_method, sp_basis, solver, target.stream());
    } else if (ev->parsed()) {
      ScenarioConfig c;
      if (!ev_preset.empty()) c = preset_scenario(ev_preset);
      if (!ev_config.empty()) c = scenario_from_file(io::KeyValueFile::load(ev_config), c);
      if (ev_beta) c.beta = *ev_beta;
      if (ev_d) c.displacement = *ev_d;
      if (ev_truncation) c.truncation = *ev_truncation;
      if (ev_t_end) c.t_end = *ev_t_end;
      if (ev_revivals) c.revivals = *ev_revivals;
      if (ev_samples) c.samples = *ev_samples;
      if (ev_spp) c.samples_per_period = *ev_spp;
      if (!ev_method.empty()) c.method = spectrum::parse_method(ev_method);
      if (!ev_order.empty()) c.order = envelope::parse_order(ev_order);
      if (ev_no_env) {
        c.envelope = false;
        c.compare_orders = false;
      }
      if (ev_no_exact) c.exact = false;
      if (ev_compare) c.compare_orders = true;
      OutputTarget target(ev_output, out);
      run_evolve(c, target.stream(), threads);
    } else if (ex->parsed()) {
      if (ex_preset.empty() == ex_spec.empty()) {
        throw ValidationError("experiment: give exactly one of a preset name or --spec");
      }
      std::string path = ex_spec;
      if (!ex_preset.empty()) {
        const std::filesystem::path dir = ex_dir.empty() ? default_preset_directory() : ex_dir;
        path = (dir / (ex_preset + ".cfg")).string();
        if (!std::filesystem::exists(path)) {
          throw ValidationError("unknown experiment preset '" + ex_preset + "' (no " + path +
                                ")");
        }
      }
      const auto report = experiment_report(io::KeyValueFile::load(path));
      OutputTarget target(ex_output, out);
      io::write_report(target.stream(), report);
    } else if (er->parsed()) {
      const auto model = envelope::build_model(er_beta, er_d, envelope::parse_order(er_order));
      OutputTarget target(er_output, out);
      io::write_report(target.stream(), envelope::model_report(model));
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace revival::cli
