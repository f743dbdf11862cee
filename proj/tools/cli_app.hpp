#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "revival/envelope.hpp"
#include "revival/io.hpp"
#include "revival/spectrum.hpp"

namespace revival::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// One `evolve` run. Zero-valued sizes mean "derive a default".
struct ScenarioConfig {
  std::string name = "custom";
  double beta = 0;
  double displacement = 0;
  std::size_t truncation = 0;       // 0: dynamics::default_truncation
  double t_end = 0;                 // 0: revivals * T_r
  double revivals = 2.2;            // span in units of the revival time
  std::size_t samples = 0;          // 0: samples_per_period per 2 pi
  double samples_per_period = 40;
  spectrum::Method method = spectrum::Method::Wkb;
  envelope::Order order = envelope::Order::LeadingBeta;
  bool envelope = true;
  bool exact = true;
  bool compare_orders = false;      // adds env_leading, env_second columns

  void validate() const;
};

/// Built-in figure presets: fig1, fig2a, fig2b, fig2c.
ScenarioConfig preset_scenario(const std::string& name);
/// Applies `key = value` overrides (beta, d, truncation, t_end, revivals,
/// samples, samples_per_period, method, order, envelope, exact, compare_orders).
ScenarioConfig scenario_from_file(const io::KeyValueFile& file, ScenarioConfig base = {});

/// Writes the evolve CSV. Deterministic for a fixed config and any threads.
void run_evolve(const ScenarioConfig& config, std::ostream& out, unsigned threads);

/// Key/value report for a lattice or crossed-beam scenario file.
std::vector<std::pair<std::string, std::string>> experiment_report(const io::KeyValueFile& spec);

/// Directory holding the shipped experiment presets.
std::string default_preset_directory();

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revival::cli
