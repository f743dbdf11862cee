#pragma once

// Text formats: CSV with '#' provenance preambles and flat `key = value`
// files (configs and reports share the format).

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revival/dynamics.hpp"
#include "revival/spectrum.hpp"

namespace revival::io {

inline constexpr std::string_view kToolVersion = "revival-sim 1.0.0";

/// Shortest-round-trip-safe text for a double: 17 significant digits, "%g"
/// style, locale independent. Identical input always yields identical bytes.
std::string format_double(double value);

/// Parses a double, rejecting trailing garbage. Throws ValidationError.
double parse_double(std::string_view text, std::string_view what);

using Preamble = std::vector<std::pair<std::string, std::string>>;

void write_preamble(std::ostream& out, const Preamble& preamble);

/// `# key = value` preamble (method, beta, ...) then `n,E`.
void write_spectrum_csv(std::ostream& out, const spectrum::SpectrumTable& table,
                        const Preamble& extra = {});

/// Preamble then `t,x,p`.
void write_timeseries_csv(std::ostream& out, const dynamics::TimeSeries& series,
                          const Preamble& preamble);

/// Ordered key/value document. Duplicate keys are rejected on parse.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, std::string_view source = "<input>");
  static KeyValueFile parse_string(std::string_view text, std::string_view source = "<input>");
  static KeyValueFile load(const std::string& path);

  bool contains(std::string_view key) const;
  const std::string& get(std::string_view key) const;  // throws ValidationError
  double get_double(std::string_view key) const;
  double get_double(std::string_view key, double fallback) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  void set(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  /// Keys that were never read through a getter; lets callers reject typos.
  std::vector<std::string> unused_keys() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string source_;
  mutable std::map<std::string, bool, std::less<>> used_;
};

/// Writes `key = value` lines.
void write_report(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace revival::io
