#include "revival/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "revival/error.hpp"

namespace revival::io {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // fold -0 into 0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  if (first == std::string_view::npos) {
    throw ValidationError(std::string(what) + ": empty value");
  }
  text = text.substr(first, last - first + 1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError(std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

void write_preamble(std::ostream& out, const Preamble& preamble) {
  for (const auto& [k, v] : preamble) out << "# " << k << " = " << v << '\n';
}

void write_spectrum_csv(std::ostream& out, const spectrum::SpectrumTable& table,
                        const Preamble& extra) {
  Preamble pre{{"tool", std::string(kToolVersion)},
               {"method", std::string(spectrum::method_name(table.method))},
               {"beta", format_double(table.beta)},
               {"valid_up_to", std::to_string(table.valid_up_to)}};
  if (table.basis_size > 0) pre.emplace_back("basis_size", std::to_string(table.basis_size));
  pre.insert(pre.end(), extra.begin(), extra.end());
  write_preamble(out, pre);
  out << "n,E\n";
  for (std::size_t n = 0; n < table.levels.size(); ++n) {
    out << n << ',' << format_double(table.levels[n]) << '\n';
  }
}

void write_timeseries_csv(std::ostream& out, const dynamics::TimeSeries& series,
                          const Preamble& preamble) {
  series.validate();
  Preamble pre{{"tool", std::string(kToolVersion)},
               {"provenance", std::string(dynamics::provenance_name(series.provenance))}};
  pre.insert(pre.end(), preamble.begin(), preamble.end());
  write_preamble(out, pre);
  out << "t,x,p\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.x[i]) << ','
        << format_double(series.p[i]) << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::istream& in, std::string_view source) {
  KeyValueFile file;
  file.source_ = std::string(source);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << source << ':' << line_no << ": expected 'key = value'";
      throw ValidationError(os.str());
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) {
      std::ostringstream os;
      os << source << ':' << line_no << ": empty key";
      throw ValidationError(os.str());
    }
    if (file.contains(key)) {
      std::ostringstream os;
      os << source << ':' << line_no << ": duplicate key '" << key << "'";
      throw ValidationError(os.str());
    }
    file.set(key, value);
  }
  return file;
}

KeyValueFile KeyValueFile::parse_string(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  return parse(in, source);
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse(in, path);
}

bool KeyValueFile::contains(std::string_view key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& kv) { return kv.first == key; });
}

const std::string& KeyValueFile::get(std::string_view key) const {
  for (const auto& kv : entries_) {
    if (kv.first == key) {
      used_[kv.first] = true;
      return kv.second;
    }
  }
  throw ValidationError(source_ + ": missing key '" + std::string(key) + "'");
}

double KeyValueFile::get_double(std::string_view key) const {
  return parse_double(get(key), source_ + ": " + std::string(key));
}

double KeyValueFile::get_double(std::string_view key, double fallback) const {
  return contains(key) ? get_double(key) : fallback;
}

std::string KeyValueFile::get_string(std::string_view key, std::string_view fallback) const {
  return contains(key) ? get(key) : std::string(fallback);
}

bool KeyValueFile::get_bool(std::string_view key, bool fallback) const {
  if (!contains(key)) return fallback;
  const std::string& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError(source_ + ": " + std::string(key) + ": expected true/false, got '" + v +
                        "'");
}

void KeyValueFile::set(std::string key, std::string value) {
  used_.try_emplace(key, false);
  for (auto& kv : entries_) {
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::vector<std::string> KeyValueFile::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& kv : entries_) {
    auto it = used_.find(kv.first);
    if (it == used_.end() || !it->second) out.push_back(kv.first);
  }
  return out;
}

void write_report(std::ostream& out,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
}

}  // namespace revival::io
