#include "revival/diagnostics.hpp"

#include <iostream>
#include <utility>

namespace revival {
namespace {

WarningHandler& handler() {
  static WarningHandler h = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return h;
}

}  // namespace

void set_warning_handler(WarningHandler h) { handler() = std::move(h); }

void warn(std::string_view message) {
  if (handler()) handler()(message);
}

}  // namespace revival
