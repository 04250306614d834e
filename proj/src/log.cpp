#include "dcomp/log.hpp"

#include <iostream>
#include <mutex>

namespace dcomp {
namespace {

std::mutex g_sink_mutex;

WarningSink& sink() {
  static WarningSink s = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}

}  // namespace

void warn(const std::string& message) {
  std::lock_guard lock(g_sink_mutex);
  if (sink()) sink()(message);
}

WarningSink set_warning_sink(WarningSink s) {
  std::lock_guard lock(g_sink_mutex);
  auto previous = std::move(sink());
  sink() = std::move(s);
  return previous;
}

}  // namespace dcomp
