#include "spreadlab/util.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>

namespace spreadlab {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("SPREADLAB_LOG");
    if (!env || !*env) return 0;
    std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    if (v == "0" || v == "off") return 0;
    return 1;  // any other non-empty value: be chatty rather than silent
  }();
  return level;
}

namespace {
std::mutex g_log_mutex;
void emit(const char* tag, const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::cerr << tag << msg << "\n";
}
}  // namespace

void log_info(const std::string& msg) {
  if (log_level() >= 1) emit("[info] ", msg);
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) emit("[debug] ", msg);
}

double parse_number(const std::string& s) {
  auto slash = s.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
  }
  // num/den with integer parts stays exact until the final division rounds.
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  double n = std::stod(num, &used);
  if (used != num.size()) throw std::invalid_argument("bad fraction: " + s);
  double d = std::stod(den, &used);
  if (used != den.size() || d == 0.0) throw std::invalid_argument("bad fraction: " + s);
  return n / d;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace spreadlab
