#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace spreadlab {

// Log verbosity comes from the SPREADLAB_LOG env var: unset/0 = quiet,
// 1/"info" = progress lines, 2/"debug" = per-box traces.  Writes to stderr.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// All randomized tests and searches seed explicitly; never std::random_device.
using Rng = std::mt19937_64;

// Parses "2/3" as the correctly rounded quotient of exact integers, plain
// decimals otherwise.  Throws std::invalid_argument on garbage.
double parse_number(const std::string& s);

double now_seconds();

}  // namespace spreadlab
