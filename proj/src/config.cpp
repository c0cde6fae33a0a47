#include "relspec/config.hpp"

#include <cstdlib>
#include <thread>

namespace relspec {

namespace {

double read_tol() {
  const char* raw = std::getenv("RELSPEC_TOL");
  if (raw == nullptr || *raw == '\0') return kDefaultTol;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || !(value >= 0.0) || value >= 1.0) return kDefaultTol;
  return value;
}

unsigned read_threads() {
  if (const char* raw = std::getenv("RELSPEC_THREADS"); raw != nullptr && *raw != '\0') {
    const long value = std::strtol(raw, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

double default_tol() {
  static const double tol = read_tol();
  return tol;
}

unsigned default_threads() {
  static const unsigned threads = read_threads();
  return threads;
}

}  // namespace relspec
