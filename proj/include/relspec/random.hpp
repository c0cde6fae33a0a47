#pragma once

#include <cstdint>
#include <random>

#include "relspec/config.hpp"

namespace relspec {

/// Seeded generator with distributions implemented here rather than taken
/// from <random>, so draws are identical across standard libraries and
/// serialized counterexamples replay everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for (seed, stream) pairs, e.g. one per trial.
  static Rng stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  double uniform();                     // [0, 1)
  double uniform(double lo, double hi);
  std::int64_t integer(std::int64_t lo, std::int64_t hi);  // inclusive
  double normal();
  cplx complex_normal();                // E|z|² = 1
  cplx unit_complex();                  // uniform on the unit circle
  Vec complex_normal_vector(Index n);
  Mat complex_normal_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace relspec
