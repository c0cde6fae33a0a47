#include "relspec/random.hpp"

#include <cmath>
#include <numbers>

namespace relspec {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

cplx Rng::unit_complex() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

Vec Rng::complex_normal_vector(Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

Mat Rng::complex_normal_matrix(Index rows, Index cols) {
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

}  // namespace relspec
