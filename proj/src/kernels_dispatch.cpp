#include <atomic>

#include "relspec/config.hpp"
#include "relspec/kernels.hpp"

namespace relspec::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(RELSPEC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{cpu_has_avx2() ? Isa::avx2 : Isa::scalar};
  return isa;
}

}  // namespace

#if !defined(RELSPEC_HAVE_AVX2_TU)
// Non-x86 builds: the AVX2 names exist but are never selected.
namespace avx2 {
void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out) {
  scalar::min_dist2(ax, ay, bx, by, nseg, px, py, npts, out);
}
void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out) {
  scalar::crossing_sums(xc, sign, ncross, px, npts, out);
}
}  // namespace avx2
#endif

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool available = cpu_has_avx2();
  return available;
}

Isa active_isa() { return selected().load(); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) {
    throw UnsupportedError("AVX2 kernels are not available on this machine or build");
  }
  selected().store(isa);
}

void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out) {
  if (active_isa() == Isa::avx2) {
    avx2::min_dist2(ax, ay, bx, by, nseg, px, py, npts, out);
  } else {
    scalar::min_dist2(ax, ay, bx, by, nseg, px, py, npts, out);
  }
}

void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out) {
  if (active_isa() == Isa::avx2) {
    avx2::crossing_sums(xc, sign, ncross, px, npts, out);
  } else {
    scalar::crossing_sums(xc, sign, ncross, px, npts, out);
  }
}

}  // namespace relspec::kernels
