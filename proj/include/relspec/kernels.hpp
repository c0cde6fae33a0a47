#pragma once

// Inner loops of the grid classifier. Each kernel has a scalar reference and
// an AVX2 variant with identical arithmetic (no FMA, same operation order per
// lane), so results agree bit for bit.

#include <cstddef>

namespace relspec::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);
bool avx2_available();
/// The variant used by the dispatching entry points below.
Isa active_isa();
/// Pins the dispatcher (tests and benchmarks). Throws UnsupportedError when
/// the CPU or the build lacks the requested variant.
void force_isa(Isa isa);

/// out[p] = min over segments s of the squared distance from (px[p], py) to
/// the segment a_s→b_s.
void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out);

/// out[p] = Σ_c sign[c]·[xc[c] > px[p]]: signed crossings of the ray from
/// px[p] towards +∞, with sign ±1 per crossing.
void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out);

namespace scalar {
void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out);
void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out);
}  // namespace scalar

namespace avx2 {
void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out);
void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out);
}  // namespace avx2

}  // namespace relspec::kernels
