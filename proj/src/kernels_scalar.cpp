#include <limits>

#include "relspec/kernels.hpp"

namespace relspec::kernels::scalar {

// Clamping spelled as the AVX2 min/max instructions behave.
static inline double segment_dist2(double ax, double ay, double bx, double by, double px,
                                   double py) {
  const double ex = bx - ax;
  const double ey = by - ay;
  const double dx = px - ax;
  const double dy = py - ay;
  const double ee = ex * ex + ey * ey;
  double t = ee > 0.0 ? (dx * ex + dy * ey) / ee : 0.0;
  t = t < 1.0 ? t : 1.0;
  t = t > 0.0 ? t : 0.0;
  const double qx = dx - t * ex;
  const double qy = dy - t * ey;
  return qx * qx + qy * qy;
}

void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out) {
  for (std::size_t p = 0; p < npts; ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < nseg; ++s) {
      const double d = segment_dist2(ax[s], ay[s], bx[s], by[s], px[p], py);
      best = d < best ? d : best;
    }
    out[p] = best;
  }
}

void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out) {
  for (std::size_t p = 0; p < npts; ++p) {
    double total = 0.0;
    for (std::size_t c = 0; c < ncross; ++c) {
      if (xc[c] > px[p]) total += sign[c];
    }
    out[p] = static_cast<int>(total);
  }
}

}  // namespace relspec::kernels::scalar
