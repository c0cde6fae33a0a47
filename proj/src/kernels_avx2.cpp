#include <immintrin.h>

#include <limits>

#include "relspec/kernels.hpp"

namespace relspec::kernels::avx2 {

namespace {

double hmin(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  double m = lanes[0];
  for (int i = 1; i < 4; ++i) m = lanes[i] < m ? lanes[i] : m;
  return m;
}

double scalar_dist2(double ax, double ay, double bx, double by, double px, double py) {
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

}  // namespace

void min_dist2(const double* ax, const double* ay, const double* bx, const double* by,
               std::size_t nseg, const double* px, double py, std::size_t npts, double* out) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vpy = _mm256_set1_pd(py);
  const std::size_t body = nseg - nseg % 4;
  for (std::size_t p = 0; p < npts; ++p) {
    const __m256d vpx = _mm256_set1_pd(px[p]);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t s = 0; s < body; s += 4) {
      const __m256d sax = _mm256_loadu_pd(ax + s);
      const __m256d say = _mm256_loadu_pd(ay + s);
      const __m256d ex = _mm256_sub_pd(_mm256_loadu_pd(bx + s), sax);
      const __m256d ey = _mm256_sub_pd(_mm256_loadu_pd(by + s), say);
      const __m256d dx = _mm256_sub_pd(vpx, sax);
      const __m256d dy = _mm256_sub_pd(vpy, say);
      const __m256d ee = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
      const __m256d dot = _mm256_add_pd(_mm256_mul_pd(dx, ex), _mm256_mul_pd(dy, ey));
      const __m256d positive = _mm256_cmp_pd(ee, zero, _CMP_GT_OQ);
      __m256d t = _mm256_and_pd(_mm256_div_pd(dot, ee), positive);
      t = _mm256_min_pd(t, one);
      t = _mm256_max_pd(t, zero);
      const __m256d qx = _mm256_sub_pd(dx, _mm256_mul_pd(t, ex));
      const __m256d qy = _mm256_sub_pd(dy, _mm256_mul_pd(t, ey));
      const __m256d d = _mm256_add_pd(_mm256_mul_pd(qx, qx), _mm256_mul_pd(qy, qy));
      best = _mm256_min_pd(d, best);
    }
    double m = hmin(best);
    for (std::size_t s = body; s < nseg; ++s) {
      const double d = scalar_dist2(ax[s], ay[s], bx[s], by[s], px[p], py);
      m = d < m ? d : m;
    }
    out[p] = m;
  }
}

void crossing_sums(const double* xc, const double* sign, std::size_t ncross, const double* px,
                   std::size_t npts, int* out) {
  const std::size_t body = ncross - ncross % 4;
  for (std::size_t p = 0; p < npts; ++p) {
    const __m256d vpx = _mm256_set1_pd(px[p]);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < body; c += 4) {
      const __m256d right = _mm256_cmp_pd(_mm256_loadu_pd(xc + c), vpx, _CMP_GT_OQ);
      acc = _mm256_add_pd(acc, _mm256_and_pd(right, _mm256_loadu_pd(sign + c)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (std::size_t c = body; c < ncross; ++c) {
      if (xc[c] > px[p]) total += sign[c];
    }
    out[p] = static_cast<int>(total);
  }
}

}  // namespace relspec::kernels::avx2
