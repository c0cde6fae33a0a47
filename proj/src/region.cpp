#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "relspec/banded.hpp"
#include "relspec/kernels.hpp"
#include "relspec/parallel.hpp"

namespace relspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinPolygon = 1024;
constexpr int kMaxPolygon = 1 << 20;

double coordinate(double lo, double hi, int i, int n) {
  return (lo * double(n - 1 - i) + hi * double(i)) / double(n - 1);
}

// Vertex count so that chords stay within `deviation` of the curve: a chord
// over an arc of Δθ deviates by at most Δθ²·max|a''|/8.
int polygon_size(const LaurentSymbol& a, double deviation) {
  const double curvature = a.curvature_bound();
  int n = kMinPolygon;
  if (curvature > 0.0) {
    const double step = std::sqrt(8.0 * deviation / curvature);
    while (n < kMaxPolygon && kTwoPi / n > step) n *= 2;
  }
  return n;
}

struct Polygon {
  std::vector<double> ax, ay, bx, by, ylo, yhi;
};

Polygon sample_curve(const LaurentSymbol& a, int n) {
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) v[j] = a.on_circle(kTwoPi * double(j) / double(n));
  Polygon p;
  for (int j = 0; j < n; ++j) {
    const cplx s = v[j];
    const cplx e = v[(j + 1) % n];
    p.ax.push_back(s.real());
    p.ay.push_back(s.imag());
    p.bx.push_back(e.real());
    p.by.push_back(e.imag());
    p.ylo.push_back(std::min(s.imag(), e.imag()));
    p.yhi.push_back(std::max(s.imag(), e.imag()));
  }
  return p;
}

void classify_row(const Polygon& poly, const std::vector<double>& xs, double py, double band,
                  GridPoint* row) {
  const std::size_t nseg = poly.ax.size();
  std::vector<double> ax, ay, bx, by, xc, sign;
  for (std::size_t s = 0; s < nseg; ++s) {
    if (poly.ylo[s] - band <= py && py <= poly.yhi[s] + band) {
      ax.push_back(poly.ax[s]);
      ay.push_back(poly.ay[s]);
      bx.push_back(poly.bx[s]);
      by.push_back(poly.by[s]);
    }
    // Half-open rule: an edge counts when py ∈ [y_lo, y_hi).
    const double y0 = poly.ay[s];
    const double y1 = poly.by[s];
    const bool up = y0 <= py && py < y1;
    const bool down = y1 <= py && py < y0;
    if (up || down) {
      const double x0 = poly.ax[s];
      const double x1 = poly.bx[s];
      xc.push_back(x0 + (py - y0) * (x1 - x0) / (y1 - y0));
      sign.push_back(up ? 1.0 : -1.0);
    }
  }
  const std::size_t npts = xs.size();
  std::vector<double> dist2(npts);
  std::vector<int> wind(npts);
  kernels::min_dist2(ax.data(), ay.data(), bx.data(), by.data(), ax.size(), xs.data(), py, npts,
                     dist2.data());
  kernels::crossing_sums(xc.data(), sign.data(), xc.size(), xs.data(), npts, wind.data());
  const double band2 = band * band;
  for (std::size_t i = 0; i < npts; ++i) {
    row[i].on_curve = dist2[i] <= band2;
    row[i].winding = row[i].on_curve ? 0 : wind[i];
  }
}

}  // namespace

double RegionGrid::re(int i) const { return coordinate(bounds.re0, bounds.re1, i, nx); }
double RegionGrid::im(int j) const { return coordinate(bounds.im0, bounds.im1, j, ny); }

RegionGrid essential_region(const BandedModel& t, const Bounds& bounds, int nx, int ny,
                            const RegionOptions& options) {
  bounds.validate();
  if (nx < kMinResolution || ny < kMinResolution) {
    throw InputError("essential_region: resolution must be at least 32x32");
  }
  if (nx > kMaxResolution || ny > kMaxResolution) {
    throw InputError("essential_region: resolution must be at most 2048x2048");
  }
  t.validate();

  RegionGrid g;
  g.bounds = bounds;
  g.nx = nx;
  g.ny = ny;
  const double dx = (bounds.re1 - bounds.re0) / (nx - 1);
  const double dy = (bounds.im1 - bounds.im0) / (ny - 1);
  const double diagonal = std::hypot(dx, dy);
  g.band = 9.0 / 16.0 * diagonal;
  const Polygon poly = sample_curve(t.symbol, polygon_size(t.symbol, diagonal / 16.0));

  std::vector<double> xs(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i) xs[i] = g.re(i);
  g.points.resize(static_cast<std::size_t>(nx) * ny);
  parallel_for(static_cast<std::size_t>(ny), options.threads, [&](std::size_t j) {
    classify_row(poly, xs, g.im(static_cast<int>(j)), g.band, g.points.data() + j * nx);
  });

  // 4-connected components of the off-band set, labelled in scan order.
  const int offset = static_cast<int>(t.mv_dim() - t.annihilator_dim());
  for (int start = 0; start < nx * ny; ++start) {
    GridPoint& seed = g.points[start];
    if (seed.on_curve || seed.component_id >= 0) continue;
    Component c;
    c.id = static_cast<int>(g.components.size());
    c.winding = seed.winding;
    c.kappa = (t.space == Space::toeplitz ? -seed.winding : 0) + offset;
    std::deque<int> queue{start};
    seed.component_id = c.id;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      ++c.size;
      const int i = p % nx;
      const int j = p / nx;
      const int nbr[4] = {i > 0 ? p - 1 : -1, i + 1 < nx ? p + 1 : -1, j > 0 ? p - nx : -1,
                          j + 1 < ny ? p + nx : -1};
      for (const int q : nbr) {
        if (q < 0 || g.points[q].on_curve || g.points[q].component_id >= 0) continue;
        g.points[q].component_id = c.id;
        queue.push_back(q);
      }
    }
    g.components.push_back(c);
  }

  std::vector<char> eigen_cell(g.points.size(), 0);
  if (!t.has_parts() && options.detect_eigenvalues) {
    if (!t.perturbation.empty()) g.eigenvalues = point_eigenvalues(t, bounds, options.trunc_sizes);
    for (const cplx e : g.eigenvalues) {
      const long i = std::lround((e.real() - bounds.re0) / dx);
      const long j = std::lround((e.imag() - bounds.im0) / dy);
      if (i < 0 || i >= nx || j < 0 || j >= ny) continue;
      eigen_cell[static_cast<std::size_t>(j) * nx + i] = 1;
    }
  } else {
    for (auto& c : g.components) c.resolvent_verified = false;
  }

  std::vector<char> rho(g.points.size(), 0);
  for (std::size_t p = 0; p < g.points.size(); ++p) {
    GridPoint& pt = g.points[p];
    pt.e1 = pt.e2 = pt.e2prime = pt.e3 = pt.on_curve;
    pt.e4 = pt.on_curve || g.components[pt.component_id].kappa != 0;
    rho[p] = !pt.e4 && !eigen_cell[p];
    if (rho[p]) g.components[pt.component_id].meets_resolvent = true;
  }
  for (std::size_t p = 0; p < g.points.size(); ++p) {
    GridPoint& pt = g.points[p];
    pt.e5 = pt.e4 || !g.components[pt.component_id].meets_resolvent;
    pt.sigma = !rho[p];
  }
  return g;
}

}  // namespace relspec
