#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace {

QI mul(const QI& a, const QI& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
QI sub(const QI& a, const QI& b) { return {a.re - b.re, a.im - b.im}; }
QI div(const QI& a, const QI& b) {
  const Rational n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

}  // namespace

int exact_rank(const IntMatrix& m) {
  std::vector<std::vector<QI>> a(m.rows, std::vector<QI>(m.cols));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) a[i][j] = {Rational(m.re[i * m.cols + j]), Rational(m.im[i * m.cols + j])};
  }
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int p = rank;
    while (p < m.rows && a[p][c].zero()) ++p;
    if (p == m.rows) continue;
    std::swap(a[p], a[rank]);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (a[i][c].zero()) continue;
      const QI f = div(a[i][c], a[rank][c]);
      for (int j = c; j < m.cols; ++j) a[i][j] = sub(a[i][j], mul(f, a[rank][j]));
    }
    ++rank;
  }
  return rank;
}

IntMatrix row_block(const IntMatrix& m, int r0, int n) {
  IntMatrix out(n, m.cols);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      out.re[i * m.cols + j] = m.re[(r0 + i) * m.cols + j];
      out.im[i * m.cols + j] = m.im[(r0 + i) * m.cols + j];
    }
  }
  return out;
}

std::vector<cplx> durand_kerner(const std::vector<cplx>& ascending) {
  const int deg = static_cast<int>(ascending.size()) - 1;
  if (deg < 1) return {};
  std::vector<cplx> c(ascending.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = ascending[k] / ascending.back();
  auto eval = [&](cplx z) {
    cplx v = 0;
    for (int k = deg; k >= 0; --k) v = v * z + c[k];
    return v;
  };
  auto deriv = [&](cplx z) {
    cplx v = 0;
    for (int k = deg; k >= 1; --k) v = v * z + static_cast<double>(k) * c[k];
    return v;
  };
  double radius = 0.0;
  for (int k = 0; k < deg; ++k) radius = std::max(radius, std::abs(c[k]));
  radius = 1.0 + radius;
  std::vector<cplx> z(deg);
  for (int k = 0; k < deg; ++k) z[k] = std::polar(0.5 * radius, 2.0 * M_PI * (k + 0.25) / deg + 0.4);
  for (int it = 0; it < 2000; ++it) {
    double move = 0.0;
    for (int k = 0; k < deg; ++k) {
      cplx den = 1.0;
      for (int j = 0; j < deg; ++j) {
        if (j != k) den *= z[k] - z[j];
      }
      const cplx step = eval(z[k]) / den;
      z[k] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-15 * radius) break;
  }
  for (cplx& r : z) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = deriv(r);
      if (std::abs(d) < 1e-300) break;
      r -= eval(r) / d;
    }
  }
  return z;
}

int winding_by_roots(const std::vector<cplx>& a, int lo, cplx lambda) {
  // Widen [lo, hi] to contain z^0 before subtracting lambda.
  const int hi = lo + static_cast<int>(a.size()) - 1;
  const int base = std::min(lo, 0);
  std::vector<cplx> q(static_cast<std::size_t>(std::max(hi, 0) - base + 1), cplx(0));
  for (std::size_t k = 0; k < a.size(); ++k) q[k + static_cast<std::size_t>(lo - base)] = a[k];
  q[static_cast<std::size_t>(-base)] -= lambda;
  lo = base;
  while (!q.empty() && q.back() == cplx(0)) q.pop_back();
  int shift = 0;
  while (!q.empty() && q.front() == cplx(0)) {
    q.erase(q.begin());
    ++shift;
  }
  int inside = shift;
  for (const cplx& r : durand_kerner(q)) {
    if (std::abs(r) < 1.0) ++inside;
  }
  return inside + lo;
}

std::vector<cplx> charpoly(const std::vector<std::vector<cplx>>& a) {
  const int n = static_cast<int>(a.size());
  using M = std::vector<std::vector<cplx>>;
  auto matmul = [n](const M& x, const M& y) {
    M z(n, std::vector<cplx>(n));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
      }
    }
    return z;
  };
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  M mk(n, std::vector<cplx>(n));  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    mk = matmul(a, mk);
    cplx tr = 0;
    for (int i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

std::vector<double> secular_eigenvalues(const std::vector<double>& d, const std::vector<cplx>& u,
                                        double rho) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  double unorm2 = 0.0;
  for (const cplx& v : u) unorm2 += std::norm(v);
  auto f = [&](double l) {
    double s = 1.0;
    for (std::size_t i = 0; i < n; ++i) s += rho * std::norm(u[i]) / (d[i] - l);
    return s;
  };
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    double lo = 0.0;
    double hi = 0.0;
    if (rho > 0) {
      lo = d[order[k]];
      hi = k + 1 < n ? d[order[k + 1]] : d[order[k]] + rho * unorm2;
    } else {
      hi = d[order[k]];
      lo = k > 0 ? d[order[k - 1]] : d[order[k]] + rho * unorm2;
    }
    // f runs from −∞ to +∞ across (lo, hi) when ρ > 0 and the reverse for ρ < 0.
    const double sign = rho > 0 ? 1.0 : -1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sign * f(mid) < 0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<cplx> sphere_point(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nd;
  std::vector<cplx> x(n);
  double s = 0.0;
  for (auto& v : x) {
    v = {nd(g), nd(g)};
    s += std::norm(v);
  }
  for (auto& v : x) v /= std::sqrt(s);
  return x;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx& x : a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (std::abs(b[j] - x) < std::abs(b[best] - x)) best = j;
    }
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace oracle
