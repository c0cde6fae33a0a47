#include "relspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "relspec/linalg.hpp"

namespace relspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDftSize = 8192;

cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

LaurentPolynomial::LaurentPolynomial(std::map<int, cplx> coeffs) {
  for (const auto& [k, c] : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InputError("symbol coefficient a_" + std::to_string(k) + " is not finite");
    }
    if (c != cplx(0.0)) coeffs_.emplace(k, c);
  }
}

cplx LaurentPolynomial::coeff(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

int LaurentPolynomial::min_index() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentPolynomial::max_index() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

double LaurentPolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

cplx LaurentPolynomial::on_circle(double theta) const {
  const int reach = std::max(std::abs(min_index()), std::abs(max_index()));
  cplx total = coeff(0);
  for (int m = 1; m <= reach; ++m) {
    const cplx zm = unit(m * theta);
    total += coeff(m) * zm + coeff(-m) * std::conj(zm);
  }
  return total;
}

cplx LaurentPolynomial::operator()(cplx z) const {
  cplx total = 0.0;
  for (const auto& [k, c] : coeffs_) total += c * std::pow(z, k);
  return total;
}

LaurentPolynomial LaurentPolynomial::reflected() const {
  std::map<int, cplx> out;
  for (const auto& [k, c] : coeffs_) out.emplace(-k, std::conj(c));
  return LaurentPolynomial(std::move(out));
}

LaurentPolynomial LaurentPolynomial::operator-(cplx c) const {
  std::map<int, cplx> out = coeffs_;
  out[0] -= c;
  return LaurentPolynomial(std::move(out));
}

LaurentSymbol::LaurentSymbol(LaurentPolynomial poly) : num_(std::move(poly)) {
  if (num_.is_zero()) throw InputError("symbol needs at least one nonzero coefficient");
  finish();
}

LaurentSymbol::LaurentSymbol(LaurentPolynomial num, LaurentPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) throw InputError("symbol numerator needs a nonzero coefficient");
  if (den_->is_zero()) throw InputError("symbol denominator is zero");
  // Sampling plus the root radii of z^{-min} den(z) decide whether the
  // denominator vanishes on the circle.
  double den_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kDftSize; ++j) den_min = std::min(den_min, std::abs(den_->on_circle(kTwoPi * j / kDftSize)));
  std::vector<cplx> ascending;
  for (int k = den_->min_index(); k <= den_->max_index(); ++k) ascending.push_back(den_->coeff(k));
  bool root_on_circle = false;
  for (const cplx r : polynomial_roots(ascending)) {
    if (std::abs(std::abs(r) - 1.0) < 1e-8) root_on_circle = true;
  }
  if (root_on_circle || den_min <= 1e-8 * den_->max_abs()) {
    throw InputError("symbol denominator vanishes on the unit circle");
  }
  finish();
}

void LaurentSymbol::finish() {
  if (!den_) {
    coeffs_ = num_;
    double bound = 0.0;
    for (const auto& [k, c] : num_.coeffs()) bound += double(k) * k * std::abs(c);
    curvature_ = bound;
    return;
  }
  std::vector<cplx> samples(kDftSize);
  for (int j = 0; j < kDftSize; ++j) samples[j] = on_circle(kTwoPi * j / kDftSize);
  // a_k = (1/N) Σ_j a(ω^j) ω^{-jk}, for |k| < N/2.
  Eigen::FFT<double> fft;
  std::vector<cplx> raw;
  fft.fwd(raw, samples);
  std::map<int, cplx> coeffs;
  double peak = 0.0;
  for (auto& c : raw) {
    c /= double(kDftSize);
    peak = std::max(peak, std::abs(c));
  }
  for (int r = 0; r < kDftSize; ++r) {
    if (std::abs(raw[r]) <= 1e-15 * peak) continue;
    const int k = r < kDftSize / 2 ? r : r - kDftSize;
    coeffs.emplace(k, raw[r]);
  }
  coeffs_ = LaurentPolynomial(std::move(coeffs));
  double bound = 0.0;
  const double step = kTwoPi / kDftSize;
  for (int j = 0; j < kDftSize; ++j) {
    const cplx second = samples[(j + 1) % kDftSize] - 2.0 * samples[j] +
                        samples[(j + kDftSize - 1) % kDftSize];
    bound = std::max(bound, std::abs(second) / (step * step));
  }
  curvature_ = 2.0 * bound;
}

cplx LaurentSymbol::on_circle(double theta) const {
  if (!den_) return num_.on_circle(theta);
  return num_.on_circle(theta) / den_->on_circle(theta);
}

LaurentSymbol LaurentSymbol::reflected() const {
  if (!den_) return LaurentSymbol(num_.reflected());
  return LaurentSymbol(num_.reflected(), den_->reflected());
}

CurvePoint nearest_curve_point(const LaurentSymbol& a, cplx lambda) {
  constexpr int n = 1024;
  const double step = kTwoPi / n;
  std::vector<double> f(n);
  for (int j = 0; j < n; ++j) f[j] = std::abs(a.on_circle(step * j) - lambda);
  std::vector<int> minima;
  for (int j = 0; j < n; ++j) {
    if (f[j] <= f[(j + n - 1) % n] && f[j] <= f[(j + 1) % n]) minima.push_back(j);
  }
  std::sort(minima.begin(), minima.end(), [&](int x, int y) { return f[x] < f[y]; });
  if (minima.size() > 8) minima.resize(8);

  CurvePoint best{f[minima.front()], step * minima.front(), unit(step * minima.front())};
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (const int j : minima) {
    double lo = step * (j - 1);
    double hi = step * (j + 1);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = std::abs(a.on_circle(x1) - lambda);
    double f2 = std::abs(a.on_circle(x2) - lambda);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - ratio * (hi - lo);
        f1 = std::abs(a.on_circle(x1) - lambda);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + ratio * (hi - lo);
        f2 = std::abs(a.on_circle(x2) - lambda);
      }
    }
    const double x = f1 < f2 ? x1 : x2;
    const double fx = std::min(f1, f2);
    if (fx < best.distance) {
      double theta = std::fmod(x, kTwoPi);
      if (theta < 0) theta += kTwoPi;
      best = {fx, theta, unit(theta)};
    }
  }
  return best;
}

double on_curve_tolerance(const LaurentSymbol& a) { return 1e-6 * (1.0 + a.coefficient_scale()); }

bool on_curve(const LaurentSymbol& a, cplx lambda) {
  return nearest_curve_point(a, lambda).distance <= on_curve_tolerance(a);
}

int winding(const LaurentSymbol& a, cplx lambda, int n_samples) {
  if (n_samples < 256) throw InputError("winding: n_samples must be at least 256");
  if (on_curve(a, lambda)) throw OnCurveError("winding: lambda lies on the symbol curve");
  constexpr int kMaxSamples = 1 << 22;
  for (int n = n_samples; n <= kMaxSamples; n *= 2) {
    const double step = kTwoPi / n;
    const cplx first = a.on_circle(0.0) - lambda;
    cplx prev = first;
    double total = 0.0;
    bool coarse = false;
    for (int j = 1; j <= n; ++j) {
      const cplx cur = j == n ? first : a.on_circle(step * j) - lambda;
      const double inc = std::arg(cur * std::conj(prev));
      if (std::abs(inc) >= std::numbers::pi / 2) {
        coarse = true;
        break;
      }
      total += inc;
      prev = cur;
    }
    if (!coarse) return static_cast<int>(std::lround(total / kTwoPi));
  }
  throw OnCurveError("winding: argument increments did not resolve; lambda too close to the curve");
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& ascending) {
  std::size_t deg = ascending.size();
  while (deg > 0 && ascending[deg - 1] == cplx(0.0)) --deg;
  if (deg <= 1) return {};
  const Index d = static_cast<Index>(deg - 1);
  Mat companion = Mat::Zero(d, d);
  for (Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Index i = 0; i < d; ++i) companion(i, d - 1) = -ascending[i] / ascending[d];
  return linalg::eigenvalues(companion);
}

}  // namespace relspec
