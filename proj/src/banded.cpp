#include "relspec/banded.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <unsupported/Eigen/FFT>

#include "relspec/linalg.hpp"

namespace relspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Dense coordinates for a family of sparse vectors over their joint support.
struct DenseFamily {
  std::vector<std::int64_t> index;  // sorted support
  Mat columns;
};

DenseFamily densify(const std::vector<SparseVec>& family) {
  std::set<std::int64_t> support;
  for (const auto& v : family) {
    for (const auto& [k, x] : v) support.insert(k);
  }
  DenseFamily out;
  out.index.assign(support.begin(), support.end());
  out.columns = Mat::Zero(static_cast<Index>(out.index.size()), static_cast<Index>(family.size()));
  for (std::size_t c = 0; c < family.size(); ++c) {
    for (const auto& [k, x] : family[c]) {
      const auto pos = std::lower_bound(out.index.begin(), out.index.end(), k) - out.index.begin();
      out.columns(pos, static_cast<Index>(c)) = x;
    }
  }
  return out;
}

Index family_rank(const std::vector<SparseVec>& family) {
  if (family.empty()) return 0;
  const DenseFamily d = densify(family);
  if (d.index.empty()) return 0;
  return linalg::split(d.columns, default_tol()).rank;
}

// x minus its orthogonal projection onto span(family).
SparseVec project_out(const SparseVec& x, const std::vector<SparseVec>& family) {
  if (family.empty()) return x;
  const DenseFamily d = densify(family);
  if (d.index.empty()) return x;
  const Mat basis = linalg::split(d.columns, default_tol()).range;
  Vec xs(static_cast<Index>(d.index.size()));
  for (std::size_t i = 0; i < d.index.size(); ++i) {
    const auto it = x.find(d.index[i]);
    xs(static_cast<Index>(i)) = it == x.end() ? cplx(0.0) : it->second;
  }
  const Vec p = basis * (basis.adjoint() * xs);
  SparseVec out = x;
  for (std::size_t i = 0; i < d.index.size(); ++i) out[d.index[i]] -= p(static_cast<Index>(i));
  return out;
}

cplx inner(const SparseVec& v, const SparseVec& x) {
  cplx s = 0.0;
  for (const auto& [k, vk] : v) {
    const auto it = x.find(k);
    if (it != x.end()) s += std::conj(vk) * it->second;
  }
  return s;
}

double norm(const SparseVec& x) {
  double s = 0.0;
  for (const auto& [k, v] : x) s += std::norm(v);
  return std::sqrt(s);
}

// Convolution with a coefficient map, dropping entries below 1e-15 of the
// largest.
SparseVec convolve(const LaurentPolynomial& a, const SparseVec& x) {
  SparseVec y;
  for (const auto& [k, ak] : a.coeffs()) {
    for (const auto& [j, xj] : x) y[j + k] += ak * xj;
  }
  double peak = 0.0;
  for (const auto& [k, v] : y) peak = std::max(peak, std::abs(v));
  for (auto it = y.begin(); it != y.end();) {
    it = std::abs(it->second) <= 1e-15 * peak ? y.erase(it) : std::next(it);
  }
  return y;
}

void check_vector(const SparseVec& v, Space space, const char* what) {
  for (const auto& [k, x] : v) {
    if (space == Space::toeplitz && k < 0) {
      throw InputError(std::string(what) + ": Toeplitz vectors need indices >= 0, got " +
                       std::to_string(k));
    }
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw InputError(std::string(what) + ": non-finite entry at index " + std::to_string(k));
    }
  }
}

FredholmData on_curve_data() {
  return make_fredholm(Count::unknown(), Count::unknown(), false, false);
}

}  // namespace

void BandedModel::validate() const {
  for (const auto& p : perturbation) {
    check_vector(p.u, space, "perturbation u");
    check_vector(p.v, space, "perturbation v");
  }
  for (const auto& m : mv_part) check_vector(m, space, "mv_part");
  for (const auto& w : domain_annihilator) check_vector(w, space, "domain_annihilator");
}

Index BandedModel::mv_dim() const { return family_rank(mv_part); }
Index BandedModel::annihilator_dim() const { return family_rank(domain_annihilator); }

int model_index(const BandedModel& t, cplx lambda) {
  int kappa = 0;
  if (t.space == Space::toeplitz) {
    kappa = -winding(t.symbol, lambda);
  } else if (on_curve(t.symbol, lambda)) {
    throw OnCurveError("model_index: lambda lies on the symbol curve");
  }
  return kappa + static_cast<int>(t.mv_dim() - t.annihilator_dim());
}

FredholmData fredholm_classify(const BandedModel& t, cplx lambda) {
  if (on_curve(t.symbol, lambda)) return on_curve_data();
  const int kappa = model_index(t, lambda);
  FredholmData d = make_fredholm(Count::of(std::max(0, kappa)), Count::of(std::max(0, -kappa)),
                                 true, t.generic());
  return d;
}

BandedModel conjugate_model(const BandedModel& t) {
  BandedModel out;
  out.space = t.space;
  out.symbol = t.symbol.reflected();
  for (const auto& p : t.perturbation) out.perturbation.push_back({p.v, p.u});
  out.mv_part = t.domain_annihilator;
  out.domain_annihilator = t.mv_part;
  return out;
}

Mat ToeplitzKernel::sequences(Index length) const {
  Mat out = Mat::Zero(length, coefficients.cols());
  for (Index j = 0; j < length; ++j) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const Term& term = terms[t];
      cplx phi;
      if (term.unit_vector) {
        phi = j == term.power ? 1.0 : 0.0;
      } else {
        phi = std::pow(double(j), term.power) * std::pow(term.root, double(j));
      }
      out.row(j) += phi * coefficients.row(static_cast<Index>(t));
    }
  }
  return out;
}

ToeplitzKernel toeplitz_kernel_basis(const LaurentSymbol& a, cplx lambda) {
  if (a.rational()) throw UnsupportedError("toeplitz_kernel_basis: rational symbols are not supported");
  if (on_curve(a, lambda)) throw OnCurveError("toeplitz_kernel_basis: lambda lies on the symbol curve");
  const LaurentPolynomial b_raw = a.numerator() - lambda;
  std::map<int, cplx> kept;
  for (const auto& [k, c] : b_raw.coeffs()) {
    if (std::abs(c) > 1e-14 * b_raw.max_abs()) kept.emplace(k, c);
  }
  const LaurentPolynomial b(std::move(kept));
  const int lo = b.min_index();
  const int hi = b.max_index();

  ToeplitzKernel out;
  const int kappa = -winding(a, lambda);
  out.alpha = std::max(0, kappa);

  // Geometric solutions w^k of the interior recurrence Σ b_k x_{i−k} = 0
  // satisfy R(w) = Σ b_k w^{hi−k} = 0.
  std::vector<cplx> ascending;
  for (int p = 0; p <= hi - lo; ++p) ascending.push_back(b.coeff(hi - p));
  std::vector<cplx> inside;
  for (const cplx w : polynomial_roots(ascending)) {
    if (std::abs(std::abs(w) - 1.0) < 1e-8) {
      throw OnCurveError("toeplitz_kernel_basis: characteristic root within 1e-8 of the unit circle");
    }
    if (std::abs(w) < 1.0) inside.push_back(w);
  }
  std::sort(inside.begin(), inside.end(), [](cplx x, cplx y) {
    return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : std::arg(x) < std::arg(y);
  });
  std::vector<bool> used(inside.size(), false);
  for (std::size_t i = 0; i < inside.size(); ++i) {
    if (used[i]) continue;
    cplx sum = inside[i];
    int mult = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < inside.size(); ++j) {
      if (!used[j] && std::abs(inside[j] - inside[i]) < 1e-5) {
        used[j] = true;
        sum += inside[j];
        ++mult;
      }
    }
    out.roots.push_back({sum / double(mult), mult});
  }
  for (const auto& r : out.roots) {
    for (int s = 0; s < r.multiplicity; ++s) out.terms.push_back({r.value, s, false});
  }
  // When every band index is negative, the leading −hi entries are free.
  for (int s = 0; s < -hi; ++s) out.terms.push_back({cplx(0.0), s, true});

  const Index d = static_cast<Index>(out.terms.size());
  if (d < out.alpha) {
    throw PreconditionError("toeplitz_kernel_basis: fewer decaying solutions than the index requires");
  }
  if (out.alpha == 0) {
    out.coefficients = Mat(d, 0);
    return out;
  }
  if (hi <= 0) {
    out.coefficients = Mat::Identity(d, d).leftCols(out.alpha);
    return out;
  }
  // Rows i < hi lose the terms that reach negative indices; a combination φ
  // of interior solutions must satisfy Σ_{k=i+1}^{hi} b_k φ(i−k) = 0.
  Mat boundary = Mat::Zero(hi, d);
  for (int i = 0; i < hi; ++i) {
    for (Index t = 0; t < d; ++t) {
      const auto& term = out.terms[static_cast<std::size_t>(t)];
      cplx s = 0.0;
      for (int k = i + 1; k <= hi; ++k) {
        const int j = i - k;
        s += b.coeff(k) * std::pow(double(j), term.power) * std::pow(term.root, double(j));
      }
      boundary(i, t) = s;
    }
  }
  Eigen::JacobiSVD<Mat> svd(boundary, Eigen::ComputeFullV);
  out.coefficients = svd.matrixV().rightCols(out.alpha);
  return out;
}

SparseVec apply_model(const BandedModel& t, const SparseVec& x) {
  SparseVec y;
  for (const auto& [k, ak] : t.symbol.coefficients().coeffs()) {
    for (const auto& [j, xj] : x) {
      const std::int64_t i = j + k;
      if (t.space == Space::toeplitz && i < 0) continue;
      y[i] += ak * xj;
    }
  }
  for (const auto& p : t.perturbation) {
    const cplx c = inner(p.v, x);
    for (const auto& [i, ui] : p.u) y[i] += ui * c;
  }
  return y;
}

SingularSequence singular_sequence(const BandedModel& t, cplx lambda, int n) {
  if (n < 0) throw InputError("singular_sequence: n must be nonnegative");
  const CurvePoint cp = nearest_curve_point(t.symbol, lambda);
  if (cp.distance > on_curve_tolerance(t.symbol)) {
    throw PreconditionError("singular_sequence: lambda is not on the symbol curve");
  }
  SingularSequence out;
  out.z0 = cp.z;
  out.first_index = t.space == Space::laurent ? -n : 0;
  const Index len = 2 * static_cast<Index>(n) + 1;
  const double scale = 1.0 / std::sqrt(double(len));
  SparseVec x;
  for (Index j = 0; j < len; ++j) {
    const std::int64_t k = out.first_index + j;
    x[k] = std::polar(scale, -double(k) * cp.theta);
  }
  if (!t.domain_annihilator.empty()) {
    x = project_out(x, t.domain_annihilator);
    const double nx = norm(x);
    for (auto& [k, v] : x) v /= nx;
  }
  out.values = Vec::Zero(len);
  for (const auto& [k, v] : x) {
    const std::int64_t pos = k - out.first_index;
    if (pos >= 0 && pos < len) out.values(static_cast<Index>(pos)) = v;
  }
  SparseVec r = apply_model(t, x);
  for (auto& [k, v] : r) v = -v;
  for (const auto& [k, v] : x) r[k] += lambda * v;
  out.residual = norm(project_out(r, t.mv_part));
  return out;
}

void Bounds::validate() const {
  for (const double v : {re0, re1, im0, im1}) {
    if (!std::isfinite(v)) throw InputError("bounds must be finite");
  }
  if (!(re1 > re0) || !(im1 > im0)) {
    throw InputError("bounds must satisfy re0 < re1 and im0 < im1");
  }
}

Mat truncation(const BandedModel& t, Index n) {
  if (n < 1) throw InputError("truncation size must be positive");
  Mat m = Mat::Zero(n, n);
  const std::int64_t offset = t.space == Space::laurent ? n / 2 : 0;
  if (t.space == Space::toeplitz) {
    for (const auto& [k, ak] : t.symbol.coefficients().coeffs()) {
      for (Index j = 0; j < n; ++j) {
        const Index i = j + k;
        if (i >= 0 && i < n) m(i, j) = ak;
      }
    }
  } else {
    // Periodized coefficients c_r = Σ_{k ≡ r (mod n)} a_k.
    std::vector<cplx> c(static_cast<std::size_t>(n), 0.0);
    if (t.symbol.rational()) {
      std::vector<cplx> samples(static_cast<std::size_t>(n));
      for (Index j = 0; j < n; ++j) samples[j] = t.symbol.on_circle(kTwoPi * double(j) / double(n));
      Eigen::FFT<double> fft;
      fft.fwd(c, samples);
      for (auto& v : c) v /= double(n);
    } else {
      for (const auto& [k, ak] : t.symbol.coefficients().coeffs()) {
        c[static_cast<std::size_t>(((k % n) + n) % n)] += ak;
      }
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) m(i, j) = c[static_cast<std::size_t>(((i - j) % n + n) % n)];
    }
  }
  auto position = [&](std::int64_t k) {
    const std::int64_t pos = k + offset;
    if (pos < 0 || pos >= n) {
      throw InputError("truncation size " + std::to_string(n) +
                       " does not contain perturbation index " + std::to_string(k));
    }
    return static_cast<Index>(pos);
  };
  for (const auto& p : t.perturbation) {
    for (const auto& [i, ui] : p.u) {
      for (const auto& [j, vj] : p.v) m(position(i), position(j)) += ui * std::conj(vj);
    }
  }
  return m;
}

std::vector<cplx> point_eigenvalues(const BandedModel& t, const Bounds& bounds,
                                    const std::vector<int>& trunc_sizes) {
  if (trunc_sizes.size() < 2 || !std::is_sorted(trunc_sizes.begin(), trunc_sizes.end()) ||
      std::adjacent_find(trunc_sizes.begin(), trunc_sizes.end()) != trunc_sizes.end() ||
      trunc_sizes.front() < 1) {
    throw InputError("point_eigenvalues: need at least two increasing truncation sizes");
  }
  bounds.validate();
  if (t.perturbation.empty() || t.has_parts()) return {};
  std::vector<std::vector<cplx>> spectra;
  for (const int n : trunc_sizes) spectra.push_back(linalg::eigenvalues(truncation(t, n)));

  std::vector<cplx> out;
  for (const cplx e : spectra.back()) {
    if (!bounds.contains(e) || on_curve(t.symbol, e)) continue;
    bool persistent = true;
    for (std::size_t s = 0; s + 1 < spectra.size() && persistent; ++s) {
      persistent = std::any_of(spectra[s].begin(), spectra[s].end(),
                               [&](cplx f) { return std::abs(f - e) <= kPersistTol; });
    }
    if (!persistent) continue;
    try {
      if (model_index(t, e) != 0) continue;
    } catch (const OnCurveError&) {
      continue;
    }
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

BandedModel mobius_laurent(const BandedModel& t, cplx mu) {
  if (t.space != Space::laurent) {
    throw UnsupportedError("mobius_laurent: the resolvent of a Toeplitz operator is not Toeplitz");
  }
  if (t.has_parts()) {
    throw UnsupportedError("mobius_laurent: models with multivalued parts are not supported");
  }
  if (on_curve(t.symbol, mu)) throw PreconditionError("mobius_laurent: mu lies on the symbol curve");

  // 1/(μ − n/d) = d/(μd − n).
  LaurentSymbol resolvent_symbol = [&] {
    const LaurentPolynomial& num = t.symbol.numerator();
    if (!t.symbol.rational()) {
      std::map<int, cplx> den;
      for (const auto& [k, c] : num.coeffs()) den[k] = -c;
      den[0] += mu;
      return LaurentSymbol(LaurentPolynomial({{0, cplx(1.0)}}), LaurentPolynomial(std::move(den)));
    }
    const LaurentPolynomial& d = t.symbol.denominator();
    std::map<int, cplx> den;
    for (const auto& [k, c] : d.coeffs()) den[k] += mu * c;
    for (const auto& [k, c] : num.coeffs()) den[k] -= c;
    return LaurentSymbol(d, LaurentPolynomial(std::move(den)));
  }();

  BandedModel out;
  out.space = Space::laurent;
  out.symbol = resolvent_symbol;
  if (t.perturbation.empty()) return out;

  // (μ − L − UVᴴ)⁻¹ = R + RU(I − VᴴRU)⁻¹VᴴR with R = (μ − L)⁻¹.
  const LaurentPolynomial& r = resolvent_symbol.coefficients();
  const LaurentPolynomial r_adj = r.reflected();
  const std::size_t rank = t.perturbation.size();
  std::vector<SparseVec> ru(rank);
  std::vector<SparseVec> rv(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    ru[i] = convolve(r, t.perturbation[i].u);
    rv[i] = convolve(r_adj, t.perturbation[i].v);
  }
  Mat w = Mat::Identity(static_cast<Index>(rank), static_cast<Index>(rank));
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) w(i, j) -= inner(t.perturbation[i].v, ru[j]);
  }
  const Eigen::VectorXd sv = linalg::singular_values(w);
  if (sv(sv.size() - 1) <= 1e-10 * std::max(1.0, sv(0))) {
    throw PreconditionError("mobius_laurent: mu is an eigenvalue of T");
  }
  const Mat w_inv = w.partialPivLu().inverse();
  for (std::size_t i = 0; i < rank; ++i) {
    SparseVec u;
    for (std::size_t j = 0; j < rank; ++j) {
      for (const auto& [k, x] : ru[j]) u[k] += x * w_inv(j, i);
    }
    std::erase_if(u, [](const auto& e) { return e.second == cplx(0.0); });
    out.perturbation.push_back({std::move(u), rv[i]});
  }
  return out;
}

}  // namespace relspec
