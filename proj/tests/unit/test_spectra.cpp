#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "relspec/spectra.hpp"
#include "relspec/verify.hpp"

using namespace relspec;
using testing::diag;

namespace {

// Finite eigenvalues of the pencil λB − A from det(λB − A), interpolated at
// n + 1 points on a circle and solved by Durand-Kerner.
std::vector<cplx> pencil_roots(const Mat& a, const Mat& b) {
  const Index n = a.rows();
  const Index m = n + 1;
  std::vector<cplx> vals(m);
  for (Index k = 0; k < m; ++k) {
    const cplx z = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m));
    vals[k] = Eigen::FullPivLU<Mat>(z * b - a).determinant();
  }
  std::vector<cplx> coeff(m);
  double scale = 0.0;
  for (Index j = 0; j < m; ++j) {
    cplx s = 0.0;
    for (Index k = 0; k < m; ++k) {
      s += vals[k] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(j * k) / static_cast<double>(m));
    }
    coeff[j] = s / static_cast<double>(m);
    scale = std::max(scale, std::abs(coeff[j]));
  }
  while (!coeff.empty() && std::abs(coeff.back()) < 1e-9 * scale) coeff.pop_back();
  return oracle::durand_kerner(coeff);
}

std::vector<std::vector<cplx>> rows(const Mat& a) {
  std::vector<std::vector<cplx>> r(a.rows(), std::vector<cplx>(a.cols()));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) r[i][j] = a(i, j);
  }
  return r;
}

}  // namespace

TEST_CASE("classify_point on a diagonal operator") {
  const Relation t = Relation::from_operator(diag({1.0, 2.0}));
  const PointClass at1 = classify_point(t, 1.0);
  CHECK(at1.fredholm.alpha == Count::of(1));
  CHECK(at1.fredholm.beta == Count::of(1));
  CHECK(at1.fredholm.kappa == IndexValue::of(0));
  CHECK_FALSE(at1.in_resolvent);
  const PointClass at5 = classify_point(t, 5.0);
  CHECK(at5.fredholm.alpha == Count::of(0));
  CHECK(at5.fredholm.beta == Count::of(0));
  CHECK(at5.in_resolvent);
}

TEST_CASE("purely multivalued relation has every point in the resolvent") {
  Mat g(2, 1);
  g << 0.0, 1.0;
  const Relation t = Relation::from_generators(1, 1, g);
  // λ − T has graph {(0, −y)}: N = 0 and R = C.
  for (const cplx l : {cplx(0.0), cplx(1.0, 2.0), cplx(-3.0)}) {
    const PointClass p = classify_point(t, l);
    CHECK(p.fredholm.alpha == Count::of(0));
    CHECK(p.fredholm.beta == Count::of(0));
    CHECK(p.in_resolvent);
  }
  const Spectrum s = spectrum(t);
  CHECK_FALSE(s.all_of_C);
  CHECK(s.points.empty());
}

TEST_CASE("spectrum of matrices") {
  const Spectrum d = spectrum(Relation::from_operator(diag({1.0, 2.0, 3.0})));
  REQUIRE_FALSE(d.all_of_C);
  CHECK(oracle::multiset_distance(d.points, {1.0, 2.0, 3.0}) < 1e-12);

  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = rng.integer(1, 7);
    const Mat a = rng.complex_normal_matrix(n, n);
    const Spectrum s = spectrum(Relation::from_operator(a));
    REQUIRE_FALSE(s.all_of_C);
    CHECK(oracle::multiset_distance(s.points, oracle::durand_kerner(oracle::charpoly(rows(a)))) < 1e-6);
  }
}

TEST_CASE("spectrum of a rank-one update matches the secular equation") {
  std::mt19937_64 g(2);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    std::vector<double> d(n);
    std::vector<cplx> u(n);
    Mat a = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      d[i] = static_cast<double>(i) + 0.3 * nd(g);
      u[i] = cplx(nd(g), nd(g));
      a(i, i) = d[i];
    }
    const double rho = trial % 2 == 0 ? 1.5 : -0.8;
    Vec uv(n);
    for (int i = 0; i < n; ++i) uv(i) = u[i];
    a += rho * uv * uv.adjoint();
    std::vector<cplx> expect;
    for (double l : oracle::secular_eigenvalues(d, u, rho)) expect.emplace_back(l);
    const Spectrum s = spectrum(Relation::from_operator(a));
    CHECK(oracle::multiset_distance(s.points, expect) < 1e-8);
  }
}

TEST_CASE("spectrum of regular pencils with singular B") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = rng.integer(2, 6);
    const Index rb = rng.integer(1, n);
    const Mat a = rng.complex_normal_matrix(n, n);
    const Mat b = rng.complex_normal_matrix(n, rb) * rng.complex_normal_matrix(rb, n);
    const Spectrum s = spectrum(Relation::from_pencil(a, b));
    REQUIRE_FALSE(s.all_of_C);
    CHECK(oracle::multiset_distance(s.points, pencil_roots(a, b)) < 1e-6);
  }
}

TEST_CASE("deficient graph means the whole plane") {
  // {(Bu, Au)} with u ∈ C^1 inside C^2 ⊕ C^2: dim G = 1 < 2.
  Rng rng(1);
  const Relation t = Relation::from_pencil(rng.complex_normal_matrix(2, 1), rng.complex_normal_matrix(2, 1));
  CHECK(spectrum(t).all_of_C);
  const FiniteEssentialSpectra e = finite_essential_spectra(t);
  CHECK(e.e4_all_of_C);
  CHECK(e.e5_all_of_C);
  CHECK_THROWS_AS(weyl_correction(t, 0.0), PreconditionError);

  const FiniteEssentialSpectra op = finite_essential_spectra(Relation::from_operator(diag({1.0, 2.0})));
  CHECK_FALSE(op.e4_all_of_C);
  CHECK_FALSE(op.e5_all_of_C);
}

TEST_CASE("singular square pencil means the whole plane") {
  // G = span{(e1, 0), (0, e1)}: dim G = 2, yet e1 ∈ N(λ − T) for every λ.
  Mat gens = Mat::Zero(4, 2);
  gens(0, 0) = 1.0;
  gens(2, 1) = 1.0;
  const Relation t = Relation::from_generators(2, 2, gens);
  REQUIRE(t.graph().dim() == 2);
  CHECK(spectrum(t).all_of_C);
  CHECK(classify_point(t, cplx(0.7, -2.0)).fredholm.alpha == Count::of(1));
}

TEST_CASE("weyl correction") {
  const Relation d = Relation::from_operator(diag({1.0, 2.0}));
  CHECK(parts(weyl_correction(d, 5.0)).range.dim() == 0);
  const Relation k = weyl_correction(d, 1.0);
  CHECK(parts(k).range.dim() == 1);
  CHECK(classify_point(add(d, k), 1.0).in_resolvent);
}

TEST_CASE("mobius resolvent") {
  const Relation z = mobius_resolvent(Relation::from_operator(Mat::Zero(3, 3)), 1.0);
  CHECK(equal(z.graph(), Relation::from_operator(Mat::Identity(3, 3)).graph()));
  const Relation d = mobius_resolvent(Relation::from_operator(diag({1.0, 2.0})), 0.0);
  CHECK(equal(d.graph(), Relation::from_operator(diag({-1.0, -0.5})).graph()));
  CHECK_THROWS_AS(mobius_resolvent(Relation::from_operator(diag({1.0, 2.0})), 2.0), PreconditionError);

  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = rng.integer(1, 6);
    const Mat a = rng.complex_normal_matrix(n, n);
    const cplx mu = 2.0 * rng.complex_normal();
    const Relation t = Relation::from_operator(a);
    std::vector<cplx> expect;
    for (const cplx l : oracle::durand_kerner(oracle::charpoly(rows(a)))) expect.push_back(1.0 / (mu - l));
    CHECK(oracle::multiset_distance(spectrum(mobius_resolvent(t, mu)).points, expect) < 1e-8);
  }
}

TEST_CASE("mobius factorization") {
  const FactorCheck z = mobius_factor_check(Relation::from_operator(Mat::Zero(1, 1)), 1.0, 2.0);
  CHECK(z.holds);
  CHECK(z.residual < 1e-12);
  CHECK(mobius_factor_check(Relation::from_operator(diag({1.0, 2.0})), 5.0, 0.0).holds);
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.integer(1, 6);
    const Relation t = gen_relation(rng, n, n, static_cast<Profile>(rng.integer(0, 3)));
    const cplx mu = 2.0 * rng.complex_normal();
    if (!classify_point(t, mu).in_resolvent) continue;
    const cplx lambda = rng.complex_normal();
    if (std::abs(lambda - mu) < 1e-3) continue;
    const FactorCheck f = mobius_factor_check(t, mu, lambda);
    CHECK(f.holds);
    CHECK(f.residual < kFactorThreshold);
  }
}
