#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relspec/io.hpp"
#include "relspec/linalg.hpp"
#include "relspec/spectra.hpp"
#include "relspec/verify.hpp"

namespace relspec::detail {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Counts {
  Index alpha;
  Index beta;
  Index kappa() const { return alpha - beta; }
};

Counts counts(const Relation& t) {
  const Parts p = parts(t);
  return {p.kernel.dim(), t.dim_y() - p.range.dim()};
}

Profile any_profile(Rng& rng) { return static_cast<Profile>(rng.integer(0, 3)); }

Relation random_relation(Rng& rng, Index max_dim, bool square) {
  const Index n = rng.integer(1, max_dim);
  const Index m = square ? n : rng.integer(1, max_dim);
  return gen_relation(rng, n, m, any_profile(rng));
}

// Square relation with dim G = dim X, so that ρ(T) can be nonempty.
Relation regular_relation(Rng& rng, Index max_dim) {
  const Index n = rng.integer(1, max_dim);
  switch (rng.integer(0, 2)) {
    case 0: return gen_relation(rng, n, n, Profile::operator_matrix);
    case 1: return gen_relation(rng, n, n, Profile::low_rank_kernel);
    default: {
      const Mat a = rng.complex_normal_matrix(n, n);
      const Index rb = rng.integer(std::max<Index>(1, n - 2), n);
      const Mat b = rng.complex_normal_matrix(n, rb) * rng.complex_normal_matrix(rb, n);
      return Relation::from_pencil(a, b);
    }
  }
}

TrialOutcome fail(std::string message, json input) {
  TrialOutcome o;
  o.ok = false;
  o.message = std::move(message);
  o.input = std::move(input);
  return o;
}

json with_scalar(json input, const char* key, cplx z) {
  input[key] = io::complex_to_json(z);
  return input;
}

// Samples μ ∈ ρ(T) (and ρ(S) when given); false if none found.
bool sample_resolvent_point(Rng& rng, const Relation& t, const Relation* s, cplx& mu) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    mu = 2.0 * rng.complex_normal();
    if (!classify_point(t, mu).in_resolvent) continue;
    if (s != nullptr && !classify_point(*s, mu).in_resolvent) continue;
    return true;
  }
  return false;
}

// ---- relation module suites ----

TrialOutcome graph_dimension_identities(Rng& rng) {
  const Relation t = random_relation(rng, 8, false);
  const Parts p = parts(t);
  const Index g = t.graph().dim();
  if (g != p.kernel.dim() + p.range.dim() || g != p.domain.dim() + p.multivalued.dim()) {
    return fail("dim G = " + std::to_string(g) + ", dim N + dim R = " +
                    std::to_string(p.kernel.dim() + p.range.dim()) + ", dim D + dim T(0) = " +
                    std::to_string(p.domain.dim() + p.multivalued.dim()),
                io::relation_to_json(t));
  }
  return {};
}

TrialOutcome prop_2_3(Rng& rng) {
  const Relation t = random_relation(rng, 8, false);
  const Relation s = gen_small_perturbation(t, rng);
  const Counts ct = counts(t);
  const Counts cu = counts(add(t, s));
  TrialOutcome o;
  o.residual = rel_norm(s) / std::min(min_modulus(t), 1.0);
  if (cu.alpha > ct.alpha || cu.beta > ct.beta) {
    return fail("alpha(T+S) = " + std::to_string(cu.alpha) + " vs alpha(T) = " +
                    std::to_string(ct.alpha) + ", beta(T+S) = " + std::to_string(cu.beta) +
                    " vs beta(T) = " + std::to_string(ct.beta),
                {{"T", io::relation_to_json(t)}, {"S", io::relation_to_json(s)}});
  }
  return o;
}

TrialOutcome prop_2_5(Rng& rng) {
  const Relation t = random_relation(rng, 8, false);
  const Relation s = gen_small_perturbation(t, rng);
  const Counts ct = counts(t);
  const Counts cu = counts(add(t, s));
  if (cu.kappa() != ct.kappa()) {
    return fail("kappa(T+S) = " + std::to_string(cu.kappa()) + " != kappa(T) = " +
                    std::to_string(ct.kappa()),
                {{"T", io::relation_to_json(t)}, {"S", io::relation_to_json(s)}});
  }
  return {};
}

TrialOutcome prop_2_6a(Rng& rng) {
  const Relation t = random_relation(rng, 8, false);
  const Index n = t.dim_x();
  const Index m = t.dim_y();
  const Index r = rng.integer(0, std::min(n, m));
  const Relation s =
      Relation::from_operator(rng.complex_normal_matrix(m, r) * rng.complex_normal_matrix(r, n));
  const Index rank_s = parts(s).range.dim();
  const Counts ct = counts(t);
  const Counts cu = counts(add(t, s));
  // R(T) ⊆ R(T+S) + R(S), so codim R(T+S) ≤ codim R(T) + dim R(S).
  if (cu.beta > ct.beta + rank_s) {
    return fail("beta(T+S) = " + std::to_string(cu.beta) + " > beta(T) + dim R(S) = " +
                    std::to_string(ct.beta + rank_s),
                {{"T", io::relation_to_json(t)}, {"S", io::relation_to_json(s)}});
  }
  return {};
}

// ---- spectra / banded suites ----

BandedModel random_model(Rng& rng, bool allow_parts) {
  const auto refs = reference_models();
  BandedModel m;
  if (rng.uniform() < 0.5) {
    m = refs[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(refs.size()) - 1))];
  } else {
    m.space = rng.uniform() < 0.5 ? Space::laurent : Space::toeplitz;
    std::map<int, cplx> c;
    const std::int64_t terms = rng.integer(1, 3);
    for (std::int64_t i = 0; i < terms; ++i) c[static_cast<int>(rng.integer(-2, 2))] += rng.complex_normal();
    if (LaurentPolynomial(c).is_zero()) c[1] = 1.0;
    m.symbol = LaurentSymbol(LaurentPolynomial(std::move(c)));
  }
  const std::int64_t rank = rng.integer(0, 2);
  for (std::int64_t i = 0; i < rank; ++i) m.perturbation.push_back(gen_rank_one(rng, m.space));
  if (allow_parts && rng.uniform() < 0.25) m.mv_part.push_back(gen_sparse(rng, m.space));
  return m;
}

Bounds model_bounds(Rng& rng, const BandedModel& m) {
  double reach = 0.0;
  for (const auto& [k, c] : m.symbol.coefficients().coeffs()) reach += std::abs(c);
  const double r = 1.2 * reach + 0.5;
  const double sx = rng.uniform(-0.3, 0.3) * r;
  const double sy = rng.uniform(-0.3, 0.3) * r;
  return {-r + sx, r + sx, -r + sy, r + sy};
}

json grid_input(const BandedModel& m, const Bounds& b, int nx, int ny) {
  return {{"model", io::model_to_json(m)},
          {"bounds", {b.re0, b.re1, b.im0, b.im1}},
          {"resolution", {nx, ny}}};
}

TrialOutcome prop_3_2(Rng& rng) {
  TrialOutcome o;
  const Index n = rng.integer(1, 8);
  const Profile profile = any_profile(rng);
  const Relation t = gen_relation(rng, n, n, profile);
  const cplx lambda = profile == Profile::low_rank_kernel ? cplx(0.0) : rng.complex_normal();
  const Relation tc = conjugate(t);
  const Counts c = counts(shift(t, lambda));
  const Counts cc = counts(shift(tc, std::conj(lambda)));
  o.residual = distance(conjugate(shift(t, lambda)).graph(), shift(tc, std::conj(lambda)).graph());
  const Index mv_dual = parts(tc).multivalued.dim();
  if (cc.alpha != c.beta || cc.beta != c.alpha || mv_dual != n - parts(t).domain.dim() ||
      o.residual >= kFactorThreshold) {
    return fail("alpha/beta of conj(lambda) - T' do not swap those of lambda - T",
                with_scalar(json{{"T", io::relation_to_json(t)}}, "lambda", lambda));
  }
  // Banded model: σ_ei(T') is the mirror image of σ_ei(T), with σ_e2 ↔ σ'_e2.
  if (rng.uniform() < 0.125) {
    const BandedModel m = random_model(rng, true);
    const Bounds b = model_bounds(rng, m);
    const Bounds mirror{b.re0, b.re1, -b.im1, -b.im0};
    RegionOptions opt;
    opt.detect_eigenvalues = false;
    opt.threads = 1;
    const int res = 40;
    const RegionGrid g = essential_region(m, b, res, res, opt);
    const RegionGrid gc = essential_region(conjugate_model(m), mirror, res, res, opt);
    for (int j = 0; j < res; ++j) {
      for (int i = 0; i < res; ++i) {
        const GridPoint& p = g.at(i, j);
        const GridPoint& q = gc.at(i, res - 1 - j);
        if (p.e1 != q.e1 || p.e3 != q.e3 || p.e4 != q.e4 || p.e2 != q.e2prime || p.e2prime != q.e2) {
          return fail("banded grid of T' is not the mirror image of the grid of T at (" +
                          std::to_string(i) + ", " + std::to_string(j) + ")",
                      grid_input(m, b, res, res));
        }
      }
    }
  }
  return o;
}

TrialOutcome prop_3_4(Rng& rng) {
  const Index n = rng.integer(1, 12);
  Relation t = Relation::from_operator(Mat::Zero(1, 1));
  cplx lambda = 0.0;
  switch (rng.integer(0, 2)) {
    case 0:
      t = gen_relation(rng, n, n, Profile::low_rank_kernel);
      break;
    case 1: {
      // Shifted low-rank operator: λ = c is an eigenvalue.
      lambda = rng.complex_normal();
      const Index r = rng.integer(0, n - 1);
      Mat a = rng.complex_normal_matrix(n, r) * rng.complex_normal_matrix(r, n);
      a.diagonal().array() += lambda;
      t = Relation::from_operator(a);
      break;
    }
    default: {
      // Pencil with singular A (eigenvalue 0) and possibly singular B (T(0) ≠ 0).
      // rank A + rank B ≥ n keeps the kernels apart, so dim G = n.
      const Index ra = rng.integer(std::max<Index>(0, n - 3), n - 1);
      const Index rb = rng.integer(std::max<Index>(1, n - ra), n);
      const Mat a = rng.complex_normal_matrix(n, ra) * rng.complex_normal_matrix(ra, n);
      const Mat b = rng.complex_normal_matrix(n, rb) * rng.complex_normal_matrix(rb, n);
      t = Relation::from_pencil(a, b);
      break;
    }
  }
  const json input = with_scalar(json{{"T", io::relation_to_json(t)}}, "lambda", lambda);
  const Relation l = shift(t, lambda);
  const Parts pl = parts(l);
  const Counts c = counts(l);
  if (c.kappa() != 0) return fail("generated case has kappa(lambda - T) != 0", input);
  const Relation k = weyl_correction(t, lambda);
  const Parts pk = parts(k);
  TrialOutcome o;
  if (pk.range.dim() > 0 && pl.range.dim() > 0) {
    const Mat overlap = pl.range.frame().adjoint() * pk.range.frame();
    o.residual = linalg::singular_values(overlap)(0);
  }
  if (pk.range.dim() != c.alpha) return fail("rank K != alpha(lambda - T)", input);
  if (pk.multivalued.dim() != 0) return fail("K(0) != 0", input);
  if (!classify_point(add(t, k), lambda).in_resolvent) {
    return fail("lambda not in rho(T + K)", input);
  }
  if (intersect(pl.kernel, pk.kernel).dim() != 0) {
    return fail("N(lambda - T) and N(K) intersect", input);
  }
  if (intersect(pl.range, pk.range).dim() != 0) {
    return fail("R(lambda - T) and R(K) intersect", input);
  }
  return o;
}

TrialOutcome prop_3_5(Rng& rng) {
  const Index n = rng.integer(1, 8);
  const Relation t = gen_relation(rng, n, n, any_profile(rng));
  const Relation s = Relation::from_operator(rng.complex_normal_matrix(n, n));
  const double nu = 0.5 * std::min(min_modulus(t), 1.0) / std::max(1.0, rel_norm(s));
  const double phase = rng.uniform(0.0, kTwoPi);
  std::vector<Index> outer;
  std::vector<Index> inner;
  for (int k = 0; k < 32; ++k) {
    const double angle = phase + kTwoPi * k / 32.0;
    outer.push_back(counts(add(t, scale(s, std::polar(nu / 2.0, angle)))).alpha);
    inner.push_back(counts(add(t, scale(s, std::polar(nu / 4.0, angle)))).alpha);
  }
  const auto constant = [](const std::vector<Index>& v) {
    return std::all_of(v.begin(), v.end(), [&](Index a) { return a == v.front(); });
  };
  TrialOutcome o;
  if (constant(inner) && constant(outer) && inner.front() == outer.front()) return o;
  json input = {{"T", io::relation_to_json(t)}, {"S", io::relation_to_json(s)}, {"nu", nu}};
  if (constant(inner)) {
    o.note = "alpha(T + lambda S) constant only on |lambda| = nu/4 (nu = " + std::to_string(nu) + ")";
    return o;
  }
  return fail("alpha(T + lambda S) varies on |lambda| = nu/4", input);
}

TrialOutcome prop_3_9(Rng& rng) {
  const BandedModel m = random_model(rng, true);
  const Bounds b = model_bounds(rng, m);
  RegionOptions opt;
  opt.trunc_sizes = {64, 128};
  opt.threads = 1;
  const int res = 48;
  const RegionGrid g = essential_region(m, b, res, res, opt);
  for (const GridPoint& p : g.points) {
    const bool chain = (!p.e1 || p.e2) && (!p.e1 || p.e2prime) && (!p.e2 || p.e3) &&
                       (!p.e2prime || p.e3) && (!p.e3 || p.e4) && (!p.e4 || p.e5) &&
                       (!p.e5 || p.sigma);
    if (!chain) return fail("inclusion chain broken", grid_input(m, b, res, res));
  }
  return {};
}

TrialOutcome prop_3_10(Rng& rng) {
  const BandedModel m = random_model(rng, true);
  const Bounds b = model_bounds(rng, m);
  RegionOptions opt;
  opt.detect_eigenvalues = false;
  opt.threads = 1;
  const int res = 48;
  const RegionGrid g = essential_region(m, b, res, res, opt);
  for (const GridPoint& p : g.points) {
    if (p.on_curve) continue;
    if (p.winding != g.components[p.component_id].winding) {
      return fail("winding varies inside component " + std::to_string(p.component_id),
                  grid_input(m, b, res, res));
    }
  }
  return {};
}

TrialOutcome thm_4_4(Rng& rng) {
  const auto refs = reference_models();
  BandedModel t = refs[static_cast<std::size_t>(rng.integer(0, 4))];
  if (rng.uniform() < 0.15) t.mv_part.push_back(gen_sparse(rng, t.space));
  BandedModel perturbed = t;
  const std::int64_t rank = rng.integer(1, 3);
  for (std::int64_t i = 0; i < rank; ++i) perturbed.perturbation.push_back(gen_rank_one(rng, t.space));
  const Bounds b{-2.5, 2.5, -2.5, 2.5};
  RegionOptions opt;
  opt.detect_eigenvalues = false;
  opt.threads = 1;
  const int res = 64;
  const RegionGrid g = essential_region(t, b, res, res, opt);
  const RegionGrid h = essential_region(perturbed, b, res, res, opt);
  for (std::size_t p = 0; p < g.points.size(); ++p) {
    const GridPoint& x = g.points[p];
    const GridPoint& y = h.points[p];
    if (x.e1 != y.e1 || x.e2 != y.e2 || x.e2prime != y.e2prime || x.e3 != y.e3 || x.e4 != y.e4) {
      return fail("sigma_e1..e4 flags differ between T and T + F",
                  grid_input(perturbed, b, res, res));
    }
  }
  return {};
}

// ---- composition and Möbius suites ----

TrialOutcome prop_5_1(Rng& rng) {
  const Index n = rng.integer(1, 8);
  const Index m = rng.integer(1, 8);
  const Index p = rng.integer(1, 8);
  const Relation t = gen_relation(rng, n, m, any_profile(rng));
  // D(S) = Y: an operator, possibly with a multivalued part.
  const Profile sp = rng.uniform() < 0.5 ? Profile::operator_matrix
                     : rng.uniform() < 0.5 ? Profile::with_mv_part
                                           : Profile::low_rank_kernel;
  const Relation s = gen_relation(rng, m, p, sp);
  const Counts cst = counts(compose(s, t));
  const Index overlap = intersect(parts(t).multivalued, parts(s).kernel).dim();
  const Index rhs = counts(t).kappa() + counts(s).kappa() - overlap;
  if (cst.kappa() != rhs) {
    return fail("kappa(ST) = " + std::to_string(cst.kappa()) + " != " + std::to_string(rhs),
                {{"T", io::relation_to_json(t)}, {"S", io::relation_to_json(s)}});
  }
  return {};
}

TrialOutcome thm_5_2(Rng& rng) {
  Relation t = regular_relation(rng, 8);
  cplx mu;
  while (!sample_resolvent_point(rng, t, nullptr, mu)) t = regular_relation(rng, 8);
  const Spectrum sp = spectrum(t);
  cplx lambda = rng.complex_normal();
  if (!sp.points.empty() && rng.uniform() < 0.5) {
    lambda = sp.points[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(sp.points.size()) - 1))];
  }
  json input = with_scalar(with_scalar(json{{"T", io::relation_to_json(t)}}, "mu", mu), "lambda", lambda);
  TrialOutcome o;
  if (lambda != mu) {
    const FactorCheck f = mobius_factor_check(t, mu, lambda);
    o.residual = f.residual;
    if (!f.holds) return fail("G(lambda - T) != G(S(mu - T))", input);
  }
  // σ(T_μ) = {(μ − λ)⁻¹ : λ ∈ σ(T)} ∪ {0 for each eigenvalue at infinity}.
  const Mat tmu = operator_part(mobius_resolvent(t, mu)).standard();
  std::vector<cplx> computed = linalg::eigenvalues(tmu);
  std::vector<cplx> expected;
  for (const cplx l : sp.points) expected.push_back(1.0 / (mu - l));
  while (expected.size() < computed.size()) expected.push_back(0.0);
  std::vector<bool> used(computed.size(), false);
  for (const cplx e : expected) {
    std::size_t best = computed.size();
    double best_d = 0.0;
    for (std::size_t k = 0; k < computed.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(computed[k] - e);
      if (best == computed.size() || d < best_d) {
        best = k;
        best_d = d;
      }
    }
    if (best == computed.size()) return fail("eigenvalue counts differ", input);
    used[best] = true;
    const double err = best_d / std::max(1.0, std::abs(e));
    o.residual = std::max(o.residual, err);
    if (err > 1e-8) return fail("eigenvalue of T_mu is not (mu - lambda)^-1", input);
  }
  return o;
}

TrialOutcome thm_5_3(Rng& rng) {
  TrialOutcome o;
  Relation t = regular_relation(rng, 8);
  const Index n = t.dim_x();
  const Index r = rng.integer(1, std::min<Index>(3, n));
  const Relation f =
      Relation::from_operator(rng.complex_normal_matrix(n, r) * rng.complex_normal_matrix(r, n));
  Relation s = add(t, f);
  cplx mu;
  for (int attempt = 0; !sample_resolvent_point(rng, t, &s, mu); ++attempt) {
    if (attempt > 8) return fail("no common resolvent point found", io::relation_to_json(t));
  }
  const Mat a = operator_part(mobius_resolvent(t, mu)).standard();
  const Mat b = operator_part(mobius_resolvent(s, mu)).standard();
  const double scale = std::max(linalg::singular_values(a)(0), linalg::singular_values(b)(0));
  const Eigen::VectorXd sv = linalg::singular_values(a - b);
  const Index rank_f = parts(f).range.dim();
  o.residual = rank_f < sv.size() ? sv(rank_f) / scale : 0.0;
  json input = with_scalar(json{{"T", io::relation_to_json(t)}, {"F", io::relation_to_json(f)}}, "mu", mu);
  if (o.residual > 1e-10) return fail("rank(T_mu - S_mu) > rank F", input);

  // Laurent realization: (μ − L − F) applied to T_μ x must give back x.
  if (rng.uniform() < 0.125) {
    const auto refs = reference_models();
    BandedModel m = rng.uniform() < 0.5 ? refs[1] : refs[3];
    const std::int64_t rank = rng.integer(1, 2);
    for (std::int64_t i = 0; i < rank; ++i) m.perturbation.push_back(gen_rank_one(rng, m.space));
    double reach = 0.0;
    for (const auto& [k, c] : m.symbol.coefficients().coeffs()) reach += std::abs(c);
    const cplx nu = std::polar(reach + 1.0 + rng.uniform(0.0, 2.0), rng.uniform(0.0, kTwoPi));
    BandedModel resolvent;
    try {
      resolvent = mobius_laurent(m, nu);
    } catch (const PreconditionError&) {
      return o;
    }
    const BandedModel base = mobius_laurent(BandedModel{m.space, m.symbol, {}, {}, {}}, nu);
    json minput = {{"model", io::model_to_json(m)}, {"mu", io::complex_to_json(nu)}};
    if (resolvent.perturbation.size() > m.perturbation.size() || !base.perturbation.empty()) {
      return fail("resolvent difference has more rank-one terms than F", minput);
    }
    const SparseVec x = gen_sparse(rng, m.space);
    const SparseVec y = apply_model(resolvent, x);
    SparseVec back = apply_model(m, y);
    double err = 0.0;
    double nx = 0.0;
    for (auto& [k, v] : back) v = -v;
    for (const auto& [k, v] : y) back[k] += nu * v;
    for (const auto& [k, v] : x) back[k] -= v;
    for (const auto& [k, v] : back) err += std::norm(v);
    for (const auto& [k, v] : x) nx += std::norm(v);
    const double rel = std::sqrt(err / nx);
    o.residual = std::max(o.residual, rel);
    if (rel > 1e-8) return fail("(mu - T) T_mu x != x for the Laurent model", minput);
  }
  return o;
}

}  // namespace

const std::vector<SuiteDef>& suite_table() {
  static const std::vector<SuiteDef> table = {
      {"graph_dimension_identities", graph_dimension_identities},
      {"prop_2_3_nullity_deficiency_stability", prop_2_3},
      {"prop_2_5_index_stability", prop_2_5},
      {"prop_2_6a_finite_rank_lower_semi_fredholm", prop_2_6a},
      {"prop_3_2_conjugate_duality", prop_3_2},
      {"prop_3_4_weyl_correction", prop_3_4},
      {"prop_3_5_annulus_constancy", prop_3_5},
      {"prop_3_9_inclusion_chain", prop_3_9},
      {"prop_3_10_component_constant_winding", prop_3_10},
      {"thm_4_4_weyl_invariance_banded", thm_4_4},
      {"prop_5_1_index_theorem", prop_5_1},
      {"thm_5_2_mobius_factorization", thm_5_2},
      {"thm_5_3_resolvent_difference", thm_5_3},
  };
  return table;
}

}  // namespace relspec::detail
