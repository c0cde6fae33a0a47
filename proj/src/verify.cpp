#include "relspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relspec/io.hpp"
#include "relspec/linalg.hpp"
#include "relspec/parallel.hpp"
#include "suites.hpp"

namespace relspec {

Profile parse_profile(const std::string& name) {
  if (name == "operator") return Profile::operator_matrix;
  if (name == "pencil") return Profile::pencil;
  if (name == "with_mv_part") return Profile::with_mv_part;
  if (name == "low_rank_kernel") return Profile::low_rank_kernel;
  throw InputError("unknown profile '" + name + "'");
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::operator_matrix: return "operator";
    case Profile::pencil: return "pencil";
    case Profile::with_mv_part: return "with_mv_part";
    case Profile::low_rank_kernel: return "low_rank_kernel";
  }
  return "?";
}

Relation gen_relation(Rng& rng, Index dim_x, Index dim_y, Profile profile) {
  if (dim_x < 1 || dim_y < 1 || dim_x > kMaxGenDim || dim_y > kMaxGenDim) {
    throw InputError("gen_relation: dimensions must lie in [1, 12]");
  }
  const Index n = dim_x;
  const Index m = dim_y;
  switch (profile) {
    case Profile::operator_matrix:
      return Relation::from_operator(rng.complex_normal_matrix(m, n));
    case Profile::pencil: {
      const Index p = rng.uniform() < 0.5 ? n : rng.integer(1, n + m);
      const Mat a = rng.complex_normal_matrix(m, p);
      const Mat b = rng.complex_normal_matrix(n, p);
      return Relation::from_pencil(a, b);
    }
    case Profile::with_mv_part: {
      const Index r = rng.integer(1, std::min<Index>(m, 3));
      Mat gens = Mat::Zero(n + m, n + r);
      gens.topLeftCorner(n, n).setIdentity();
      gens.bottomLeftCorner(m, n) = rng.complex_normal_matrix(m, n);
      gens.bottomRightCorner(m, r) = rng.complex_normal_matrix(m, r);
      return Relation::from_generators(n, m, gens);
    }
    case Profile::low_rank_kernel: {
      const Index r = rng.integer(0, n - 1);
      const Mat a = rng.complex_normal_matrix(m, r) * rng.complex_normal_matrix(r, n);
      return Relation::from_operator(a);
    }
  }
  throw InputError("gen_relation: unknown profile");
}

Relation gen_relation(std::uint64_t seed, Index dim, Profile profile) {
  Rng rng(seed);
  return gen_relation(rng, dim, dim, profile);
}

Relation gen_small_perturbation(const Relation& t, Rng& rng) {
  const double gamma = min_modulus(t);
  const double bound = 0.9 * std::min(gamma, 1.0);
  const Index n = t.dim_x();
  const Index m = t.dim_y();
  const Mat t0 = parts(t).multivalued.frame();
  const Index k = rng.integer(0, t0.cols());
  Mat s0(m, 0);
  if (k > 0) s0 = linalg::orthonormal_columns(t0 * rng.complex_normal_matrix(t0.cols(), k));
  const Mat raw = rng.complex_normal_matrix(m, n);
  // Components inside S(0) do not change the relation; dropping them keeps C
  // bounded when S(0) is all of Y.
  Mat c = raw - s0 * (s0.adjoint() * raw);
  const double norm = linalg::singular_values(c)(0);
  const double shrink = rng.uniform(0.1, 1.0);
  if (norm > 1e-12 * linalg::singular_values(raw)(0)) {
    c *= bound * shrink / norm;
  } else {
    c.setZero();
  }
  Mat gens = Mat::Zero(n + m, n + k);
  gens.topLeftCorner(n, n).setIdentity();
  gens.bottomLeftCorner(m, n) = c;
  gens.bottomRightCorner(m, k) = s0;
  return Relation::from_generators(n, m, gens, t.tol());
}

Relation gen_small_perturbation(const Relation& t, std::uint64_t seed) {
  Rng rng(seed);
  return gen_small_perturbation(t, rng);
}

std::vector<BandedModel> reference_models() {
  auto model = [](Space space, std::map<int, cplx> c) {
    BandedModel m;
    m.space = space;
    m.symbol = LaurentSymbol(LaurentPolynomial(std::move(c)));
    return m;
  };
  return {model(Space::toeplitz, {{1, 1.0}}),
          model(Space::laurent, {{1, 1.0}, {-1, 1.0}}),
          model(Space::toeplitz, {{1, 1.0}, {-1, 0.5}, {2, 0.25}}),
          model(Space::laurent, {{-1, 1.0}, {2, 0.3}}),
          model(Space::toeplitz, {{0, 0.5}, {1, 1.0}, {-2, -0.4}})};
}

SparseVec gen_sparse(Rng& rng, Space space) {
  const std::int64_t lo = space == Space::laurent ? -3 : 0;
  SparseVec v;
  const std::int64_t count = rng.integer(1, 3);
  for (std::int64_t i = 0; i < count; ++i) v[rng.integer(lo, lo + 6)] += 0.5 * rng.complex_normal();
  return v;
}

RankOne gen_rank_one(Rng& rng, Space space) {
  RankOne p;
  p.u = gen_sparse(rng, space);
  p.v = gen_sparse(rng, space);
  return p;
}

bool SuiteReport::pass() const {
  if (!failures.empty()) return false;
  return std::all_of(children.begin(), children.end(), [](const SuiteReport& c) { return c.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : detail::suite_table()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::int64_t trials,
                      unsigned threads) {
  if (trials < 0) throw InputError("run_suite: trials must be nonnegative");
  if (name == "all") {
    SuiteReport all;
    all.suite_name = "all";
    all.seed = seed;
    all.trials = trials;
    for (const auto& child : suite_names()) {
      all.children.push_back(run_suite(child, seed, trials, threads));
      all.max_residual = std::max(all.max_residual, all.children.back().max_residual);
    }
    return all;
  }
  const auto& table = detail::suite_table();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const detail::SuiteDef& s) { return name == s.name; });
  if (it == table.end()) throw InputError("unknown suite '" + name + "'");

  std::vector<detail::TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(outcomes.size(), threads, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    try {
      outcomes[i] = it->trial(rng);
    } catch (const std::exception& e) {
      outcomes[i].ok = false;
      outcomes[i].message = std::string("exception: ") + e.what();
    }
  });

  SuiteReport r;
  r.suite_name = name;
  r.seed = seed;
  r.trials = trials;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (std::isfinite(o.residual)) r.max_residual = std::max(r.max_residual, o.residual);
    if (!o.note.empty()) r.notes.push_back("trial " + std::to_string(i) + ": " + o.note);
    if (!o.ok) {
      r.failures.push_back({{"trial", i}, {"message", o.message}, {"input", o.input}});
    }
  }
  return r;
}

nlohmann::json report_to_json(const SuiteReport& r) {
  nlohmann::json j = {{"suite_name", r.suite_name}, {"seed", r.seed},
                      {"trials", r.trials},         {"pass", r.pass()},
                      {"failures", r.failures},     {"max_residual", r.max_residual},
                      {"notes", r.notes}};
  if (!r.children.empty()) {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& c : r.children) kids.push_back(report_to_json(c));
    j["children"] = kids;
  }
  return j;
}

}  // namespace relspec
