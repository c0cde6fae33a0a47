#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "relspec/banded.hpp"
#include "relspec/random.hpp"
#include "relspec/relation.hpp"

namespace relspec {

enum class Profile { operator_matrix, pencil, with_mv_part, low_rank_kernel };

Profile parse_profile(const std::string& name);
std::string to_string(Profile p);

inline constexpr Index kMaxGenDim = 12;

/// Pseudo-random relation on ℂ^dim_x → ℂ^dim_y. with_mv_part guarantees
/// dim T(0) ≥ 1 and low_rank_kernel guarantees α(T) ≥ 1. Dimensions must lie
/// in [1, 12].
Relation gen_relation(Rng& rng, Index dim_x, Index dim_y, Profile profile);
/// Square relation determined by (seed, dim, profile).
Relation gen_relation(std::uint64_t seed, Index dim, Profile profile);

/// S = {(x, Cx + s) : x ∈ X, s ∈ S(0)} with S(0) a random subspace of T(0)
/// and ‖S‖ = ‖P_{S(0)^⊥} C‖ ≤ 0.9·min(γ(T), 1).
Relation gen_small_perturbation(const Relation& t, Rng& rng);
Relation gen_small_perturbation(const Relation& t, std::uint64_t seed);

/// Five fixed unperturbed models: z (Toeplitz), z + z⁻¹ (Laurent),
/// z + 0.5z⁻¹ + 0.25z² (Toeplitz), z⁻¹ + 0.3z² (Laurent), 0.5 + z − 0.4z⁻²
/// (Toeplitz).
std::vector<BandedModel> reference_models();

/// Random rank-one pair with 1–3 nonzeros per vector, supported in [−3, 3]
/// (Laurent) or [0, 6] (Toeplitz).
RankOne gen_rank_one(Rng& rng, Space space);
/// Random finite-support vector with the same support rule.
SparseVec gen_sparse(Rng& rng, Space space);

struct SuiteReport {
  std::string suite_name;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  /// Serialized counterexamples: {"trial", "message", "input"}, where input
  /// holds Relation or BandedModel JSON plus the sampled scalars.
  std::vector<nlohmann::json> failures;
  double max_residual = 0.0;
  std::vector<std::string> notes;
  /// Per-suite reports of the "all" meta-suite.
  std::vector<SuiteReport> children;

  bool pass() const;
};

/// Known suite names, in execution order of the "all" meta-suite.
const std::vector<std::string>& suite_names();

/// Runs `trials` independent trials with per-trial streams derived from
/// (seed, trial), so results do not depend on `threads`. Throws InputError
/// for unknown names or negative trial counts.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::int64_t trials,
                      unsigned threads = 0);

nlohmann::json report_to_json(const SuiteReport& r);

}  // namespace relspec
