#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "relspec/fredholm.hpp"
#include "relspec/symbol.hpp"

namespace relspec {

enum class Space { laurent, toeplitz };

/// Finite-support sequence: index → value. Toeplitz indices are ≥ 0.
using SparseVec = std::map<std::int64_t, cplx>;

/// The rank-one operator u⟨v, ·⟩.
struct RankOne {
  SparseVec u;
  SparseVec v;
};

/// λ ↦ L(a) or T(a) on ℓ²(ℤ) / ℓ²(ℕ) plus F = Σ uᵢ⟨vᵢ, ·⟩, restricted to
/// D = {x : ⟨w, x⟩ = 0 for w in domain_annihilator} and with multivalued part
/// M = span(mv_part). Conventions: (Tx)_i = Σ_k a_k x_{i−k}, so a(z) = z is
/// the forward shift. The annihilator is what the adjoint of a relation with
/// a multivalued part carries; plain models leave it empty.
struct BandedModel {
  Space space = Space::laurent;
  LaurentSymbol symbol{LaurentPolynomial({{1, cplx(1.0)}})};
  std::vector<RankOne> perturbation;
  std::vector<SparseVec> mv_part;
  std::vector<SparseVec> domain_annihilator;

  /// Throws InputError on negative Toeplitz indices or non-finite entries.
  void validate() const;
  Index mv_dim() const;
  Index annihilator_dim() const;
  /// True when α, β are not determined by κ alone.
  bool generic() const { return !perturbation.empty() || has_parts(); }
  bool has_parts() const { return !mv_part.empty() || !domain_annihilator.empty(); }
};

/// κ(λ − T) for λ off the curve: −wind (Toeplitz) or 0 (Laurent), plus
/// dim M − dim annihilator. Finite-rank perturbations leave it unchanged.
int model_index(const BandedModel& t, cplx lambda);

/// Off the curve λ − T is Fredholm with index model_index and α = max(0, κ),
/// β = max(0, −κ), flagged generic for perturbed models. On the curve it is
/// not semi-Fredholm and α, β are reported unknown.
FredholmData fredholm_classify(const BandedModel& t, cplx lambda);

/// Adjoint model: reflected symbol, swapped pairs, M ↔ annihilator.
BandedModel conjugate_model(const BandedModel& t);

/// Decaying solutions of T(a − λ)x = 0 on ℓ²(ℕ).
struct ToeplitzKernel {
  struct Root {
    cplx value;
    int multiplicity = 1;
  };
  Index alpha = 0;
  std::vector<Root> roots;  // roots of z^{hi}(a − λ)(1/z) inside the disk
  /// Each column of `coefficients` combines the terms below into one basis
  /// vector: term t is k^{power}·root^k, or e_{power} when root is absent.
  struct Term {
    cplx root;
    int power = 0;
    bool unit_vector = false;
  };
  std::vector<Term> terms;
  Mat coefficients;

  /// First `length` entries of the basis vectors, one per column.
  Mat sequences(Index length) const;
};

/// Throws UnsupportedError for rational symbols, OnCurveError when λ is on
/// the curve or a root is within 1e-8 of the circle.
ToeplitzKernel toeplitz_kernel_basis(const LaurentSymbol& a, cplx lambda);

struct SingularSequence {
  cplx z0;
  std::int64_t first_index = 0;
  Vec values;             // x(first_index + j) = values(j)
  double residual = 0.0;  // ‖Q_M(λ − T)x‖
};

/// x(k) = conj(z₀)^k / √(2n+1) on a window of 2n+1 indices (|k| ≤ n for
/// Laurent, 0 ≤ k ≤ 2n for Toeplitz), where a(z₀) ≈ λ. With that phase the
/// window is an approximate eigenvector of the convolution. Throws
/// PreconditionError when λ is off the curve.
SingularSequence singular_sequence(const BandedModel& t, cplx lambda, int n);

/// Applies T₀ + F to a finite-support vector.
SparseVec apply_model(const BandedModel& t, const SparseVec& x);

struct Bounds {
  double re0 = 0.0;
  double re1 = 0.0;
  double im0 = 0.0;
  double im1 = 0.0;
  void validate() const;  // InputError on empty or non-finite rectangles
  bool contains(cplx z) const {
    return z.real() >= re0 && z.real() <= re1 && z.imag() >= im0 && z.imag() <= im1;
  }
};

/// Square N×N section: circulant (Laurent, indices −N/2..N/2−1) or leading
/// section (Toeplitz), with F embedded. Throws InputError if F's support does
/// not fit.
Mat truncation(const BandedModel& t, Index n);

inline constexpr double kPersistTol = 1e-4;

/// Eigenvalues of truncations that lie in `bounds`, off the curve where
/// κ(λ − T) = 0, and recur within 1e-4 at every size. Candidates where κ ≠ 0
/// are dropped: those points are in σ_e4 anyway and section spectra there are
/// unreliable. Unperturbed models have none (the Laurent spectrum is the
/// curve; for Toeplitz, κ = 0 off the curve forces invertibility). Models
/// with a multivalued part or annihilator are not supported and give an
/// empty list.
std::vector<cplx> point_eigenvalues(const BandedModel& t, const Bounds& bounds,
                                    const std::vector<int>& trunc_sizes);

/// T_μ = (μ − T)⁻¹ for a Laurent model: symbol 1/(μ − a) and the finite-rank
/// part from the Woodbury identity, truncated where entries fall below
/// 1e-15 of the largest. Throws UnsupportedError for Toeplitz models or
/// models with multivalued parts, PreconditionError when μ ∉ ρ(T).
BandedModel mobius_laurent(const BandedModel& t, cplx mu);

struct GridPoint {
  bool on_curve = false;
  int winding = 0;        // 0 on the curve
  int component_id = -1;  // −1 on the curve
  bool sigma = false;
  bool e1 = false;
  bool e2 = false;
  bool e2prime = false;
  bool e3 = false;
  bool e4 = false;
  bool e5 = false;
};

struct Component {
  int id = 0;
  int winding = 0;
  int kappa = 0;
  std::int64_t size = 0;
  bool meets_resolvent = false;
  /// False when eigenvalue detection was unavailable, so meets_resolvent
  /// rests on κ alone.
  bool resolvent_verified = true;
};

struct RegionOptions {
  std::vector<int> trunc_sizes = {200, 400, 800};
  /// Off: skip point_eigenvalues; σ and σ_e5 then rest on κ alone and every
  /// component is marked unverified.
  bool detect_eigenvalues = true;
  unsigned threads = 0;  // 0: default_threads()
};

/// Grid classification. Points are stored row by row: index j·nx + i holds
/// re = (re0·(nx−1−i) + re1·i)/(nx−1), im likewise with j.
struct RegionGrid {
  Bounds bounds;
  int nx = 0;
  int ny = 0;
  double band = 0.0;  // half-width of the curve band
  std::vector<GridPoint> points;
  std::vector<Component> components;  // sorted by id
  std::vector<cplx> eigenvalues;      // detected point spectrum

  double re(int i) const;
  double im(int j) const;
  const GridPoint& at(int i, int j) const { return points[static_cast<std::size_t>(j) * nx + i]; }
};

inline constexpr int kMinResolution = 32;
inline constexpr int kMaxResolution = 2048;

/// The curve band has half-width (9/16)·hypot(dx, dy) around a polygon that
/// stays within 1/16·hypot(dx, dy) of the curve, so every curve point marks a
/// neighbouring grid point and 4-adjacent off-band points are never separated
/// by the curve.
RegionGrid essential_region(const BandedModel& t, const Bounds& bounds, int nx, int ny,
                            const RegionOptions& options = {});

}  // namespace relspec
