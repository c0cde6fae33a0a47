#pragma once

#include <cstdint>

#include "relspec/config.hpp"
#include "relspec/fredholm.hpp"
#include "relspec/subspace.hpp"

namespace relspec {

/// A linear relation X → Y stored as its graph G(T) ⊂ X ⊕ Y. Graph vectors
/// are concatenations (x, y); every other subspace is derived from the graph.
class Relation {
 public:
  Relation(Index dim_x, Index dim_y, Subspace graph);

  /// Operator relation of an m×n matrix: G = {(x, Ax)}.
  static Relation from_operator(const Mat& a, double tol = default_tol());
  /// Pencil relation with A (m×p) and B (n×p): G = {(Bu, Au)}.
  static Relation from_pencil(const Mat& a, const Mat& b, double tol = default_tol());
  /// Relation whose graph is spanned by the columns of `generators`, each a
  /// vector of ℂ^{dim_x + dim_y}.
  static Relation from_generators(Index dim_x, Index dim_y, const Mat& generators,
                                  double tol = default_tol());

  Index dim_x() const { return dim_x_; }
  Index dim_y() const { return dim_y_; }
  const Subspace& graph() const { return graph_; }
  double tol() const { return graph_.tol(); }
  bool square() const { return dim_x_ == dim_y_; }

  /// Rows of the graph frame belonging to X and to Y.
  Mat frame_x() const { return graph_.frame().topRows(dim_x_); }
  Mat frame_y() const { return graph_.frame().bottomRows(dim_y_); }

 private:
  Index dim_x_;
  Index dim_y_;
  Subspace graph_;
};

/// D(T), R(T), N(T) and T(0).
struct Parts {
  Subspace domain;
  Subspace range;
  Subspace kernel;
  Subspace multivalued;
};

Parts parts(const Relation& t);

/// α(T), β(T), κ(T). Finite-dimensional relations are always Fredholm.
FredholmData fredholm(const Relation& t);

Relation inverse(const Relation& t);
/// Adjoint relation under the Hilbert identification of duals:
/// G(T') = {(y, −x) : (x, y) ∈ G(T)}^⊥ ⊂ Y ⊕ X.
Relation conjugate(const Relation& t);
/// λ − T, i.e. the graph {(x, λx − y)}.
Relation shift(const Relation& t, cplx lambda);
/// cT, i.e. the graph {(x, cy)}; c must be nonzero.
Relation scale(const Relation& t, cplx c);
/// T + S with D(T+S) = D(T) ∩ D(S).
Relation add(const Relation& t, const Relation& s);
/// S∘T: {(x, z) : ∃y, (x, y) ∈ G(T), (y, z) ∈ G(S)}.
Relation compose(const Relation& s, const Relation& t);

/// Q_T T as a matrix between orthonormal bases of D(T) and T(0)^⊥.
struct OperatorPart {
  Mat domain_basis;    // dim_x × dim D(T)
  Mat codomain_basis;  // dim_y × (dim_y − dim T(0))
  Mat matrix;          // coordinates
  /// The same map in standard coordinates of X and Y (zero off D(T)).
  Mat standard() const { return codomain_basis * matrix * domain_basis.adjoint(); }
};

OperatorPart operator_part(const Relation& t);

/// ‖T‖ = ‖Q_T T‖.
double rel_norm(const Relation& t);

/// γ(T): smallest nonzero singular value of Q_T T on D(T) ∩ N(T)^⊥;
/// +∞ when D(T) ⊆ N(T).
double min_modulus(const Relation& t);

struct GammaEstimate {
  double value = 0.0;
  std::int64_t samples = 0;
};

/// Sampled γ(TG) for the graph operator under ‖x‖_T = ‖x‖ + ‖Tx‖. Requires an
/// everywhere-defined single-valued T and at least 1000 samples.
GammaEstimate graph_norm_gamma_estimate(const Relation& t, std::int64_t samples,
                                        std::uint64_t seed = 0);

}  // namespace relspec
