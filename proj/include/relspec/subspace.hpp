#pragma once

#include <span>

#include "relspec/config.hpp"

namespace relspec {

/// Default slack for subspace-level comparisons (sine of the largest
/// principal angle).
inline constexpr double kSubspaceSlack = 1e-8;

/// A subspace of ℂⁿ held as an orthonormal frame together with the rank
/// tolerance that produced it. Values are immutable.
class Subspace {
 public:
  /// The zero subspace of ℂⁿ.
  explicit Subspace(Index ambient_dim, double tol = default_tol());

  /// Span of the columns of `generators`. Numerical rank counts singular
  /// values above tol·σ_max.
  static Subspace span(const Mat& generators, double tol = default_tol());
  static Subspace span(std::span<const Vec> vectors, Index ambient_dim,
                       double tol = default_tol());
  static Subspace whole(Index ambient_dim, double tol = default_tol());

  /// Adopts a frame the caller guarantees to be orthonormal.
  static Subspace from_orthonormal(Mat frame, double tol = default_tol());

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return frame_.cols(); }
  const Mat& frame() const { return frame_; }
  double tol() const { return tol_; }

  Mat projector() const { return frame_ * frame_.adjoint(); }
  Vec project(const Vec& x) const;

  /// ‖x − Px‖ ≤ tol·‖x‖, with tol() unless `slack` is given.
  bool contains(const Vec& x) const;
  bool contains(const Vec& x, double slack) const;
  /// Every unit vector of `other` lies within `slack` of this subspace.
  bool contains(const Subspace& other, double slack = kSubspaceSlack) const;

 private:
  Subspace(Mat frame, double tol, Index ambient);

  Index ambient_;
  Mat frame_;
  double tol_;
};

Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);
Subspace complement(const Subspace& u);

/// Sine of the largest principal angle between equal-dimension subspaces;
/// 1 when the dimensions differ.
double distance(const Subspace& u, const Subspace& v);
bool equal(const Subspace& u, const Subspace& v, double slack = kSubspaceSlack);

}  // namespace relspec
