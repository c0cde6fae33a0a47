#include "relspec/subspace.hpp"

#include <algorithm>
#include <string>

#include "relspec/linalg.hpp"

namespace relspec {

namespace {

void require_ambient(Index n) {
  if (n < 1) throw InputError("subspace: ambient dimension must be positive");
}

void require_same_ambient(const Subspace& u, const Subspace& v, const char* op) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw InputError(std::string(op) + ": ambient dimensions differ (" +
                     std::to_string(u.ambient_dim()) + " vs " +
                     std::to_string(v.ambient_dim()) + ")");
  }
}

}  // namespace

Subspace::Subspace(Index ambient_dim, double tol)
    : ambient_(ambient_dim), frame_(Mat(ambient_dim, 0)), tol_(tol) {
  require_ambient(ambient_dim);
  if (tol < 0.0) throw InputError("subspace: tolerance must be nonnegative");
}

Subspace::Subspace(Mat frame, double tol, Index ambient)
    : ambient_(ambient), frame_(std::move(frame)), tol_(tol) {}

Subspace Subspace::span(const Mat& generators, double tol) {
  require_ambient(generators.rows());
  if (tol < 0.0) throw InputError("subspace: tolerance must be nonnegative");
  if (generators.cols() == 0) return Subspace(generators.rows(), tol);
  auto s = linalg::split(generators, tol);
  return Subspace(std::move(s.range), tol, generators.rows());
}

Subspace Subspace::span(std::span<const Vec> vectors, Index ambient_dim, double tol) {
  require_ambient(ambient_dim);
  Mat g(ambient_dim, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != ambient_dim) {
      throw InputError("span: vector " + std::to_string(j) + " has dimension " +
                       std::to_string(vectors[j].size()) + ", expected " +
                       std::to_string(ambient_dim));
    }
    g.col(static_cast<Index>(j)) = vectors[j];
  }
  return span(g, tol);
}

Subspace Subspace::whole(Index ambient_dim, double tol) {
  require_ambient(ambient_dim);
  return Subspace(Mat::Identity(ambient_dim, ambient_dim), tol, ambient_dim);
}

Subspace Subspace::from_orthonormal(Mat frame, double tol) {
  require_ambient(frame.rows());
  const Index n = frame.rows();
  return Subspace(std::move(frame), tol, n);
}

Vec Subspace::project(const Vec& x) const {
  if (x.size() != ambient_) throw InputError("project: dimension mismatch");
  return frame_ * (frame_.adjoint() * x);
}

bool Subspace::contains(const Vec& x) const { return contains(x, tol_); }

bool Subspace::contains(const Vec& x, double slack) const {
  return (x - project(x)).norm() <= slack * x.norm();
}

bool Subspace::contains(const Subspace& other, double slack) const {
  if (other.ambient_dim() != ambient_) throw InputError("contains: ambient dimensions differ");
  if (other.dim() == 0) return true;
  if (other.dim() > dim()) return false;
  const Mat residual = other.frame() - frame_ * (frame_.adjoint() * other.frame());
  return linalg::singular_values(residual)(0) <= slack;
}

// Sum and intersection come from one SVD of [U V], so
// dim(U∩V) + dim(U+V) = dim U + dim V holds exactly.
namespace {

struct JointSplit {
  linalg::RankSplit svd;
  Index ku = 0;
};

JointSplit joint(const Subspace& u, const Subspace& v) {
  Mat m(u.ambient_dim(), u.dim() + v.dim());
  m << u.frame(), v.frame();
  return {linalg::split(m, std::max(u.tol(), v.tol())), u.dim()};
}

}  // namespace

Subspace sum(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "sum");
  const double tol = std::max(u.tol(), v.tol());
  if (u.dim() == 0) return Subspace::from_orthonormal(v.frame(), tol);
  if (v.dim() == 0) return Subspace::from_orthonormal(u.frame(), tol);
  auto js = joint(u, v);
  return Subspace::from_orthonormal(std::move(js.svd.range), tol);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "intersect");
  const double tol = std::max(u.tol(), v.tol());
  if (u.dim() == 0 || v.dim() == 0) return Subspace(u.ambient_dim(), tol);
  auto js = joint(u, v);
  // Kernel vectors (a; b) of [U V] give U a = −V b ∈ U ∩ V.
  const Mat& ker = js.svd.kernel;
  if (ker.cols() == 0) return Subspace(u.ambient_dim(), tol);
  const Mat vecs = u.frame() * ker.topRows(js.ku);
  return Subspace::from_orthonormal(linalg::orthonormal_columns(vecs), tol);
}

Subspace complement(const Subspace& u) {
  return Subspace::from_orthonormal(linalg::complement_columns(u.frame(), u.ambient_dim()),
                                    u.tol());
}

double distance(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "distance");
  if (u.dim() != v.dim()) return 1.0;
  if (u.dim() == 0) return 0.0;
  const Mat ru = u.frame() - v.frame() * (v.frame().adjoint() * u.frame());
  const Mat rv = v.frame() - u.frame() * (u.frame().adjoint() * v.frame());
  return std::min(1.0, std::max(linalg::singular_values(ru)(0), linalg::singular_values(rv)(0)));
}

bool equal(const Subspace& u, const Subspace& v, double slack) {
  return u.dim() == v.dim() && distance(u, v) <= slack;
}

}  // namespace relspec
