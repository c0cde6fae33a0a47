#include "relspec/relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relspec/linalg.hpp"
#include "relspec/random.hpp"

namespace relspec {

// Rank decisions on blocks of an orthonormal graph frame are made against the
// frame's own scale (1), not the block's largest singular value: a block that
// is pure rounding noise must come out as rank 0.
namespace {

constexpr double kFrameScale = 1.0;

void require_dims(Index dim_x, Index dim_y) {
  if (dim_x < 1 || dim_y < 1) throw InputError("relation: dim_x and dim_y must be positive");
}

Subspace frame_subspace(Mat frame, double tol) {
  return Subspace::from_orthonormal(std::move(frame), tol);
}

}  // namespace

Relation::Relation(Index dim_x, Index dim_y, Subspace graph)
    : dim_x_(dim_x), dim_y_(dim_y), graph_(std::move(graph)) {
  require_dims(dim_x, dim_y);
  if (graph_.ambient_dim() != dim_x + dim_y) {
    throw InputError("relation: graph ambient dimension " + std::to_string(graph_.ambient_dim()) +
                     " != dim_x + dim_y = " + std::to_string(dim_x + dim_y));
  }
}

Relation Relation::from_operator(const Mat& a, double tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  require_dims(n, m);
  Mat gens(n + m, n);
  gens << Mat::Identity(n, n), a;
  return Relation(n, m, Subspace::span(gens, tol));
}

Relation Relation::from_pencil(const Mat& a, const Mat& b, double tol) {
  if (a.cols() != b.cols()) {
    throw InputError("pencil: A and B must have the same number of columns (" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.cols()) + ")");
  }
  const Index m = a.rows();
  const Index n = b.rows();
  require_dims(n, m);
  Mat gens(n + m, a.cols());
  gens << b, a;
  return Relation(n, m, Subspace::span(gens, tol));
}

Relation Relation::from_generators(Index dim_x, Index dim_y, const Mat& generators, double tol) {
  require_dims(dim_x, dim_y);
  if (generators.rows() != dim_x + dim_y) {
    throw InputError("graph generators must have dimension dim_x + dim_y = " +
                     std::to_string(dim_x + dim_y));
  }
  return Relation(dim_x, dim_y, Subspace::span(generators, tol));
}

Parts parts(const Relation& t) {
  const double tol = t.tol();
  const Mat fx = t.frame_x();
  const Mat fy = t.frame_y();
  if (t.graph().dim() == 0) {
    return {Subspace(t.dim_x(), tol), Subspace(t.dim_y(), tol), Subspace(t.dim_x(), tol),
            Subspace(t.dim_y(), tol)};
  }
  const auto sx = linalg::split(fx, tol, kFrameScale);
  const auto sy = linalg::split(fy, tol, kFrameScale);
  // N(T) = F_x·ker(F_y), T(0) = F_y·ker(F_x). On those kernels the frame block
  // is an isometry, so the images keep full column rank.
  Mat kernel = linalg::orthonormal_columns(fx * sy.kernel);
  Mat multivalued = linalg::orthonormal_columns(fy * sx.kernel);
  return {frame_subspace(sx.range, tol), frame_subspace(sy.range, tol),
          frame_subspace(std::move(kernel), tol), frame_subspace(std::move(multivalued), tol)};
}

FredholmData fredholm(const Relation& t) {
  const Parts p = parts(t);
  return make_fredholm(Count::of(p.kernel.dim()), Count::of(t.dim_y() - p.range.dim()), true);
}

Relation inverse(const Relation& t) {
  Mat frame(t.dim_x() + t.dim_y(), t.graph().dim());
  frame << t.frame_y(), t.frame_x();
  return Relation(t.dim_y(), t.dim_x(), frame_subspace(std::move(frame), t.tol()));
}

Relation conjugate(const Relation& t) {
  // {(y, −x)} is an orthonormal frame of G(−T⁻¹) ⊂ Y ⊕ X.
  const Index ambient = t.dim_x() + t.dim_y();
  Mat rotated(ambient, t.graph().dim());
  rotated << t.frame_y(), -t.frame_x();
  return Relation(t.dim_y(), t.dim_x(),
                  frame_subspace(linalg::complement_columns(rotated, ambient), t.tol()));
}

Relation shift(const Relation& t, cplx lambda) {
  if (!t.square()) throw InputError("shift: relation is not square (dim_x != dim_y)");
  const Mat fx = t.frame_x();
  Mat gens(2 * t.dim_x(), t.graph().dim());
  gens << fx, lambda * fx - t.frame_y();
  // (x, y) ↦ (x, λx − y) is invertible, so the graph dimension is kept.
  return Relation(t.dim_x(), t.dim_y(), frame_subspace(linalg::orthonormal_columns(gens), t.tol()));
}

Relation scale(const Relation& t, cplx c) {
  if (c == cplx(0.0)) throw InputError("scale: factor must be nonzero");
  Mat gens(t.dim_x() + t.dim_y(), t.graph().dim());
  gens << t.frame_x(), c * t.frame_y();
  return Relation(t.dim_x(), t.dim_y(), frame_subspace(linalg::orthonormal_columns(gens), t.tol()));
}

Relation add(const Relation& t, const Relation& s) {
  if (t.dim_x() != s.dim_x() || t.dim_y() != s.dim_y()) {
    throw InputError("add: relations have different shapes");
  }
  const double tol = std::max(t.tol(), s.tol());
  const Index k = t.graph().dim();
  const Index l = s.graph().dim();
  const Index ambient = t.dim_x() + t.dim_y();
  if (k == 0 || l == 0) return Relation(t.dim_x(), t.dim_y(), Subspace(ambient, tol));
  // Coefficient pairs (c, d) with F_x c = H_x d give (F_x c, F_y c + H_y d).
  Mat joint(t.dim_x(), k + l);
  joint << t.frame_x(), -s.frame_x();
  const auto js = linalg::split(joint, tol, kFrameScale);
  const Mat c = js.kernel.topRows(k);
  const Mat d = js.kernel.bottomRows(l);
  Mat gens(ambient, js.kernel.cols());
  gens << t.frame_x() * c, t.frame_y() * c + s.frame_y() * d;
  return Relation(t.dim_x(), t.dim_y(), Subspace::span(gens, tol));
}

Relation compose(const Relation& s, const Relation& t) {
  if (t.dim_y() != s.dim_x()) {
    throw InputError("compose: codomain of T (" + std::to_string(t.dim_y()) +
                     ") != domain of S (" + std::to_string(s.dim_x()) + ")");
  }
  const double tol = std::max(t.tol(), s.tol());
  const Index k = t.graph().dim();
  const Index l = s.graph().dim();
  const Index ambient = t.dim_x() + s.dim_y();
  if (k == 0 || l == 0) return Relation(t.dim_x(), s.dim_y(), Subspace(ambient, tol));
  // Intersect G(T) ⊕ Z with X ⊕ G(S) inside X ⊕ Y ⊕ Z, then drop Y: in
  // coordinates, F_y c = H_x d gives the graph vector (F_x c, H_y d).
  Mat joint(t.dim_y(), k + l);
  joint << t.frame_y(), -s.frame_x();
  const auto js = linalg::split(joint, tol, kFrameScale);
  Mat gens(ambient, js.kernel.cols());
  gens << t.frame_x() * js.kernel.topRows(k), s.frame_y() * js.kernel.bottomRows(l);
  return Relation(t.dim_x(), s.dim_y(), Subspace::span(gens, tol));
}

OperatorPart operator_part(const Relation& t) {
  const double tol = t.tol();
  OperatorPart out;
  if (t.graph().dim() == 0) {
    out.domain_basis = Mat(t.dim_x(), 0);
    out.codomain_basis = Mat::Identity(t.dim_y(), t.dim_y());
    out.matrix = Mat(t.dim_y(), 0);
    return out;
  }
  const Mat fx = t.frame_x();
  const Mat fy = t.frame_y();
  // F_x = U Σ Wᴴ; the domain vector u_i lifts to the graph vector F w_i / σ_i.
  Eigen::JacobiSVD<Mat> svd(fx, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > tol * kFrameScale) ++r;
  const Mat w = svd.matrixV();
  const Mat multivalued = linalg::orthonormal_columns(fy * w.rightCols(w.cols() - r));
  out.domain_basis = svd.matrixU().leftCols(r);
  out.codomain_basis = linalg::complement_columns(multivalued, t.dim_y());
  Mat lifted = fy * w.leftCols(r);
  for (Index i = 0; i < r; ++i) lifted.col(i) /= sv(i);
  out.matrix = out.codomain_basis.adjoint() * lifted;
  return out;
}

double rel_norm(const Relation& t) {
  const OperatorPart op = operator_part(t);
  if (op.matrix.size() == 0) return 0.0;
  return linalg::singular_values(op.matrix)(0);
}

double min_modulus(const Relation& t) {
  const OperatorPart op = operator_part(t);
  const Index d = op.domain_basis.cols();
  const Index alpha = parts(t).kernel.dim();
  const Index nonzero = d - alpha;
  if (nonzero <= 0 || op.matrix.size() == 0) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd sv = linalg::singular_values(op.matrix);
  return sv(std::min<Index>(nonzero, sv.size()) - 1);
}

GammaEstimate graph_norm_gamma_estimate(const Relation& t, std::int64_t samples,
                                        std::uint64_t seed) {
  if (samples < 1000) throw InputError("graph_norm_gamma_estimate: need at least 1000 samples");
  const Parts p = parts(t);
  if (p.multivalued.dim() != 0 || p.domain.dim() != t.dim_x()) {
    throw InputError("graph_norm_gamma_estimate: T must be single-valued with D(T) = X");
  }
  if (rel_norm(t) == 0.0) return {std::numeric_limits<double>::infinity(), samples};
  const Mat a = operator_part(t).standard();
  const Mat kernel_proj = p.kernel.projector();
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < samples; ++i) {
    const Vec x = rng.complex_normal_vector(t.dim_x());
    const double dist = (x - kernel_proj * x).norm();
    if (dist <= 1e-12 * x.norm()) continue;
    const double image = (a * x).norm();
    // d_T(x, N) = d(x, N) + ‖Tx‖ since T vanishes on N.
    best = std::min(best, image / (dist + image));
  }
  return {best, samples};
}

}  // namespace relspec
