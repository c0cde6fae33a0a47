#include "relspec/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "relspec/linalg.hpp"

namespace relspec {

namespace {

void require_square(const Relation& t, const char* what) {
  if (!t.square()) throw InputError(std::string(what) + ": relation is not square");
}

// Fixed probe points for the singular-pencil test. Irrational-looking values
// keep them away from the structured spectra used in examples and tests.
constexpr std::array<cplx, 3> kProbes = {cplx(0.7390851332, 0.3183098862),
                                         cplx(-1.4142135624, 0.5772156649),
                                         cplx(0.2718281828, -1.6180339887)};

// Dimension of the generalized kernel of a square matrix, by iterated
// preimages K_{j+1} = {x : Mx ∈ K_j}.
Index generalized_kernel_dim(const Mat& m, double tol) {
  const Index n = m.rows();
  const double scale = std::max(linalg::singular_values(m)(0), 1.0);
  Mat basis(n, 0);
  for (Index step = 0; step < n; ++step) {
    Mat reduced = m;
    if (basis.cols() > 0) reduced -= basis * (basis.adjoint() * m);
    const auto s = linalg::split(reduced, tol, scale);
    if (s.kernel.cols() == basis.cols()) break;
    basis = s.kernel;
  }
  return basis.cols();
}

}  // namespace

PointClass classify_point(const Relation& t, cplx lambda) {
  require_square(t, "classify_point");
  const FredholmData f = fredholm(shift(t, lambda));
  return {lambda, f, f.in_resolvent()};
}

Spectrum spectrum(const Relation& t) {
  require_square(t, "spectrum");
  const Index n = t.dim_x();
  if (t.graph().dim() != n) return {true, {}};
  const Mat fx = t.frame_x();
  const Mat fy = t.frame_y();
  for (const cplx mu : kProbes) {
    const Mat shifted = mu * fx - fy;
    if (linalg::split(shifted, t.tol(), 1.0).rank < n) continue;
    // T_μ = F_x (μF_x − F_y)⁻¹; its eigenvalue η ≠ 0 corresponds to
    // λ = μ − 1/η, and η = 0 to an eigenvalue at infinity.
    const Mat t_mu = fx * shifted.partialPivLu().inverse();
    std::vector<cplx> eta = linalg::eigenvalues(t_mu);
    const Index infinite = generalized_kernel_dim(t_mu, t.tol());
    std::sort(eta.begin(), eta.end(),
              [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    Spectrum out;
    for (std::size_t i = static_cast<std::size_t>(infinite); i < eta.size(); ++i) {
      out.points.push_back(mu - 1.0 / eta[i]);
    }
    return out;
  }
  return {true, {}};
}

FiniteEssentialSpectra finite_essential_spectra(const Relation& t) {
  require_square(t, "finite_essential_spectra");
  const bool index_nonzero = t.graph().dim() != t.dim_x();
  return {index_nonzero, spectrum(t).all_of_C};
}

Relation weyl_correction(const Relation& t, cplx lambda) {
  require_square(t, "weyl_correction");
  const Relation l = shift(t, lambda);
  const Parts p = parts(l);
  const Index alpha = p.kernel.dim();
  const Index beta = t.dim_y() - p.range.dim();
  if (alpha != beta) {
    throw PreconditionError("weyl_correction: alpha(lambda - T) = " + std::to_string(alpha) +
                            " != beta(lambda - T) = " + std::to_string(beta));
  }
  const Index n = t.dim_x();
  if (alpha == 0) return Relation::from_operator(Mat::Zero(n, n), t.tol());
  // Orthonormal bases are their own biorthogonal duals.
  const Mat x = p.kernel.frame();
  const Mat y = linalg::complement_columns(p.range.frame(), n);
  return Relation::from_operator(y * x.adjoint(), t.tol());
}

Relation mobius_resolvent(const Relation& t, cplx mu) {
  require_square(t, "mobius_resolvent");
  const Relation l = shift(t, mu);
  if (!fredholm(l).in_resolvent()) {
    throw PreconditionError("mobius_resolvent: mu is not in the resolvent set of T");
  }
  return inverse(l);
}

FactorCheck mobius_factor_check(const Relation& t, cplx mu, cplx lambda) {
  if (lambda == mu) throw PreconditionError("mobius_factor_check: lambda must differ from mu");
  const Relation t_mu = mobius_resolvent(t, mu);
  const cplx d = mu - lambda;
  const Relation s = scale(shift(t_mu, 1.0 / d), d);
  const Relation lhs = shift(t, lambda);
  const Relation rhs = compose(s, shift(t, mu));
  const double residual = distance(lhs.graph(), rhs.graph());
  return {residual < kFactorThreshold, residual};
}

}  // namespace relspec
