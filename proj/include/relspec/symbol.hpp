#pragma once

#include <map>
#include <optional>
#include <vector>

#include "relspec/config.hpp"

namespace relspec {

/// Finite Laurent series Σ a_k z^k.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::map<int, cplx> coeffs);

  const std::map<int, cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const;
  bool is_zero() const { return coeffs_.empty(); }
  int min_index() const;
  int max_index() const;
  double max_abs() const;

  /// Value at z = e^{iθ}, using z^{-m} = conj(z^m) so that the reflected
  /// polynomial evaluates to the exact conjugate.
  cplx on_circle(double theta) const;
  cplx operator()(cplx z) const;

  /// k ↦ conj(a_{-k}): the symbol of the adjoint.
  LaurentPolynomial reflected() const;
  LaurentPolynomial operator-(cplx c) const;  // subtracts c from a_0

 private:
  std::map<int, cplx> coeffs_;  // zero coefficients are dropped
};

/// A Laurent polynomial symbol, or a quotient of two with a denominator that
/// does not vanish on the unit circle.
class LaurentSymbol {
 public:
  explicit LaurentSymbol(LaurentPolynomial poly);
  LaurentSymbol(LaurentPolynomial num, LaurentPolynomial den);

  bool rational() const { return den_.has_value(); }
  const LaurentPolynomial& numerator() const { return num_; }
  const LaurentPolynomial& denominator() const { return *den_; }  // rational only

  cplx on_circle(double theta) const;

  /// Fourier coefficients. Exact for polynomials; for rational symbols they
  /// come from a 8192-point DFT and entries below 1e-15·max are dropped.
  const LaurentPolynomial& coefficients() const { return coeffs_; }

  /// Scale used by the on-curve tolerance 1e-6·(1 + scale): max|a_k|.
  double coefficient_scale() const { return coeffs_.max_abs(); }
  /// Bound on |d²/dθ² a(e^{iθ})| (sampled for rational symbols).
  double curvature_bound() const { return curvature_; }

  LaurentSymbol reflected() const;

 private:
  void finish();

  LaurentPolynomial num_;
  std::optional<LaurentPolynomial> den_;
  LaurentPolynomial coeffs_;
  double curvature_ = 0.0;
};

/// Closest point of the curve a(𝕋) to λ.
struct CurvePoint {
  double distance = 0.0;
  double theta = 0.0;
  cplx z;  // e^{iθ}
};

/// Minimum of |a(e^{iθ}) − λ| over 1024 samples, refined by golden-section
/// search around each sampled local minimum.
CurvePoint nearest_curve_point(const LaurentSymbol& a, cplx lambda);

/// λ is on the curve when its distance is at most 1e-6·(1 + max|a_k|).
double on_curve_tolerance(const LaurentSymbol& a);
bool on_curve(const LaurentSymbol& a, cplx lambda);

/// Winding number of θ ↦ a(e^{iθ}) − λ by accumulated argument, doubling the
/// sample count until every increment is below π/2. Throws OnCurveError when
/// λ is on the curve and InputError when n_samples < 256.
int winding(const LaurentSymbol& a, cplx lambda, int n_samples = 1024);

/// Roots of a polynomial given by ascending coefficients (companion matrix).
std::vector<cplx> polynomial_roots(const std::vector<cplx>& ascending);

}  // namespace relspec
