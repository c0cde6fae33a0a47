#pragma once

#include <vector>

#include "relspec/relation.hpp"

namespace relspec {

struct PointClass {
  cplx lambda;
  FredholmData fredholm;
  bool in_resolvent = false;
};

/// Fredholm data of λ − T. In finite dimensions the range is always closed and
/// the class is always Φ.
PointClass classify_point(const Relation& t, cplx lambda);

struct Spectrum {
  bool all_of_C = false;
  std::vector<cplx> points;  // with algebraic multiplicity, unordered
};

/// σ(T) of a square relation: ℂ when dim G ≠ dim X or the pencil is singular,
/// otherwise the finite eigenvalues of the pencil behind the graph frame.
Spectrum spectrum(const Relation& t);

/// Essential spectra of a finite-dimensional relation. They are degenerate:
/// λ − T is always Fredholm with κ = dim G − dim X, so σ_e1..σ_e3 are empty
/// and σ_e4, σ_e5 are either empty or all of ℂ.
struct FiniteEssentialSpectra {
  bool e4_all_of_C = false;
  bool e5_all_of_C = false;
};
FiniteEssentialSpectra finite_essential_spectra(const Relation& t);

/// Finite-rank K = Σ y_j ⟨x_j, ·⟩ with x_j an orthonormal basis of N(λ−T) and
/// y_j one of R(λ−T)^⊥, so that λ ∈ ρ(T + K). Throws PreconditionError when
/// α(λ−T) ≠ β(λ−T).
Relation weyl_correction(const Relation& t, cplx lambda);

/// T_μ = (μ − T)⁻¹. Throws PreconditionError unless μ ∈ ρ(T).
Relation mobius_resolvent(const Relation& t, cplx mu);

struct FactorCheck {
  bool holds = false;
  double residual = 0.0;  // sine of the largest principal angle
};

/// Compares G(λ − T) with G(S(μ − T)) where S = (μ−λ)((μ−λ)⁻¹ − T_μ).
FactorCheck mobius_factor_check(const Relation& t, cplx mu, cplx lambda);

inline constexpr double kFactorThreshold = 1e-8;

}  // namespace relspec
