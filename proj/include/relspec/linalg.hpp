#pragma once

// Dense helpers shared by the subspace, relation and banded modules.

#include <vector>

#include "relspec/config.hpp"

namespace relspec::linalg {

/// Result of splitting a matrix M into its numerical range and kernel.
struct RankSplit {
  Index rank = 0;
  Mat range;      // orthonormal basis of range(M), rows(M) × rank
  Mat kernel;     // orthonormal basis of ker(M), cols(M) × (cols(M) − rank)
  Eigen::VectorXd singular_values;
};

/// SVD-based split. A singular value counts as nonzero when it exceeds
/// tol·scale; a nonpositive scale means "relative to the largest singular
/// value" (zero matrices then have rank 0).
RankSplit split(const Mat& m, double tol, double scale = -1.0);

/// Thin orthonormal basis of the column space of a matrix known to have full
/// column rank (Householder QR, no rank decision).
Mat orthonormal_columns(const Mat& m);

/// Orthonormal basis of the orthogonal complement of the column space of an
/// orthonormal frame with `ambient` rows.
Mat complement_columns(const Mat& frame, Index ambient);

/// Singular values in descending order.
Eigen::VectorXd singular_values(const Mat& m);

/// Eigenvalues of a general square complex matrix (LAPACK zgeev).
std::vector<cplx> eigenvalues(const Mat& m);

}  // namespace relspec::linalg
