#pragma once

#include <random>

#include "oracles.hpp"
#include "relspec/relation.hpp"

namespace testing {

using relspec::cplx;
using relspec::Index;
using relspec::Mat;

/// Random Gaussian-integer matrix with entries in [−k, k] + i[−k, k].
inline oracle::IntMatrix int_matrix(std::mt19937_64& g, int rows, int cols, int k = 3) {
  std::uniform_int_distribution<int> d(-k, k);
  oracle::IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m.r(i, j) = d(g);
      m.i(i, j) = d(g);
    }
  }
  return m;
}

/// Random Gaussian-integer matrix of exact rank ≤ r (product of r-wide factors).
inline oracle::IntMatrix low_rank_int(std::mt19937_64& g, int rows, int cols, int r) {
  const auto a = int_matrix(g, rows, r, 2);
  const auto b = int_matrix(g, r, cols, 2);
  oracle::IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::int64_t re = 0;
      std::int64_t im = 0;
      for (int k = 0; k < r; ++k) {
        re += a.re[i * r + k] * b.re[k * cols + j] - a.im[i * r + k] * b.im[k * cols + j];
        im += a.re[i * r + k] * b.im[k * cols + j] + a.im[i * r + k] * b.re[k * cols + j];
      }
      m.r(i, j) = re;
      m.i(i, j) = im;
    }
  }
  return m;
}

inline Mat to_mat(const oracle::IntMatrix& m) {
  Mat out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      out(i, j) = cplx(static_cast<double>(m.re[i * m.cols + j]), static_cast<double>(m.im[i * m.cols + j]));
    }
  }
  return out;
}

inline Mat diag(std::initializer_list<cplx> d) {
  Mat m = Mat::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (const cplx& v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

}  // namespace testing
