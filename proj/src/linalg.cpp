#include "relspec/linalg.hpp"

#include <lapacke.h>

#include <algorithm>

namespace relspec::linalg {

RankSplit split(const Mat& m, double tol, double scale) {
  RankSplit out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (cols == 0) {
    out.range = Mat(rows, 0);
    out.kernel = Mat(0, 0);
    return out;
  }
  if (rows == 0) {
    out.range = Mat(0, 0);
    out.kernel = Mat::Identity(cols, cols);
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double top = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  const double threshold = tol * (scale > 0.0 ? scale : top);
  Index rank = 0;
  if (top > 0.0) {
    while (rank < out.singular_values.size() && out.singular_values(rank) > threshold) ++rank;
  }
  out.rank = rank;
  out.range = svd.matrixU().leftCols(rank);
  out.kernel = svd.matrixV().rightCols(cols - rank);
  return out;
}

Mat orthonormal_columns(const Mat& m) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::HouseholderQR<Mat> qr(m);
  return qr.householderQ() * Mat::Identity(m.rows(), m.cols());
}

Mat complement_columns(const Mat& frame, Index ambient) {
  const Index k = frame.cols();
  if (k == 0) return Mat::Identity(ambient, ambient);
  if (k >= ambient) return Mat(ambient, 0);
  Eigen::HouseholderQR<Mat> qr(frame);
  const Mat q = qr.householderQ();
  return q.rightCols(ambient - k);
}

Eigen::VectorXd singular_values(const Mat& m) {
  if (m.size() == 0) return Eigen::VectorXd(0);
  if (std::min(m.rows(), m.cols()) > 64) {
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

std::vector<cplx> eigenvalues(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("eigenvalues: matrix is not square");
  const Index n = m.rows();
  if (n == 0) return {};
  Mat work = m;  // column-major copy, overwritten by LAPACK
  std::vector<cplx> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(work.data()), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("zgeev failed to converge");
  return w;
}

}  // namespace relspec::linalg
