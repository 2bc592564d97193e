#pragma once

#include <Eigen/Dense>
#include <complex>

#include "rsvd/cmatrix.hpp"
#include "rsvd/real.hpp"

namespace rsvd {

using EigenCMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

inline EigenCMat to_eigen(const CMat<Real>& M) {
  EigenCMat out(M.n, M.n);
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j) out(i, j) = {M(i, j).re, M(i, j).im};
  return out;
}

}  // namespace rsvd
