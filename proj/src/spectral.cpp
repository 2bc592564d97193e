#include "rsvd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigen_bridge.hpp"

namespace rsvd {

namespace {

void require_hermitian(const LaxMatrix& lax) {
  const double scale = 1.0 + max_abs(lax.L);
  if (hermiticity_residual(lax.L) > 1e-10 * scale)
    fail(Errc::InvalidArgument, "matrix is not Hermitian within tolerance");
}

}  // namespace

std::vector<Real> hermitian_eigenvalues(const LaxMatrix& lax) {
  require_hermitian(lax);
  Eigen::SelfAdjointEigenSolver<EigenCMat> solver(to_eigen(lax.L),
                                                  Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(Errc::EigensolverFailure, "Hermitian eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<Real>(ev.data(), ev.data() + ev.size());
}

CharPolyCoeffs char_poly_eigen(const LaxMatrix& lax) {
  const auto eig = hermitian_eigenvalues(lax);
  const int dim = static_cast<int>(eig.size());

  // Multiply out prod_i (x - eig_i); coefficient m ends up as (-1)^m e_m.
  std::vector<Real> c(dim + 1, Real(0));
  c[0] = Real(1);
  for (int i = 0; i < dim; ++i)
    for (int m = i + 1; m >= 1; --m) c[m] -= eig[i] * c[m - 1];

  CharPolyCoeffs out;
  out.n = lax.n;
  out.K = std::move(c);
  out.K[0] = Real(1);
  return out;
}

CharPolyCoeffs char_poly_leverrier(const LaxMatrix& lax) {
  // The trace intermediates grow like the largest eigenvalue to the m-th
  // power while the tail coefficients stay of order one (the palindrome), so
  // the recursion itself runs in quad precision where available.
#ifdef __SIZEOF_FLOAT128__
  using Wide = __float128;
#else
  using Wide = long double;
#endif
  CMat<Wide> M(lax.L.n);
  for (std::size_t i = 0; i < lax.L.a.size(); ++i)
    M.a[i] = cx<Wide>(static_cast<Wide>(lax.L.a[i].re), static_cast<Wide>(lax.L.a[i].im));

  double imag = 0.0;
  const auto wide = spectral_detail::leverrier(M, &imag);

  CharPolyCoeffs out;
  out.n = lax.n;
  out.K.resize(wide.size());
  for (std::size_t i = 0; i < wide.size(); ++i) {
    out.K[i] = static_cast<Real>(wide[i]);
    if (!std::isfinite(static_cast<double>(out.K[i])))
      fail(Errc::NonFinite, "LeVerrier recursion overflowed");
  }
  return out;
}

ActionVector extract_actions(const LaxMatrix& lax) {
  auto eig = hermitian_eigenvalues(lax);
  const int dim = static_cast<int>(eig.size());
  const int n = dim / 2;

  for (Real v : eig)
    if (!(v > Real(0))) {
      std::ostringstream os;
      os << "nonpositive Lax eigenvalue " << static_cast<double>(v);
      fail(Errc::PositivityViolation, os.str());
    }

  std::sort(eig.begin(), eig.end(), std::greater<Real>());
  for (int i = 0; i < n; ++i) {
    const double gap = std::abs(static_cast<double>(eig[i] * eig[dim - 1 - i] - Real(1)));
    if (gap > kPairingTol) {
      std::ostringstream os;
      os << "eigenvalues do not pair multiplicatively: residual " << gap;
      fail(Errc::PairingFailure, os.str());
    }
  }

  ActionVector actions;
  actions.q.resize(n);
  for (int i = 0; i < n; ++i) actions.q[i] = std::log(eig[i]);
  if (static_cast<double>(actions.q[n - 1]) < kDegenerateActionTol)
    fail(Errc::DegenerateAction, "eigenvalue pair at unity; smallest action vanishes");
  return actions;
}

}  // namespace rsvd
