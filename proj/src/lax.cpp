#include "rsvd/lax.hpp"

#include <algorithm>
#include <sstream>

#include "eigen_bridge.hpp"

namespace rsvd {

namespace {

void require_chamber(const PhasePoint& point) {
  try {
    validate_phase_point(point.lambda, point.theta);
  } catch (const Error& e) {
    fail(Errc::DomainError, std::string("point outside the open chamber: ") + e.what());
  }
}

CMat<Real> half_swap_involution(int n) {
  CMat<Real> C(2 * n);
  for (int l = 0; l < n; ++l) {
    C(l, n + l) = cx<Real>(Real(1));
    C(n + l, l) = cx<Real>(Real(1));
  }
  return C;
}

double involution_residual(const CMat<Real>& M) {
  const auto CMC = lax_detail::conj_by_C(M);
  return max_abs_diff(CMC * M, CMat<Real>::identity(M.n));
}

}  // namespace

double det_unit_residual(const CMat<Real>& M) {
  const std::complex<Real> det = to_eigen(M).partialPivLu().determinant();
  return static_cast<double>(std::abs(det - std::complex<Real>(1)));
}

LaxFactors build_factors(const PhasePoint& point, const Params& par) {
  require_chamber(point);
  const int n = point.n();
  const auto lam = to_real(point.lambda);
  const auto th = to_real(point.theta);
  auto f = lax_detail::build_factors_kernel(lam.data(), th.data(), n, par);

  LaxFactors out;
  out.n = n;
  out.C = half_swap_involution(n);
  out.h = std::move(f.h);
  out.A = std::move(f.A);
  out.z = std::move(f.z);
  out.F = std::move(f.F);
  out.Lambda = std::move(f.Lambda);
  return out;
}

LaxMatrix build_lax(const PhasePoint& point, const Params& par) {
  require_chamber(point);
  const int n = point.n();
  const auto lam = to_real(point.lambda);
  const auto th = to_real(point.theta);
  const auto f = lax_detail::build_factors_kernel(lam.data(), th.data(), n, par);

  LaxMatrix lax;
  lax.n = n;
  lax.L = lax_detail::assemble_lax(f);

  const double scale = 1.0 + max_abs(lax.L);
  const double herm = hermiticity_residual(lax.L);
  const double invol = involution_residual(lax.L);
  const double det = det_unit_residual(lax.L);
  if (herm > kStructuralTol * scale || invol > kStructuralTol * scale ||
      det > kStructuralTol * scale) {
    std::ostringstream os;
    os << "Lax structural residuals out of tolerance: herm " << herm << ", CLCL " << invol
       << ", |det-1| " << det;
    fail(Errc::StructuralResidual, os.str());
  }
  return lax;
}

StructuralReport structural_residuals(const LaxFactors& f, const LaxMatrix& lax) {
  StructuralReport r;
  r.chch = involution_residual(f.h);
  r.caca = involution_residual(f.A);
  r.clcl = involution_residual(lax.L);
  r.herm_h = hermiticity_residual(f.h);
  r.herm_a = hermiticity_residual(f.A);
  r.herm_l = hermiticity_residual(lax.L);
  r.det_h = det_unit_residual(f.h);
  r.det_a = det_unit_residual(f.A);
  r.det_l = det_unit_residual(lax.L);
  return r;
}

double StructuralReport::max_residual() const {
  return std::max({chch, caca, clcl, herm_h, herm_a, herm_l, det_h, det_a, det_l});
}

}  // namespace rsvd
