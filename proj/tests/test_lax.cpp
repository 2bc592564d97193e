#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "rsvd/lax.hpp"
#include "rsvd/vandiejen.hpp"

using namespace rsvd;

namespace {

const std::vector<Params> kParamSet = {
    {1.0, 1.0, 0.0},  {1.0, 1.0, 0.5},  {0.8, -1.1, -0.3},
    {-0.9, 0.7, 1.2}, {0.6, -0.9, -0.7},
};

Eigen::MatrixXcd to_eigen_d(const CMat<Real>& M) {
  Eigen::MatrixXcd out(M.n, M.n);
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j)
      out(i, j) = {static_cast<double>(M(i, j).re), static_cast<double>(M(i, j).im)};
  return out;
}

}  // namespace

TEST_CASE("factors: one-particle z and the kappa = 0 degeneration") {
  const PhasePoint pt = validate_phase_point({1.7}, {0.4});
  const Params par = validate_params(1.0, 0.8, 0.3);
  const LaxFactors f = build_factors(pt, par);
  // z = -(1 + i nu / lambda), empty product
  CHECK(static_cast<double>(f.z[0].re) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(static_cast<double>(f.z[0].im) == doctest::Approx(-0.8 / 1.7).epsilon(1e-15));

  // kappa = 0 collapses h to the identity
  const Params par0 = validate_params(1.0, 0.8, 0.0);
  const PhasePoint pt2 = sample_phase_point(3, 3, 0.5, 1.0);
  const LaxFactors f0 = build_factors(pt2, par0);
  CHECK(max_abs_diff(f0.h, CMat<Real>::identity(6)) < 1e-15);
}

TEST_CASE("factors: F pairing and the diagonal of A") {
  const Params par = validate_params(0.9, -0.7, -0.4);
  const PhasePoint pt = sample_phase_point(3, 5, 0.5, 1.5);
  const LaxFactors f = build_factors(pt, par);
  const int n = 3;
  for (int l = 0; l < n; ++l) {
    // |F_l|^2 = e^{-theta_l} |z_l| and F_l F_{n+l} = conj(z_l)
    const double lhs = static_cast<double>(norm2(f.F[l]));
    const double rhs = std::exp(-pt.theta[l]) * static_cast<double>(abs(f.z[l]));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    const auto prod = f.F[l] * f.F[n + l];
    CHECK(static_cast<double>(abs(prod - conj(f.z[l]))) < 1e-14 * (1.0 + std::abs(rhs)));
    CHECK(static_cast<double>(abs(f.z[l])) > 1.0);  // never vanishes on the chamber

    // A_ll = |F_l|^2 (the involution has zero diagonal, denominator i mu)
    CHECK(static_cast<double>(abs(f.A(l, l) - cx<Real>(norm2(f.F[l])))) < 1e-14 * (1.0 + lhs));
  }
}

TEST_CASE("structural relations hold on sampled points") {
  for (const auto& par : kParamSet)
    for (int n = 1; n <= 4; ++n)
      for (int rep = 0; rep < 5; ++rep) {
        const PhasePoint pt = sample_phase_point(n, 1000 * n + rep, 0.5, 1.6);
        const LaxFactors f = build_factors(pt, par);
        const LaxMatrix lax = build_lax(pt, par);
        const StructuralReport r = structural_residuals(f, lax);
        const double scale = 1.0 + max_abs(lax.L);
        CHECK(r.max_residual() < 1e-10 * scale);
        CHECK(r.herm_l < 1e-12 * scale);
        CHECK(r.herm_h < 1e-14 * scale);
        CHECK(r.herm_a < 1e-13 * scale);

        // trace L = 2H
        const double tr = static_cast<double>(trace(lax.L).re);
        const double h = eval_main_H(pt, par);
        CHECK(std::abs(tr - 2.0 * h) < 1e-10 * (1.0 + 2.0 * h));
      }
}

TEST_CASE("A is Hermitian entrywise by algebraic pairing") {
  const Params par = validate_params(1.2, 0.5, 0.8);
  const PhasePoint pt = sample_phase_point(4, 77, 0.5, 1.5);
  const LaxFactors f = build_factors(pt, par);
  CHECK(hermiticity_residual(f.A) < 1e-14 * (1.0 + max_abs(f.A)));
}

TEST_CASE("swap-conjugated h agrees with a direct linear-solve inverse") {
  const Params par = validate_params(1.0, 0.6, 1.1);
  const PhasePoint pt = sample_phase_point(3, 13, 0.5, 1.0);
  const LaxFactors f = build_factors(pt, par);
  const auto h_inv_exact = lax_detail::conj_by_C(f.h);

  const Eigen::MatrixXcd h = to_eigen_d(f.h);
  const Eigen::MatrixXcd h_inv_solve =
      h.partialPivLu().solve(Eigen::MatrixXcd::Identity(h.rows(), h.cols()));
  double dev = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      const auto e = h_inv_exact(i, j);
      dev = std::max(dev, std::abs(h_inv_solve(i, j) - std::complex<double>(
                                                           static_cast<double>(e.re),
                                                           static_cast<double>(e.im))));
    }
  CHECK(dev < 1e-12);
}

TEST_CASE("a perturbed Lax matrix is caught by the involution residual") {
  const Params par = validate_params(1.0, 1.0, 0.5);
  const PhasePoint pt = sample_phase_point(2, 9, 0.6, 1.2);
  const LaxFactors f = build_factors(pt, par);
  LaxMatrix lax = build_lax(pt, par);
  lax.L(0, 0) += cx<Real>(Real(1e-3));
  const StructuralReport r = structural_residuals(f, lax);
  CHECK(r.clcl >= 1e-4);
}

TEST_CASE("construction rejects points outside the chamber") {
  const Params par = validate_params(1.0, 1.0, 0.5);
  PhasePoint bad;
  bad.lambda = {1.0, 2.0};
  bad.theta = {0.0, 0.0};
  CHECK_THROWS_AS(build_lax(bad, par), Error);
  CHECK_THROWS_AS(build_factors(bad, par), Error);
}
