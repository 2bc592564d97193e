#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsvd/dynamics.hpp"
#include "rsvd/spectral.hpp"
#include "rsvd/vandiejen.hpp"

using namespace rsvd;

TEST_CASE("observables evaluate through the same kernels as the direct API") {
  const Params par = validate_params(1.0, 0.8, 0.3);
  const PhasePoint pt = sample_phase_point(3, 3, 0.6, 1.2);

  CHECK(rel_resid(Observable::main_h().eval(pt, par), eval_main_H(pt, par)) < 1e-15);
  CHECK(rel_resid(Observable::family_h(2).eval(pt, par), eval_H_l(2, pt, par)) < 1e-13);
  const auto cp = char_poly_eigen(build_lax(pt, par));
  CHECK(rel_resid(Real(Observable::spectral_k(2).eval(pt, par)), cp.K[2]) < 1e-8);
  CHECK(Observable::coord_lambda(1).eval(pt, par) == pt.lambda[1]);
  CHECK(Observable::coord_theta(2).eval(pt, par) == pt.theta[2]);
}

TEST_CASE("gradients: exact stationarity and the one-particle closed form") {
  const Params par = validate_params(1.0, 0.9, 0.4);

  // at theta = 0 the momentum gradient of H vanishes identically
  PhasePoint rest = sample_phase_point(3, 9, 0.6, 0.0);
  const Gradient g0 = grad_observable(Observable::main_h(), rest, par);
  for (double d : g0.dtheta) CHECK(d == 0.0);

  // n = 1: dH/dtheta = sinh(theta) sqrt((1+nu^2/l^2)(1+kappa^2/l^2))
  const PhasePoint pt = validate_phase_point({1.3}, {0.7});
  const Gradient g = grad_observable(Observable::main_h(), pt, par);
  const double l2 = 1.3 * 1.3;
  const double expect =
      std::sinh(0.7) * std::sqrt((1.0 + 0.81 / l2) * (1.0 + 0.16 / l2));
  CHECK(g.dtheta[0] == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("dual gradients agree with Richardson finite differences") {
  const Params par = validate_params(0.9, -0.7, -0.5);
  for (int n : {2, 3, 4}) {
    const PhasePoint pt = sample_phase_point(n, 21 + n, 0.7, 1.2);
    const std::vector<Observable> obs = {Observable::main_h(), Observable::family_h(n),
                                         Observable::spectral_k(1), Observable::spectral_k(n)};
    for (const auto& o : obs) {
      const Gradient g = grad_observable(o, pt, par);
      for (int i = 0; i < n; ++i) {
        const double fd_l = oracle::central_diff(
            [&](double x) {
              PhasePoint p = pt;
              p.lambda[i] = x;
              return o.eval(p, par);
            },
            pt.lambda[i]);
        CHECK(rel_resid(g.dlambda[i], fd_l) < 1e-7);
        const double fd_t = oracle::central_diff(
            [&](double x) {
              PhasePoint p = pt;
              p.theta[i] = x;
              return o.eval(p, par);
            },
            pt.theta[i]);
        CHECK(rel_resid(g.dtheta[i], fd_t) < 1e-7);
      }
    }
  }
}

TEST_CASE("canonical pairs and bracket antisymmetry") {
  const Params par = validate_params(1.0, 1.0, 0.5);
  const PhasePoint pt = sample_phase_point(3, 33, 0.6, 1.5);

  CHECK(poisson_bracket(Observable::coord_lambda(0), Observable::coord_theta(0), pt, par) ==
        1.0);
  CHECK(poisson_bracket(Observable::coord_lambda(0), Observable::coord_theta(1), pt, par) ==
        0.0);
  CHECK(poisson_bracket(Observable::coord_lambda(0), Observable::coord_lambda(1), pt, par) ==
        0.0);

  const auto f = Observable::family_h(1);
  const auto g = Observable::spectral_k(2);
  const double fg = poisson_bracket(f, g, pt, par);
  const double gf = poisson_bracket(g, f, pt, par);
  CHECK(std::abs(fg + gf) < 1e-14 * (1.0 + std::abs(fg)));
}

TEST_CASE("the families are in involution") {
  const std::vector<Params> params = {{1.0, 1.0, 0.5}, {0.8, -0.9, -0.4}};
  for (const auto& par : params)
    for (int n : {2, 3}) {
      const PhasePoint pt = sample_phase_point(n, 47 + n, 0.65, 1.2);
      std::vector<Observable> family;
      for (int l = 1; l <= n; ++l) family.push_back(Observable::family_h(l));
      for (int m = 1; m <= n; ++m) family.push_back(Observable::spectral_k(m));
      for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b) {
          const double fa = family[a].eval(pt, par);
          const double fb = family[b].eval(pt, par);
          const double br = poisson_bracket(family[a], family[b], pt, par);
          CHECK(std::abs(br) <= 1e-8 * (1.0 + std::abs(fa) * std::abs(fb)));
        }
    }
}

TEST_CASE("flow conserves the spectral invariants") {
  const Params par = validate_params(1.0, 0.8, 0.4);
  const PhasePoint pt = sample_phase_point(2, 51, 0.8, 1.0);
  const Trajectory traj = integrate_flow(pt, par, 20.0, 1e-10);
  REQUIRE(traj.times.size() > 10);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(20.0));

  const auto& first = traj.conserved.front();
  for (const auto& row : traj.conserved)
    for (std::size_t i = 0; i < row.size(); ++i)
      CHECK(rel_resid(row[i], first[i]) < 1e-8);

  CHECK_THROWS_AS(integrate_flow(pt, par, -1.0, 1e-10), Error);
  CHECK_THROWS_AS(integrate_flow(pt, par, 10.0, 0.0), Error);
}

TEST_CASE("scattering data matches the spectral actions") {
  const Params par = validate_params(1.0, 0.7, 0.3);
  PhasePoint pt = sample_phase_point(2, 57, 0.9, 0.0);
  pt.theta = {1.1, -0.8};  // well-separated asymptotic momenta

  const ActionVector actions = extract_actions(build_lax(pt, par));
  const Trajectory traj = integrate_flow(pt, par, 50.0, 1e-10);
  const ScatteringData sd = extract_scattering(traj, actions);

  CHECK(sd.max_q_dev <= 1e-2);
  CHECK(sd.p_stability <= 1e-2);
  for (int k = 0; k + 1 < 2; ++k) CHECK(sd.q_est[k] > sd.q_est[k + 1]);
  CHECK(sd.q_est[1] > 0.0);

  // momentum reversal reproduces the same asymptotic momenta
  PhasePoint rev = pt;
  for (double& t : rev.theta) t = -t;
  const Trajectory traj_rev = integrate_flow(rev, par, 50.0, 1e-10);
  const ScatteringData sd_rev = extract_scattering(traj_rev, actions);
  for (int k = 0; k < 2; ++k)
    CHECK(std::abs(sd_rev.q_est[k] - sd.q_est[k]) <= 1e-2);
}
