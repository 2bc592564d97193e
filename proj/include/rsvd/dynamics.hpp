#pragma once

#include <string>
#include <vector>

#include "rsvd/domain.hpp"

namespace rsvd {

// p_est window-to-window agreement demanded before scattering data is
// accepted; the asymptotic expansion carries no usable rate, so
// self-consistency stands in for an error bound.
inline constexpr double kScatteringStabilityTol = 1e-2;

// Uniform handle over the invariants that can be differentiated: the main
// Hamiltonian, the van Diejen family, the spectral coefficients (through the
// LeVerrier route, which is polynomial in the matrix entries), and the bare
// coordinates (canonical-pair checks).
struct Observable {
  enum class Kind { MainH, FamilyH, SpectralK, CoordLambda, CoordTheta };

  Kind kind = Kind::MainH;
  int index = 0;

  static Observable main_h() { return {Kind::MainH, 0}; }
  static Observable family_h(int l) { return {Kind::FamilyH, l}; }
  static Observable spectral_k(int m) { return {Kind::SpectralK, m}; }
  static Observable coord_lambda(int k) { return {Kind::CoordLambda, k}; }
  static Observable coord_theta(int k) { return {Kind::CoordTheta, k}; }

  std::string name() const;
  double eval(const PhasePoint& point, const Params& par) const;
};

struct Gradient {
  std::vector<double> dlambda;
  std::vector<double> dtheta;
};

// Exact-to-rounding partials by seeding one dual direction per coordinate.
Gradient grad_observable(const Observable& obs, const PhasePoint& point, const Params& par);

// Canonical bracket {f,g} = sum_k (df/dlambda_k dg/dtheta_k -
//                                  df/dtheta_k dg/dlambda_k).
double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& point,
                       const Params& par);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  // Per accepted step: [H, K_1..K_n], the built-in accuracy gauge of the
  // non-symplectic integrator.
  std::vector<std::vector<double>> conserved;

  int n() const { return states.empty() ? 0 : states.front().n(); }
};

// Flow of the main Hamiltonian by an embedded adaptive Runge-Kutta pair
// (Dormand-Prince 5(4)); local error controlled at `tol` per step. Every
// accepted state must stay in the open chamber or the run aborts.
Trajectory integrate_flow(const PhasePoint& start, const Params& par, double t_end, double tol);

struct ScatteringData {
  std::vector<double> q_est;  // asymptotic momenta, from the final state
  std::vector<double> p_est;  // impact parameters from the last fit window
  double window_begin = 0.0;
  double window_end = 0.0;
  double p_stability = 0.0;  // max window-to-window p_est deviation
  std::vector<double> q_spectral;  // actions supplied for comparison
  double max_q_dev = 0.0;          // max |q_est - q_spectral|
};

// Asymptotic momenta and impact parameters off the tail of a trajectory,
// with the fit window being the final 20% split in halves.
ScatteringData extract_scattering(const Trajectory& traj, const ActionVector& initial_actions);

}  // namespace rsvd
