#include "rsvd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsvd/dual.hpp"
#include "rsvd/lax.hpp"
#include "rsvd/spectral.hpp"
#include "rsvd/vandiejen.hpp"

namespace rsvd {

namespace {

template <class R>
R eval_observable_t(Observable::Kind kind, int index, const R* lam, const R* th, int n,
                    const Params& par) {
  switch (kind) {
    case Observable::Kind::MainH:
      return vd_detail::eval_main_H_kernel(lam, th, n, par);
    case Observable::Kind::FamilyH: {
      double imag = 0.0;
      const R v = vd_detail::eval_H_l_kernel(index, lam, th, n, par, &imag);
      if (imag > kImagResidualTol)
        fail(Errc::ImaginaryResidual, "U block imaginary residual exceeds tolerance");
      return v;
    }
    case Observable::Kind::SpectralK: {
      const auto f = lax_detail::build_factors_kernel(lam, th, n, par);
      const CMat<R> L = lax_detail::assemble_lax(f);
      double imag = 0.0;
      const auto coeffs = spectral_detail::leverrier(L, &imag);
      return coeffs[index];
    }
    case Observable::Kind::CoordLambda:
      return lam[index];
    case Observable::Kind::CoordTheta:
      return th[index];
  }
  fail(Errc::InvalidArgument, "unknown observable");
}

void require_valid_observable(const Observable& obs, int n) {
  switch (obs.kind) {
    case Observable::Kind::MainH:
      return;
    case Observable::Kind::FamilyH:
      if (obs.index < 0 || obs.index > n) fail(Errc::InvalidArgument, "H_l level out of range");
      return;
    case Observable::Kind::SpectralK:
      if (obs.index < 0 || obs.index > 2 * n)
        fail(Errc::InvalidArgument, "K_m order out of range");
      return;
    case Observable::Kind::CoordLambda:
    case Observable::Kind::CoordTheta:
      if (obs.index < 0 || obs.index >= n)
        fail(Errc::InvalidArgument, "coordinate index out of range");
      return;
  }
}

void require_chamber(const PhasePoint& point) {
  try {
    validate_phase_point(point.lambda, point.theta);
  } catch (const Error& e) {
    fail(Errc::DomainError, std::string("point outside the open chamber: ") + e.what());
  }
}

}  // namespace

std::string Observable::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::MainH: os << "H"; break;
    case Kind::FamilyH: os << "H_" << index; break;
    case Kind::SpectralK: os << "K_" << index; break;
    case Kind::CoordLambda: os << "lambda_" << index + 1; break;
    case Kind::CoordTheta: os << "theta_" << index + 1; break;
  }
  return os.str();
}

double Observable::eval(const PhasePoint& point, const Params& par) const {
  require_chamber(point);
  require_valid_observable(*this, point.n());
  const auto lam = to_real(point.lambda);
  const auto th = to_real(point.theta);
  return static_cast<double>(
      eval_observable_t<Real>(kind, index, lam.data(), th.data(), point.n(), par));
}

Gradient grad_observable(const Observable& obs, const PhasePoint& point, const Params& par) {
  require_chamber(point);
  const int n = point.n();
  require_valid_observable(obs, n);

  std::vector<Dual> lam(n), th(n);
  for (int i = 0; i < n; ++i) {
    lam[i] = Dual(point.lambda[i]);
    th[i] = Dual(point.theta[i]);
  }

  Gradient g;
  g.dlambda.resize(n);
  g.dtheta.resize(n);
  for (int i = 0; i < n; ++i) {
    lam[i].d = 1.0;
    g.dlambda[i] = eval_observable_t<Dual>(obs.kind, obs.index, lam.data(), th.data(), n, par).d;
    lam[i].d = 0.0;
  }
  for (int i = 0; i < n; ++i) {
    th[i].d = 1.0;
    g.dtheta[i] = eval_observable_t<Dual>(obs.kind, obs.index, lam.data(), th.data(), n, par).d;
    th[i].d = 0.0;
  }
  return g;
}

double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& point,
                       const Params& par) {
  const Gradient gf = grad_observable(f, point, par);
  const Gradient gg = grad_observable(g, point, par);
  Real acc = 0;
  for (int k = 0; k < point.n(); ++k)
    acc += Real(gf.dlambda[k]) * Real(gg.dtheta[k]) - Real(gf.dtheta[k]) * Real(gg.dlambda[k]);
  return static_cast<double>(acc);
}

namespace {

// Hamilton's equations for the main Hamiltonian: one dual evaluation per
// coordinate direction.
void flow_rhs(const std::vector<double>& y, int n, const Params& par, std::vector<double>& dy) {
  std::vector<Dual> lam(n), th(n);
  for (int i = 0; i < n; ++i) {
    lam[i] = Dual(y[i]);
    th[i] = Dual(y[n + i]);
  }
  for (int i = 0; i < n; ++i) {
    th[i].d = 1.0;
    dy[i] = vd_detail::eval_main_H_kernel(lam.data(), th.data(), n, par).d;  // dlambda/dt
    th[i].d = 0.0;
  }
  for (int i = 0; i < n; ++i) {
    lam[i].d = 1.0;
    dy[n + i] = -vd_detail::eval_main_H_kernel(lam.data(), th.data(), n, par).d;  // dtheta/dt
    lam[i].d = 0.0;
  }
}

std::vector<double> conserved_at(const PhasePoint& p, const Params& par) {
  const auto lam = to_real(p.lambda);
  const auto th = to_real(p.theta);
  const int n = p.n();

  std::vector<double> row(n + 1);
  row[0] = static_cast<double>(vd_detail::eval_main_H_kernel(lam.data(), th.data(), n, par));
  LaxMatrix lax;
  lax.n = n;
  lax.L = lax_detail::assemble_lax(lax_detail::build_factors_kernel(lam.data(), th.data(), n, par));
  const auto cp = char_poly_eigen(lax);
  for (int m = 1; m <= n; ++m) row[m] = static_cast<double>(cp.K[m]);
  return row;
}

}  // namespace

Trajectory integrate_flow(const PhasePoint& start, const Params& par, double t_end, double tol) {
  if (!(t_end > 0.0)) fail(Errc::InvalidArgument, "t_end must be positive");
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  require_chamber(start);

  const int n = start.n();
  const int dim = 2 * n;

  // Dormand-Prince 5(4) tableau.
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  std::vector<double> y(dim), ytmp(dim), ynew(dim);
  for (int i = 0; i < n; ++i) {
    y[i] = start.lambda[i];
    y[n + i] = start.theta[i];
  }

  std::vector<std::vector<double>> k(7, std::vector<double>(dim));

  Trajectory traj;
  auto record = [&](double t, const std::vector<double>& state) {
    PhasePoint p;
    p.lambda.assign(state.begin(), state.begin() + n);
    p.theta.assign(state.begin() + n, state.end());
    try {
      validate_phase_point(p.lambda, p.theta);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "flow left the chamber at t=" << t << ": " << e.what();
      fail(Errc::ChamberExit, os.str());
    }
    traj.times.push_back(t);
    traj.conserved.push_back(conserved_at(p, par));
    traj.states.push_back(std::move(p));
  };

  record(0.0, y);
  flow_rhs(y, n, par, k[0]);

  double t = 0.0;
  double dt = std::min(1e-2, t_end / 10.0);
  // Step cap keeps the sampled trajectory dense enough for the scattering
  // fit windows even when the motion is asymptotically free.
  const double dt_max = t_end / 100.0;
  const long max_steps = 20'000'000L;
  long steps = 0;

  while (t < t_end) {
    if (++steps > max_steps) fail(Errc::StepUnderflow, "step budget exhausted");
    if (dt < 1e-13 * std::max(1.0, std::abs(t)))
      fail(Errc::StepUnderflow, "step size underflow");
    dt = std::min({dt, dt_max, t_end - t});

    auto stage = [&](int si, std::initializer_list<std::pair<int, double>> terms) {
      for (int i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (const auto& [ki, w] : terms) acc += w * k[ki][i];
        ytmp[i] = y[i] + dt * acc;
      }
      flow_rhs(ytmp, n, par, k[si]);
    };
    stage(1, {{0, a21}});
    stage(2, {{0, a31}, {1, a32}});
    stage(3, {{0, a41}, {1, a42}, {2, a43}});
    stage(4, {{0, a51}, {1, a52}, {2, a53}, {3, a54}});
    stage(5, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
    for (int i = 0; i < dim; ++i)
      ynew[i] = y[i] + dt * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                             b6 * k[5][i]);
    flow_rhs(ynew, n, par, k[6]);

    double err = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double ei = dt * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                              e6 * k[5][i] + e7 * k[6][i]);
      const double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
      err += (ei / scale) * (ei / scale);
    }
    err = std::sqrt(err / dim);

    if (err <= 1.0) {
      t += dt;
      y.swap(ynew);
      k[0].swap(k[6]);  // first-same-as-last
      record(t, y);
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    dt *= std::clamp(factor, 0.2, 5.0);
  }
  return traj;
}

ScatteringData extract_scattering(const Trajectory& traj, const ActionVector& initial_actions) {
  const std::size_t m = traj.times.size();
  if (m < 8) fail(Errc::NotAsymptotic, "trajectory too short");
  const int n = traj.n();
  if (initial_actions.n() != n)
    fail(Errc::LengthMismatch, "action vector size does not match the trajectory");

  // Heuristic entry check: the configuration must actually have spread out.
  auto min_gap = [&](const PhasePoint& p) {
    double g = p.lambda[n - 1];
    for (int i = 0; i + 1 < n; ++i) g = std::min(g, p.lambda[i] - p.lambda[i + 1]);
    return g;
  };
  if (n > 1 && !(min_gap(traj.states.back()) > min_gap(traj.states.front())))
    fail(Errc::NotAsymptotic, "separations did not grow along the trajectory");

  ScatteringData sd;
  sd.q_est = traj.states.back().theta;

  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  sd.window_begin = t1 - 0.2 * (t1 - t0);
  sd.window_end = t1;
  const double mid = 0.5 * (sd.window_begin + t1);

  std::vector<double> p_first(n, 0.0), p_last(n, 0.0);
  long c_first = 0, c_last = 0;
  for (std::size_t s = 0; s < m; ++s) {
    const double t = traj.times[s];
    if (t < sd.window_begin) continue;
    const bool last_half = t >= mid;
    for (int kk = 0; kk < n; ++kk) {
      const double p = t * std::sinh(sd.q_est[kk]) - traj.states[s].lambda[kk];
      (last_half ? p_last[kk] : p_first[kk]) += p;
    }
    (last_half ? c_last : c_first) += 1;
  }
  if (c_first < 2 || c_last < 2)
    fail(Errc::NotAsymptotic, "too few samples in the fit window");

  sd.p_est.resize(n);
  double stab = 0.0;
  for (int kk = 0; kk < n; ++kk) {
    p_first[kk] /= static_cast<double>(c_first);
    p_last[kk] /= static_cast<double>(c_last);
    stab = std::max(stab, std::abs(p_first[kk] - p_last[kk]));
    sd.p_est[kk] = p_last[kk];
  }
  sd.p_stability = stab;
  if (stab > kScatteringStabilityTol) {
    std::ostringstream os;
    os << "impact parameters not stabilized: window deviation " << stab;
    fail(Errc::NotAsymptotic, os.str());
  }

  sd.q_spectral = to_double(initial_actions.q);
  for (int kk = 0; kk < n; ++kk)
    sd.max_q_dev = std::max(sd.max_q_dev, std::abs(sd.q_est[kk] - sd.q_spectral[kk]));
  return sd;
}

}  // namespace rsvd
