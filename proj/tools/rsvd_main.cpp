// Command-line front end: evaluation, verification sweeps, exact identity
// proofs, flow runs and benchmarks. Structured reports go to stdout as JSON;
// time series go to CSV. Exit codes: 0 pass, 1 verification failure,
// 2 usage or validation error.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "rsvd/dynamics.hpp"
#include "rsvd/equivalence.hpp"
#include "rsvd/lax.hpp"
#include "rsvd/spectral.hpp"
#include "rsvd/vandiejen.hpp"

using json = nlohmann::ordered_json;
using namespace rsvd;

namespace {

// ---------------------------------------------------------------- utilities

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::ZeroCoupling:
    case Errc::SignViolation:
    case Errc::NonFinite:
    case Errc::OrderingViolation:
    case Errc::NonPositive:
    case Errc::LengthMismatch:
    case Errc::EmptyVector:
    case Errc::InvalidArgument:
    case Errc::DomainError:
      return 2;
    default:
      return 1;
  }
}

json vec_json(const std::vector<Real>& v) { return json(to_double(v)); }

json point_json(const PhasePoint& p) {
  return json{{"lambda", p.lambda}, {"theta", p.theta}};
}

json params_json(const Params& p) {
  return json{{"mu", p.mu}, {"nu", p.nu}, {"kappa", p.kappa}};
}

PhasePoint parse_point(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    fail(Errc::InvalidArgument, "--point wants \"l1,l2,...;t1,t2,...\"");
  auto parse_list = [](const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const auto comma = s.find(',', pos);
      const std::string item = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "--point: cannot parse '" + item + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  return validate_phase_point(parse_list(text.substr(0, semi)), parse_list(text.substr(semi + 1)));
}

// Parameter triples for sweeps: pinned edge cases (kappa = 0, both-negative)
// plus seeded random admissible triples.
std::vector<Params> sweep_params(int count, std::uint64_t seed) {
  std::vector<Params> out = {
      {1.0, 1.0, 0.0},  {1.0, 1.0, 0.5},    {0.8, -1.1, -0.3}, {-0.9, 0.7, 1.2},
      {0.5, -0.8, -0.8}, {1.3, 0.4, 0.9},   {0.7, -0.5, 0.0},  {2.0, 0.5, 0.25},
  };
  std::mt19937_64 rng(seed);
  auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  while (static_cast<int>(out.size()) < count) {
    const double mu = (uni() < 0.5 ? -1.0 : 1.0) * (0.4 + 0.9 * uni());
    const double nu = (uni() < 0.5 ? -1.0 : 1.0) * (0.3 + 0.9 * uni());
    const double kappa = (uni() < 0.2 ? 0.0 : 1.0) * (nu > 0 ? 1.0 : -1.0) * 1.2 * uni();
    out.push_back(validate_params(mu, nu, kappa));
  }
  out.resize(count);
  return out;
}

double max_rel(const std::vector<Real>& a, const std::vector<Real>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    m = std::max(m, rel_resid(a[i], b[i]));
  return m;
}

// ------------------------------------------------------------------- eval

struct EvalOpts {
  int n = 2;
  double mu = 1.0, nu = 1.0, kappa = 0.0;
  std::uint64_t seed = 1;
  std::string point_text;
  double min_gap = 0.6, theta_range = 1.5;
  bool dump_lax = false;
};

int cmd_eval(const EvalOpts& o) {
  const Params par = validate_params(o.mu, o.nu, o.kappa);
  const PhasePoint pt = o.point_text.empty()
                            ? sample_phase_point(o.n, o.seed, o.min_gap, o.theta_range)
                            : parse_point(o.point_text);
  const int n = pt.n();
  if (n > kMaxFullFamilyN)
    fail(Errc::InvalidArgument,
         "full-family evaluation is capped at n = " + std::to_string(kMaxFullFamilyN) +
             " (subset enumeration grows like 3^n); use `bench --routes spectral` "
             "for larger sizes");

  const double H = eval_main_H(pt, par);
  const InvariantVector Hfam = eval_all_H(pt, par);

  const LaxFactors factors = build_factors(pt, par);
  const LaxMatrix lax = build_lax(pt, par);
  const StructuralReport sr = structural_residuals(factors, lax);
  const CharPolyCoeffs cp = char_poly_eigen(lax);
  const auto spectrum = hermitian_eigenvalues(lax);
  const ActionVector actions = extract_actions(lax);

  InvariantVector Ktrunc;
  Ktrunc.kind = InvariantKind::LaxSpectral;
  Ktrunc.n = n;
  Ktrunc.values.assign(cp.K.begin(), cp.K.begin() + n + 1);

  const InvariantVector H_from_K = vd_from_lax(Ktrunc, n);
  const InvariantVector K_from_H = lax_from_vd(Hfam, n);
  const InvariantVector roundtrip = lax_from_vd(H_from_K, n);

  json out;
  out["command"] = "eval";
  out["config"] = {{"n", n},
                   {"params", params_json(par)},
                   {"seed", o.seed},
                   {"point_source", o.point_text.empty() ? "sampled" : "explicit"},
                   {"min_gap", o.min_gap},
                   {"theta_range", o.theta_range}};
  out["point"] = point_json(pt);
  out["H"] = H;
  out["H_family"] = vec_json(Hfam.values);
  out["K_family"] = vec_json(Ktrunc.values);
  out["K_full"] = vec_json(cp.K);
  out["spectrum"] = vec_json(spectrum);
  out["q_actions"] = vec_json(actions.q);
  out["transform_residuals"] = {
      {"vd_from_lax", max_rel(H_from_K.values, Hfam.values)},
      {"lax_from_vd", max_rel(K_from_H.values, Ktrunc.values)},
      {"roundtrip", max_rel(roundtrip.values, Ktrunc.values)}};
  out["anchors"] = {
      {"h1_minus_2H_minus_n", rel_resid(Hfam.values[1], Real(2.0 * (H - n)))},
      {"k1_plus_2H", std::abs(static_cast<double>(cp.K[1]) + 2.0 * H) / (1.0 + 2.0 * H)}};
  out["structural"] = {{"chch", sr.chch},   {"caca", sr.caca},   {"clcl", sr.clcl},
                       {"herm_h", sr.herm_h}, {"herm_a", sr.herm_a}, {"herm_l", sr.herm_l},
                       {"det_h", sr.det_h},   {"det_a", sr.det_a},   {"det_l", sr.det_l}};
  if (o.dump_lax) {
    json rows = json::array();
    for (int i = 0; i < 2 * n; ++i) {
      json row = json::array();
      for (int j = 0; j < 2 * n; ++j)
        row.push_back({static_cast<double>(lax.L(i, j).re), static_cast<double>(lax.L(i, j).im)});
      rows.push_back(row);
    }
    out["lax_matrix"] = rows;  // row-major, [re, im] pairs
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
  int n_min = 1, n_max = 4;
  int samples = 50;
  std::uint64_t seed = 1;
  bool include_brackets = false;
  int bracket_samples = 10;
  double perturb = 0.0;
  double min_gap = 0.6, theta_range = 1.5;
  double tol_equiv = 1e-9;
  double tol_inverse = 1e-9;
  double tol_roundtrip = 1e-12;
  double tol_structural = 1e-10;
  double tol_palindrome = 1e-10;
  double tol_leverrier = 1e-8;
  double tol_anchor_h = 1e-12;
  double tol_anchor_k = 1e-10;
  double tol_pullback = 1e-9;
  double tol_elem = 1e-12;
  double tol_recursion = 1e-11;
  double tol_bracket = 1e-8;
};

struct PointResiduals {
  double structural = 0, palindrome = 0, leverrier = 0;
  double anchor_h = 0, anchor_k = 0;
  double equiv = 0, inverse = 0, roundtrip = 0;
  double pullback_h = 0, pullback_k = 0, elem = 0, recursion = 0;
  std::string error;  // nonempty: the pipeline aborted mid-point (fault injection)
};

// Fills `r` progressively so residuals computed before a failure survive it.
void verify_point(const PhasePoint& pt, const Params& par, double perturb,
                  std::uint64_t recursion_seed, PointResiduals& r) {
  const int n = pt.n();

  const double H = eval_main_H(pt, par);
  const InvariantVector Hfam = eval_all_H(pt, par);

  const LaxFactors factors = build_factors(pt, par);
  LaxMatrix lax = build_lax(pt, par);
  if (perturb != 0.0) lax.L(0, 0) += cx<Real>(Real(perturb));

  const StructuralReport sr = structural_residuals(factors, lax);
  const double scale = 1.0 + max_abs(lax.L);
  r.structural = sr.max_residual() / scale;

  const CharPolyCoeffs cp = char_poly_eigen(lax);
  const CharPolyCoeffs cl = char_poly_leverrier(lax);
  for (int m = 0; m <= 2 * n; ++m) {
    r.leverrier = std::max(r.leverrier, rel_resid(cp.K[m], cl.K[m]));
    if (m <= n) r.palindrome = std::max(r.palindrome, rel_resid(cp.K[m], cp.K[2 * n - m]));
  }

  r.anchor_h = rel_resid(Hfam.values[1], Real(2.0 * (H - n)));
  r.anchor_k = std::abs(static_cast<double>(cp.K[1]) + 2.0 * H) / (1.0 + 2.0 * H);

  InvariantVector K;
  K.kind = InvariantKind::LaxSpectral;
  K.n = n;
  K.values.assign(cp.K.begin(), cp.K.begin() + n + 1);

  const auto H_from_K = vd_from_lax(K, n);
  const auto K_from_H = lax_from_vd(Hfam, n);
  const auto back = lax_from_vd(H_from_K, n);
  r.equiv = max_rel(H_from_K.values, Hfam.values);
  r.inverse = max_rel(K_from_H.values, K.values);
  r.roundtrip = max_rel(back.values, K.values);

  const ActionVector act = extract_actions(lax);
  std::vector<Real> sh2(n);
  for (int i = 0; i < n; ++i) {
    const Real s = std::sinh(act.q[i] / Real(2));
    sh2[i] = s * s;
  }
  Real pow4 = 1;
  for (int l = 0; l <= n; ++l) {
    const Real ch = eval_cH(l, act.q);
    r.pullback_h = std::max(r.pullback_h, rel_resid(Hfam.values[l], ch));
    r.pullback_k = std::max(r.pullback_k, rel_resid(cp.K[l], eval_cK(l, act.q)));
    r.elem = std::max(r.elem, rel_resid(ch, pow4 * elem_sym(sh2, l)));
    pow4 *= 4;
  }

  std::mt19937_64 rng(recursion_seed);
  const Real extra = Real(3.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.5);
  r.recursion = verify_recursions(act.q, extra).max_residual();
}

int cmd_verify(const VerifyOpts& o) {
  if (o.n_min < 1 || o.n_max < o.n_min) fail(Errc::InvalidArgument, "bad n range");
  if (o.n_max > 6)
    fail(Errc::InvalidArgument, "numeric sweep is capped at n = 6 (combinatorial cost)");
  if (o.samples < 1) fail(Errc::InvalidArgument, "need at least one sample");

  const auto params = sweep_params(std::max(20, o.samples / 4), o.seed + 999);

  json checks = json::array();
  bool all_pass = true;
  long points = 0;

  auto publish = [&](const std::string& name, double resid, double tol) {
    const bool pass = resid <= tol;
    all_pass = all_pass && pass;
    checks.push_back(json{{"name", name}, {"max_residual", resid}, {"tolerance", tol},
                          {"pass", pass}});
  };

  PointResiduals worst;
  std::vector<std::string> errors;
  for (int n = o.n_min; n <= o.n_max; ++n) {
    std::vector<PointResiduals> slot(o.samples);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < o.samples; ++s) {
      const Params& par = params[s % params.size()];
      const PhasePoint pt = sample_phase_point(
          n, o.seed + 7919 * n + s, coupling_scaled_gap(o.min_gap, par), o.theta_range);
      try {
        verify_point(pt, par, o.perturb, o.seed + 104729 * n + s, slot[s]);
      } catch (const Error& e) {
        slot[s].error = std::string(errc_name(e.code())) + ": " + e.what();
      }
    }
    for (const auto& r : slot) {
      if (!r.error.empty()) errors.push_back(r.error);
      worst.structural = std::max(worst.structural, r.structural);
      worst.palindrome = std::max(worst.palindrome, r.palindrome);
      worst.leverrier = std::max(worst.leverrier, r.leverrier);
      worst.anchor_h = std::max(worst.anchor_h, r.anchor_h);
      worst.anchor_k = std::max(worst.anchor_k, r.anchor_k);
      worst.equiv = std::max(worst.equiv, r.equiv);
      worst.inverse = std::max(worst.inverse, r.inverse);
      worst.roundtrip = std::max(worst.roundtrip, r.roundtrip);
      worst.pullback_h = std::max(worst.pullback_h, r.pullback_h);
      worst.pullback_k = std::max(worst.pullback_k, r.pullback_k);
      worst.elem = std::max(worst.elem, r.elem);
      worst.recursion = std::max(worst.recursion, r.recursion);
      ++points;
    }
  }

  // Without fault injection any pipeline error is a genuine failure.
  if (!errors.empty() && o.perturb == 0.0) fail(Errc::StructuralResidual, errors.front());
  all_pass = all_pass && errors.empty();

  publish("lax-structure", worst.structural, o.tol_structural);
  publish("char-poly-palindrome", worst.palindrome, o.tol_palindrome);
  publish("leverrier-vs-eigen", worst.leverrier, o.tol_leverrier);
  publish("anchor-H1", worst.anchor_h, o.tol_anchor_h);
  publish("anchor-K1", worst.anchor_k, o.tol_anchor_k);
  publish("equivalence-forward", worst.equiv, o.tol_equiv);
  publish("equivalence-inverse", worst.inverse, o.tol_inverse);
  publish("transform-roundtrip", worst.roundtrip, o.tol_roundtrip);
  publish("pullback-H", worst.pullback_h, o.tol_pullback);
  publish("pullback-K", worst.pullback_k, o.tol_pullback);
  publish("elementary-symmetric-form", worst.elem, o.tol_elem);
  publish("extension-recursions", worst.recursion, o.tol_recursion);

  if (o.include_brackets) {
    double worst_bracket = 0.0;
    const int bn_max = std::min(o.n_max, 4);
    for (int n = std::min(o.n_min, bn_max); n <= bn_max; ++n) {
      std::vector<double> slot(o.bracket_samples, 0.0);
#pragma omp parallel for schedule(dynamic)
      for (int s = 0; s < o.bracket_samples; ++s) {
        const Params par = params[s % params.size()];
        const PhasePoint pt = sample_phase_point(
            n, o.seed + 31 * n + s, coupling_scaled_gap(o.min_gap, par), o.theta_range);
        std::vector<Observable> family;
        for (int l = 1; l <= n; ++l) family.push_back(Observable::family_h(l));
        for (int m = 1; m <= n; ++m) family.push_back(Observable::spectral_k(m));
        double local = 0.0;
        for (std::size_t a = 0; a < family.size(); ++a)
          for (std::size_t b = a + 1; b < family.size(); ++b) {
            const double fa = family[a].eval(pt, par);
            const double fb = family[b].eval(pt, par);
            const double br = poisson_bracket(family[a], family[b], pt, par);
            local = std::max(local, std::abs(br) / (1.0 + std::abs(fa) * std::abs(fb)));
          }
        slot[s] = local;
      }
      for (double v : slot) worst_bracket = std::max(worst_bracket, v);
    }
    publish("poisson-brackets", worst_bracket, o.tol_bracket);
  }

  json out;
  out["command"] = "verify";
  out["config"] = {{"n_min", o.n_min},
                   {"n_max", o.n_max},
                   {"samples", o.samples},
                   {"seed", o.seed},
                   {"min_gap", o.min_gap},
                   {"gap_policy", "coupling-scaled"},
                   {"theta_range", o.theta_range},
                   {"perturb", o.perturb},
                   {"include_brackets", o.include_brackets},
                   {"bracket_samples", o.bracket_samples},
                   {"parameter_triples", static_cast<int>(params.size())}};
  out["points_evaluated"] = points;
  out["checks"] = checks;
  if (!errors.empty()) out["point_errors"] = errors;
  out["pass"] = all_pass;
  std::cout << out.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// --------------------------------------------------------------- identities

int cmd_identities(int n_max) {
  if (n_max < 1) fail(Errc::InvalidArgument, "need n_max >= 1");
  if (n_max > 60) fail(Errc::InvalidArgument, "identity sweep capped at n_max = 60");

  json out;
  out["command"] = "identities";
  out["config"] = {{"n_max", n_max}};
  try {
    const IdentityReport rep = verify_exact_identities(n_max);
    json list = json::array();
    for (const auto& c : rep.checks)
      list.push_back(json{{"identity", c.identity},
                          {"n_range", "1.." + std::to_string(n_max)},
                          {"cells_checked", c.cells},
                          {"detail", c.detail},
                          {"failures", json::array()}});
    out["identities"] = list;
    out["cells_total"] = rep.cells_checked();
    out["pass"] = true;
  } catch (const Error& e) {
    if (e.code() != Errc::IdentityFailure) throw;
    out["identities"] = json::array();
    out["failures"] = json::array({e.what()});
    out["pass"] = false;
    std::cout << out.dump(2) << "\n";
    return 1;
  }

  if (n_max <= 8) {
    const auto A = coeff_matrix(n_max, n_max, CoeffFlavor::Forward);
    const auto B = coeff_matrix(n_max, n_max, CoeffFlavor::Inverse);
    auto matrix_json = [](const ExactCoeffMatrix& M) {
      json rows = json::array();
      for (const auto& row : M.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.get_str());
        rows.push_back(r);
      }
      return rows;
    };
    out["coefficient_matrices"] = {{"n", n_max},
                                   {"forward", matrix_json(A)},
                                   {"inverse", matrix_json(B)}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------------- flow

struct FlowOpts {
  int n = 2;
  double mu = 1.0, nu = 1.0, kappa = 0.5;
  std::uint64_t seed = 1;
  std::string point_text;
  double min_gap = 0.8, theta_range = 1.2;
  double t_end = 50.0;
  double tol = 1e-10;
  std::string csv_path = "flow.csv";
};

int cmd_flow(const FlowOpts& o) {
  const Params par = validate_params(o.mu, o.nu, o.kappa);
  const PhasePoint pt = o.point_text.empty()
                            ? sample_phase_point(o.n, o.seed, o.min_gap, o.theta_range)
                            : parse_point(o.point_text);
  const int n = pt.n();

  const ActionVector actions = extract_actions(build_lax(pt, par));
  const Trajectory traj = integrate_flow(pt, par, o.t_end, o.tol);

  {
    std::ofstream csv(o.csv_path);
    if (!csv) fail(Errc::InvalidArgument, "cannot open CSV output path " + o.csv_path);
    csv << "t";
    for (int i = 1; i <= n; ++i) csv << ",lambda_" << i;
    for (int i = 1; i <= n; ++i) csv << ",theta_" << i;
    csv << ",H";
    for (int m = 1; m <= n; ++m) csv << ",K_" << m;
    csv << "\n";
    char buf[32];
    auto put = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      csv << "," << buf;
    };
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%.17g", traj.times[s]);
      csv << buf;
      for (double v : traj.states[s].lambda) put(v);
      for (double v : traj.states[s].theta) put(v);
      for (double v : traj.conserved[s]) put(v);
      csv << "\n";
    }
  }

  // conservation drift across the whole trajectory
  double drift = 0.0;
  const auto& first = traj.conserved.front();
  for (const auto& row : traj.conserved)
    for (std::size_t i = 0; i < row.size(); ++i)
      drift = std::max(drift, rel_resid(row[i], first[i]));

  // two-route action agreement, early vs late
  auto theta_resid_at = [&](double t_ref) {
    std::size_t best = 0;
    for (std::size_t s = 0; s < traj.times.size(); ++s)
      if (std::abs(traj.times[s] - t_ref) < std::abs(traj.times[best] - t_ref)) best = s;
    double m = 0.0;
    for (int k = 0; k < n; ++k)
      m = std::max(m, std::abs(traj.states[best].theta[k] -
                               static_cast<double>(actions.q[k])));
    return m;
  };
  const double resid_early = theta_resid_at(0.2 * o.t_end);
  const double resid_final = theta_resid_at(o.t_end);

  const ScatteringData sd = extract_scattering(traj, actions);

  const bool pass = drift <= 1e-8 && resid_final <= 1e-2 && resid_final < resid_early &&
                    sd.p_stability <= kScatteringStabilityTol;

  json out;
  out["command"] = "flow";
  out["config"] = {{"n", n},           {"params", params_json(par)},
                   {"seed", o.seed},   {"point_source", o.point_text.empty() ? "sampled" : "explicit"},
                   {"t_end", o.t_end}, {"tol", o.tol},
                   {"csv", o.csv_path}};
  out["initial_point"] = point_json(pt);
  out["steps"] = traj.times.size() - 1;
  out["conservation_drift"] = drift;
  out["q_spectral"] = vec_json(actions.q);
  out["q_est"] = sd.q_est;
  out["max_q_dev"] = sd.max_q_dev;
  out["theta_residual_early"] = resid_early;
  out["theta_residual_final"] = resid_final;
  out["residual_decreased"] = resid_final < resid_early;
  out["p_est"] = sd.p_est;
  out["p_stability"] = sd.p_stability;
  out["fit_window"] = {{"begin", sd.window_begin}, {"end", sd.window_end}};
  out["pass"] = pass;
  std::cout << out.dump(2) << "\n";
  return pass ? 0 : 1;
}

// -------------------------------------------------------------------- bench

struct BenchOpts {
  int n_min = 2, n_max = 7;
  int points = 3, reps = 3;
  double mu = 1.0, nu = 1.0, kappa = 0.5;
  std::uint64_t seed = 1;
  std::string routes = "both";
};

int cmd_bench(const BenchOpts& o) {
  if (o.n_min < 1 || o.n_max < o.n_min) fail(Errc::InvalidArgument, "bad n range");
  const bool direct = o.routes == "both" || o.routes == "direct";
  const bool spectral = o.routes == "both" || o.routes == "spectral";
  if (!direct && !spectral) fail(Errc::InvalidArgument, "--routes must be both|direct|spectral");
  if (direct && o.n_max > kMaxFullFamilyN)
    fail(Errc::InvalidArgument, "direct route capped at n = " + std::to_string(kMaxFullFamilyN));

  const Params par = validate_params(o.mu, o.nu, o.kappa);

  std::printf("# bench config: mu=%.17g nu=%.17g kappa=%.17g seed=%llu routes=%s threads=%d\n",
              par.mu, par.nu, par.kappa, static_cast<unsigned long long>(o.seed),
              o.routes.c_str(), omp_get_max_threads());
  std::printf("n,points,reps,direct_serial_ms,direct_omp_ms,spectral_ms,omp_speedup,"
              "spectral_speedup,route_resid,kernel_resid\n");

  bool ok = true;
  for (int n = o.n_min; n <= o.n_max; ++n) {
    std::vector<PhasePoint> pts;
    for (int s = 0; s < o.points; ++s)
      pts.push_back(sample_phase_point(n, o.seed + 100 * n + s,
                                       coupling_scaled_gap(0.6, par), 1.4));

    auto time_route = [&](auto&& fn) {
      double best_ms = 0.0;
      for (int rep = 0; rep < o.reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& p : pts) fn(p);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count() / o.points;
        best_ms = rep == 0 ? ms : std::min(best_ms, ms);
      }
      return best_ms;
    };

    double t_serial = 0.0, t_omp = 0.0, t_spec = 0.0;
    double route_resid = 0.0, kernel_resid = 0.0;

    if (direct) {
      t_serial = time_route([&](const PhasePoint& p) { (void)reference::eval_all_H(p, par); });
      t_omp = time_route([&](const PhasePoint& p) { (void)eval_all_H(p, par); });
    }
    if (spectral)
      t_spec = time_route([&](const PhasePoint& p) {
        const auto cp = char_poly_eigen(build_lax(p, par));
        InvariantVector K;
        K.kind = InvariantKind::LaxSpectral;
        K.n = p.n();
        K.values.assign(cp.K.begin(), cp.K.begin() + p.n() + 1);
        (void)vd_from_lax(K, p.n());
      });

    if (direct && spectral) {
      for (const auto& p : pts) {
        const auto direct_vals = eval_all_H(p, par);
        const auto serial_vals = reference::eval_all_H(p, par);
        const auto cp = char_poly_eigen(build_lax(p, par));
        InvariantVector K;
        K.kind = InvariantKind::LaxSpectral;
        K.n = n;
        K.values.assign(cp.K.begin(), cp.K.begin() + n + 1);
        const auto spec_vals = vd_from_lax(K, n);
        route_resid = std::max(route_resid, max_rel(direct_vals.values, spec_vals.values));
        kernel_resid = std::max(kernel_resid, max_rel(direct_vals.values, serial_vals.values));
      }
      if (route_resid > 1e-9) ok = false;  // cross-route disagreement invalidates the run
    }

    std::printf("%d,%d,%d,%.6g,%.6g,%.6g,%.3g,%.3g,%.3g,%.3g\n", n, o.points, o.reps,
                t_serial, t_omp, t_spec, t_omp > 0 ? t_serial / t_omp : 0.0,
                t_spec > 0 && t_omp > 0 ? t_omp / t_spec : 0.0, route_resid, kernel_resid);
  }
  if (!ok) {
    std::fprintf(stderr, "bench: cross-route residual exceeded 1e-9; benchmark invalid\n");
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commuting Hamiltonian families of the rational BC_n RSvD system"};
  app.require_subcommand(1);

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "evaluate both families and their transforms");
  eval->add_option("--n", eo.n, "system size (sampled point)");
  eval->add_option("--mu", eo.mu, "coupling mu");
  eval->add_option("--nu", eo.nu, "coupling nu");
  eval->add_option("--kappa", eo.kappa, "coupling kappa");
  eval->add_option("--seed", eo.seed, "sampling seed");
  eval->add_option("--point", eo.point_text, "explicit point \"l1,l2,...;t1,t2,...\"");
  eval->add_option("--min-gap", eo.min_gap, "sampling: minimum position gap");
  eval->add_option("--theta-range", eo.theta_range, "sampling: momentum range");
  eval->add_flag("--dump-lax", eo.dump_lax, "include the Lax matrix ([re,im] pairs)");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "residual sweep over sampled points");
  verify->add_option("--n-min", vo.n_min, "smallest system size");
  verify->add_option("--n-max", vo.n_max, "largest system size (<= 6)");
  verify->add_option("--samples", vo.samples, "points per size");
  verify->add_option("--seed", vo.seed, "sweep seed");
  verify->add_flag("--include-brackets", vo.include_brackets,
                   "add Poisson bracket checks (n <= 4)");
  verify->add_option("--bracket-samples", vo.bracket_samples, "points per size for brackets");
  verify->add_option("--perturb", vo.perturb, "fault injection: offset one Lax entry");
  verify->add_option("--min-gap", vo.min_gap, "sampling: minimum position gap");
  verify->add_option("--theta-range", vo.theta_range, "sampling: momentum range");
  verify->add_option("--tol-equiv", vo.tol_equiv, "forward transform tolerance");
  verify->add_option("--tol-inverse", vo.tol_inverse, "inverse transform tolerance");
  verify->add_option("--tol-roundtrip", vo.tol_roundtrip, "roundtrip tolerance");
  verify->add_option("--tol-structural", vo.tol_structural, "Lax structure tolerance");
  verify->add_option("--tol-palindrome", vo.tol_palindrome, "palindrome tolerance");
  verify->add_option("--tol-leverrier", vo.tol_leverrier, "coefficient route agreement");
  verify->add_option("--tol-anchor-h", vo.tol_anchor_h, "H_1 = 2(H-n) tolerance");
  verify->add_option("--tol-anchor-k", vo.tol_anchor_k, "K_1 = -2H tolerance");
  verify->add_option("--tol-pullback", vo.tol_pullback, "pullback consistency tolerance");
  verify->add_option("--tol-elem", vo.tol_elem, "symmetric-function form tolerance");
  verify->add_option("--tol-recursion", vo.tol_recursion, "extension recursion tolerance");
  verify->add_option("--tol-bracket", vo.tol_bracket, "bracket tolerance");

  int n_max_id = 30;
  auto* identities = app.add_subcommand("identities", "exact identity proof report");
  identities->add_option("--n-max", n_max_id, "sweep bound (<= 60)");

  FlowOpts fo;
  auto* flow = app.add_subcommand("flow", "integrate the main flow, extract scattering data");
  flow->add_option("--n", fo.n, "system size (sampled start, n <= 3 recommended)");
  flow->add_option("--mu", fo.mu, "coupling mu");
  flow->add_option("--nu", fo.nu, "coupling nu");
  flow->add_option("--kappa", fo.kappa, "coupling kappa");
  flow->add_option("--seed", fo.seed, "sampling seed");
  flow->add_option("--point", fo.point_text, "explicit start \"l1,...;t1,...\"");
  flow->add_option("--min-gap", fo.min_gap, "sampling: minimum position gap");
  flow->add_option("--theta-range", fo.theta_range, "sampling: momentum range");
  flow->add_option("--t-end", fo.t_end, "integration horizon");
  flow->add_option("--tol", fo.tol, "per-step error tolerance");
  flow->add_option("--csv-out", fo.csv_path, "trajectory CSV path");

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "timing: direct vs spectral route (CSV)");
  bench->add_option("--n-min", bo.n_min, "smallest size");
  bench->add_option("--n-max", bo.n_max, "largest size");
  bench->add_option("--points", bo.points, "sampled points per size");
  bench->add_option("--reps", bo.reps, "repetitions (best taken)");
  bench->add_option("--mu", bo.mu, "coupling mu");
  bench->add_option("--nu", bo.nu, "coupling nu");
  bench->add_option("--kappa", bo.kappa, "coupling kappa");
  bench->add_option("--seed", bo.seed, "sampling seed");
  bench->add_option("--routes", bo.routes, "both|direct|spectral");

  try {
    app.parse(argc, argv);
    if (*eval) return cmd_eval(eo);
    if (*verify) return cmd_verify(vo);
    if (*identities) return cmd_identities(n_max_id);
    if (*flow) return cmd_flow(fo);
    if (*bench) return cmd_bench(bo);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    json err;
    err["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"code", "Internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 2;
}
