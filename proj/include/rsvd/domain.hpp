#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rsvd/error.hpp"
#include "rsvd/real.hpp"

namespace rsvd {

// Minimum admissible gap between positions (and to the wall at zero) on input
// validation. The pair interactions diverge as coordinates collide, so
// near-degenerate configurations are rejected instead of evaluated.
inline constexpr double kChamberGuard = 1e-9;

// Couplings of the rational BC_n Ruijsenaars-Schneider-van Diejen system.
// Admissible iff mu != 0, nu != 0 and nu*kappa >= 0 (kappa may vanish).
struct Params {
  double mu = 1.0;
  double nu = 1.0;
  double kappa = 0.0;
};

Params validate_params(double mu, double nu, double kappa);

// Point of the phase space: positions strictly decreasing and positive
// (open Weyl chamber), one conjugate momentum per position.
struct PhasePoint {
  std::vector<double> lambda;
  std::vector<double> theta;

  int n() const { return static_cast<int>(lambda.size()); }
};

PhasePoint validate_phase_point(std::vector<double> lambda, std::vector<double> theta,
                                double min_gap = kChamberGuard);

// Action variables: logs of the upper half of the Lax spectrum, strictly
// decreasing and positive on the image of the open chamber.
struct ActionVector {
  std::vector<Real> q;

  int n() const { return static_cast<int>(q.size()); }
};

// Index subset of {0..n-1} with a sign per member; the summation label of the
// BC_n-type combinatorial formulas.
struct SignedSubset {
  std::vector<int> indices;  // strictly increasing
  std::vector<int> signs;    // +1 or -1, parallel to indices

  int size() const { return static_cast<int>(indices.size()); }
};

// All index subsets with |J| <= max_size, lexicographic. Sign-free variant of
// the enumeration below; the evaluation kernels parallelize over it.
std::vector<std::vector<int>> enumerate_subsets(int n, int max_size);

// Every (J, eps) with |J| <= max_size exactly once, including the empty set.
// Canonical order: lexicographic by index set, then sign patterns with + before
// - (first index most significant). Count is sum_j C(n,j) 2^j.
std::vector<SignedSubset> enumerate_signed_subsets(int n, int max_size);

// Deterministic test-point generator: gaps and the lowest position land in
// [min_gap, 2*min_gap), momenta in [-theta_range, theta_range]. Identical
// output for identical arguments on every platform (raw 53-bit draws, no
// library distributions).
PhasePoint sample_phase_point(int n, std::uint64_t seed, double min_gap = 0.5,
                              double theta_range = 2.0);

// Sampling policy of the verification sweeps: the couplings set the length
// scale of the rational interactions, so the gap floor grows with them.
// Keeps the sampled ensemble away from the hyper-interacting regime where
// every invariant blows up exponentially.
inline double coupling_scaled_gap(double base_gap, const Params& par) {
  double s = 1.0;
  for (double c : {par.mu, par.nu, par.kappa}) s = std::max(s, c < 0 ? -c : c);
  return base_gap * s;
}

}  // namespace rsvd
