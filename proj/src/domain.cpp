#include "rsvd/domain.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace rsvd {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroCoupling: return "ZeroCoupling";
    case Errc::SignViolation: return "SignViolation";
    case Errc::NonFinite: return "NonFinite";
    case Errc::OrderingViolation: return "OrderingViolation";
    case Errc::NonPositive: return "NonPositive";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyVector: return "EmptyVector";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DomainError: return "DomainError";
    case Errc::ImaginaryResidual: return "ImaginaryResidual";
    case Errc::StructuralResidual: return "StructuralResidual";
    case Errc::EigensolverFailure: return "EigensolverFailure";
    case Errc::PositivityViolation: return "PositivityViolation";
    case Errc::PairingFailure: return "PairingFailure";
    case Errc::DegenerateAction: return "DegenerateAction";
    case Errc::IdentityFailure: return "IdentityFailure";
    case Errc::ChamberExit: return "ChamberExit";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::NotAsymptotic: return "NotAsymptotic";
  }
  return "Unknown";
}

Params validate_params(double mu, double nu, double kappa) {
  if (!std::isfinite(mu) || !std::isfinite(nu) || !std::isfinite(kappa))
    fail(Errc::NonFinite, "couplings must be finite");
  if (mu == 0.0) fail(Errc::ZeroCoupling, "mu must be nonzero");
  if (nu == 0.0) fail(Errc::ZeroCoupling, "nu must be nonzero");
  if (nu * kappa < 0.0) fail(Errc::SignViolation, "nu*kappa must be nonnegative");
  return Params{mu, nu, kappa};
}

PhasePoint validate_phase_point(std::vector<double> lambda, std::vector<double> theta,
                                double min_gap) {
  if (lambda.empty()) fail(Errc::EmptyVector, "empty position vector");
  if (lambda.size() != theta.size())
    fail(Errc::LengthMismatch, "positions and momenta differ in length");
  for (double x : lambda)
    if (!std::isfinite(x)) fail(Errc::NonFinite, "non-finite position");
  for (double t : theta)
    if (!std::isfinite(t)) fail(Errc::NonFinite, "non-finite momentum");

  const int n = static_cast<int>(lambda.size());
  for (int k = 0; k < n; ++k)
    if (lambda[k] <= 0.0) fail(Errc::NonPositive, "positions must be positive");
  if (lambda[n - 1] < min_gap)
    fail(Errc::NonPositive, "lowest position under the chamber guard");
  for (int k = 0; k + 1 < n; ++k)
    if (lambda[k] - lambda[k + 1] < min_gap)
      fail(Errc::OrderingViolation, "positions must decrease by at least the chamber guard");

  PhasePoint p;
  p.lambda = std::move(lambda);
  p.theta = std::move(theta);
  return p;
}

std::vector<std::vector<int>> enumerate_subsets(int n, int max_size) {
  if (n < 1) fail(Errc::InvalidArgument, "system size must be positive");
  if (max_size < 0 || max_size > n) fail(Errc::InvalidArgument, "subset size cap out of range");

  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Lexicographic depth-first walk; a prefix precedes all of its extensions.
  auto rec = [&](auto&& self, int start) -> void {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<SignedSubset> enumerate_signed_subsets(int n, int max_size) {
  auto subsets = enumerate_subsets(n, max_size);
  std::vector<SignedSubset> out;
  for (const auto& J : subsets) {
    const int j = static_cast<int>(J.size());
    const std::uint32_t patterns = 1u << j;
    for (std::uint32_t mask = 0; mask < patterns; ++mask) {
      SignedSubset s;
      s.indices = J;
      s.signs.resize(j);
      for (int i = 0; i < j; ++i)
        s.signs[i] = (mask >> (j - 1 - i)) & 1u ? -1 : +1;
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

// Uniform draw in [0,1) from the top 53 bits; bit-stable across platforms.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

PhasePoint sample_phase_point(int n, std::uint64_t seed, double min_gap, double theta_range) {
  if (n < 1) fail(Errc::InvalidArgument, "system size must be positive");
  if (!(min_gap > 0.0)) fail(Errc::InvalidArgument, "min_gap must be positive");
  if (!(theta_range >= 0.0)) fail(Errc::InvalidArgument, "theta_range must be nonnegative");

  std::mt19937_64 rng(seed);
  std::vector<double> lambda(n), theta(n);
  lambda[n - 1] = min_gap * (1.0 + uniform01(rng));
  for (int k = n - 2; k >= 0; --k) lambda[k] = lambda[k + 1] + min_gap * (1.0 + uniform01(rng));
  for (int k = 0; k < n; ++k) theta[k] = theta_range * (2.0 * uniform01(rng) - 1.0);
  return validate_phase_point(std::move(lambda), std::move(theta), min_gap);
}

}  // namespace rsvd
