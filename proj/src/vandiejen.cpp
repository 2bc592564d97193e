#include "rsvd/vandiejen.hpp"

#include <cmath>
#include <sstream>

namespace rsvd {

namespace {

void require_chamber(const std::vector<double>& lambda, const std::vector<double>& theta) {
  try {
    validate_phase_point(lambda, theta);
  } catch (const Error& e) {
    fail(Errc::DomainError, std::string("point outside the open chamber: ") + e.what());
  }
}

void require_lambda(const std::vector<double>& lambda) {
  require_chamber(lambda, std::vector<double>(lambda.size(), 0.0));
}

void check_imag(double resid) {
  if (resid > kImagResidualTol) {
    std::ostringstream os;
    os << "U block imaginary residual " << resid << " exceeds " << kImagResidualTol;
    fail(Errc::ImaginaryResidual, os.str());
  }
}

}  // namespace

double eval_main_H(const PhasePoint& point, const Params& par) {
  require_chamber(point.lambda, point.theta);
  const auto lam = to_real(point.lambda);
  const auto th = to_real(point.theta);
  return static_cast<double>(
      vd_detail::eval_main_H_kernel(lam.data(), th.data(), point.n(), par));
}

double eval_U(const std::vector<int>& K, int p, const std::vector<double>& lambda,
              const Params& par) {
  const int n = static_cast<int>(lambda.size());
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (K[i] < 0 || K[i] >= n) fail(Errc::InvalidArgument, "U: index out of range");
    if (i > 0 && K[i] <= K[i - 1]) fail(Errc::InvalidArgument, "U: indices must increase");
  }
  if (p < 0 || p > static_cast<int>(K.size()))
    fail(Errc::InvalidArgument, "U: order p must satisfy 0 <= p <= |K|");
  require_lambda(lambda);

  const auto lam = to_real(lambda);
  double imag = 0.0;
  const Real u = vd_detail::u_block(K.data(), static_cast<int>(K.size()), p, lam.data(), par,
                                    &imag);
  check_imag(imag);
  return static_cast<double>(u);
}

double eval_V_pair(const SignedSubset& J, const std::vector<int>& K,
                   const std::vector<double>& lambda, const Params& par) {
  const int n = static_cast<int>(lambda.size());
  if (J.indices.size() != J.signs.size())
    fail(Errc::InvalidArgument, "V: signs must match indices");
  for (std::size_t i = 0; i < J.indices.size(); ++i) {
    if (J.indices[i] < 0 || J.indices[i] >= n)
      fail(Errc::InvalidArgument, "V: index out of range");
    if (i > 0 && J.indices[i] <= J.indices[i - 1])
      fail(Errc::InvalidArgument, "V: indices must increase");
    if (J.signs[i] != 1 && J.signs[i] != -1) fail(Errc::InvalidArgument, "V: signs must be +-1");
  }
  for (int k : K) {
    if (k < 0 || k >= n) fail(Errc::InvalidArgument, "V: index out of range");
    for (int j : J.indices)
      if (j == k) fail(Errc::InvalidArgument, "V: J and K must be disjoint");
  }
  require_lambda(lambda);

  const auto lam = to_real(lambda);
  return static_cast<double>(vd_detail::v_pair_product(
      J.indices.data(), J.signs.data(), J.size(), K.data(), static_cast<int>(K.size()),
      lam.data(), par));
}

double eval_H_l(int l, const PhasePoint& point, const Params& par) {
  const int n = point.n();
  if (l < 0 || l > n) fail(Errc::InvalidArgument, "H_l: level out of range");
  require_chamber(point.lambda, point.theta);

  const auto lam = to_real(point.lambda);
  const auto th = to_real(point.theta);
  double imag = 0.0;
  const Real h = vd_detail::eval_H_l_kernel(l, lam.data(), th.data(), n, par, &imag);
  check_imag(imag);
  return static_cast<double>(h);
}

InvariantVector eval_all_H(const PhasePoint& point, const Params& par) {
  const int n = point.n();
  InvariantVector out;
  out.kind = InvariantKind::VanDiejen;
  out.n = n;
  out.values.resize(n + 1);
  for (int l = 0; l <= n; ++l) out.values[l] = eval_H_l(l, point, par);
  return out;
}

}  // namespace rsvd
