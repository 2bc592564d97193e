#include <cmath>

#include "rsvd/vandiejen.hpp"

// Serial reference evaluation of the van Diejen family: walk the canonical
// signed-subset stream and accumulate cosh(theta_{eps J}) V^{1/2} U term by
// term, recomputing the U block for every signed subset. Deliberately the
// plainest possible transcription; the optimized kernel is tested against it.

namespace rsvd::reference {

double eval_H_l(int l, const PhasePoint& point, const Params& par) {
  using std::sqrt;

  const int n = point.n();
  if (l < 0 || l > n) fail(Errc::InvalidArgument, "H_l: level out of range");
  if (l == 0) return 1.0;

  const auto lam = to_real(point.lambda);
  const auto th = to_real(point.theta);

  double imag = 0.0;
  Real acc = 0;
  for (const SignedSubset& J : enumerate_signed_subsets(n, l)) {
    const int j = J.size();
    std::vector<int> K;
    for (int i = 0, a = 0; i < n; ++i) {
      if (a < j && J.indices[a] == i)
        ++a;
      else
        K.push_back(i);
    }

    Real theta_sum = 0;
    for (int i = 0; i < j; ++i) theta_sum += Real(J.signs[i]) * th[J.indices[i]];
    const Real vp = vd_detail::v_pair_product(J.indices.data(), J.signs.data(), j, K.data(),
                                              n - j, lam.data(), par);
    const Real u =
        vd_detail::u_block(K.data(), n - j, l - j, lam.data(), par, &imag);
    acc += std::cosh(theta_sum) * sqrt(vp) * u;
  }
  if (imag > kImagResidualTol)
    fail(Errc::ImaginaryResidual, "U block imaginary residual exceeds tolerance");
  return static_cast<double>(acc);
}

InvariantVector eval_all_H(const PhasePoint& point, const Params& par) {
  const int n = point.n();
  InvariantVector out;
  out.kind = InvariantKind::VanDiejen;
  out.n = n;
  out.values.resize(n + 1);
  for (int l = 0; l <= n; ++l) out.values[l] = reference::eval_H_l(l, point, par);
  return out;
}

}  // namespace rsvd::reference
