#include "rsvd/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "rsvd/domain.hpp"

namespace rsvd {

namespace eq_detail {

Real mpz_to_real(const mpz_class& z) {
  // Exact for |z| < 2^64; the numeric transforms only ever see small n.
  return strtold(z.get_str().c_str(), nullptr);
}

Real binom_real(long a, long b) { return mpz_to_real(binom(a, b)); }

}  // namespace eq_detail

using eq_detail::binom_real;
using eq_detail::mpz_to_real;

Real eval_M(int k, std::span<const Real> q) {
  const int n = static_cast<int>(q.size());
  if (k < 0 || k > n) fail(Errc::InvalidArgument, "M_k: order out of range");
  if (k == 0) return Real(1);

  Real acc = 0;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    const std::uint32_t patterns = 1u << k;
    for (std::uint32_t mask = 0; mask < patterns; ++mask) {
      Real s = 0;
      for (int i = 0; i < k; ++i) {
        const Real qi = q[comb[i]];
        s += (mask >> (k - 1 - i)) & 1u ? -qi : qi;
      }
      acc += std::cosh(s);
    }
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return acc;
}

Real eval_cH(int l, std::span<const Real> q) {
  const int n = static_cast<int>(q.size());
  if (l < 0 || l > n) fail(Errc::InvalidArgument, "cH_l: level out of range");

  Real acc = 0;
  for (int k = 0; k <= l; ++k) {
    Real weight = binom_real(n - k, l - k);
    Real sign_pow = 1;
    for (int i = 0; i < l - k; ++i) sign_pow *= Real(-2);
    acc += sign_pow * weight * eval_M(k, q);
  }
  return acc;
}

Real eval_cK(int m, std::span<const Real> q) {
  const int n = static_cast<int>(q.size());
  if (m < 0 || m > n) fail(Errc::InvalidArgument, "cK_m: order out of range");

  Real acc = 0;
  for (int a = 0; 2 * a <= m; ++a)
    acc += binom_real(n - (m - 2 * a), a) * eval_M(m - 2 * a, q);
  return (m & 1) ? -acc : acc;
}

Real elem_sym(std::span<const Real> values, int l) {
  const int n = static_cast<int>(values.size());
  if (l < 0 || l > n) fail(Errc::InvalidArgument, "e_l: order out of range");

  std::vector<Real> e(l + 1, Real(0));
  e[0] = Real(1);
  for (int i = 0; i < n; ++i)
    for (int m = std::min(l, i + 1); m >= 1; --m) e[m] += values[i] * e[m - 1];
  return e[l];
}

mpz_class binom(long a, long b) {
  if (a < 0 || b < 0 || b > a) return mpz_class(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

namespace {

// Integer form of the Forward entry: (A+B)/A * C(A,B) rewritten as
// C(A,B) + C(A-1,B-1), which also covers the 0/0 corner A = B = 0.
mpz_class forward_entry(long A, long B) { return binom(A, B) + binom(A - 1, B - 1); }

// mpq_class(num, den) does not canonicalize; comparisons need it.
mpq_class ratio(long num, long den) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

void check_forward_rational_form(int n, int j, int k, const mpz_class& integer_form) {
  const long A = 2L * n - j - k;
  const long B = j - k;
  if (A == 0) return;  // rational form undefined; integer form defines the entry
  const mpq_class rational = ratio(A + B, A) * mpq_class(binom(A, B));
  if (rational != mpq_class(integer_form)) {
    std::ostringstream os;
    os << "forward coefficient rewriting failed at n=" << n << " j=" << j << " k=" << k;
    fail(Errc::IdentityFailure, os.str());
  }
}

}  // namespace

ExactCoeffMatrix coeff_matrix(int n, int l, CoeffFlavor flavor) {
  if (l < 1 || l > n) fail(Errc::InvalidArgument, "coeff_matrix: need 1 <= l <= n");

  ExactCoeffMatrix m;
  m.n = n;
  m.l = l;
  m.flavor = flavor;
  m.entries.assign(l + 1, std::vector<mpz_class>(l + 1, mpz_class(0)));
  for (int j = 0; j <= l; ++j)
    for (int k = 0; k <= j; ++k) {
      if (flavor == CoeffFlavor::Forward) {
        m.entries[j][k] = forward_entry(2L * n - j - k, j - k);
        check_forward_rational_form(n, j, k, m.entries[j][k]);
      } else {
        m.entries[j][k] = binom(2L * (n - k), j - k);
      }
    }
  return m;
}

InvariantVector vd_from_lax(const InvariantVector& K, int n) {
  if (K.kind != InvariantKind::LaxSpectral)
    fail(Errc::InvalidArgument, "vd_from_lax: input must be spectral invariants");
  const int l = K.top();
  if (l < 0 || l > n) fail(Errc::LengthMismatch, "vd_from_lax: need 1 <= |K| <= n+1 values");

  InvariantVector H;
  H.kind = InvariantKind::VanDiejen;
  H.n = n;
  H.values.resize(l + 1);
  if (l == 0) {
    H.values[0] = K.values[0];
    return H;
  }
  const auto A = coeff_matrix(n, l, CoeffFlavor::Forward);
  for (int j = 0; j <= l; ++j) {
    Real acc = 0;
    for (int k = 0; k <= j; ++k) acc += mpz_to_real(A.at(j, k)) * K.values[k];
    H.values[j] = (j & 1) ? -acc : acc;
  }
  return H;
}

InvariantVector lax_from_vd(const InvariantVector& H, int n) {
  if (H.kind != InvariantKind::VanDiejen)
    fail(Errc::InvalidArgument, "lax_from_vd: input must be van Diejen values");
  const int top = H.top();
  if (top < 0 || top > n) fail(Errc::LengthMismatch, "lax_from_vd: need 1 <= |H| <= n+1 values");

  InvariantVector K;
  K.kind = InvariantKind::LaxSpectral;
  K.n = n;
  K.values.resize(top + 1);
  for (int m = 0; m <= top; ++m) {
    Real acc = 0;
    for (int l = 0; l <= m; ++l) acc += binom_real(2L * (n - l), m - l) * H.values[l];
    K.values[m] = (m & 1) ? -acc : acc;
  }
  return K;
}

RecursionReport verify_recursions(std::span<const Real> q, Real q_extra) {
  const int n = static_cast<int>(q.size());
  if (n < 1) fail(Errc::InvalidArgument, "recursions need at least one variable");

  std::vector<Real> ext(q.begin(), q.end());
  ext.push_back(q_extra);

  RecursionReport rep;
  rep.h_resid.resize(n + 1);
  rep.k_resid.resize(n + 1);

  const Real sh = std::sinh(q_extra / Real(2));
  const Real grow_h = Real(4) * sh * sh;
  const Real grow_k = Real(2) * std::cosh(q_extra);

  for (int l = 0; l <= n; ++l) {
    const Real lhs = eval_cH(l, ext);
    const Real rhs = eval_cH(l, q) + (l >= 1 ? grow_h * eval_cH(l - 1, q) : Real(0));
    rep.h_resid[l] = rel_resid(lhs, rhs);
  }
  for (int k = 0; k <= n; ++k) {
    const Real lhs = eval_cK(k, ext);
    Real rhs = eval_cK(k, q);
    if (k >= 1) rhs -= grow_k * eval_cK(k - 1, q);  // with cK_{-1} identically zero
    if (k >= 2) rhs += eval_cK(k - 2, q);
    rep.k_resid[k] = rel_resid(lhs, rhs);
  }
  return rep;
}

double RecursionReport::max_residual() const {
  double m = 0.0;
  for (double r : h_resid) m = std::max(m, r);
  for (double r : k_resid) m = std::max(m, r);
  return m;
}

namespace {

// Linear polynomial c0 + c1 * X in the formal indeterminate X = 2 cosh(alpha).
struct LinPoly {
  mpz_class c0, c1;

  bool operator==(const LinPoly& o) const { return c0 == o.c0 && c1 == o.c1; }
};

[[noreturn]] void identity_counterexample(const std::string& what) {
  fail(Errc::IdentityFailure, "identity counterexample: " + what);
}

long sweep_subset_sum(int n_max) {
  long cells = 0;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l <= n; ++l)
      for (int s = 0; s <= l; ++s) {
        mpq_class sum(0);
        const mpq_class denom(binom(n - s, l - s));
        for (int a = 0; 2 * a <= l - s; ++a) {
          const long A = 2L * n - l - s - 2 * a;
          const long B = l - s - 2L * a;
          const mpz_class w = binom(A, B) + binom(A - 1, B - 1);
          if (A != 0) {
            // the literal rational weight where it is defined
            const mpq_class lit = ratio(A + B, A) * mpq_class(binom(A, B));
            if (lit != mpq_class(w)) {
              std::ostringstream os;
              os << "weight rewriting at n=" << n << " l=" << l << " |J|=" << s << " a=" << a;
              identity_counterexample(os.str());
            }
          }
          sum += mpq_class(w * binom(n - s, a)) / denom;
        }
        mpz_class expect(1);
        expect <<= (l - s);
        if (sum != mpq_class(expect)) {
          std::ostringstream os;
          os << "subset sum at n=" << n << " l=" << l << " |J|=" << s;
          identity_counterexample(os.str());
        }
        ++cells;
      }
  return cells;
}

long sweep_recursion_step(int n_max) {
  long cells = 0;
  for (int n = 1; n <= n_max; ++n) {
    const auto An = coeff_matrix(n, n, CoeffFlavor::Forward);
    const auto An1 = coeff_matrix(n + 1, n, CoeffFlavor::Forward);  // truncated to (n+1)^2
    // H-step matrix times A(n): entry (j,k) = A(n)_{jk} + (2 - X) A(n)_{j-1,k}
    // A(n+1) times K-step matrix: entry (j,k) = A(n+1)_{jk} - X A(n+1)_{j,k+1}
    //                                          + A(n+1)_{j,k+2}
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) {
        LinPoly lhs{An.at(j, k), mpz_class(0)};
        if (j >= 1) {
          lhs.c0 += 2 * An.at(j - 1, k);
          lhs.c1 -= An.at(j - 1, k);
        }
        LinPoly rhs{An1.at(j, k), mpz_class(0)};
        if (k + 1 <= n) rhs.c1 -= An1.at(j, k + 1);
        if (k + 2 <= n) rhs.c0 += An1.at(j, k + 2);
        if (!(lhs == rhs)) {
          std::ostringstream os;
          os << "recursion step at n=" << n << " j=" << j << " k=" << k
             << " (A=" << 2 * n - j - k << ", B=" << j - k << ")";
          identity_counterexample(os.str());
        }
        ++cells;
      }
  }
  return cells;
}

long sweep_inverse_pair(int n_max) {
  long cells = 0;
  for (int n = 1; n <= n_max; ++n) {
    const auto A = coeff_matrix(n, n, CoeffFlavor::Forward);
    const auto B = coeff_matrix(n, n, CoeffFlavor::Inverse);
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) {
        mpz_class acc(0);
        for (int m = 0; m <= n; ++m) {
          mpz_class t = A.at(j, m) * B.at(m, k);
          // D A D B with D = diag((-1)^j)
          if ((j + m) & 1) t = -t;
          acc += t;
        }
        if (acc != mpz_class(j == k ? 1 : 0)) {
          std::ostringstream os;
          os << "inverse pair at n=" << n << " j=" << j << " k=" << k;
          identity_counterexample(os.str());
        }
        ++cells;
      }
  }
  return cells;
}

}  // namespace

IdentityReport verify_exact_identities(int n_max) {
  if (n_max < 1) fail(Errc::InvalidArgument, "identity sweep needs n_max >= 1");

  IdentityReport rep;
  rep.n_max = n_max;
  rep.checks.push_back({"subset-sum-weights",
                        "signed-subset weight sums collapse to 2^(l-|J|), big rationals",
                        sweep_subset_sum(n_max)});
  rep.checks.push_back({"coefficient-recursion-step",
                        "variable-extension step as linear polynomials in X = 2cosh(alpha), "
                        "entrywise with (A,B) = (2n-j-k, j-k)",
                        sweep_recursion_step(n_max)});
  rep.checks.push_back({"inverse-pair",
                        "D A(n) D B(n) = identity in exact integers",
                        sweep_inverse_pair(n_max)});
  return rep;
}

long IdentityReport::cells_checked() const {
  long total = 0;
  for (const auto& c : checks) total += c.cells;
  return total;
}

}  // namespace rsvd
