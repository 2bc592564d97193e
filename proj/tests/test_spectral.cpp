#include <doctest.h>

#include <cmath>

#include "rsvd/equivalence.hpp"
#include "rsvd/spectral.hpp"
#include "rsvd/vandiejen.hpp"

using namespace rsvd;

namespace {

LaxMatrix diagonal_lax(const std::vector<double>& entries) {
  LaxMatrix lax;
  lax.n = static_cast<int>(entries.size()) / 2;
  lax.L = CMat<Real>(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    lax.L(static_cast<int>(i), static_cast<int>(i)) = cx<Real>(Real(entries[i]));
  return lax;
}

long choose(int a, int b) {
  long c = 1;
  for (int i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
  return c;
}

}  // namespace

TEST_CASE("characteristic coefficients of the identity matrix") {
  const LaxMatrix lax = diagonal_lax({1.0, 1.0, 1.0, 1.0});
  const auto cp = char_poly_eigen(lax);
  REQUIRE(cp.K.size() == 5);
  for (int m = 0; m <= 4; ++m) {
    const double expect = (m % 2 ? -1.0 : 1.0) * static_cast<double>(choose(4, m));
    CHECK(static_cast<double>(cp.K[m]) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("LeVerrier on a 2x2 diagonal") {
  const auto cp = char_poly_leverrier(diagonal_lax({2.0, 0.5}));
  REQUIRE(cp.K.size() == 3);
  CHECK(static_cast<double>(cp.K[0]) == doctest::Approx(1.0));
  CHECK(static_cast<double>(cp.K[1]) == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(static_cast<double>(cp.K[2]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("actions of an asymptotic diagonal matrix") {
  const std::vector<Real> q = {2.0L, 1.0L, 0.5L};
  std::vector<double> diag;
  for (Real v : q) diag.push_back(std::exp(-static_cast<double>(v)));
  for (Real v : q) diag.push_back(std::exp(static_cast<double>(v)));
  const LaxMatrix lax = diagonal_lax(diag);

  const ActionVector a = extract_actions(lax);
  REQUIRE(a.n() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(static_cast<double>(a.q[i]) == doctest::Approx(static_cast<double>(q[i])).epsilon(1e-12));

  const auto cp = char_poly_eigen(lax);
  for (int m = 0; m <= 3; ++m)
    CHECK(rel_resid(cp.K[m], eval_cK(m, q)) < 1e-12);
}

TEST_CASE("extraction error paths") {
  CHECK_THROWS_AS(extract_actions(diagonal_lax({-1.0, -1.0})), Error);  // positivity
  CHECK_THROWS_AS(extract_actions(diagonal_lax({3.0, 2.0})), Error);    // pairing
  CHECK_THROWS_AS(extract_actions(diagonal_lax({1.0, 1.0})), Error);    // degenerate
  try {
    extract_actions(diagonal_lax({1.0, 1.0}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateAction);
  }
}

TEST_CASE("coefficient routes agree and the palindrome holds on built matrices") {
  const std::vector<Params> params = {
      {1.0, 1.0, 0.0}, {1.0, 1.0, 0.5}, {0.8, -1.1, -0.3}, {0.6, -0.9, -0.7}};
  for (const auto& par : params)
    for (int n = 1; n <= 4; ++n)
      for (int rep = 0; rep < 4; ++rep) {
        const PhasePoint pt = sample_phase_point(n, 300 * n + rep, 0.55, 1.4);
        const LaxMatrix lax = build_lax(pt, par);
        const auto ce = char_poly_eigen(lax);
        const auto cl = char_poly_leverrier(lax);
        REQUIRE(ce.K.size() == cl.K.size());
        for (std::size_t m = 0; m < ce.K.size(); ++m)
          CHECK(rel_resid(ce.K[m], cl.K[m]) < 1e-8);

        // palindrome K_{2n-m} = K_m
        for (int m = 0; m <= n; ++m)
          CHECK(rel_resid(ce.K[m], ce.K[2 * n - m]) < 1e-10);

        // spectrum closed under reciprocals
        auto eig = hermitian_eigenvalues(lax);
        for (int i = 0; i < n; ++i) {
          const double prod =
              static_cast<double>(eig[i] * eig[2 * n - 1 - i]);  // ascending order pairs ends
          CHECK(std::abs(prod - 1.0) < 1e-8);
        }

        // K_1 = -2H
        const double h = eval_main_H(pt, par);
        CHECK(std::abs(static_cast<double>(ce.K[1]) + 2.0 * h) < 1e-10 * (1.0 + 2.0 * h));
      }
}

TEST_CASE("pullback consistency through extracted actions") {
  const std::vector<Params> params = {{1.0, 1.0, 0.5}, {0.7, -0.8, -0.4}};
  for (const auto& par : params)
    for (int n = 1; n <= 4; ++n) {
      const PhasePoint pt = sample_phase_point(n, 900 + 7 * n, 0.6, 1.3);
      const LaxMatrix lax = build_lax(pt, par);
      const ActionVector act = extract_actions(lax);

      // actions strictly decreasing
      for (int i = 0; i + 1 < n; ++i) CHECK(act.q[i] > act.q[i + 1]);

      for (int l = 0; l <= n; ++l)
        CHECK(rel_resid(Real(eval_H_l(l, pt, par)), eval_cH(l, act.q)) < 1e-9);
      const auto cp = char_poly_eigen(lax);
      for (int m = 0; m <= n; ++m)
        CHECK(rel_resid(cp.K[m], eval_cK(m, act.q)) < 1e-9);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
  LaxMatrix lax = diagonal_lax({1.0, 1.0});
  lax.L(0, 1) = cx<Real>(Real(0), Real(0.5));  // no conjugate partner
  CHECK_THROWS_AS(char_poly_eigen(lax), Error);
}
