#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>
#include <string>

#include "rsvd/domain.hpp"

using namespace rsvd;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rsvd::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("parameter validation") {
  const Params p = validate_params(1.0, 0.5, 0.25);
  CHECK(p.mu == 1.0);
  CHECK(p.nu == 0.5);
  CHECK(p.kappa == 0.25);

  CHECK(code_of([] { validate_params(0.0, 1.0, 1.0); }) == Errc::ZeroCoupling);
  CHECK(code_of([] { validate_params(1.0, 0.0, 1.0); }) == Errc::ZeroCoupling);
  CHECK(code_of([] { validate_params(1.0, 1.0, -1.0); }) == Errc::SignViolation);
  CHECK(code_of([] { validate_params(1.0, std::nan(""), 0.0); }) == Errc::NonFinite);

  // kappa = 0 and matching negative signs are admissible
  CHECK_NOTHROW(validate_params(1.0, 1.0, 0.0));
  CHECK_NOTHROW(validate_params(-0.5, -1.0, -0.25));

  // idempotent on accepted triples
  const Params q = validate_params(p.mu, p.nu, p.kappa);
  CHECK(q.mu == p.mu);
  CHECK(q.nu == p.nu);
  CHECK(q.kappa == p.kappa);
}

TEST_CASE("phase point validation") {
  const PhasePoint pt = validate_phase_point({2.0, 1.0}, {0.3, -0.7});
  CHECK(pt.n() == 2);

  CHECK(code_of([] { validate_phase_point({1.0, 2.0}, {0.0, 0.0}); }) ==
        Errc::OrderingViolation);
  CHECK(code_of([] { validate_phase_point({1.0, -1.0}, {0.0, 0.0}); }) == Errc::NonPositive);
  CHECK(code_of([] { validate_phase_point({1.0}, {0.0, 0.0}); }) == Errc::LengthMismatch);
  CHECK(code_of([] { validate_phase_point({}, {}); }) == Errc::EmptyVector);
  CHECK(code_of([] { validate_phase_point({std::nan("")}, {0.0}); }) == Errc::NonFinite);

  // collision under the configurable guard
  CHECK(code_of([] { validate_phase_point({1.0 + 1e-12, 1.0}, {0.0, 0.0}); }) ==
        Errc::OrderingViolation);
  CHECK_NOTHROW(validate_phase_point({2.0, 1.0}, {0.0, 0.0}, 0.5));
  CHECK(code_of([] { validate_phase_point({2.0, 1.6}, {0.0, 0.0}, 0.5); }) ==
        Errc::OrderingViolation);
}

TEST_CASE("sampling is deterministic and always lands in the chamber") {
  const PhasePoint a = sample_phase_point(3, 7, 0.5, 3.0);
  const PhasePoint b = sample_phase_point(3, 7, 0.5, 3.0);
  CHECK(a.lambda == b.lambda);
  CHECK(a.theta == b.theta);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PhasePoint p = sample_phase_point(4, seed, 0.25, 2.0);
    CHECK_NOTHROW(validate_phase_point(p.lambda, p.theta, 0.25));
    for (double t : p.theta) CHECK(std::abs(t) <= 2.0);
  }

  CHECK(code_of([] { sample_phase_point(0, 1, 0.5, 1.0); }) == Errc::InvalidArgument);
  CHECK(code_of([] { sample_phase_point(2, 1, 0.0, 1.0); }) == Errc::InvalidArgument);
}

TEST_CASE("signed subset enumeration: counts and canonical order") {
  const auto five = enumerate_signed_subsets(2, 1);
  REQUIRE(five.size() == 5);
  CHECK(five[0].indices.empty());
  CHECK(five[1].indices == std::vector<int>{0});
  CHECK(five[1].signs == std::vector<int>{1});
  CHECK(five[2].indices == std::vector<int>{0});
  CHECK(five[2].signs == std::vector<int>{-1});
  CHECK(five[3].indices == std::vector<int>{1});
  CHECK(five[3].signs == std::vector<int>{1});
  CHECK(five[4].indices == std::vector<int>{1});
  CHECK(five[4].signs == std::vector<int>{-1});

  CHECK(enumerate_signed_subsets(3, 0).size() == 1);
  CHECK(enumerate_signed_subsets(3, 3).size() == 27);

  // sum_j C(n,j) 2^j, and 3^n at the full cap, without duplicates
  auto count_formula = [](int n, int cap) {
    long total = 0;
    auto choose = [](int a, int b) {
      long c = 1;
      for (int i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
      return c;
    };
    for (int j = 0; j <= cap; ++j) total += choose(n, j) << j;
    return total;
  };
  for (int n = 1; n <= 6; ++n)
    for (int cap = 0; cap <= n; ++cap) {
      const auto all = enumerate_signed_subsets(n, cap);
      CHECK(static_cast<long>(all.size()) == count_formula(n, cap));
      std::set<std::string> seen;
      for (const auto& s : all) {
        std::string key;
        for (int i = 0; i < s.size(); ++i)
          key += std::to_string(s.indices[i]) + (s.signs[i] > 0 ? "+" : "-");
        CHECK(seen.insert(key).second);
      }
    }
  long pow3 = 1;
  for (int i = 0; i < 5; ++i) pow3 *= 3;
  CHECK(enumerate_signed_subsets(5, 5).size() == static_cast<std::size_t>(pow3));

  CHECK(code_of([] { enumerate_signed_subsets(3, 4); }) == Errc::InvalidArgument);
  CHECK(code_of([] { enumerate_signed_subsets(3, -1); }) == Errc::InvalidArgument);
}
