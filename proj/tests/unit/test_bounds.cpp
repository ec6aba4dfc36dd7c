#include "support.hpp"

#include <cmath>

#include "edscorr/bounds.hpp"

using namespace testsupport;

TEST_CASE("large period threshold") {
  const double lp = std::log(1009.0);
  CHECK(large_period_threshold(1009) == doctest::Approx(std::sqrt(1009.0) * std::exp(2.1 * lp / std::log(lp))));
  CHECK_FALSE(large_period_regime(1009, 2000));
  CHECK(large_period_regime(1009, 1000000));
  CHECK(large_period_threshold(10007) > large_period_threshold(1009));
}

TEST_CASE("B1 formula and shape") {
  const BoundConstants c;
  const u64 p = 10007, R = 20000;
  const double r = R, lr = std::log(r);
  for (u64 H : {1ULL, 10ULL, 100ULL, 20000ULL}) {
    const double h = static_cast<double>(H);
    const double expect = std::pow(h, -0.125) * r * std::exp(std::sqrt(lr) / std::log(lr)) +
                          std::sqrt(h) * std::pow(r, 0.75) * std::pow(10007.0, 0.125) * lr;
    CHECK(bound_B1(p, R, H, c, false) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(bound_B1(p, R, H, c, true) <= bound_B1(p, R, H, c, false));
  }
  // Constants scale the terms.
  const BoundConstants c2{2.0, 0.0, 1.0};
  CHECK(bound_B1(p, R, 5, c2, true) ==
        doctest::Approx(2.0 * (std::pow(5.0, -0.125) * r + std::sqrt(5.0) * std::pow(r, 0.75) * std::pow(10007.0, 0.125))));
  // First term decreasing in H, second increasing.
  const BoundConstants first_only{1.0, 1.0, 1.0};
  double prev_gap = std::numeric_limits<double>::infinity();
  for (u64 H = 1; H <= 64; H *= 2) {
    const double total = bound_B1(p, R, H, first_only, true);
    const double second = std::sqrt(static_cast<double>(H)) * std::pow(r, 0.75) * std::pow(10007.0, 0.125);
    const double first = total - second;
    CHECK(first < prev_gap);
    prev_gap = first;
  }
  CHECK_THROWS_AS(bound_B1(p, 15, 1, c, false), UsageError);
  CHECK_THROWS_AS(bound_B1(p, 100, 101, c, false), UsageError);
  CHECK_THROWS_AS(bound_B1(p, 100, 0, c, false), UsageError);
}

TEST_CASE("B2 applicability and H scaling") {
  CHECK_FALSE(bound_B2(1009, 2000, 10, 1.0).has_value());
  const u64 R = 1000000;
  const auto b1 = bound_B2(1009, R, 1, 1.0);
  const auto b16 = bound_B2(1009, R, 16, 1.0);
  REQUIRE(b1);
  REQUIRE(b16);
  CHECK(*b16 == doctest::Approx(*b1 / 2.0).epsilon(1e-12));
  const double r = R, lr = std::log(r);
  CHECK(*b1 == doctest::Approx(std::pow(r, 7.0 / 6.0) * std::pow(1009.0, 1.0 / 24.0) * lr * std::pow(std::log(lr), 1.0 / 6.0)));
  CHECK(*bound_B2(1009, R, 1, 1.0, true) == doctest::Approx(*b1 / lr));
  CHECK(*bound_B2(1009, R, 1, 3.0) == doctest::Approx(3.0 * *b1));
  CHECK_THROWS_AS(bound_B2(1009, 10, 1, 1.0), UsageError);
}

TEST_CASE("spectrum budget") {
  CHECK_FALSE(spectrum_budget(1009, 2000, 1.0).has_value());
  const auto b = spectrum_budget(1009, 1000000, 1.0);
  REQUIRE(b);
  CHECK(*b == doctest::Approx(std::pow(1009.0, 1.0 / 12) * std::pow(1e6, 5.0 / 6) * std::pow(std::log(std::log(1e6)), 1.0 / 3)));
}

TEST_CASE("exceptional shifts against a direct scan") {
  const CharSeq seq(toy_context(), char_build(PrimeField(5), 2));
  const auto s = seq.as_complex();
  const auto res = exceptional_count(seq, 18, 17, 0.5);
  u64 scan = 0;
  for (i64 h = 1; h <= 17; ++h) {
    if (std::abs(oracle::direct_corr(s, 18, h, false)) >= 9.0) ++scan;
  }
  CHECK(res.count == scan);
  CHECK_FALSE(res.applicable);
  CHECK(res.rhs > 0);
  CHECK(exceptional_count(seq, 18, 17, 1.01).count == 0);
  u64 prev = 1000;
  for (double delta : {0.01, 0.1, 0.3, 0.5, 0.8, 1.0}) {
    const u64 c = exceptional_count(seq, 18, 17, delta).count;
    CHECK(c <= prev);
    prev = c;
  }
  CHECK_THROWS_AS(exceptional_count(seq, 18, 17, 0.0), UsageError);
  CHECK_THROWS_AS(exceptional_count(seq, 18, 19, 0.5), UsageError);
}
