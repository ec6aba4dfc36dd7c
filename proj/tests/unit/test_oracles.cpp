#include <doctest.h>

#include <cmath>

#include "edscorr/oracles.hpp"
#include "edscorr/rng.hpp"

namespace orc = edscorr::oracle;
using orc::u64;

namespace {

bool singular(u64 p, u64 a, u64 b) {
  return (4 * (a * a % p) % p * a + 27 * (b * b % p)) % p == 0;
}

}  // namespace

TEST_CASE("base cases coefficient for coefficient") {
  edscorr::Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const u64 p = std::vector<u64>{101, 1009, 10007, 65537}[rng.uniform(4)];
    const u64 a = rng.uniform(p), b = rng.uniform(p);
    const auto t = orc::poly_psi_table(p, a, b, 4);
    REQUIRE(t.size() == 5);
    CHECK(t[0].is_zero());
    CHECK(t[1].c0 == std::vector<u64>{1});
    CHECK(t[1].c1.empty());
    CHECK(t[2].c0.empty());
    CHECK(t[2].c1 == std::vector<u64>{2});
    const auto m = [&](long long v) { return static_cast<u64>(((v % static_cast<long long>(p)) + static_cast<long long>(p)) % static_cast<long long>(p)); };
    const long long A = static_cast<long long>(a), B = static_cast<long long>(b);
    std::vector<u64> psi3{m(-(A * A % static_cast<long long>(p))), m(12 * B), m(6 * A), 0, 3};
    while (!psi3.empty() && psi3.back() == 0) psi3.pop_back();
    CHECK(t[3].c0 == psi3);
    CHECK(t[3].c1.empty());
    const long long P = static_cast<long long>(p);
    std::vector<u64> psi4{m(4 * m(-8 * (B * B % P) - (A * A % P) * A % P)), m(4 * m(-4 * A * B)),
                          m(4 * m(-5 * (A * A % P))), m(4 * 20 * B), m(4 * 5 * A), 0, 4};
    while (!psi4.empty() && psi4.back() == 0) psi4.pop_back();
    CHECK(t[4].c0.empty());
    CHECK(t[4].c1 == psi4);
  }
}

TEST_CASE("toy evaluations") {
  const auto t = orc::poly_psi_table(5, 1, 1, 10);
  CHECK(orc::poly_eval(t[2], 0, 1) == 2);
  CHECK(orc::poly_eval(t[3], 0, 1) == 4);
  CHECK(orc::poly_eval(t[4], 0, 1) == 4);
  CHECK(orc::poly_eval(t[5], 0, 1) == 3);
  CHECK(orc::poly_eval(t[9], 0, 1) == 0);
  CHECK(orc::poly_psi(5, 1, 1, 5) == t[5]);
  CHECK_THROWS(orc::poly_psi(5, 1, 1, 70));
}

TEST_CASE("x-degree of odd and even psi") {
  const auto t = orc::poly_psi_table(10007, 3, 7, 30);
  for (long n = 1; n <= 30; ++n) {
    if (n % 2 == 1) {
      CHECK(t[n].x_degree() == (n * n - 1) / 2);
      CHECK(t[n].c1.empty());
    } else {
      CHECK(t[n].x_degree() == (n * n - 4) / 2);
      CHECK(t[n].c0.empty());
    }
  }
}

TEST_CASE("exact division never leaves a remainder") {
  edscorr::Rng rng(2);
  int built = 0;
  while (built < 20) {
    const u64 p = 1009;
    const u64 a = rng.uniform(p), b = rng.uniform(p);
    if (singular(p, a, b)) continue;
    CHECK_NOTHROW(orc::poly_psi_table(p, a, b, 48));
    ++built;
  }
}

TEST_CASE("zeros of psi_n are exactly the n-torsion points") {
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 23ULL, 31ULL, 47ULL}) {
    for (u64 a = 0; a < p; a += 2) {
      const u64 b = (a + 3) % p;
      if (singular(p, a, b)) continue;
      const auto t = orc::poly_psi_table(p, a, b, 24);
      for (const auto& pt : orc::brute_points(p, a, b)) {
        for (u64 n = 1; n <= 24; ++n) {
          const bool torsion = !orc::brute_multiple(p, a, n, pt).has_value();
          CHECK((orc::poly_eval(t[n], pt.first, pt.second) == 0) == torsion);
        }
      }
    }
  }
}

TEST_CASE("brute group helpers") {
  CHECK(orc::brute_points(5, 1, 1).size() == 8);
  const orc::Pt P = std::make_pair<u64, u64>(0, 1);
  CHECK(orc::brute_add(5, 1, P, P) == orc::Pt(std::make_pair<u64, u64>(4, 2)));
  CHECK(orc::brute_order(5, 1, P) == 9);
  CHECK(orc::brute_multiple(5, 1, 0, P) == std::nullopt);
  CHECK(orc::brute_primitive_root(5) == 2);
  CHECK(orc::brute_primitive_root(7) == 3);
  CHECK(orc::brute_char_exponent(5, 2, 2, 0) == -1);
  CHECK(orc::brute_char_exponent(5, 2, 2, 4) == 0);
  CHECK(orc::brute_char_exponent(5, 2, 2, 2) == 1);
}

TEST_CASE("direct sums") {
  const std::vector<std::complex<double>> s{1, -1, 1, 1, -1};
  CHECK(orc::direct_corr(s, 0, 1, false) == std::complex<double>(0, 0));
  CHECK(orc::direct_corr(s, 3, 1, false).real() == doctest::Approx(-1));
  CHECK(orc::direct_corr(s, 5, 0, true).real() == doctest::Approx(5));
  CHECK(orc::direct_corr(s, 5, 5, true).real() == doctest::Approx(5));
  const auto z = orc::direct_twisted_sum(s, 0);
  CHECK(z.real() == doctest::Approx(1));
  CHECK(std::abs(orc::direct_twisted_sum(s, 2) - orc::direct_twisted_sum(s, 7)) < 1e-12);
}
