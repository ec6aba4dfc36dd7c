#include "support.hpp"

#include <cmath>

using namespace testsupport;
namespace orc = edscorr::oracle;

namespace {

CharSeq toy_seq() { return CharSeq(toy_context(), char_build(PrimeField(5), 2)); }

struct Case {
  u64 p;
  u64 d;
};

// Small contexts spanning every order in {2, 3, 4, 6} that divides p - 1.
std::vector<CharSeq> sample_seqs(u64 seed, u64 max_R = 6000) {
  Rng rng(seed);
  std::vector<CharSeq> out;
  out.push_back(toy_seq());
  for (Case c : {Case{13, 3}, Case{13, 4}, Case{13, 6}, Case{101, 2}, Case{101, 4},
                 Case{1009, 2}, Case{1009, 3}, Case{1009, 6}}) {
    for (int tries = 0; tries < 50; ++tries) {
      const EdsContext ctx = random_context(c.p, rng);
      if (c.d * ctx.order() > max_R) continue;
      out.emplace_back(ctx, char_build(ctx.field(), c.d));
      break;
    }
  }
  return out;
}

// sum_n prod_j s_{n + shifts_j} with complex arithmetic.
std::complex<double> oracle_tuple(const std::vector<std::complex<double>>& s, u64 N, bool base,
                                  const std::vector<u64>& shifts) {
  std::complex<double> total{0, 0};
  for (u64 n = 1; n <= N; ++n) {
    std::complex<double> term = base ? s[n - 1] : 1.0;
    for (u64 h : shifts) term *= s[(n - 1 + h) % s.size()];
    total += term;
  }
  return total;
}

}  // namespace

TEST_CASE("toy sequence end to end") {
  const CharSeq seq = toy_seq();
  CHECK(seq.period() == 18);
  const std::vector<int> head{1, -1, 1, 1, -1};
  for (int n = 1; n <= 5; ++n) CHECK(seq.at(n).to_complex().real() == head[n - 1]);
  CHECK(seq.at(9).is_zero());
  CHECK(seq.at(18).is_zero());
  CHECK(seq.at(19) == seq.at(1));
  CHECK(seq.at(0) == seq.at(18));

  // The direct-definition oracle rebuilt from the symbolic psi and brute characters.
  const auto table = orc::poly_psi_table(5, 1, 1, 18);
  std::vector<std::complex<double>> s;
  for (int n = 1; n <= 18; ++n) {
    const i64 e = orc::brute_char_exponent(5, 2, 2, orc::poly_eval(table[n], 0, 1));
    s.push_back(e < 0 ? 0.0 : (e == 0 ? 1.0 : -1.0));
  }
  CHECK(to_complex(seq.values()) == s);

  CHECK(sum_S(seq, 0).is_zero());
  CHECK(sum_S(seq, 4).to_complex().real() == doctest::Approx(2));
  CHECK(sum_S(seq, 4).canonical() == CycloVec(std::vector<i64>{2, 0}).canonical());
  CHECK(corr_S(seq, 3, 1, false).to_complex().real() == doctest::Approx(-1));
  CHECK(orc::direct_corr(s, 3, 1, false).real() == doctest::Approx(-1));
  CHECK_THROWS_AS(sum_S(seq, 19), UsageError);
  for (u64 N = 0; N <= 18; ++N) CHECK(std::abs(sum_S(seq, N).to_complex()) <= N + 1e-12);
}

TEST_CASE("periodicity and zero pattern") {
  for (const CharSeq& seq : sample_seqs(1)) {
    const u64 R = seq.period();
    const u64 ord = seq.context().order();
    CHECK(R == seq.order() * ord);
    const auto twice = char_values(seq.context(), seq.character(), 1, 3 * R);
    u64 zeros = 0;
    for (u64 n = 1; n <= 3 * R; ++n) {
      CHECK(twice[n - 1] == seq.values()[(n - 1) % R]);
      CHECK(twice[n - 1].is_zero() == (n % ord == 0));
      if (n <= R && twice[n - 1].is_zero()) ++zeros;
    }
    CHECK(zeros == seq.order());
  }
}

TEST_CASE("correlations match the direct oracle") {
  Rng rng(2);
  for (const CharSeq& seq : sample_seqs(2)) {
    const auto s = seq.as_complex();
    const u64 R = seq.period();
    for (int i = 0; i < 20; ++i) {
      const u64 N = 1 + rng.uniform(R);
      const i64 h = rng.range(-2 * static_cast<i64>(R), 2 * static_cast<i64>(R));
      for (bool conj : {false, true}) {
        CHECK(rel_diff(corr_S(seq, N, h, conj).to_complex(), orc::direct_corr(s, N, h, conj)) < 1e-9);
      }
    }
    // h = 0 mod R with conjugation counts the nonzero terms.
    const u64 ord = seq.context().order();
    CHECK(corr_S(seq, R, static_cast<i64>(R), true).to_complex().real() ==
          doctest::Approx(static_cast<double>(R - seq.order())));
    CHECK(corr_S(seq, ord, 0, true).to_complex().real() == doctest::Approx(static_cast<double>(ord - 1)));
    if (seq.order() == 2) {
      CHECK(corr_S(seq, R, 3, true) == corr_S(seq, R, 3, false));
    }
  }
}

TEST_CASE("all shifts: direct, fft and the oracle agree") {
  for (const CharSeq& seq : sample_seqs(3)) {
    const auto s = seq.as_complex();
    const u64 R = seq.period();
    for (bool conj : {false, true}) {
      const auto direct = corr_all_shifts(seq, R, R, conj, Strategy::kDirect);
      const auto fft = corr_all_shifts(seq, R, R, conj, Strategy::kFft);
      REQUIRE(direct.size() == R);
      for (u64 h = 1; h <= R; ++h) {
        CHECK(rel_diff(fft[h - 1], direct[h - 1]) <= 1e-9);
        CHECK(rel_diff(direct[h - 1], orc::direct_corr(s, R, static_cast<i64>(h), conj)) <= 1e-9);
        CHECK(std::abs(direct[h - 1]) <= static_cast<double>(R) + 1e-9);
      }
    }
    const u64 N = R / 2 + 1;
    const auto partial = corr_all_shifts(seq, N, 5, false);
    for (u64 h = 1; h <= 5; ++h) CHECK(rel_diff(partial[h - 1], orc::direct_corr(s, N, static_cast<i64>(h), false)) < 1e-9);
    CHECK(corr_all_shifts(seq, N, 1, false)[0] == partial[0]);
    CHECK(corr_all_shifts(seq, N, 5, false) == partial);
  }
  const CharSeq toy = toy_seq();
  CHECK_THROWS_AS(corr_all_shifts(toy, 17, 3, false, Strategy::kFft), UsageError);
  CHECK_THROWS_AS(corr_all_shifts(toy, 18, 19, false), UsageError);
  CHECK_THROWS_AS(corr_all_shifts(toy, 0, 3, false), UsageError);
  CHECK_THROWS_AS(corr_all_shifts(toy, 18, 0, false), UsageError);
}

TEST_CASE("T sum bounds and monotonicity") {
  for (const CharSeq& seq : sample_seqs(4)) {
    const u64 R = seq.period();
    double prev = 0;
    for (u64 H : {u64{1}, u64{2}, R / 3 + 1, R / 2, R}) {
      const double t = T_sum(seq, H);
      CHECK(t >= prev - 1e-9);
      CHECK(t <= static_cast<double>(H) * R * R + 1e-6);
      CHECK(std::abs(t - T_sum(seq, H, Strategy::kFft)) <= 1e-9 * std::max(1.0, t));
      prev = t;
    }
  }
}

TEST_CASE("spectrum, Parseval and single frequencies") {
  for (const CharSeq& seq : sample_seqs(5)) {
    const auto s = seq.as_complex();
    const u64 R = seq.period();
    const auto spec = spectrum(seq);
    REQUIRE(spec.size() == R);
    double energy = 0;
    for (const auto& v : spec) {
      energy += std::norm(v);
      CHECK(std::abs(v) <= static_cast<double>(R) + 1e-6);
    }
    const double parseval = static_cast<double>(R) * seq.order() * (seq.context().order() - 1);
    CHECK(std::abs(energy - parseval) <= 1e-9 * parseval);
    for (u64 a : {u64{1}, u64{2}, R / 2, R - 1, R}) {
      CHECK(rel_diff(spectrum_at(seq, static_cast<i64>(a)), spec[a - 1]) <= 1e-9);
      CHECK(rel_diff(spectrum_at(seq, static_cast<i64>(a)), orc::direct_twisted_sum(s, static_cast<i64>(a))) <= 1e-9);
      CHECK(rel_diff(spectrum_at(seq, static_cast<i64>(a + R)), spectrum_at(seq, static_cast<i64>(a))) <= 1e-12);
    }
  }
}

TEST_CASE("spectral identity for T at the full period") {
  for (const CharSeq& seq : sample_seqs(6)) {
    const u64 R = seq.period();
    const auto id = spectral_T_identity(seq);
    CHECK(std::abs(id.lhs - id.rhs) <= 1e-6 * id.rhs);
    const double single = std::pow(static_cast<double>(seq.order() * (seq.context().order() - 1)), 2);
    CHECK(id.lhs >= single - 1e-6);
    CHECK(id.rhs >= single - 1e-6);
    // Reindexing lambda -> -lambda.
    const auto spec = spectrum(seq);
    double flipped = 0;
    for (u64 l = 1; l <= R; ++l) flipped += std::norm(spec[(R - l + R - 1) % R]) * std::norm(spec[l - 1]);
    CHECK(std::abs(flipped / R - id.rhs) <= 1e-9 * id.rhs);
  }
}

TEST_CASE("U and V against tuple enumeration") {
  for (const CharSeq& seq : sample_seqs(7, 1200)) {
    const auto s = seq.as_complex();
    const u64 R = seq.period();
    const u64 H = std::min<u64>(R, 7);
    const u64 N = R - 3;
    const auto u2 = U_avg(seq, 2, H, N);
    CHECK_FALSE(u2.sampled);
    CHECK(u2.tuples_total == H);
    CHECK(u2.value == doctest::Approx(U2_from_shifts(seq, H, N)).epsilon(1e-12));
    double oracle_u2 = 0;
    for (u64 h = 1; h <= H; ++h) oracle_u2 += std::abs(orc::direct_corr(s, N, static_cast<i64>(h), false));
    CHECK(u2.value == doctest::Approx(oracle_u2 / H).epsilon(1e-12));
    CHECK(u2.value <= N + 1e-9);

    const auto u3 = U_avg(seq, 3, H, N);
    double oracle_u3 = 0;
    for (u64 a = 1; a <= H; ++a)
      for (u64 b = 1; b <= H; ++b) oracle_u3 += std::abs(oracle_tuple(s, N, true, {a, b}));
    CHECK(u3.value == doctest::Approx(oracle_u3 / (H * H)).epsilon(1e-12));

    const auto v2 = V_avg(seq, 2, H, N);
    double oracle_v2 = 0;
    for (u64 a = 1; a <= H; ++a)
      for (u64 b = 1; b <= H; ++b) oracle_v2 += std::abs(oracle_tuple(s, N, false, {a, b}));
    CHECK(v2.value == doctest::Approx(oracle_v2 / (H * H)).epsilon(1e-12));
    CHECK(v2.value <= N + 1e-9);
    // Diagonal terms of V_2 are |sum chi(psi_{n+h})^2|.
    for (u64 h = 1; h <= H; ++h) {
      std::complex<double> diag{0, 0};
      for (u64 n = 1; n <= N; ++n) diag += std::pow(s[(n - 1 + h) % R], 2);
      CHECK(rel_diff(tuple_sum(seq, N, false, {h, h}), diag) < 1e-9);
    }
    // Shift invariance of full-period V terms.
    for (u64 a = 1; a <= 3; ++a)
      for (u64 c = 1; c <= 4; ++c)
        CHECK(rel_diff(tuple_sum(seq, R, false, {a, a + 2, a + 5}), tuple_sum(seq, R, false, {a + c, a + c + 2, a + c + 5})) < 1e-9);
  }
}

TEST_CASE("tuple sampling") {
  const CharSeq seq = toy_seq();
  const auto full = U_avg(seq, 3, 4, 18);
  const auto sampled = U_avg(seq, 3, 4, 18, SampleSpec{16, 99});
  CHECK(sampled.sampled);
  CHECK(sampled.tuples_used == 16);
  CHECK(sampled.value == full.value);
  // Determinism under a fixed seed, and dependence on the count.
  const auto a = V_avg(seq, 3, 10, 18, SampleSpec{50, 7});
  const auto b = V_avg(seq, 3, 10, 18, SampleSpec{50, 7});
  CHECK(a.value == b.value);
  CHECK(a.tuples_total == 1000);
  CHECK(a.tuples_used == 50);
  CHECK(a.value <= 18);
  // Over budget without a sample spec.
  CHECK_THROWS_AS(U_avg(seq, 6, 18, 18), CapacityError);
  CHECK_NOTHROW(U_avg(seq, 6, 18, 18, SampleSpec{100, 1}));
  CHECK_THROWS_AS(U_avg(seq, 1, 4, 18), UsageError);
  CHECK_THROWS_AS(V_avg(seq, 2, 19, 18), UsageError);
  CHECK_THROWS_AS(U_avg(seq, 2, 4, 18, SampleSpec{0, 1}), UsageError);
  // Saturating tuple count: 18^16 overflows, so draws are with replacement.
  const auto huge = V_avg(seq, 16, 18, 18, SampleSpec{20, 3});
  CHECK(huge.sampled);
  CHECK(huge.tuples_used == 20);
}

TEST_CASE("weighted chain inequality") {
  Rng rng(8);
  for (const CharSeq& seq : sample_seqs(8, 1500)) {
    const u64 R = seq.period();
    const WeightVector zero(std::vector<cplx>(R, 0.0));
    const auto z = weighted_chain_check(seq, zero, 3);
    CHECK(z.s_w == 0);
    CHECK(z.ok);
    const WeightVector ones(std::vector<cplx>(R, 1.0));
    CHECK(weighted_chain_check(seq, ones, 2).ok);
    for (int i = 0; i < 10; ++i) {
      std::vector<cplx> w(R);
      for (auto& x : w) x = std::polar(rng.unit(), 2 * M_PI * rng.unit());
      const u64 H = 1 + rng.uniform(std::min<u64>(R, 40));
      const auto res = weighted_chain_check(seq, WeightVector(w), H);
      CHECK(res.ok);
      CHECK(res.t_h == doctest::Approx(T_sum(seq, H)));
    }
  }
  const CharSeq toy = toy_seq();
  CHECK_THROWS_AS(WeightVector(std::vector<cplx>{1.0, 1.0 + 1e-9}), UsageError);
  CHECK_NOTHROW(WeightVector(std::vector<cplx>{1.0 + 1e-13}));
  CHECK_THROWS_AS(weighted_chain_check(toy, WeightVector(std::vector<cplx>(5, 0.0)), 2), UsageError);
}

TEST_CASE("twisted Weil-type sums") {
  Rng rng(9);
  const EdsContext ctx = random_context(1009, rng, 50);
  const Character chi = char_build(ctx.field(), 2);
  const u64 R = 2 * ctx.order();
  i64 k = 1, l = 3;
  while (std::gcd(static_cast<u64>(l), R) != 1) l += 2;
  const auto w = weil_sum_check(ctx, chi, k, l, 1, 0);
  CHECK(std::abs(w.value) <= static_cast<double>(R) + 1e-9);
  CHECK(w.budget == doctest::Approx(2.0 * (k * k + l * l) * std::sqrt(1009.0)));
  const auto w5 = weil_sum_check(ctx, chi, k, l, 2, 5);
  const auto w5R = weil_sum_check(ctx, chi, k, l, 2, 5 + static_cast<i64>(R));
  CHECK(std::abs(w5.value - w5R.value) < 1e-9);
  CHECK_THROWS_AS(weil_sum_check(ctx, chi, 2, 2, 1, 0), UsageError);
  CHECK_THROWS_AS(weil_sum_check(ctx, chi, 2, l, 1, 0), UsageError);  // R is even
  CHECK_THROWS_AS(weil_sum_check(ctx, chi, k, l, static_cast<i64>(ctx.order()), 0), UsageError);

  // Direct oracle: with k = 1 the numerator psi_1 is 1, so Psi(Q) =
  // psi_l(Q + mP) / (psi_l(Q)) up to the unit psi_1(Q + mP) = 1.
  const auto table = orc::poly_psi_table(1009, ctx.curve().a().value(), ctx.curve().b().value(), l);
  const u64 g = orc::brute_primitive_root(1009);
  const u64 a = ctx.curve().a().value();
  const orc::Pt P = std::make_pair(ctx.point().x().value(), ctx.point().y().value());
  const orc::Pt mP = orc::brute_multiple(1009, a, 2, P);
  std::complex<double> oracle{0, 0};
  orc::Pt Q;
  for (u64 n = 1; n <= R; ++n) {
    Q = orc::brute_add(1009, a, Q, P);
    const orc::Pt Qm = orc::brute_add(1009, a, Q, mP);
    if (!Q || !Qm) continue;
    const i64 e1 = orc::brute_char_exponent(1009, g, 2, orc::poly_eval(table[l], Q->first, Q->second));
    const i64 e2 = orc::brute_char_exponent(1009, g, 2, orc::poly_eval(table[l], Qm->first, Qm->second));
    if (e1 < 0 || e2 < 0) continue;
    oracle += std::polar(1.0, M_PI * static_cast<double>(e1 + e2) + 2 * M_PI * 5.0 * n / R);
  }
  CHECK(std::abs(oracle - w5.value) < 1e-6);
}

TEST_CASE("almost multiplicativity") {
  Rng rng(10);
  for (const CharSeq& seq : sample_seqs(10)) {
    const EdsContext& ctx = seq.context();
    const i64 ord = static_cast<i64>(ctx.order());
    for (int i = 0; i < 200; ++i) {
      const i64 m = rng.range(1, 1000);
      i64 n = rng.range(1, 1000);
      if (n % ord == 0) ++n;
      CHECK(mult_identity_check(ctx, seq.character(), m, n));
    }
    CHECK(mult_identity_check(ctx, seq.character(), 1, 2));
    CHECK(mult_identity_check(ctx, seq.character(), ord, 2));
    CHECK_THROWS_AS(mult_identity_check(ctx, seq.character(), 2, ord), PreconditionError);
  }
}

TEST_CASE("character and curve fields must match") {
  CHECK_THROWS_AS(CharSeq(toy_context(), char_build(PrimeField(13), 2)), UsageError);
}
