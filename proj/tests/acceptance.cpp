// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "edscorr/bounds.hpp"
#include "edscorr/corr_engine.hpp"
#include "edscorr/curve.hpp"
#include "edscorr/division_poly.hpp"
#include "edscorr/harness/config.hpp"
#include "edscorr/harness/contexts.hpp"
#include "edscorr/harness/sweep.hpp"
#include "edscorr/harness/table.hpp"
#include "edscorr/oracles.hpp"
#include "edscorr/rng.hpp"

using namespace edscorr;
namespace orc = edscorr::oracle;
namespace hs = edscorr::harness;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

u64 mod(i64 v, u64 p) {
  const i64 r = v % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

// Random nonsingular curve over F_p and a point of order >= min_order on it.
struct RandomContext {
  u64 a, b;
  EdsContext ctx;
};

RandomContext random_context(u64 p, Rng& rng, u64 min_order) {
  const PrimeField f(p);
  for (;;) {
    const u64 a = rng.uniform(p), b = rng.uniform(p);
    if ((4 * a % p * a % p * a + 27 * b % p * b) % p == 0) continue;
    const Curve c(f, static_cast<i64>(a), static_cast<i64>(b));
    if (auto found = find_point_min_order(c, min_order)) {
      return {a, b, EdsContext(c, found->point, found->order)};
    }
  }
}

std::vector<RandomContext> ten_contexts(u64 seed) {
  Rng rng(seed);
  std::vector<RandomContext> out;
  const u64 primes[] = {101, 1009, 10007};
  for (int i = 0; i < 10; ++i) out.push_back(random_context(primes[i % 3], rng, 12));
  return out;
}

// Explicit coefficient lists (ascending powers of x) for the base cases.
Outcome base_cases() {
  Rng rng(1);
  const u64 primes[] = {5, 7, 13, 101, 1009, 10007, 1000003};
  int mismatches = 0;
  for (int t = 0; t < 20; ++t) {
    const u64 p = primes[t % 7];
    u64 a = rng.uniform(p), b = rng.uniform(p);
    while ((4 * a % p * a % p * a + 27 * b % p * b) % p == 0) b = rng.uniform(p);
    const auto table = orc::poly_psi_table(p, a, b, 4);
    auto cp = [&](std::vector<i64> x0, std::vector<i64> x1) {
      orc::CurvePoly f;
      f.p = p;
      f.a = a;
      f.b = b;
      for (i64 v : x0) f.c0.push_back(mod(v, p));
      for (i64 v : x1) f.c1.push_back(mod(v, p));
      while (!f.c0.empty() && f.c0.back() == 0) f.c0.pop_back();
      while (!f.c1.empty() && f.c1.back() == 0) f.c1.pop_back();
      return f;
    };
    const i64 A = static_cast<i64>(a), B = static_cast<i64>(b);
    const auto m = [&](i64 x, i64 y) { return static_cast<i64>(mod(x, p) * mod(y, p) % p); };
    const std::vector<orc::CurvePoly> expect = {
        cp({}, {}),
        cp({1}, {}),
        cp({}, {2}),
        cp({-m(A, A), m(12, B), m(6, A), 0, 3}, {}),
        cp({}, {m(4, -m(8, m(B, B)) - m(A, m(A, A))), m(4, -m(4, m(A, B))), m(4, -m(5, m(A, A))),
                m(4, m(20, B)), m(4, m(5, A)), 0, 4}),
    };
    for (int n = 0; n <= 4; ++n) {
      if (!(table[n] == expect[n])) ++mismatches;
    }
  }
  return {mismatches == 0, "100 polynomials, " + std::to_string(mismatches) + " mismatches"};
}

Outcome ladder_vs_oracle() {
  int bad = 0, cases = 0;
  for (const auto& rc : ten_contexts(2)) {
    const u64 p = rc.ctx.field().modulus();
    const auto table = orc::poly_psi_table(p, rc.a, rc.b, 40);
    const u64 x = rc.ctx.point().x().value(), y = rc.ctx.point().y().value();
    for (int n = 0; n <= 40; ++n) {
      ++cases;
      if (psi_eval(rc.ctx, n).value() != orc::poly_eval(table[n], x, y)) ++bad;
    }
  }
  return {bad == 0, std::to_string(cases) + " values, " + std::to_string(bad) + " mismatches"};
}

Outcome coordinates() {
  int bad = 0, cases = 0;
  for (const auto& rc : ten_contexts(3)) {
    for (i64 n = 2; n <= 200; ++n) {
      if (n % static_cast<i64>(rc.ctx.order()) == 0) continue;
      ++cases;
      if (!(mul_by_n_coords(rc.ctx, n) == rc.ctx.curve().scalar_mul(n, rc.ctx.point()))) ++bad;
    }
  }
  return {bad == 0, std::to_string(cases) + " multiples, " + std::to_string(bad) + " mismatches"};
}

Outcome three_index() {
  Rng rng(4);
  int bad = 0, cases = 0;
  for (const auto& rc : ten_contexts(4)) {
    for (int t = 0; t < 1000; ++t) {
      const i64 m = rng.range(-500, 500), n = rng.range(-500, 500), r = rng.range(-500, 500);
      ++cases;
      if (!check_identity(rc.ctx, m, n, r)) ++bad;
    }
  }
  return {bad == 0, std::to_string(cases) + " triples, " + std::to_string(bad) + " failures"};
}

Outcome multiplicativity() {
  Rng rng(5);
  int bad = 0, cases = 0;
  for (const auto& rc : ten_contexts(5)) {
    const PrimeField& f = rc.ctx.field();
    const auto orders = valid_character_orders(f);
    const u64 ord = rc.ctx.order();
    int done = 0;
    while (done < 1000) {
      const i64 m = rng.range(-300, 300), n = rng.range(-300, 300);
      if (n % static_cast<i64>(ord) == 0) continue;
      const u64 d = orders[rng.uniform(std::min<std::size_t>(orders.size(), 4))];
      ++done;
      ++cases;
      if (!mult_identity_check(rc.ctx, char_build(f, d), m, n)) ++bad;
    }
  }
  return {bad == 0, std::to_string(cases) + " pairs, " + std::to_string(bad) + " failures"};
}

template <typename F>
void each_bundled(F&& f) {
  for (const auto& bc : hs::bundled_contexts()) {
    for (u64 d : bc.orders) f(bc, d);
  }
}

Outcome periodicity() {
  u64 checked = 0, bad = 0, seqs = 0;
  each_bundled([&](const hs::BundledContext& bc, u64 d) {
    const Character chi = char_build(bc.ctx.field(), d);
    const u64 R = d * bc.ctx.order();
    const auto v = char_values(bc.ctx, chi, 1, 2 * R);
    const CharSeq seq(bc.ctx, chi);
    ++seqs;
    for (u64 i = 0; i < R; ++i) {
      ++checked;
      if (!(v[i] == v[i + R]) || !(seq.at(static_cast<i64>(i + 1)) == v[i])) ++bad;
    }
  });
  return {bad == 0, std::to_string(seqs) + " sequences, " + std::to_string(checked) + " positions, " +
                        std::to_string(bad) + " mismatches"};
}

Outcome zero_locus() {
  u64 checked = 0, bad = 0;
  each_bundled([&](const hs::BundledContext& bc, u64 d) {
    const Character chi = char_build(bc.ctx.field(), d);
    const u64 R = d * bc.ctx.order();
    const auto v = char_values(bc.ctx, chi, 1, 3 * R);
    for (u64 i = 0; i < v.size(); ++i) {
      ++checked;
      if (v[i].is_zero() != ((i + 1) % bc.ctx.order() == 0)) ++bad;
    }
  });
  return {bad == 0, std::to_string(checked) + " positions, " + std::to_string(bad) + " mismatches"};
}

Outcome parseval() {
  double worst = 0;
  u64 seqs = 0, maxR = 0;
  auto check = [&](const EdsContext& ctx, u64 d) {
    const u64 R = d * ctx.order();
    if (R > 100000) return;
    const CharSeq seq(ctx, char_build(ctx.field(), d));
    double energy = 0;
    for (const auto& v : spectrum(seq)) energy += std::norm(v);
    const double expect = static_cast<double>(R) * d * (ctx.order() - 1);
    worst = std::max(worst, std::abs(energy - expect) / expect);
    ++seqs;
    maxR = std::max(maxR, R);
  };
  each_bundled([&](const hs::BundledContext& bc, u64 d) { check(bc.ctx, d); });
  hs::ContextSpec big;
  big.p = 49999;
  big.min_order = 45000;
  check(hs::resolve_context(big).ctx, 2);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%llu sequences up to R = %llu, worst rel err %.2e",
                static_cast<unsigned long long>(seqs), static_cast<unsigned long long>(maxR), worst);
  return {worst <= 1e-9 && seqs > 0, buf};
}

Outcome spectral_t() {
  double worst = 0;
  u64 seqs = 0;
  each_bundled([&](const hs::BundledContext& bc, u64 d) {
    if (d * bc.ctx.order() > 5000) return;
    const CharSeq seq(bc.ctx, char_build(bc.ctx.field(), d));
    const auto id = spectral_T_identity(seq);
    worst = std::max(worst, std::abs(id.lhs - id.rhs) / std::abs(id.rhs));
    ++seqs;
  });
  char buf[96];
  std::snprintf(buf, sizeof buf, "%llu sequences, worst rel diff %.2e", static_cast<unsigned long long>(seqs),
                worst);
  return {worst <= 1e-6 && seqs > 0, buf};
}

Outcome weighted_chain() {
  Rng rng(10);
  u64 cases = 0, violations = 0;
  each_bundled([&](const hs::BundledContext& bc, u64 d) {
    const u64 R = d * bc.ctx.order();
    if (R > 5000) return;
    const CharSeq seq(bc.ctx, char_build(bc.ctx.field(), d));
    std::vector<u64> Hs = {1, 2, std::max<u64>(1, R / 16), std::max<u64>(1, R / 4), R};
    for (u64 H : Hs) {
      for (int i = 0; i < 100; ++i) {
        std::vector<cplx> w(R);
        for (auto& x : w) x = std::polar(rng.unit(), 2 * M_PI * rng.unit());
        ++cases;
        if (!weighted_chain_check(seq, WeightVector(std::move(w)), H).ok) ++violations;
      }
    }
  });
  return {violations == 0 && cases > 0,
          std::to_string(cases) + " weight vectors, " + std::to_string(violations) + " violations"};
}

Outcome fft_vs_direct() {
  double worst = 0;
  u64 seqs = 0;
  each_bundled([&](const hs::BundledContext& bc, u64 d) {
    const u64 R = d * bc.ctx.order();
    if (R > 25000) return;
    const CharSeq seq(bc.ctx, char_build(bc.ctx.field(), d));
    const auto f = corr_all_shifts(seq, R, R, false, Strategy::kFft);
    const auto g = corr_all_shifts(seq, R, R, false, Strategy::kDirect);
    for (u64 i = 0; i < R; ++i) worst = std::max(worst, std::abs(f[i] - g[i]) / std::max(1.0, std::abs(g[i])));
    ++seqs;
  });

  // Speed at R >= 1e4: p = 10007, d = 2, ord P > 5000.
  hs::ContextSpec spec;
  spec.p = 10007;
  spec.min_order = 5000;
  const hs::ResolvedContext rc = hs::resolve_context(spec);
  const CharSeq seq(rc.ctx, char_build(rc.ctx.field(), 2));
  const u64 R = seq.period();
  auto timed = [&](Strategy s) {
    const auto t0 = Clock::now();
    const auto v = corr_all_shifts(seq, R, R, false, s);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return v.size() == R ? secs : -1.0;
  };
  const double t_fft = timed(Strategy::kFft);
  const double t_direct = timed(Strategy::kDirect);
  const double speedup = t_direct / std::max(t_fft, 1e-9);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu sequences, worst rel diff %.2e; R = %llu speedup %.0fx",
                static_cast<unsigned long long>(seqs), worst, static_cast<unsigned long long>(R), speedup);
  return {worst <= 1e-9 && R >= 10000 && speedup >= 10, buf};
}

Outcome toy() {
  const Curve c(PrimeField(5), 1, 1);
  const EdsContext ctx(c, c.point(0, 1), 9);
  const CharSeq seq(ctx, char_build(ctx.field(), 2));
  const auto s = seq.as_complex();
  bool ok = seq.period() == 18;
  const double expect[] = {1, -1, 1, 1, -1};
  for (int i = 0; i < 5; ++i) ok = ok && s[i] == cplx(expect[i], 0);

  // Direct definition: psi_n(P) from the symbolic table, then the Legendre symbol.
  const auto table = orc::poly_psi_table(5, 1, 1, 20);
  for (int n = 1; n <= 20; ++n) {
    const u64 v = orc::poly_eval(table[n], 0, 1);
    const double leg = v == 0 ? 0 : (v * v % 5 == 1 ? 1 : -1);
    ok = ok && seq.at(n).to_complex() == cplx(leg, 0);
  }
  const cplx s4 = sum_S(seq, 4).to_complex();
  const cplx s31 = corr_S(seq, 3, 1, false).to_complex();
  ok = ok && s4 == cplx(2, 0) && s31 == cplx(-1, 0);
  ok = ok && orc::direct_corr(s, 3, 1, false) == cplx(-1, 0);
  std::ostringstream os;
  os << "R = " << seq.period() << ", S(4) = " << s4.real() << ", S(3,1) = " << s31.real();
  return {ok, os.str()};
}

double as_number(const hs::Cell& c) {
  if (const auto* v = std::get_if<double>(&c)) return *v;
  if (const auto* v = std::get_if<std::int64_t>(&c)) return static_cast<double>(*v);
  if (const auto* v = std::get_if<std::uint64_t>(&c)) return static_cast<double>(*v);
  return std::nan("");
}

Outcome bound_monitoring() {
  const auto cfg = hs::parse_config_text(
      "p = 1009\np = 10007\ncurve = scan\nmin_order = 500\nd = 2\n"
      "H = 4\nH = 16\nH = 64\nH = 256\nm = 2\nm = 3\nsample = 500\nseed = 7\n");
  const auto root = std::filesystem::temp_directory_path() / "edscorr-acceptance-sweep";
  std::filesystem::remove_all(root);
  const auto a = hs::run_sweep(cfg, {(root / "a").string(), 1, 0});
  const auto b = hs::run_sweep(cfg, {(root / "b").string(), 2, 0});
  std::filesystem::remove_all(root);
  std::ostringstream ca, cb;
  hs::write_csv(ca, a.table);
  hs::write_csv(cb, b.table);
  const bool deterministic = ca.str() == cb.str();

  std::istringstream back(ca.str());
  const hs::Table parsed = hs::read_csv(back);
  const bool schema = ca.str().rfind("# schema=1\n", 0) == 0 && parsed.columns == hs::sweep_columns() &&
                      parsed.rows.size() == a.table.rows.size();

  const auto& cols = a.table.columns;
  auto col = [&](const char* name) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
  };
  bool finite = true, corollary = true;
  u64 b2_rows = 0;
  for (const auto& row : a.table.rows) {
    finite = finite && std::isfinite(as_number(row[col("U2_over_B1")]));
    const auto* applicable = std::get_if<bool>(&row[col("B2_applicable")]);
    if (applicable && *applicable) {
      ++b2_rows;
      finite = finite && std::isfinite(as_number(row[col("U2_over_B2")]));
    }
    const double count = as_number(row[col("exc_count")]);
    const double rhs = as_number(row[col("cor_rhs")]);
    const double c = as_number(row[col("c_recorded")]);
    corollary = corollary && std::isfinite(rhs) && count <= rhs * c * (1 + 1e-12);
  }
  std::ostringstream os;
  os << a.table.rows.size() << " rows over " << a.cells_total << " cells, B2 applicable in " << b2_rows
     << ", deterministic=" << (deterministic ? "yes" : "no") << ", schema=" << (schema ? "ok" : "bad");
  return {a.complete && deterministic && schema && finite && corollary, os.str()};
}

Outcome throughput() {
  u64 p = 500000;
  while (!nt::is_prime(p)) ++p;
  hs::ContextSpec spec;
  spec.p = p;
  spec.min_order = 490000;
  const hs::ResolvedContext rc = hs::resolve_context(spec);
  const auto t0 = Clock::now();
  const CharSeq seq(rc.ctx, char_build(rc.ctx.field(), 2));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "p = %llu, R = %llu built in %.2f s", static_cast<unsigned long long>(p),
                static_cast<unsigned long long>(seq.period()), secs);
  return {seq.period() >= 980000 && secs < 60, buf};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "base-case fidelity", 1, base_cases},
      {2, "ladder correctness", 10, ladder_vs_oracle},
      {3, "coordinate formula", 10, coordinates},
      {4, "three-index identity", 0, three_index},
      {5, "multiplicative identity", 0, multiplicativity},
      {6, "periodicity", 0, periodicity},
      {7, "zero locus", 0, zero_locus},
      {8, "parseval", 30, parseval},
      {9, "spectral T identity", 60, spectral_t},
      {10, "weighted chain", 0, weighted_chain},
      {11, "fft vs direct", 0, fft_vs_direct},
      {12, "toy end-to-end", 0, toy},
      {13, "bound monitoring sweep", 600, bound_monitoring},
      {14, "throughput", 60, throughput},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %-26s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
