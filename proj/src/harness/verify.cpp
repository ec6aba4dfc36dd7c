#include "edscorr/harness/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>

#include <json.hpp>

#include "edscorr/harness/config.hpp"
#include "edscorr/harness/contexts.hpp"
#include "edscorr/oracles.hpp"
#include "edscorr/rng.hpp"

namespace edscorr::harness {

namespace {

constexpr std::size_t kMaxSamples = 5;
constexpr u64 kDirectLimit = 5000;       // O(R^2) suites
constexpr u64 kFftCompareLimit = 25000;  // direct side of fft-vs-direct
constexpr int kOracleIndex = 40;

struct Recorder {
  SuiteResult& r;
  void check(bool ok, const std::string& what) {
    ++r.cases;
    if (!ok) {
      ++r.failures;
      if (r.samples.size() < kMaxSamples) r.samples.push_back(what);
    }
  }
};

// psi_n(P) for 0 <= n <= len; the fault (if any) is applied here, so every
// suite that reads the table sees it.
struct PsiTable {
  std::vector<FieldElem> v;
  FieldElem at(i64 n) const { return n < 0 ? -v[static_cast<std::size_t>(-n)] : v[static_cast<std::size_t>(n)]; }
  i64 max_index() const { return static_cast<i64>(v.size()) - 1; }
};

struct Prepared {
  BundledContext bc;
  PsiTable table;
  std::vector<CharSeq> seqs;
};

std::vector<Prepared> prepare(u64 seed, bool fault) {
  std::vector<Prepared> out;
  Rng rng(seed);
  for (auto& bc : bundled_contexts()) {
    const u64 max_d = *std::max_element(bc.orders.begin(), bc.orders.end());
    const u64 len = std::max<u64>(3 * max_d * bc.ctx.order(), 2 * kOracleIndex);
    PsiTable t;
    t.v.push_back(bc.ctx.field().zero());
    auto range = psi_range(bc.ctx, 1, len);
    t.v.insert(t.v.end(), range.begin(), range.end());
    if (fault) {
      const std::size_t idx = 5 + rng.uniform(kOracleIndex - 5);
      t.v[idx] += bc.ctx.field().one();
    }
    std::vector<CharSeq> seqs;
    for (u64 d : bc.orders) seqs.emplace_back(bc.ctx, char_build(bc.ctx.field(), d));
    out.push_back({bc, std::move(t), std::move(seqs)});
  }
  return out;
}

std::string tag(const Prepared& p) { return p.bc.name; }
std::string tag(const Prepared& p, const CharSeq& s) {
  return p.bc.name + " d=" + std::to_string(s.order());
}

bool table_identity(const PsiTable& t, i64 m, i64 n, i64 r) {
  const FieldElem lhs = t.at(m + n) * t.at(m - n) * t.at(r) * t.at(r);
  const FieldElem rhs = t.at(m + r) * t.at(m - r) * t.at(n) * t.at(n) -
                        t.at(n + r) * t.at(n - r) * t.at(m) * t.at(m);
  return lhs == rhs;
}

void suite_identities(std::vector<Prepared>& ctxs, Rng& rng, Recorder& rec) {
  for (const auto& p : ctxs) {
    const i64 top = std::min<i64>(24, p.table.max_index() / 2);
    for (i64 m = 0; m <= top; ++m)
      for (i64 n = 0; n <= m; ++n)
        for (i64 r = 0; r <= n; ++r) {
          rec.check(table_identity(p.table, m, n, r),
                    tag(p) + " (m,n,r)=(" + std::to_string(m) + "," + std::to_string(n) + "," +
                        std::to_string(r) + ") on the generated table");
        }
    for (int i = 0; i < 1000; ++i) {
      const i64 m = rng.range(-500, 500), n = rng.range(-500, 500), r = rng.range(-500, 500);
      rec.check(check_identity(p.bc.ctx, m, n, r),
                tag(p) + " (m,n,r)=(" + std::to_string(m) + "," + std::to_string(n) + "," +
                    std::to_string(r) + ")");
    }
  }
}

CharValue table_char(const Prepared& p, const CharSeq& s, u64 n) {
  return s.character()(p.table.at(static_cast<i64>(n)));
}

void suite_periodicity(std::vector<Prepared>& ctxs, Rng&, Recorder& rec) {
  for (const auto& p : ctxs) {
    for (const auto& s : p.seqs) {
      const u64 R = s.period();
      for (u64 n = 1; n <= R; ++n) {
        rec.check(table_char(p, s, n) == table_char(p, s, n + R),
                  tag(p, s) + " s_" + std::to_string(n) + " != s_" + std::to_string(n + R));
        rec.check(table_char(p, s, n) == s.values()[n - 1],
                  tag(p, s) + " sequence disagrees with table at n=" + std::to_string(n));
      }
    }
  }
}

void suite_zero_locus(std::vector<Prepared>& ctxs, Rng&, Recorder& rec) {
  for (const auto& p : ctxs) {
    const u64 ord = p.bc.ctx.order();
    for (i64 n = 1; n <= p.table.max_index(); ++n) {
      rec.check(p.table.at(n).is_zero() == (static_cast<u64>(n) % ord == 0),
                tag(p) + " zero pattern at n=" + std::to_string(n));
    }
    for (const auto& s : p.seqs) {
      u64 zeros = 0;
      for (const auto& v : s.values()) zeros += v.is_zero();
      rec.check(zeros == s.order(), tag(p, s) + " zero count per period");
    }
  }
}

void suite_parseval(std::vector<Prepared>& ctxs, Rng&, Recorder& rec) {
  for (const auto& p : ctxs) {
    for (const auto& s : p.seqs) {
      double energy = 0;
      for (const auto& v : spectrum(s)) energy += std::norm(v);
      const double expect = static_cast<double>(s.period()) * s.order() * (p.bc.ctx.order() - 1);
      rec.check(std::abs(energy - expect) <= 1e-9 * expect, tag(p, s) + " Parseval sum");
    }
  }
}

void suite_spectral_t(std::vector<Prepared>& ctxs, Rng&, Recorder& rec) {
  for (const auto& p : ctxs) {
    for (const auto& s : p.seqs) {
      if (s.period() > kDirectLimit) continue;
      const auto id = spectral_T_identity(s);
      rec.check(std::abs(id.lhs - id.rhs) <= 1e-6 * std::max(1.0, id.rhs),
                tag(p, s) + " T(R) lhs/rhs mismatch");
    }
  }
}

void suite_weighted_chain(std::vector<Prepared>& ctxs, Rng& rng, Recorder& rec) {
  for (const auto& p : ctxs) {
    for (const auto& s : p.seqs) {
      const u64 R = s.period();
      if (R > kDirectLimit) continue;
      for (u64 H : {u64{1}, std::min<u64>(R, 4), std::min<u64>(R, 16)}) {
        for (int i = 0; i < 20; ++i) {
          std::vector<cplx> w(R);
          for (auto& x : w) x = std::polar(rng.unit(), 2 * std::numbers::pi * rng.unit());
          const auto res = weighted_chain_check(s, WeightVector(std::move(w)), H);
          rec.check(res.ok, tag(p, s) + " chain inequality at H=" + std::to_string(H));
        }
      }
    }
  }
}

void suite_ladder(std::vector<Prepared>& ctxs, Rng& rng, Recorder& rec) {
  for (const auto& p : ctxs) {
    const EdsContext& ctx = p.bc.ctx;
    const auto poly = oracle::poly_psi_table(ctx.field().modulus(), ctx.curve().a().value(),
                                             ctx.curve().b().value(), kOracleIndex);
    for (int n = 0; n <= kOracleIndex; ++n) {
      const u64 expect = oracle::poly_eval(poly[n], ctx.point().x().value(), ctx.point().y().value());
      rec.check(p.table.at(n).value() == expect, tag(p) + " table psi_" + std::to_string(n) + " vs symbolic");
      rec.check(psi_eval(ctx, n).value() == expect, tag(p) + " ladder psi_" + std::to_string(n) + " vs symbolic");
    }
    for (int i = 0; i < 200; ++i) {
      const i64 n = 1 + static_cast<i64>(rng.uniform(static_cast<u64>(p.table.max_index())));
      rec.check(psi_eval(ctx, n) == p.table.at(n), tag(p) + " ladder vs recurrence at n=" + std::to_string(n));
    }
  }
}

void suite_fft(std::vector<Prepared>& ctxs, Rng&, Recorder& rec) {
  for (const auto& p : ctxs) {
    for (const auto& s : p.seqs) {
      const u64 R = s.period();
      if (R > kFftCompareLimit) continue;
      for (bool conj : {false, true}) {
        const auto a = corr_all_shifts(s, R, R, conj, Strategy::kFft);
        const auto b = corr_all_shifts(s, R, R, conj, Strategy::kDirect);
        double worst = 0;
        for (u64 h = 0; h < R; ++h) worst = std::max(worst, std::abs(a[h] - b[h]) / std::max(1.0, std::abs(b[h])));
        rec.check(worst <= 1e-9, tag(p, s) + (conj ? " conj" : "") + " fft/direct max rel diff " + std::to_string(worst));
      }
    }
  }
}

void suite_multiplicativity(std::vector<Prepared>& ctxs, Rng& rng, Recorder& rec) {
  for (const auto& p : ctxs) {
    const i64 ord = static_cast<i64>(p.bc.ctx.order());
    for (const auto& s : p.seqs) {
      for (int i = 0; i < 1000 / static_cast<int>(p.seqs.size()); ++i) {
        const i64 m = rng.range(1, 1000);
        i64 n = rng.range(1, 1000);
        if (n % ord == 0) ++n;
        rec.check(mult_identity_check(p.bc.ctx, s.character(), m, n),
                  tag(p, s) + " (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
    }
  }
}

using SuiteFn = void (*)(std::vector<Prepared>&, Rng&, Recorder&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> t{
      {"identities", suite_identities},
      {"periodicity", suite_periodicity},
      {"zero-locus", suite_zero_locus},
      {"parseval", suite_parseval},
      {"spectral-t", suite_spectral_t},
      {"weighted-chain", suite_weighted_chain},
      {"ladder-vs-oracle", suite_ladder},
      {"fft-vs-direct", suite_fft},
      {"multiplicativity", suite_multiplicativity},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "identities",     "periodicity",      "zero-locus",    "parseval",        "spectral-t",
      "weighted-chain", "ladder-vs-oracle", "fft-vs-direct", "multiplicativity"};
  return names;
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

VerifyReport run_verify(const VerifyOptions& opts) {
  std::vector<std::string> selected;
  if (opts.suites.empty() ||
      std::find(opts.suites.begin(), opts.suites.end(), "all") != opts.suites.end()) {
    selected = suite_names();
  } else {
    for (const auto& name : suite_names()) {
      if (std::find(opts.suites.begin(), opts.suites.end(), name) != opts.suites.end()) {
        selected.push_back(name);
      }
    }
    for (const auto& name : opts.suites) {
      if (!suite_table().count(name)) {
        std::string known;
        for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown suite '" + name + "' (known: all, " + known + ")");
      }
    }
  }

  VerifyReport report;
  report.seed = opts.seed;
  report.fault_injected = opts.inject_fault;
  auto ctxs = prepare(opts.seed, opts.inject_fault);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    SuiteResult r;
    r.name = selected[i];
    Recorder rec{r};
    const auto pos = std::find(suite_names().begin(), suite_names().end(), r.name) - suite_names().begin();
    Rng rng(opts.seed + 0x9e3779b97f4a7c15ULL * static_cast<u64>(pos + 1));
    const auto t0 = std::chrono::steady_clock::now();
    suite_table().at(r.name)(ctxs, rng, rec);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.suites.push_back(std::move(r));
  }
  return report;
}

void write_verify_json(std::ostream& os, const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["seed"] = report.seed;
  j["fault_injected"] = report.fault_injected;
  j["passed"] = report.passed();
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const auto& s : report.suites) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["cases"] = s.cases;
    e["failures"] = s.failures;
    e["passed"] = s.passed();
    e["failure_samples"] = s.samples;
    suites.push_back(e);
  }
  j["suites"] = suites;
  os << j.dump(2) << "\n";
}

}  // namespace edscorr::harness
