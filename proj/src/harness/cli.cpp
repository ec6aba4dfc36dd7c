#include "edscorr/harness/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "edscorr/bounds.hpp"
#include "edscorr/harness/config.hpp"
#include "edscorr/harness/contexts.hpp"
#include "edscorr/harness/sweep.hpp"
#include "edscorr/harness/table.hpp"
#include "edscorr/harness/verify.hpp"

namespace edscorr::harness {

namespace {

struct ContextFlags {
  u64 p = 0;
  i64 a = 0, b = 0, px = 0, py = 0;
  u64 min_order = 3;
  CLI::Option* a_opt = nullptr;
  CLI::Option* b_opt = nullptr;
  CLI::Option* px_opt = nullptr;
  CLI::Option* py_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--p", p, "prime modulus p > 3")->required();
    a_opt = app->add_option("--a", a, "curve coefficient a (omit a and b to scan)");
    b_opt = app->add_option("--b", b, "curve coefficient b");
    px_opt = app->add_option("--px", px, "x coordinate of P");
    py_opt = app->add_option("--py", py, "y coordinate of P");
    app->add_option("--min-order", min_order, "smallest acceptable ord P when P is searched")
        ->check(CLI::Range(u64{3}, std::numeric_limits<u64>::max()));
  }

  ContextSpec spec() const {
    ContextSpec s;
    s.p = p;
    if (a_opt->count()) s.a = a;
    if (b_opt->count()) s.b = b;
    if (px_opt->count()) s.px = px;
    if (py_opt->count()) s.py = py;
    s.min_order = min_order;
    return s;
  }
};

struct OutputFlags {
  std::string path;
  bool json = false;

  void attach(CLI::App* app) {
    app->add_option("--out", path, "write the result here instead of stdout");
    app->add_flag("--json", json, "emit JSON instead of CSV");
  }

  void emit(const Table& t, std::ostream& out) const {
    std::ostringstream buf;
    if (json) {
      write_json(buf, t);
    } else {
      write_csv(buf, t);
    }
    if (path.empty()) {
      out << buf.str();
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << buf.str();
  }
};

Character make_character(const EdsContext& ctx, u64 d) {
  try {
    return char_build(ctx.field(), d);
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
}

void add_context_meta(Table& t, const ResolvedContext& rc, u64 d) {
  t.add_meta("p", rc.ctx.field().modulus());
  t.add_meta("a", rc.a);
  t.add_meta("b", rc.b);
  t.add_meta("px", rc.ctx.point().x().value());
  t.add_meta("py", rc.ctx.point().y().value());
  t.add_meta("ord_p", rc.ctx.order());
  t.add_meta("d", d);
  t.add_meta("R", d * rc.ctx.order());
}

std::string exact_string(const CycloVec& v) {
  std::string s;
  const auto c = v.canonical();
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ";" : "") + std::to_string(c[i]);
  return s;
}

// ---- find ----------------------------------------------------------------

int cmd_find(const ContextFlags& cf, u64 char_order, bool all, u64 limit, const OutputFlags& of,
             std::ostream& out) {
  if (char_order && (char_order < 2 || (cf.p - 1) % char_order != 0)) {
    throw RangeError("no context: character order " + std::to_string(char_order) +
                     " does not divide p - 1 = " + std::to_string(cf.p - 1));
  }
  Table t;
  t.name = "find";
  t.columns = {"p", "a", "b", "px", "py", "ord_p", "group_order"};
  ContextSpec spec = cf.spec();
  if (spec.px) throw ConfigError("find searches for points; drop --px/--py");
  if (spec.a && all) {
    const PrimeField f(spec.p);
    const Curve c = [&] {
      try {
        return Curve(f, *spec.a, *spec.b);
      } catch (const UsageError& e) {
        throw ConfigError(e.what());
      }
    }();
    const auto pts = enumerate_points(c);
    for (const auto& pt : pts) {
      if (pt.is_infinity()) continue;
      const u64 ord = point_order(c, pt, pts.size());
      if (ord >= spec.min_order) {
        t.add_row({cf.p, *spec.a, *spec.b, pt.x().value(), pt.y().value(), ord, u64{pts.size()}});
      }
    }
  } else if (spec.a) {
    const ResolvedContext rc = resolve_context(spec);
    t.add_row({cf.p, rc.a, rc.b, rc.ctx.point().x().value(), rc.ctx.point().y().value(),
               rc.ctx.order(), *rc.group_order});
  } else {
    const PrimeField f(spec.p);
    for (i64 a = 1; a <= 64 && t.rows.size() < limit; ++a) {
      for (i64 b = 1; b <= 64 && t.rows.size() < limit; ++b) {
        if ((f.elem(4) * f.elem(a) * f.elem(a) * f.elem(a) + f.elem(27) * f.elem(b) * f.elem(b)).is_zero()) {
          continue;
        }
        const Curve c(f, a, b);
        if (auto found = find_point_min_order(c, spec.min_order)) {
          t.add_row({cf.p, a, b, found->point.x().value(), found->point.y().value(), found->order,
                     found->group_order});
        }
      }
    }
  }
  if (t.rows.empty()) {
    throw RangeError("no point found with order >= " + std::to_string(spec.min_order));
  }
  of.emit(t, out);
  return kExitOk;
}

// ---- corr ----------------------------------------------------------------

struct CorrFlags {
  u64 d = 2;
  u64 H = 0;
  u64 N = 0;
  unsigned m = 2;
  double delta = 0.5;
  double c1 = 1, c2 = 1, c3 = 1;
  bool fft = false;
  bool direct = false;
  u64 sample = 0;
  u64 seed = 0;
  bool complete = false;
  bool conj = false;
  CLI::Option* n_opt = nullptr;
  CLI::Option* sample_opt = nullptr;
};

int cmd_corr(const ContextFlags& cf, const CorrFlags& f, const OutputFlags& of, std::ostream& out) {
  const ResolvedContext rc = resolve_context(cf.spec());
  const CharSeq seq(rc.ctx, make_character(rc.ctx, f.d));
  const u64 R = seq.period();
  const u64 N = f.n_opt->count() ? f.N : R;
  require_range(f.H, N, R);
  if (f.m < 2) throw ConfigError("--m must be at least 2");
  const bool use_fft = f.fft || (!f.direct && N == R);
  if (f.fft && N != R) {
    throw ConfigError("--fft computes cyclic correlations and needs N = R = " + std::to_string(R));
  }
  std::optional<SampleSpec> sample;
  if (f.sample_opt->count()) sample = SampleSpec{f.sample, f.seed};

  Table t;
  t.name = "corr";
  add_context_meta(t, rc, f.d);
  t.add_meta("N", N);
  t.add_meta("H", f.H);
  t.add_meta("m", static_cast<u64>(f.m));
  t.add_meta("conj_second", f.conj);
  t.add_meta("strategy", std::string(use_fft ? "fft" : "direct"));
  t.columns = {"kind", "h", "m", "re", "im", "abs", "value", "aux", "exact", "mode", "tuples_used", "tuples_total"};

  const auto shifts = corr_all_shifts(seq, N, f.H, f.conj, use_fft ? Strategy::kFft : Strategy::kDirect);
  const bool exact = !use_fft && seq.order() <= kExactOrderLimit;
  double u2 = 0;
  for (u64 h = 1; h <= f.H; ++h) {
    const cplx v = shifts[h - 1];
    u2 += std::abs(v);
    t.add_row({std::string("shift"), h, Cell{}, v.real(), v.imag(), std::abs(v), Cell{}, Cell{},
               exact ? Cell{exact_string(corr_S(seq, N, static_cast<i64>(h), f.conj))} : Cell{},
               Cell{}, Cell{}, Cell{}});
  }
  u2 /= static_cast<double>(f.H);

  auto agg = [&](const char* kind, const TupleAverage& ta) {
    t.add_row({std::string(kind), Cell{}, static_cast<u64>(f.m), Cell{}, Cell{}, Cell{}, ta.value, Cell{},
               Cell{}, std::string(ta.sampled ? "sampled" : "exhaustive"), ta.tuples_used,
               ta.tuples_total});
  };
  agg("U", U_avg(seq, f.m, f.H, N, sample));
  agg("V", V_avg(seq, f.m, f.H, N, sample));
  const double T = T_sum(seq, f.H, use_fft ? Strategy::kFft : Strategy::kDirect);
  t.add_row({std::string("T"), f.H, Cell{}, Cell{}, Cell{}, Cell{}, T, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}});

  const u64 p = rc.ctx.field().modulus();
  if (R >= 16) {
    const double b1 = bound_B1(p, R, f.H, BoundConstants{f.c1, f.c2, f.c3}, f.complete);
    t.add_row({std::string("B1"), f.H, Cell{}, Cell{}, Cell{}, Cell{}, b1, u2 / b1, Cell{}, Cell{}, Cell{}, Cell{}});
    const auto b2 = bound_B2(p, R, f.H, f.c3, f.complete);
    t.add_row({std::string("B2"), f.H, Cell{}, Cell{}, Cell{}, Cell{}, b2 ? Cell{*b2} : Cell{},
               b2 ? Cell{u2 / *b2} : Cell{}, Cell{}, std::string(b2 ? "applicable" : "inapplicable"),
               Cell{}, Cell{}});
  }
  const ExceptionalCount ex = exceptional_count(seq, N, f.H, f.delta, f.c3, f.conj);
  t.add_row({std::string("exceptional"), f.H, Cell{}, Cell{}, Cell{}, Cell{}, ex.count,
             ex.rhs > 0 ? Cell{ex.rhs} : Cell{}, Cell{},
             std::string(ex.applicable ? "applicable" : "inapplicable"), Cell{}, Cell{}});
  of.emit(t, out);
  return kExitOk;
}

// ---- spectrum ------------------------------------------------------------

int cmd_spectrum(const ContextFlags& cf, u64 d, double c, const OutputFlags& of, std::ostream& out) {
  const ResolvedContext rc = resolve_context(cf.spec());
  const CharSeq seq(rc.ctx, make_character(rc.ctx, d));
  const u64 R = seq.period();
  const u64 p = rc.ctx.field().modulus();
  const auto spec = spectrum(seq);
  double energy = 0, max_abs = 0;
  for (const auto& v : spec) {
    energy += std::norm(v);
    max_abs = std::max(max_abs, std::abs(v));
  }
  const double expect = static_cast<double>(R) * d * (rc.ctx.order() - 1);
  const std::optional<double> budget = R >= 16 ? spectrum_budget(p, R, c) : std::nullopt;

  Table t;
  t.name = "spectrum";
  add_context_meta(t, rc, d);
  t.add_meta("parseval_sum", energy);
  t.add_meta("parseval_expected", expect);
  t.add_meta("parseval_rel_err", std::abs(energy - expect) / expect);
  t.add_meta("max_abs", max_abs);
  t.add_meta("budget_applicable", budget.has_value());
  t.columns = {"a", "re", "im", "abs", "budget"};
  for (u64 a = 1; a <= R; ++a) {
    const cplx v = spec[a - 1];
    t.add_row({a, v.real(), v.imag(), std::abs(v), budget ? Cell{*budget} : Cell{}});
  }
  of.emit(t, out);
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::vector<std::string>& suites_raw, u64 seed, bool fault, const OutputFlags& of,
               std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  for (const auto& s : suites_raw) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) opts.suites.push_back(item);
    }
  }
  opts.seed = seed;
  opts.inject_fault = fault;
  const VerifyReport report = run_verify(opts);
  for (const auto& s : report.suites) {
    err << (s.passed() ? "PASS " : "FAIL ") << s.name << ": " << s.cases << " cases, " << s.failures
        << " failures (" << s.seconds << " s)\n";
    for (const auto& msg : s.samples) err << "    " << msg << "\n";
  }
  std::ostringstream json;
  write_verify_json(json, report);
  if (!of.path.empty()) {
    std::ofstream f(of.path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + of.path + "'");
    f << json.str();
  }
  if (of.json || of.path.empty()) out << json.str();
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

// ---- sweep ---------------------------------------------------------------

int cmd_sweep(const std::string& config_path, const std::string& state_dir, unsigned workers,
              u64 stop_after, OutputFlags of, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_config(config_path);
  if (of.path.empty()) of.path = cfg.out;
  SweepOptions opts;
  opts.workers = workers ? workers : (cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency()));
  opts.stop_after = stop_after;
  opts.state_dir = !state_dir.empty() ? state_dir
                   : !of.path.empty() ? of.path + ".cells"
                                      : std::string("edscorr-sweep.cells");
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res = run_sweep(cfg, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  err << "sweep: " << res.cells_total << " cells, " << res.cells_computed << " computed, "
      << res.cells_reused << " reused (" << secs << " s)\n";
  if (!res.complete) {
    err << "sweep incomplete; rerun to resume from " << opts.state_dir << "\n";
    return kExitNoResult;
  }
  of.emit(res.table, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation sums of characters on elliptic division polynomials", "edscorr"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // find
  auto* find = app.add_subcommand("find", "list curves, points and orders");
  ContextFlags find_ctx;
  find_ctx.attach(find);
  u64 find_d = 0, find_limit = 5;
  bool find_all = false;
  OutputFlags find_out;
  find->add_option("--char-order", find_d, "require d | p - 1");
  find->add_flag("--all", find_all, "list every qualifying point of the given curve");
  find->add_option("--limit", find_limit, "curves to list when scanning");
  find_out.attach(find);

  // corr
  auto* corr = app.add_subcommand("corr", "shifted correlations S(N, h), U_m, V_m, T(H) and bounds");
  ContextFlags corr_ctx;
  CorrFlags cfl;
  OutputFlags corr_out;
  corr_ctx.attach(corr);
  corr->add_option("--char-order", cfl.d, "character order d");
  corr->add_option("--H", cfl.H, "number of shifts")->required();
  cfl.n_opt = corr->add_option("--N", cfl.N, "summation length (default R)");
  corr->add_option("--m", cfl.m, "tuple length for U_m and V_m");
  corr->add_option("--delta", cfl.delta, "threshold for exceptional shifts");
  corr->add_option("--c1", cfl.c1);
  corr->add_option("--c2", cfl.c2);
  corr->add_option("--c3", cfl.c3);
  auto* fft_flag = corr->add_flag("--fft", cfl.fft, "FFT correlations (needs N = R)");
  corr->add_flag("--direct", cfl.direct, "direct correlations")->excludes(fft_flag);
  cfl.sample_opt = corr->add_option("--sample", cfl.sample, "sampled tuples for U_m, V_m");
  corr->add_option("--seed", cfl.seed, "sampling seed");
  corr->add_flag("--complete", cfl.complete, "complete-sum variant of the bounds");
  corr->add_flag("--conj", cfl.conj, "conjugate the second factor");
  corr_out.attach(corr);

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "twisted sums over a full period");
  ContextFlags spec_ctx;
  u64 spec_d = 2;
  double spec_c = 1.0;
  OutputFlags spec_out;
  spec_ctx.attach(spec);
  spec->add_option("--char-order", spec_d, "character order d");
  spec->add_option("--c1", spec_c, "constant of the spectrum budget");
  spec_out.attach(spec);

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  std::vector<std::string> suites{"all"};
  u64 verify_seed = 42;
  bool inject = false;
  OutputFlags verify_out;
  verify->add_option("--suite", suites, "suite names, repeatable or comma separated");
  verify->add_option("--seed", verify_seed);
  verify->add_flag("--inject-fault", inject, "test only: perturb one psi value");
  verify_out.attach(verify);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bound monitoring over a parameter grid");
  std::string config_path, state_dir;
  unsigned workers = 0;
  u64 stop_after = 0;
  OutputFlags sweep_out;
  sweep->add_option("--config", config_path, "key = value config file")->required();
  sweep->add_option("--state-dir", state_dir, "per-cell markers (default <out>.cells)");
  sweep->add_option("--workers", workers, "worker threads");
  sweep->add_option("--stop-after", stop_after, "test only: stop after this many new cells");
  sweep_out.attach(sweep);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*find) return cmd_find(find_ctx, find_d, find_all, find_limit, find_out, out);
    if (*corr) return cmd_corr(corr_ctx, cfl, corr_out, out);
    if (*spec) return cmd_spectrum(spec_ctx, spec_d, spec_c, spec_out, out);
    if (*verify) return cmd_verify(suites, verify_seed, inject, verify_out, out, err);
    if (*sweep) return cmd_sweep(config_path, state_dir, workers, stop_after, sweep_out, out, err);
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoResult;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoResult;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoResult;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace edscorr::harness
