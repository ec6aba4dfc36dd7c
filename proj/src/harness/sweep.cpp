#include "edscorr/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "edscorr/bounds.hpp"
#include "edscorr/harness/contexts.hpp"

namespace edscorr::harness {

namespace fs = std::filesystem;

namespace {

struct CellKey {
  std::size_t ctx_index;
  u64 d;
  u64 H;
};

std::string cell_id(const ResolvedContext& rc, const CellKey& k) {
  return "p" + std::to_string(rc.ctx.field().modulus()) + "-d" + std::to_string(k.d) + "-H" +
         std::to_string(k.H);
}

double ratio(double num, std::optional<double> den) {
  if (!den || !(*den > 0)) return std::numeric_limits<double>::quiet_NaN();
  return num / *den;
}

Cell opt_cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }

std::vector<std::vector<Cell>> compute_cell(const ExperimentConfig& cfg, const ResolvedContext& rc,
                                            const CellKey& k) {
  const EdsContext& ctx = rc.ctx;
  const u64 p = ctx.field().modulus();
  const CharSeq seq(ctx, char_build(ctx.field(), k.d));
  const u64 R = seq.period();
  const u64 N = cfg.N.value_or(R);
  require_range(k.H, N, R);
  const Strategy corr_strategy = (cfg.fft && N == R) ? Strategy::kFft : Strategy::kDirect;
  const double u2 = U2_from_shifts(seq, k.H, N, corr_strategy);
  const double t_h = T_sum(seq, k.H, cfg.fft ? Strategy::kFft : Strategy::kDirect);
  const BoundConstants bc{cfg.c1, cfg.c2, cfg.c3};
  const std::optional<double> b1 =
      R >= 16 ? std::optional<double>(bound_B1(p, R, k.H, bc, cfg.complete)) : std::nullopt;
  const std::optional<double> b2 =
      R >= 16 ? bound_B2(p, R, k.H, cfg.c3, cfg.complete) : std::nullopt;
  const ExceptionalCount ex = exceptional_count(seq, N, k.H, cfg.delta, cfg.c3, cfg.conj_second);
  const double c_needed = ex.rhs > 0 ? static_cast<double>(ex.count) / ex.rhs
                                     : std::numeric_limits<double>::quiet_NaN();

  std::vector<unsigned> ms = cfg.m.empty() ? std::vector<unsigned>{2} : cfg.m;
  std::optional<SampleSpec> sample;
  if (cfg.sample) sample = SampleSpec{*cfg.sample, cfg.seed};

  std::vector<std::vector<Cell>> rows;
  for (unsigned m : ms) {
    const TupleAverage um = m == 2 && !sample ? TupleAverage{u2, false, k.H, k.H}
                                              : U_avg(seq, m, k.H, N, sample);
    const TupleAverage vm = V_avg(seq, m, k.H, N, sample);
    rows.push_back({Cell{p},
                    Cell{rc.a},
                    Cell{rc.b},
                    Cell{ctx.point().x().value()},
                    Cell{ctx.point().y().value()},
                    Cell{ctx.order()},
                    Cell{k.d},
                    Cell{R},
                    Cell{k.H},
                    Cell{N},
                    Cell{u2},
                    Cell{t_h},
                    opt_cell(b1),
                    opt_cell(b2),
                    Cell{b2.has_value()},
                    Cell{ratio(u2, b1)},
                    Cell{ratio(u2, b2)},
                    Cell{cfg.delta},
                    Cell{ex.count},
                    ex.rhs > 0 ? Cell{ex.rhs} : Cell{},
                    Cell{ex.applicable},
                    Cell{c_needed},
                    Cell{static_cast<u64>(m)},
                    Cell{um.value},
                    Cell{vm.value},
                    Cell{std::string(um.sampled || vm.sampled ? "sampled" : "exhaustive")},
                    Cell{vm.tuples_used}});
  }
  return rows;
}

Table cell_table(std::vector<std::vector<Cell>> rows) {
  Table t;
  t.name = "sweep-cell";
  t.columns = sweep_columns();
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

// Restores typed cells after a CSV round trip, by column.
void retype(Table& t) {
  static const std::vector<std::string> ints{"p", "a", "b", "px", "py", "ord_p", "d", "R", "H",
                                             "N", "exc_count", "m", "tuples_used"};
  static const std::vector<std::string> bools{"B2_applicable", "cor_applicable"};
  for (auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto* text = std::get_if<std::string>(&row[c]);
      if (!text) continue;
      const std::string& col = t.columns[c];
      if (std::find(ints.begin(), ints.end(), col) != ints.end()) {
        row[c] = static_cast<std::int64_t>(std::stoll(*text));
      } else if (std::find(bools.begin(), bools.end(), col) != bools.end()) {
        row[c] = *text == "true";
      } else if (col != "tuple_mode") {
        row[c] = std::stod(*text);
      }
    }
  }
}

Table read_cell(std::istream& in) {
  Table t = read_csv(in);
  if (t.columns != sweep_columns()) throw std::runtime_error("cell file has unexpected columns");
  retype(t);
  return t;
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "p",  "a",        "b",         "px",       "py",         "ord_p",     "d",
      "R",  "H",        "N",         "U2",       "T_H",        "B1",        "B2",
      "B2_applicable", "U2_over_B1", "U2_over_B2", "delta",   "exc_count", "cor_rhs",
      "cor_applicable", "c_recorded", "m",        "U_m",       "V_m",      "tuple_mode",
      "tuples_used"};
  return cols;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const SweepOptions& opts) {
  cfg.validate();
  if (cfg.p.empty()) throw ConfigError("sweep needs at least one p");
  if (cfg.d.empty()) throw ConfigError("sweep needs at least one d");
  if (cfg.H.empty()) throw ConfigError("sweep needs at least one H");
  if (opts.state_dir.empty()) throw ConfigError("sweep needs a state directory");

  std::vector<ResolvedContext> contexts;
  for (u64 p : cfg.p) {
    ContextSpec spec{p, cfg.a, cfg.b, cfg.px, cfg.py, cfg.min_order};
    contexts.push_back(resolve_context(spec));
    for (u64 d : cfg.d) {
      if (d < 2 || (p - 1) % d != 0) {
        throw ConfigError("d = " + std::to_string(d) + " does not divide p - 1 = " +
                          std::to_string(p - 1));
      }
    }
  }
  std::vector<CellKey> cells;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    for (u64 d : cfg.d) {
      const u64 R = d * contexts[i].ctx.order();
      for (u64 H : cfg.H) {
        require_range(H, cfg.N.value_or(R), R);
        cells.push_back({i, d, H});
      }
    }
  }

  fs::create_directories(opts.state_dir);
  SweepResult result;
  result.cells_total = cells.size();
  std::vector<std::optional<Table>> done(cells.size());

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const fs::path base = fs::path(opts.state_dir) / cell_id(contexts[cells[i].ctx_index], cells[i]);
    if (fs::exists(base.string() + ".done")) {
      std::ifstream in(base.string() + ".csv");
      done[i] = read_cell(in);
      ++result.cells_reused;
    } else {
      pending.push_back(i);
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<u64> computed{0};
  std::mutex err_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= pending.size()) return;
      if (opts.stop_after && j >= opts.stop_after) return;
      const std::size_t i = pending[j];
      try {
        const auto& rc = contexts[cells[i].ctx_index];
        Table t = cell_table(compute_cell(cfg, rc, cells[i]));
        const fs::path base = fs::path(opts.state_dir) / cell_id(rc, cells[i]);
        std::ostringstream csv;
        write_csv(csv, t);
        write_atomically(base.string() + ".csv", csv.str());
        write_atomically(base.string() + ".done", "");
        // Round-trip through text so fresh and resumed runs render identically.
        std::istringstream back(csv.str());
        done[i] = read_cell(back);
        ++computed;
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!error) error = std::current_exception();
        next.store(pending.size());
        return;
      }
    }
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(std::max<std::size_t>(1, pending.size()))));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  result.cells_computed = computed.load();

  result.table.name = "sweep";
  result.table.columns = sweep_columns();
  result.table.add_meta("strategy", std::string(cfg.fft ? "fft" : "direct"));
  result.table.add_meta("N", cfg.N ? Cell{*cfg.N} : Cell{std::string("R")});
  result.table.add_meta("c1", cfg.c1);
  result.table.add_meta("c2", cfg.c2);
  result.table.add_meta("c3", cfg.c3);
  result.table.add_meta("complete", cfg.complete);
  result.table.add_meta("conj_second", cfg.conj_second);
  result.table.add_meta("seed", cfg.seed);
  result.table.add_meta("sample", cfg.sample ? Cell{*cfg.sample} : Cell{});
  result.complete = true;
  for (auto& t : done) {
    if (!t) {
      result.complete = false;
      continue;
    }
    for (auto& row : t->rows) result.table.add_row(row);
  }
  return result;
}

}  // namespace edscorr::harness
