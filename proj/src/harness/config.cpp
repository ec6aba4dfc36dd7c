#include "edscorr/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace edscorr::harness {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_int(int line, const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(line, "'" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

double parse_real(int line, const std::string& key, const std::string& v) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(line, "'" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(line, "'" + key + "' expects true or false, got '" + v + "'");
}

std::string fmt_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (a.has_value() != b.has_value()) throw ConfigError("set both a and b, or neither (curve = scan)");
  if (px.has_value() != py.has_value()) throw ConfigError("set both px and py, or neither");
  if (px && !a) throw ConfigError("an explicit point needs explicit curve coefficients a and b");
  if (px && p.size() > 1) throw ConfigError("an explicit point needs a single p");
  if (min_order < 3) throw ConfigError("min_order must be at least 3");
  for (unsigned v : m) {
    if (v < 2) throw ConfigError("m must be at least 2");
  }
  for (auto h : H) {
    if (h < 1) throw ConfigError("H must be at least 1");
  }
  if (N && *N < 1) throw ConfigError("N must be at least 1");
  if (!(delta > 0)) throw ConfigError("delta must be positive");
  if (sample && *sample == 0) throw ConfigError("sample must be positive");
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string raw;
  int line = 0;
  bool saw_scan = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value, got '" + text + "'");
    const std::string key = trim(text.substr(0, eq));
    const std::string v = trim(text.substr(eq + 1));
    if (key.empty()) fail(line, "missing key");
    if (v.empty()) fail(line, "missing value for '" + key + "'");

    if (key == "p") {
      cfg.p.push_back(parse_int<std::uint64_t>(line, key, v));
    } else if (key == "curve") {
      if (v != "scan") fail(line, "curve accepts only 'scan'");
      saw_scan = true;
    } else if (key == "a") {
      cfg.a = parse_int<std::int64_t>(line, key, v);
    } else if (key == "b") {
      cfg.b = parse_int<std::int64_t>(line, key, v);
    } else if (key == "px") {
      cfg.px = parse_int<std::int64_t>(line, key, v);
    } else if (key == "py") {
      cfg.py = parse_int<std::int64_t>(line, key, v);
    } else if (key == "min_order") {
      cfg.min_order = parse_int<std::uint64_t>(line, key, v);
    } else if (key == "d") {
      cfg.d.push_back(parse_int<std::uint64_t>(line, key, v));
    } else if (key == "H") {
      cfg.H.push_back(parse_int<std::uint64_t>(line, key, v));
    } else if (key == "N") {
      if (v == "R") {
        cfg.N.reset();
      } else {
        cfg.N = parse_int<std::uint64_t>(line, key, v);
      }
    } else if (key == "m") {
      cfg.m.push_back(parse_int<unsigned>(line, key, v));
    } else if (key == "delta") {
      cfg.delta = parse_real(line, key, v);
    } else if (key == "c1") {
      cfg.c1 = parse_real(line, key, v);
    } else if (key == "c2") {
      cfg.c2 = parse_real(line, key, v);
    } else if (key == "c3") {
      cfg.c3 = parse_real(line, key, v);
    } else if (key == "strategy") {
      if (v != "fft" && v != "direct") fail(line, "strategy must be fft or direct");
      cfg.fft = v == "fft";
    } else if (key == "complete") {
      cfg.complete = parse_bool(line, key, v);
    } else if (key == "conj_second") {
      cfg.conj_second = parse_bool(line, key, v);
    } else if (key == "sample") {
      cfg.sample = parse_int<std::uint64_t>(line, key, v);
    } else if (key == "seed") {
      cfg.seed = parse_int<std::uint64_t>(line, key, v);
    } else if (key == "out") {
      cfg.out = v;
    } else if (key == "workers") {
      cfg.workers = parse_int<unsigned>(line, key, v);
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  if (saw_scan && cfg.a) throw ConfigError("curve = scan conflicts with explicit a, b");
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  for (auto v : cfg.p) out << "p = " << v << "\n";
  if (cfg.a) {
    out << "a = " << *cfg.a << "\nb = " << *cfg.b << "\n";
  } else {
    out << "curve = scan\n";
  }
  if (cfg.px) out << "px = " << *cfg.px << "\npy = " << *cfg.py << "\n";
  out << "min_order = " << cfg.min_order << "\n";
  for (auto v : cfg.d) out << "d = " << v << "\n";
  for (auto v : cfg.H) out << "H = " << v << "\n";
  if (cfg.N) {
    out << "N = " << *cfg.N << "\n";
  } else {
    out << "N = R\n";
  }
  for (auto v : cfg.m) out << "m = " << v << "\n";
  out << "delta = " << fmt_real(cfg.delta) << "\n";
  out << "c1 = " << fmt_real(cfg.c1) << "\n";
  out << "c2 = " << fmt_real(cfg.c2) << "\n";
  out << "c3 = " << fmt_real(cfg.c3) << "\n";
  out << "strategy = " << (cfg.fft ? "fft" : "direct") << "\n";
  out << "complete = " << (cfg.complete ? "true" : "false") << "\n";
  out << "conj_second = " << (cfg.conj_second ? "true" : "false") << "\n";
  if (cfg.sample) out << "sample = " << *cfg.sample << "\n";
  out << "seed = " << cfg.seed << "\n";
  if (!cfg.out.empty()) out << "out = " << cfg.out << "\n";
  if (cfg.workers) out << "workers = " << cfg.workers << "\n";
  return out.str();
}

}  // namespace edscorr::harness
