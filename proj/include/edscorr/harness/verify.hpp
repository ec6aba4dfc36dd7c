#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace edscorr::harness {

// Suite names accepted by run_verify, in execution order.
const std::vector<std::string>& suite_names();

struct VerifyOptions {
  std::vector<std::string> suites;  // empty or {"all"} selects every suite
  std::uint64_t seed = 42;
  // Test-only: perturbs one psi value in the tables the suites read.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> samples;  // first few failure descriptions
  double seconds = 0;
  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::uint64_t seed = 0;
  bool fault_injected = false;
  std::vector<SuiteResult> suites;
  bool passed() const;
};

// Throws ConfigError for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& opts);

// Deterministic summary (no timings): seed, overall status and per-suite
// case and failure counts.
void write_verify_json(std::ostream& os, const VerifyReport& report);

}  // namespace edscorr::harness
