#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "edscorr/errors.hpp"

namespace edscorr::harness {

// Malformed configuration or command-line input (exit code 3).
class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

// A requested window lies outside the admissible range, or a search found
// nothing (exit code 2).
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters of one experiment or of a sweep grid. Text form is one
// key = value per line; repeating a list key appends to the list. Blank
// lines and lines starting with '#' are ignored.
struct ExperimentConfig {
  std::vector<std::uint64_t> p;
  // Both set, or both empty for the scan directive (curve = scan).
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
  std::optional<std::int64_t> px;
  std::optional<std::int64_t> py;
  std::uint64_t min_order = 3;
  std::vector<std::uint64_t> d;
  std::vector<std::uint64_t> H;
  std::optional<std::uint64_t> N;  // empty means N = R
  std::vector<unsigned> m;
  double delta = 0.5;
  double c1 = 1.0, c2 = 1.0, c3 = 1.0;
  bool fft = true;
  bool complete = false;
  bool conj_second = false;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  std::string out;
  unsigned workers = 0;  // 0 = hardware concurrency

  bool scan() const { return !a.has_value(); }

  // Throws ConfigError naming the first inconsistency.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace edscorr::harness
