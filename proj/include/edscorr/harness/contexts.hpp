#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edscorr/corr_engine.hpp"

namespace edscorr::harness {

struct ContextSpec {
  u64 p = 0;
  std::optional<i64> a, b;    // both empty: scan
  std::optional<i64> px, py;  // both empty: first point of order >= min_order
  u64 min_order = 3;
};

struct ResolvedContext {
  EdsContext ctx;
  i64 a;
  i64 b;
  std::optional<u64> group_order;  // known when found by enumeration
};

// Scan order: a = 1, 2, ..., then b = 1, 2, ...; the first nonsingular curve
// with a point of order >= min_order wins. Throws RangeError if none exists
// within the scan limit, ConfigError for invalid explicit input.
ResolvedContext resolve_context(const ContextSpec& spec, u64 scan_limit = 64);

// Checks 1 <= H, N <= R with the admissible range in the message.
void require_range(u64 H, u64 N, u64 R);

// A named context plus the character orders the verify suites use on it.
struct BundledContext {
  std::string name;
  EdsContext ctx;
  std::vector<u64> orders;
};

// The toy F_5 context and curves over p = 13, 101, 1009, 10007 with every
// d in {2, 3, 4, 6} dividing p - 1.
std::vector<BundledContext> bundled_contexts();

}  // namespace edscorr::harness
