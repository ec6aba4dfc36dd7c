#pragma once

#include <cstdint>
#include <optional>

#include "edscorr/corr_engine.hpp"

namespace edscorr {

// Implied constants of the asymptotic bounds. c2 stands in for the O(.) in
// the exponent of the first B1 term.
struct BoundConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
};

// p^{1/2} exp(2.1 log p / log log p): the period threshold above which B2,
// the exceptional-shift count and the spectrum budget apply.
double large_period_threshold(u64 p);
bool large_period_regime(u64 p, u64 R);

// c1 H^{-1/8} R exp(c2 (log R)^{1/2} / log log R) + c1 H^{1/2} R^{3/4} p^{1/8} L,
// L = log R, or 1 for complete sums. Requires R >= 16 and 1 <= H <= R.
double bound_B1(u64 p, u64 R, u64 H, const BoundConstants& c, bool complete);

// c3 H^{-1/4} R^{7/6} p^{1/24} L (log log R)^{1/6}, L = log R or 1 for
// complete sums; empty outside the large-period regime.
std::optional<double> bound_B2(u64 p, u64 R, u64 H, double c3,
                               bool complete = false);

// c p^{1/12} R^{5/6} (log log R)^{1/3}, the budget for a single twisted
// complete sum; empty outside the large-period regime.
std::optional<double> spectrum_budget(u64 p, u64 R, double c);

struct ExceptionalCount {
  u64 count = 0;      // #{h <= H : |S(N, h)| >= delta N}
  double rhs = 0;     // c3 delta^{-1} H^{3/4} N^{-1} R^{7/6} p^{1/24} (log log R)^{1/6}
  bool applicable = false;
};

ExceptionalCount exceptional_count(const CharSeq& seq, u64 N, u64 H, double delta,
                                   double c3 = 1.0, bool conj_second = false);

}  // namespace edscorr
