#include "edscorr/bounds.hpp"

#include <cmath>
#include <string>

namespace edscorr {

namespace {

void require_bound_inputs(u64 R, u64 H) {
  if (R < 16) {
    throw UsageError("bounds need R >= 16 so that log log R > 0, got R = " +
                     std::to_string(R));
  }
  if (H < 1 || H > R) {
    throw UsageError("bounds need 1 <= H <= R, got H = " + std::to_string(H));
  }
}

}  // namespace

double large_period_threshold(u64 p) {
  const double lp = std::log(static_cast<double>(p));
  return std::sqrt(static_cast<double>(p)) * std::exp(2.1 * lp / std::log(lp));
}

bool large_period_regime(u64 p, u64 R) {
  return static_cast<double>(R) >= large_period_threshold(p);
}

double bound_B1(u64 p, u64 R, u64 H, const BoundConstants& c, bool complete) {
  require_bound_inputs(R, H);
  const double r = static_cast<double>(R);
  const double h = static_cast<double>(H);
  const double lr = std::log(r);
  const double first = std::pow(h, -0.125) * r * std::exp(c.c2 * std::sqrt(lr) / std::log(lr));
  const double second = std::sqrt(h) * std::pow(r, 0.75) *
                        std::pow(static_cast<double>(p), 0.125) * (complete ? 1.0 : lr);
  return c.c1 * first + c.c1 * second;
}

std::optional<double> bound_B2(u64 p, u64 R, u64 H, double c3, bool complete) {
  require_bound_inputs(R, H);
  if (!large_period_regime(p, R)) return std::nullopt;
  const double r = static_cast<double>(R);
  const double lr = std::log(r);
  return c3 * std::pow(static_cast<double>(H), -0.25) * std::pow(r, 7.0 / 6.0) *
         std::pow(static_cast<double>(p), 1.0 / 24.0) * (complete ? 1.0 : lr) *
         std::pow(std::log(lr), 1.0 / 6.0);
}

std::optional<double> spectrum_budget(u64 p, u64 R, double c) {
  if (R < 16) throw UsageError("spectrum budget needs R >= 16");
  if (!large_period_regime(p, R)) return std::nullopt;
  const double r = static_cast<double>(R);
  return c * std::pow(static_cast<double>(p), 1.0 / 12.0) * std::pow(r, 5.0 / 6.0) *
         std::pow(std::log(std::log(r)), 1.0 / 3.0);
}

ExceptionalCount exceptional_count(const CharSeq& seq, u64 N, u64 H, double delta,
                                   double c3, bool conj_second) {
  if (!(delta > 0)) throw UsageError("delta must be positive");
  const u64 R = seq.period();
  const auto c = corr_all_shifts(seq, N, H, conj_second, Strategy::kDirect);
  ExceptionalCount out;
  const double threshold = delta * static_cast<double>(N);
  for (const cplx& v : c) {
    if (std::abs(v) >= threshold) ++out.count;
  }
  const u64 p = seq.context().field().modulus();
  if (R >= 16) {
    const double r = static_cast<double>(R);
    out.rhs = c3 / delta * std::pow(static_cast<double>(H), 0.75) /
              static_cast<double>(N) * std::pow(r, 7.0 / 6.0) *
              std::pow(static_cast<double>(p), 1.0 / 24.0) *
              std::pow(std::log(std::log(r)), 1.0 / 6.0);
  }
  out.applicable = large_period_regime(p, R) && R >= 16;
  return out;
}

}  // namespace edscorr
