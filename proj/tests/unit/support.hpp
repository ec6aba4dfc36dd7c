#pragma once

#include <doctest.h>

#include <complex>
#include <vector>

#include "edscorr/corr_engine.hpp"
#include "edscorr/curve.hpp"
#include "edscorr/division_poly.hpp"
#include "edscorr/oracles.hpp"
#include "edscorr/rng.hpp"

namespace testsupport {

using namespace edscorr;

inline Curve toy_curve() { return Curve(PrimeField(5), 1, 1); }

inline EdsContext toy_context() {
  const Curve c = toy_curve();
  return EdsContext(c, c.point(0, 1), 9);
}

// A random nonsingular curve over F_p with a point of order >= min_order.
inline EdsContext random_context(u64 p, Rng& rng, u64 min_order = 3) {
  const PrimeField f(p);
  for (;;) {
    const i64 a = static_cast<i64>(rng.uniform(p));
    const i64 b = static_cast<i64>(rng.uniform(p));
    if ((4 * a % static_cast<i64>(p) * a % static_cast<i64>(p) * a +
         27 * b % static_cast<i64>(p) * b) %
            static_cast<i64>(p) ==
        0) {
      continue;
    }
    const Curve c(f, a, b);
    auto found = find_point_min_order(c, min_order);
    if (!found) continue;
    return EdsContext(c, found->point, found->order);
  }
}

inline std::vector<std::complex<double>> to_complex(const std::vector<CharValue>& v) {
  std::vector<std::complex<double>> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_complex());
  return out;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace testsupport
