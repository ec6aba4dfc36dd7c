#pragma once

// Brute-force references used as ground truth by the tests and the verify
// suites. Nothing here calls into the ladder, the recurrence generator or
// the group law of the main library: arithmetic is redone from scratch on
// plain integers so that agreement is meaningful.

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace edscorr::oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// c0(x) + y c1(x) in F_p[x, y] / (y^2 - x^3 - a x - b); coefficient vectors
// are constant-term first with no trailing zeros.
struct CurvePoly {
  u64 p = 0, a = 0, b = 0;
  std::vector<u64> c0;
  std::vector<u64> c1;

  bool is_zero() const { return c0.empty() && c1.empty(); }
  // Degree in x over both y-components; -1 for the zero polynomial.
  long x_degree() const;
  friend bool operator==(const CurvePoly&, const CurvePoly&) = default;
};

// Thrown when a recurrence step leaves a nonzero remainder.
struct InexactDivision {
  int index;
};

// psi_0 .. psi_{n_max}, each reduced mod the curve equation.
std::vector<CurvePoly> poly_psi_table(u64 p, u64 a, u64 b, int n_max);
// psi_n; n must lie in 0..n_max.
CurvePoly poly_psi(u64 p, u64 a, u64 b, int n, int n_max = 64);

u64 poly_eval(const CurvePoly& f, u64 x, u64 y);

// Affine points (x ascending, then y) by exhaustive search over F_p^2.
std::vector<std::pair<u64, u64>> brute_points(u64 p, u64 a, u64 b);

// Group elements as optional pairs; nullopt is the point at infinity.
using Pt = std::optional<std::pair<u64, u64>>;
Pt brute_add(u64 p, u64 a, const Pt& P, const Pt& Q);
// n >= 0 copies of P added one at a time.
Pt brute_multiple(u64 p, u64 a, u64 n, const Pt& P);
// Least r >= 1 with rP = O by repeated addition.
u64 brute_order(u64 p, u64 a, const Pt& P);

// Smallest g whose powers exhaust F_p^*.
u64 brute_primitive_root(u64 p);
// Exponent t in chi(x) = zeta_d^t via linear search for ind_g(x); -1 for x = 0.
i64 brute_char_exponent(u64 p, u64 g, u64 d, u64 x);

// sum_{n=1}^N s_n s_{n+h} (conjugating the second factor when asked) with
// s given as s[0] = s_1, ...; indices wrap modulo s.size().
std::complex<double> direct_corr(const std::vector<std::complex<double>>& s,
                                 u64 N, i64 h, bool conj_second);

// sum_{n=1}^R s_n exp(2 pi i a n / R) by definition.
std::complex<double> direct_twisted_sum(const std::vector<std::complex<double>>& s,
                                        i64 a);

}  // namespace edscorr::oracle
