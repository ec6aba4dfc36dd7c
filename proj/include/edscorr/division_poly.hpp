#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "edscorr/curve.hpp"
#include "edscorr/field.hpp"

namespace edscorr {

// A fixed affine point P of order >= 3 on a curve, with the small division
// polynomial values the ladder needs. Immutable.
class EdsContext {
 public:
  // Validates that P is affine, on the curve, and has order exactly
  // order_of_p >= 3. Throws UsageError / PreconditionError otherwise.
  EdsContext(Curve curve, CurvePoint p, u64 order_of_p);

  // Computes ord P from the enumerated group order (subject to the cap).
  static EdsContext from_point(Curve curve, CurvePoint p);

  const Curve& curve() const { return curve_; }
  const PrimeField& field() const { return curve_.field(); }
  const CurvePoint& point() const { return point_; }
  u64 order() const { return order_; }

  const FieldElem& psi2() const { return psi2_; }
  const FieldElem& psi3() const { return psi3_; }
  const FieldElem& psi4() const { return psi4_; }
  const FieldElem& psi2_inv() const { return psi2_inv_; }

 private:
  Curve curve_;
  CurvePoint point_;
  u64 order_;
  FieldElem psi2_, psi3_, psi4_, psi2_inv_;
};

// Eight consecutive values psi_{k-3}(P), ..., psi_{k+4}(P) around center k.
struct EdsBlock {
  i64 center = 1;
  std::array<FieldElem, 8> values{};

  const FieldElem& at(i64 n) const { return values[n - center + 3]; }
};

// psi_n(P) for 0 <= n <= 4 straight from the explicit formulas.
FieldElem psi_small(const EdsContext& ctx, int n);

// The block centered at k = 1 (indices -2..5).
EdsBlock base_block(const EdsContext& ctx);

// block(k) -> block(2k + bit) using only the two duplication formulas
//   psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
//   psi_{2m}   = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / psi_2
EdsBlock double_block(const EdsContext& ctx, const EdsBlock& block, int bit);

// psi_n(P) for any integer n in O(log |n|) multiplications; psi_{-n} = -psi_n.
FieldElem psi_eval(const EdsContext& ctx, i64 n);

// psi_n(P) for n = n_start .. n_start + count - 1, n_start >= 1. Uses the
// four-term recurrence psi_{m+2} psi_{m-2} = psi_{m+1} psi_{m-1} psi_2^2 -
// psi_3 psi_m^2 and falls back to psi_eval where psi_{m-2}(P) = 0.
std::vector<FieldElem> psi_range(const EdsContext& ctx, i64 n_start,
                                 std::size_t count);

// psi_{m+n} psi_{m-n} psi_r^2 == psi_{m+r} psi_{m-r} psi_n^2 -
// psi_{n+r} psi_{n-r} psi_m^2 at P.
bool check_identity(const EdsContext& ctx, i64 m, i64 n, i64 r);

// [n]P from division polynomial values:
//   x = x(P) - psi_{n-1} psi_{n+1} / psi_n^2
//   y = (psi_{n-1}^2 psi_{n+2} - psi_{n-2} psi_{n+1}^2) / (4 y(P) psi_n^3)
// Throws PreconditionError when ord P divides n.
CurvePoint mul_by_n_coords(const EdsContext& ctx, i64 n);

// Least T <= search_cap with psi_{n+T} = psi_n for n = 1 .. T + 8.
std::optional<u64> raw_period(const EdsContext& ctx, u64 search_cap);

// psi_n(Q) for an arbitrary affine point Q, including points with y = 0.
// Division-free ladder on the normalized values f_n = psi_n / (2y)^[n even].
FieldElem psi_at(const Curve& curve, const CurvePoint& q, i64 n);

}  // namespace edscorr
