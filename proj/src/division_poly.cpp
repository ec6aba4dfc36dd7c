#include "edscorr/division_poly.hpp"

#include <algorithm>
#include <string>

namespace edscorr {

EdsContext::EdsContext(Curve curve, CurvePoint p, u64 order_of_p)
    : curve_(std::move(curve)), point_(p), order_(order_of_p) {
  if (point_.is_infinity()) {
    throw PreconditionError("EDS base point must be affine (ord P >= 3)");
  }
  if (!curve_.on_curve(point_)) throw UsageError("base point is not on the curve");
  if (order_ < 3) {
    throw PreconditionError("ord P = " + std::to_string(order_) +
                            " but ord P >= 3 is required");
  }
  if (!curve_.scalar_mul(static_cast<i64>(order_), point_).is_infinity()) {
    throw UsageError("claimed order " + std::to_string(order_) +
                     " does not annihilate P");
  }
  for (u64 q : nt::distinct_prime_factors(order_)) {
    if (curve_.scalar_mul(static_cast<i64>(order_ / q), point_).is_infinity()) {
      throw UsageError("claimed order " + std::to_string(order_) +
                       " is not minimal");
    }
  }
  psi2_ = psi_small(*this, 2);
  psi3_ = psi_small(*this, 3);
  psi4_ = psi_small(*this, 4);
  psi2_inv_ = fe_inv(psi2_);  // nonzero since ord P >= 3
}

EdsContext EdsContext::from_point(Curve curve, CurvePoint p) {
  const u64 n = group_order(curve);
  const u64 ord = point_order(curve, p, n);
  return EdsContext(std::move(curve), p, ord);
}

FieldElem psi_small(const EdsContext& ctx, int n) {
  const PrimeField& f = ctx.field();
  const FieldElem& a = ctx.curve().a();
  const FieldElem& b = ctx.curve().b();
  const FieldElem& x = ctx.point().x();
  const FieldElem& y = ctx.point().y();
  switch (n) {
    case 0:
      return f.zero();
    case 1:
      return f.one();
    case 2:
      return f.elem(2) * y;
    case 3: {
      const FieldElem x2 = x * x;
      return f.elem(3) * x2 * x2 + f.elem(6) * a * x2 + f.elem(12) * b * x -
             a * a;
    }
    case 4: {
      const FieldElem x2 = x * x;
      const FieldElem x3 = x2 * x;
      const FieldElem sextic = x3 * x3 + f.elem(5) * a * x2 * x2 +
                               f.elem(20) * b * x3 - f.elem(5) * a * a * x2 -
                               f.elem(4) * a * b * x - f.elem(8) * b * b -
                               a * a * a;
      return f.elem(4) * y * sextic;
    }
    default:
      throw UsageError("psi_small index must be in 0..4, got " +
                       std::to_string(n));
  }
}

EdsBlock base_block(const EdsContext& ctx) {
  EdsBlock block;
  block.center = 1;
  const FieldElem one = ctx.field().one();
  const FieldElem& p2 = ctx.psi2();
  const FieldElem& p3 = ctx.psi3();
  const FieldElem& p4 = ctx.psi4();
  // psi_5 = psi_4 psi_2^3 - psi_1 psi_3^3
  const FieldElem p5 = p4 * p2 * p2 * p2 - p3 * p3 * p3;
  block.values = {-p2, -one, ctx.field().zero(), one, p2, p3, p4, p5};
  return block;
}

EdsBlock double_block(const EdsContext& ctx, const EdsBlock& block, int bit) {
  EdsBlock out;
  out.center = 2 * block.center + (bit ? 1 : 0);
  for (int i = 0; i < 8; ++i) {
    const i64 t = out.center - 3 + i;
    if (t & 1) {
      const i64 j = (t - 1) / 2;
      const FieldElem& m0 = block.at(j);
      const FieldElem& m1 = block.at(j + 1);
      out.values[i] = block.at(j + 2) * m0 * m0 * m0 -
                      block.at(j - 1) * m1 * m1 * m1;
    } else {
      const i64 j = t / 2;
      const FieldElem& mm1 = block.at(j - 1);
      const FieldElem& mp1 = block.at(j + 1);
      out.values[i] = block.at(j) *
                      (block.at(j + 2) * mm1 * mm1 - block.at(j - 2) * mp1 * mp1) *
                      ctx.psi2_inv();
    }
  }
  return out;
}

FieldElem psi_eval(const EdsContext& ctx, i64 n) {
  if (n < 0) return -psi_eval(ctx, -n);
  if (n <= 4) return psi_small(ctx, static_cast<int>(n));
  int top = 63;
  while (((static_cast<u64>(n) >> top) & 1) == 0) --top;
  EdsBlock block = base_block(ctx);
  for (int bit = top - 1; bit >= 0; --bit) {
    block = double_block(ctx, block, static_cast<int>((n >> bit) & 1));
  }
  return block.at(n);
}

std::vector<FieldElem> psi_range(const EdsContext& ctx, i64 n_start,
                                 std::size_t count) {
  if (n_start < 1) {
    throw UsageError("psi_range start index must be >= 1, got " +
                     std::to_string(n_start));
  }
  std::vector<FieldElem> out;
  out.reserve(count);
  const std::size_t seed = std::min<std::size_t>(count, 4);
  for (std::size_t i = 0; i < seed; ++i) {
    out.push_back(psi_eval(ctx, n_start + static_cast<i64>(i)));
  }
  const FieldElem psi2_sq = ctx.psi2() * ctx.psi2();
  for (std::size_t i = seed; i < count; ++i) {
    const i64 n = n_start + static_cast<i64>(i);
    const FieldElem& d4 = out[i - 4];
    // The divisor psi_{n-4} vanishes exactly when ord P | n - 4.
    if (d4.is_zero()) {
      out.push_back(psi_eval(ctx, n));
      continue;
    }
    const FieldElem& d3 = out[i - 3];
    const FieldElem& d2 = out[i - 2];
    const FieldElem& d1 = out[i - 1];
    out.push_back((d1 * d3 * psi2_sq - ctx.psi3() * d2 * d2) * fe_inv(d4));
  }
  return out;
}

bool check_identity(const EdsContext& ctx, i64 m, i64 n, i64 r) {
  auto psi = [&](i64 k) { return psi_eval(ctx, k); };
  const FieldElem pr = psi(r), pn = psi(n), pm = psi(m);
  const FieldElem lhs = psi(m + n) * psi(m - n) * pr * pr;
  const FieldElem rhs =
      psi(m + r) * psi(m - r) * pn * pn - psi(n + r) * psi(n - r) * pm * pm;
  return lhs == rhs;
}

CurvePoint mul_by_n_coords(const EdsContext& ctx, i64 n) {
  if (n < 2) {
    throw UsageError("mul_by_n_coords requires n >= 2, got " + std::to_string(n));
  }
  const FieldElem pn = psi_eval(ctx, n);
  if (pn.is_zero()) {
    throw PreconditionError("psi_" + std::to_string(n) +
                            "(P) = 0: ord P = " + std::to_string(ctx.order()) +
                            " divides n");
  }
  const FieldElem pm2 = psi_eval(ctx, n - 2);
  const FieldElem pm1 = psi_eval(ctx, n - 1);
  const FieldElem pp1 = psi_eval(ctx, n + 1);
  const FieldElem pp2 = psi_eval(ctx, n + 2);
  const FieldElem& x = ctx.point().x();
  const FieldElem& y = ctx.point().y();
  const FieldElem pn2 = pn * pn;
  const FieldElem xn = (x * pn2 - pm1 * pp1) * fe_inv(pn2);
  const FieldElem yn = (pm1 * pm1 * pp2 - pm2 * pp1 * pp1) *
                       fe_inv(ctx.field().elem(4) * y * pn2 * pn);
  return CurvePoint::affine(xn, yn);
}

std::optional<u64> raw_period(const EdsContext& ctx, u64 search_cap) {
  if (search_cap < 1) throw UsageError("search_cap must be >= 1");
  // psi_{T+k ord P} = 0 forces ord P | T, so only multiples are candidates.
  constexpr std::size_t kChunk = 4096;
  for (u64 t = ctx.order(); t <= search_cap; t += ctx.order()) {
    const u64 window = t + 8;
    bool match = true;
    std::size_t chunk = 8;
    for (u64 n = 1; n <= window && match;) {
      const std::size_t len = std::min<u64>(chunk, window - n + 1);
      const auto lo = psi_range(ctx, static_cast<i64>(n), len);
      const auto hi = psi_range(ctx, static_cast<i64>(n + t), len);
      match = lo == hi;
      n += len;
      chunk = kChunk;
    }
    if (match) return t;
  }
  return std::nullopt;
}

namespace {

// Normalized values f_n for the division-free ladder at an arbitrary point.
struct NormalizedLadder {
  FieldElem sixteen_f2;  // 16 (x^3 + ax + b)^2 = (2y)^4

  static bool even(i64 j) { return (j % 2) == 0; }

  EdsBlock step(const EdsBlock& block, int bit) const {
    EdsBlock out;
    out.center = 2 * block.center + (bit ? 1 : 0);
    for (int i = 0; i < 8; ++i) {
      const i64 t = out.center - 3 + i;
      if (t & 1) {
        const i64 j = (t - 1) / 2;
        const FieldElem& m0 = block.at(j);
        const FieldElem& m1 = block.at(j + 1);
        FieldElem first = block.at(j + 2) * m0 * m0 * m0;
        FieldElem second = block.at(j - 1) * m1 * m1 * m1;
        if (even(j)) {
          first *= sixteen_f2;
        } else {
          second *= sixteen_f2;
        }
        out.values[i] = first - second;
      } else {
        const i64 j = t / 2;
        const FieldElem& mm1 = block.at(j - 1);
        const FieldElem& mp1 = block.at(j + 1);
        out.values[i] =
            block.at(j) * (block.at(j + 2) * mm1 * mm1 - block.at(j - 2) * mp1 * mp1);
      }
    }
    return out;
  }
};

}  // namespace

FieldElem psi_at(const Curve& curve, const CurvePoint& q, i64 n) {
  if (q.is_infinity()) throw UsageError("psi_at needs an affine point");
  if (n < 0) return -psi_at(curve, q, -n);
  const PrimeField& f = curve.field();
  const FieldElem& a = curve.a();
  const FieldElem& b = curve.b();
  const FieldElem& x = q.x();
  const FieldElem two_y = f.elem(2) * q.y();
  if (n == 0) return f.zero();
  if (n == 1) return f.one();

  const FieldElem fx = curve.rhs(x);
  const FieldElem x2 = x * x;
  const FieldElem x3 = x2 * x;
  const FieldElem f3 =
      f.elem(3) * x2 * x2 + f.elem(6) * a * x2 + f.elem(12) * b * x - a * a;
  const FieldElem f4 =
      f.elem(2) * (x3 * x3 + f.elem(5) * a * x2 * x2 + f.elem(20) * b * x3 -
                   f.elem(5) * a * a * x2 - f.elem(4) * a * b * x -
                   f.elem(8) * b * b - a * a * a);
  NormalizedLadder ladder{f.elem(16) * fx * fx};
  const FieldElem f5 = ladder.sixteen_f2 * f4 - f3 * f3 * f3;
  const FieldElem one = f.one();

  EdsBlock block;
  block.center = 1;
  block.values = {-one, -one, f.zero(), one, one, f3, f4, f5};
  FieldElem fn;
  if (n <= 5) {
    fn = block.at(n);
  } else {
    int top = 63;
    while (((static_cast<u64>(n) >> top) & 1) == 0) --top;
    for (int bit = top - 1; bit >= 0; --bit) {
      block = ladder.step(block, static_cast<int>((n >> bit) & 1));
    }
    fn = block.at(n);
  }
  return (n % 2 == 0) ? fn * two_y : fn;
}

}  // namespace edscorr
