#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "edscorr/field.hpp"

namespace edscorr {

// Either the point at infinity or an affine pair (x, y).
class CurvePoint {
 public:
  CurvePoint() = default;  // infinity

  static CurvePoint infinity() { return CurvePoint(); }
  static CurvePoint affine(FieldElem x, FieldElem y) {
    return CurvePoint(x, y);
  }

  bool is_infinity() const { return infinity_; }
  // Only meaningful for affine points.
  const FieldElem& x() const { return x_; }
  const FieldElem& y() const { return y_; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity_ || q.infinity_) return p.infinity_ == q.infinity_;
    return p.x_ == q.x_ && p.y_ == q.y_;
  }

  friend std::ostream& operator<<(std::ostream& os, const CurvePoint& pt);

 private:
  CurvePoint(FieldElem x, FieldElem y) : infinity_(false), x_(x), y_(y) {}

  bool infinity_ = true;
  FieldElem x_;
  FieldElem y_;
};

// Short Weierstrass curve y^2 = x^3 + a x + b over F_p, nonsingular.
class Curve {
 public:
  // Throws UsageError if 4a^3 + 27b^2 = 0.
  Curve(const PrimeField& field, FieldElem a, FieldElem b);
  Curve(const PrimeField& field, i64 a, i64 b)
      : Curve(field, field.elem(a), field.elem(b)) {}

  const PrimeField& field() const { return field_; }
  const FieldElem& a() const { return a_; }
  const FieldElem& b() const { return b_; }

  // x^3 + a x + b
  FieldElem rhs(const FieldElem& x) const { return (x * x + a_) * x + b_; }

  bool on_curve(const CurvePoint& pt) const;

  CurvePoint point(i64 x, i64 y) const;  // throws if not on the curve

  CurvePoint negate(const CurvePoint& pt) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint dbl(const CurvePoint& pt) const { return add(pt, pt); }
  // Double-and-add; negative n multiplies the negated point.
  CurvePoint scalar_mul(i64 n, const CurvePoint& pt) const;

 private:
  PrimeField field_;
  FieldElem a_;
  FieldElem b_;
};

// Point-enumeration cap; EDS_ENUM_CAP in the environment overrides the
// default of 10^6.
u64 enumeration_cap();

// All points, infinity first, then affine points by x then y ascending.
// Throws CapacityError when p exceeds the cap.
std::vector<CurvePoint> enumerate_points(const Curve& c, u64 cap);
inline std::vector<CurvePoint> enumerate_points(const Curve& c) {
  return enumerate_points(c, enumeration_cap());
}

// #E(F_p) by enumeration; same cap as enumerate_points.
u64 group_order(const Curve& c, u64 cap);
inline u64 group_order(const Curve& c) { return group_order(c, enumeration_cap()); }

// Least r >= 1 with rP = O. group_order must be a multiple of ord P.
u64 point_order(const Curve& c, const CurvePoint& pt, u64 group_order);

struct PointWithOrder {
  CurvePoint point;
  u64 order;
  u64 group_order;
};

// First point in enumeration order whose order is at least min_order.
std::optional<PointWithOrder> find_point_min_order(const Curve& c,
                                                   u64 min_order, u64 cap);
inline std::optional<PointWithOrder> find_point_min_order(const Curve& c,
                                                          u64 min_order) {
  return find_point_min_order(c, min_order, enumeration_cap());
}

}  // namespace edscorr
