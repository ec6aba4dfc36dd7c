#include "edscorr/curve.hpp"

#include <cstdlib>
#include <string>

namespace edscorr {

std::ostream& operator<<(std::ostream& os, const CurvePoint& pt) {
  if (pt.is_infinity()) return os << "O";
  return os << '(' << pt.x() << ',' << pt.y() << ')';
}

Curve::Curve(const PrimeField& field, FieldElem a, FieldElem b)
    : field_(field), a_(a), b_(b) {
  if (!field.contains(a) || !field.contains(b)) {
    throw UsageError("curve coefficients belong to a different field");
  }
  const FieldElem disc =
      field.elem(4) * a * a * a + field.elem(27) * b * b;
  if (disc.is_zero()) {
    throw UsageError("singular curve (4a^3 + 27b^2 = 0 mod " +
                     std::to_string(field.modulus()) + ")");
  }
}

bool Curve::on_curve(const CurvePoint& pt) const {
  if (pt.is_infinity()) return true;
  if (!field_.contains(pt.x()) || !field_.contains(pt.y())) return false;
  return pt.y() * pt.y() == rhs(pt.x());
}

CurvePoint Curve::point(i64 x, i64 y) const {
  CurvePoint pt = CurvePoint::affine(field_.elem(x), field_.elem(y));
  if (!on_curve(pt)) {
    throw UsageError("point (" + std::to_string(x) + "," + std::to_string(y) +
                     ") is not on the curve");
  }
  return pt;
}

CurvePoint Curve::negate(const CurvePoint& pt) const {
  if (pt.is_infinity()) return pt;
  return CurvePoint::affine(pt.x(), -pt.y());
}

CurvePoint Curve::add(const CurvePoint& p, const CurvePoint& q) const {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  FieldElem slope;
  if (p.x() == q.x()) {
    if ((p.y() + q.y()).is_zero()) return CurvePoint::infinity();
    // Tangent: (3x^2 + a) / 2y
    slope = (field_.elem(3) * p.x() * p.x() + a_) * fe_inv(p.y() + p.y());
  } else {
    slope = (q.y() - p.y()) * fe_inv(q.x() - p.x());
  }
  FieldElem x3 = slope * slope - p.x() - q.x();
  FieldElem y3 = slope * (p.x() - x3) - p.y();
  return CurvePoint::affine(x3, y3);
}

CurvePoint Curve::scalar_mul(i64 n, const CurvePoint& pt) const {
  CurvePoint base = n < 0 ? negate(pt) : pt;
  u64 k = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  CurvePoint acc = CurvePoint::infinity();
  while (k != 0) {
    if (k & 1) acc = add(acc, base);
    base = dbl(base);
    k >>= 1;
  }
  return acc;
}

u64 enumeration_cap() {
  if (const char* env = std::getenv("EDS_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1'000'000;
}

namespace {

void require_cap(const Curve& c, u64 cap) {
  if (c.field().modulus() > cap) {
    throw CapacityError(
        "p = " + std::to_string(c.field().modulus()) +
        " exceeds the point-enumeration cap " + std::to_string(cap) +
        "; supply a point explicitly or raise EDS_ENUM_CAP");
  }
}

// root_of[v] = smallest square root of v, or p when v is a non-residue.
std::vector<u64> square_root_table(u64 p) {
  std::vector<u64> root_of(p, p);
  for (u64 y = 0; y <= (p - 1) / 2; ++y) {
    root_of[nt::mul_mod(y, y, p)] = y;
  }
  return root_of;
}

}  // namespace

std::vector<CurvePoint> enumerate_points(const Curve& c, u64 cap) {
  require_cap(c, cap);
  const u64 p = c.field().modulus();
  const auto root_of = square_root_table(p);
  std::vector<CurvePoint> pts;
  pts.reserve(p + 2);
  pts.push_back(CurvePoint::infinity());
  for (u64 xv = 0; xv < p; ++xv) {
    const FieldElem x = c.field().from_residue(xv);
    const u64 r = root_of[c.rhs(x).value()];
    if (r == p) continue;
    if (r == 0) {
      pts.push_back(CurvePoint::affine(x, c.field().zero()));
    } else {
      pts.push_back(CurvePoint::affine(x, c.field().from_residue(r)));
      pts.push_back(CurvePoint::affine(x, c.field().from_residue(p - r)));
    }
  }
  return pts;
}

u64 group_order(const Curve& c, u64 cap) {
  require_cap(c, cap);
  const u64 p = c.field().modulus();
  const auto root_of = square_root_table(p);
  u64 count = 1;
  for (u64 xv = 0; xv < p; ++xv) {
    const u64 r = root_of[c.rhs(c.field().from_residue(xv)).value()];
    if (r != p) count += r == 0 ? 1 : 2;
  }
  return count;
}

u64 point_order(const Curve& c, const CurvePoint& pt, u64 group_order) {
  if (group_order == 0) throw UsageError("group order must be positive");
  u64 order = group_order;
  for (const auto& [q, e] : nt::factorize(group_order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (!c.scalar_mul(static_cast<i64>(order / q), pt).is_infinity()) break;
      order /= q;
    }
  }
  if (!c.scalar_mul(static_cast<i64>(order), pt).is_infinity()) {
    throw UsageError("group order is not a multiple of the point order");
  }
  return order;
}

std::optional<PointWithOrder> find_point_min_order(const Curve& c,
                                                   u64 min_order, u64 cap) {
  const auto pts = enumerate_points(c, cap);
  const u64 n = pts.size();
  if (min_order > n) return std::nullopt;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const u64 ord = point_order(c, pts[i], n);
    if (ord >= min_order) return PointWithOrder{pts[i], ord, n};
  }
  if (min_order <= 1) return PointWithOrder{pts[0], 1, n};
  return std::nullopt;
}

}  // namespace edscorr
