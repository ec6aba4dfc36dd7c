#include "edscorr/harness/contexts.hpp"

#include "edscorr/harness/config.hpp"

namespace edscorr::harness {

namespace {

bool singular(const PrimeField& f, i64 a, i64 b) {
  const FieldElem A = f.elem(a), B = f.elem(b);
  return (f.elem(4) * A * A * A + f.elem(27) * B * B).is_zero();
}

PrimeField make_field(u64 p) {
  try {
    return PrimeField(p);
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

ResolvedContext resolve_context(const ContextSpec& spec, u64 scan_limit) {
  const PrimeField f = make_field(spec.p);
  if (spec.a.has_value() != spec.b.has_value()) throw ConfigError("set both --a and --b, or neither");
  if (spec.px.has_value() != spec.py.has_value()) throw ConfigError("set both --px and --py, or neither");

  if (spec.a) {
    Curve curve = [&] {
      try {
        return Curve(f, *spec.a, *spec.b);
      } catch (const UsageError& e) {
        throw ConfigError(e.what());
      }
    }();
    if (spec.px) {
      CurvePoint P;
      try {
        P = curve.point(*spec.px, *spec.py);
      } catch (const UsageError& e) {
        throw ConfigError(e.what());
      }
      const u64 n = group_order(curve);
      const u64 ord = point_order(curve, P, n);
      if (ord < 3) {
        throw RangeError("ord P = " + std::to_string(ord) + " but ord P >= 3 is required");
      }
      return {EdsContext(curve, P, ord), *spec.a, *spec.b, n};
    }
    auto found = find_point_min_order(curve, spec.min_order);
    if (!found) {
      throw RangeError("no point found with order >= " + std::to_string(spec.min_order) +
                       " (group order " + std::to_string(group_order(curve)) + ")");
    }
    return {EdsContext(curve, found->point, found->order), *spec.a, *spec.b, found->group_order};
  }

  if (spec.px) throw ConfigError("an explicit point needs explicit --a and --b");
  for (i64 a = 1; a <= static_cast<i64>(scan_limit); ++a) {
    for (i64 b = 1; b <= static_cast<i64>(scan_limit); ++b) {
      if (singular(f, a, b)) continue;
      const Curve curve(f, a, b);
      auto found = find_point_min_order(curve, spec.min_order);
      if (found) return {EdsContext(curve, found->point, found->order), a, b, found->group_order};
    }
  }
  throw RangeError("no point found with order >= " + std::to_string(spec.min_order) +
                   " on curves with 1 <= a, b <= " + std::to_string(scan_limit));
}

void require_range(u64 H, u64 N, u64 R) {
  auto check = [&](const char* name, u64 v) {
    if (v < 1 || v > R) {
      throw RangeError(std::string(name) + " = " + std::to_string(v) +
                       " is out of range: the sums are defined for integers 1 <= H, N <= R, here R = " +
                       std::to_string(R));
    }
  };
  check("H", H);
  check("N", N);
}

std::vector<BundledContext> bundled_contexts() {
  std::vector<BundledContext> out;
  auto add = [&](std::string name, u64 p, i64 a, i64 b, u64 min_order) {
    const PrimeField f(p);
    const Curve c(f, a, b);
    const auto found = find_point_min_order(c, min_order);
    std::vector<u64> orders;
    for (u64 d : {2, 3, 4, 6}) {
      if ((p - 1) % d == 0) orders.push_back(d);
    }
    out.push_back({std::move(name), EdsContext(c, found->point, found->order), orders});
  };
  add("toy-p5", 5, 1, 1, 9);
  add("p13", 13, 1, 5, 3);
  add("p101", 101, 2, 3, 40);
  add("p1009", 1009, 1, 1, 400);
  add("p10007", 10007, 1, 1, 4000);
  return out;
}

}  // namespace edscorr::harness
