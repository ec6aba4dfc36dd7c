#include "edscorr/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace edscorr {
namespace nt {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a deterministic witness set below 2^64.
  for (u64 a : kSmall) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Pollard-Brent; n must be composite and odd.
u64 find_factor(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr u64 kBlock = 128;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBlock;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 f = find_factor(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 q = 2; q < 1000 && q * q <= n; ++q) {
    while (n % q == 0) {
      primes.push_back(q);
      n /= q;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> result;
  for (u64 q : primes) {
    if (!result.empty() && result.back().first == q) {
      ++result.back().second;
    } else {
      result.emplace_back(q, 1);
    }
  }
  return result;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (const auto& [q, e] : factorize(n)) out.push_back(q);
  return out;
}

}  // namespace nt

namespace {

void require_same(const FieldElem& x, const FieldElem& y) {
  if (x.modulus() != y.modulus() || x.modulus() == 0) {
    throw UsageError("field elements from different fields: p=" +
                     std::to_string(x.modulus()) + " vs p=" +
                     std::to_string(y.modulus()));
  }
}

}  // namespace

FieldElem operator+(const FieldElem& x, const FieldElem& y) {
  require_same(x, y);
  u64 s = x.value_ + y.value_;
  if (s >= x.modulus_) s -= x.modulus_;
  return FieldElem(s, x.modulus_);
}

FieldElem operator-(const FieldElem& x, const FieldElem& y) {
  require_same(x, y);
  u64 s = x.value_ >= y.value_ ? x.value_ - y.value_
                               : x.value_ + x.modulus_ - y.value_;
  return FieldElem(s, x.modulus_);
}

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
  require_same(x, y);
  return FieldElem(nt::mul_mod(x.value_, y.value_, x.modulus_), x.modulus_);
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (p <= 3) {
    throw UsageError("modulus must exceed 3, got " + std::to_string(p));
  }
  if (p >> kMaxModulusBits) {
    throw UsageError("modulus exceeds 62 bits: " + std::to_string(p));
  }
  if (!nt::is_prime(p)) {
    throw UsageError("modulus is not prime: " + std::to_string(p));
  }
}

FieldElem fe_inv(const FieldElem& x) {
  if (x.is_zero()) throw DivisionByZero("inverse of zero in F_p");
  // Extended Euclid; cofactors stay below p < 2^62 in magnitude.
  i64 r0 = static_cast<i64>(x.modulus()), r1 = static_cast<i64>(x.value());
  i64 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i64 q = r0 / r1;
    const i64 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const i64 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return FieldElem::unchecked(nt::reduce_signed(t0, x.modulus()), x.modulus());
}

std::vector<FieldElem> fe_batch_inv(std::span<const FieldElem> xs) {
  std::vector<FieldElem> out(xs.size());
  if (xs.empty()) return out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].is_zero()) {
      throw DivisionByZero("batch inverse: zero at index " + std::to_string(i));
    }
  }
  // out[i] holds the prefix product x_0 ... x_{i-1}.
  FieldElem acc = FieldElem::unchecked(1, xs[0].modulus());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = acc;
    acc *= xs[i];
  }
  FieldElem inv = fe_inv(acc);
  for (std::size_t i = xs.size(); i-- > 0;) {
    out[i] = out[i] * inv;
    inv *= xs[i];
  }
  return out;
}

FieldElem fe_pow(const FieldElem& x, u64 e) {
  return FieldElem::unchecked(nt::pow_mod(x.value(), e, x.modulus()),
                              x.modulus());
}

int legendre(const FieldElem& x) {
  if (x.is_zero()) return 0;
  u64 p = x.modulus();
  return nt::pow_mod(x.value(), (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<FieldElem> sqrt_mod(const FieldElem& x) {
  const u64 p = x.modulus();
  if (x.is_zero()) return x;
  if (legendre(x) != 1) return std::nullopt;

  u64 root;
  if (p % 4 == 3) {
    root = nt::pow_mod(x.value(), (p + 1) / 4, p);
  } else {
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (nt::pow_mod(z, (p - 1) / 2, p) == 1) ++z;
    u64 m = s;
    u64 c = nt::pow_mod(z, q, p);
    u64 t = nt::pow_mod(x.value(), q, p);
    root = nt::pow_mod(x.value(), (q + 1) / 2, p);
    while (t != 1) {
      u64 i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = nt::mul_mod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + 1 < m - i; ++j) b = nt::mul_mod(b, b, p);
      m = i;
      c = nt::mul_mod(b, b, p);
      t = nt::mul_mod(t, c, p);
      root = nt::mul_mod(root, b, p);
    }
  }
  if (root > (p - 1) / 2) root = p - root;
  return FieldElem::unchecked(root, p);
}

FieldElem find_primitive_root(const PrimeField& field) {
  const u64 p = field.modulus();
  const auto primes = nt::distinct_prime_factors(p - 1);
  for (u64 g = 2;; ++g) {
    bool generator = true;
    for (u64 q : primes) {
      if (nt::pow_mod(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return field.from_residue(g);
  }
}

}  // namespace edscorr
