#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "edscorr/errors.hpp"

namespace edscorr {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Largest supported modulus: products of two residues fit in 128 bits and
// a sum of two residues never wraps a u64.
inline constexpr u64 kMaxModulusBits = 62;

namespace nt {

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime(u64 n);

// Prime factorization as (prime, multiplicity) pairs, primes ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

std::vector<u64> distinct_prime_factors(u64 n);

// Residue of v modulo m in [0, m).
inline u64 reduce_signed(i64 v, u64 m) {
  i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

}  // namespace nt

class PrimeField;

// A canonical residue 0 <= value < p. Elements carry their modulus so that
// mixing residues of different fields is detected.
class FieldElem {
 public:
  FieldElem() = default;

  // Wraps an already-reduced residue. No primality or range checks.
  static FieldElem unchecked(u64 value, u64 modulus) {
    return FieldElem(value, modulus);
  }

  u64 value() const { return value_; }
  u64 modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.modulus_ == y.modulus_ && x.value_ == y.value_;
  }

  friend FieldElem operator+(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator-(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
  FieldElem operator-() const {
    return FieldElem(value_ == 0 ? 0 : modulus_ - value_, modulus_);
  }
  FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
  FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
  FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }

  friend std::ostream& operator<<(std::ostream& os, const FieldElem& x) {
    return os << x.value_;
  }

 private:
  friend class PrimeField;
  FieldElem(u64 value, u64 modulus) : value_(value), modulus_(modulus) {}

  u64 value_ = 0;
  u64 modulus_ = 0;
};

// The prime field F_p, p > 3, p < 2^62. Immutable.
class PrimeField {
 public:
  // Throws UsageError unless p is a prime with 3 < p < 2^62.
  explicit PrimeField(u64 p);

  u64 modulus() const { return p_; }

  FieldElem elem(i64 v) const { return FieldElem(nt::reduce_signed(v, p_), p_); }
  FieldElem from_residue(u64 v) const { return FieldElem(v % p_, p_); }
  FieldElem zero() const { return FieldElem(0, p_); }
  FieldElem one() const { return FieldElem(1, p_); }

  bool contains(const FieldElem& x) const { return x.modulus() == p_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  u64 p_;
};

// Multiplicative inverse; throws DivisionByZero for x = 0.
FieldElem fe_inv(const FieldElem& x);

// Montgomery's batch inversion. Throws DivisionByZero naming the first zero
// index.
std::vector<FieldElem> fe_batch_inv(std::span<const FieldElem> xs);

// x^e, with 0^0 = 1.
FieldElem fe_pow(const FieldElem& x, u64 e);

// Legendre symbol as -1, 0 or 1.
int legendre(const FieldElem& x);

// Tonelli-Shanks. Returns the root in [0, (p-1)/2] when x is a square.
std::optional<FieldElem> sqrt_mod(const FieldElem& x);

// Smallest generator of F_p^*.
FieldElem find_primitive_root(const PrimeField& field);

}  // namespace edscorr
