#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "edscorr/field.hpp"

namespace edscorr {

// Value of a multiplicative character: either 0 (chi(0) = 0) or the root of
// unity zeta_d^t, stored exactly as the exponent t mod d.
class CharValue {
 public:
  CharValue() = default;  // zero

  static CharValue zero() { return CharValue(); }
  static CharValue root(i64 t, std::uint32_t d);

  bool is_zero() const { return order_ == 0; }
  std::uint32_t exponent() const { return exp_; }
  std::uint32_t order() const { return order_; }

  CharValue conj() const;
  CharValue pow(i64 e) const;
  std::complex<double> to_complex() const;

  friend CharValue operator*(const CharValue& u, const CharValue& v);
  friend bool operator==(const CharValue& u, const CharValue& v) {
    return u.order_ == v.order_ && u.exp_ == v.exp_;
  }

 private:
  CharValue(std::uint32_t exp, std::uint32_t order) : exp_(exp), order_(order) {}

  std::uint32_t exp_ = 0;
  std::uint32_t order_ = 0;  // 0 encodes the zero value
};

inline CharValue char_conj(const CharValue& v) { return v.conj(); }

// A multiplicative character of F_p^* of exact order d, extended by
// chi(0) = 0. chi(g^i) = zeta_d^(twist * i) for the smallest primitive root g.
class Character {
 public:
  // Residue fields up to this size get a full index table.
  static constexpr u64 kTableCap = 10'000'000;

  // Throws UsageError unless d >= 2, d | p - 1 and gcd(twist, d) = 1.
  Character(const PrimeField& field, u64 d, u64 twist = 1);

  const PrimeField& field() const { return field_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(d_); }
  u64 twist() const { return twist_; }
  const FieldElem& generator() const { return g_; }
  bool uses_table() const { return static_cast<bool>(index_); }

  CharValue eval(const FieldElem& x) const;
  CharValue operator()(const FieldElem& x) const { return eval(x); }

  // Discrete log of x (nonzero) reduced mod d, before twisting.
  u64 index_mod_order(const FieldElem& x) const;

 private:
  PrimeField field_;
  u64 d_;
  u64 twist_;
  FieldElem g_;
  std::shared_ptr<const std::vector<std::uint32_t>> index_;
  // Baby-step table for the order-d subgroup generated by g^((p-1)/d).
  std::shared_ptr<const std::unordered_map<u64, std::uint32_t>> baby_;
  u64 giant_step_ = 0;  // (g^((p-1)/d))^(-m)
  u64 baby_count_ = 0;  // m
};

Character char_build(const PrimeField& field, u64 d, u64 twist = 1);

// Divisors d >= 2 of p - 1, ascending: the orders char_build accepts.
std::vector<u64> valid_character_orders(const PrimeField& field);

// Exact element sum_j c_j zeta_d^j of Z[zeta_d], kept as signed counts.
class CycloVec {
 public:
  CycloVec() = default;
  explicit CycloVec(std::uint32_t d) : counts_(d, 0) {}
  explicit CycloVec(std::vector<i64> counts) : counts_(std::move(counts)) {}

  std::uint32_t order() const { return static_cast<std::uint32_t>(counts_.size()); }
  const std::vector<i64>& counts() const { return counts_; }

  // Adds v^weight_exp; no-op for the zero value.
  void accumulate(const CharValue& v, i64 weight_exp = 1);
  void add_root(std::uint32_t t, i64 count = 1) { counts_[t % counts_.size()] += count; }

  CycloVec& operator+=(const CycloVec& other);

  std::complex<double> to_complex() const;

  // Coefficients of the remainder modulo the d-th cyclotomic polynomial:
  // a canonical form, so equality in Z[zeta_d] is coefficient equality.
  std::vector<i64> canonical() const;
  bool is_zero() const;
  friend bool operator==(const CycloVec& u, const CycloVec& v);

 private:
  std::vector<i64> counts_;
};

// Coefficients (constant term first) of the d-th cyclotomic polynomial.
std::vector<i64> cyclotomic_polynomial(std::uint32_t d);

// e^{2 pi i t / d}, with t reduced exactly before the float conversion.
std::complex<double> root_of_unity(i64 t, u64 d);

}  // namespace edscorr
