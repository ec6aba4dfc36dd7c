#include "edscorr/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

namespace edscorr {

CharValue CharValue::root(i64 t, std::uint32_t d) {
  if (d == 0) throw UsageError("character value order must be positive");
  return CharValue(static_cast<std::uint32_t>(nt::reduce_signed(t, d)), d);
}

CharValue CharValue::conj() const {
  if (is_zero()) return *this;
  return CharValue(exp_ == 0 ? 0 : order_ - exp_, order_);
}

CharValue CharValue::pow(i64 e) const {
  if (is_zero()) return *this;
  const u64 t = nt::mul_mod(exp_, nt::reduce_signed(e, order_), order_);
  return CharValue(static_cast<std::uint32_t>(t), order_);
}

std::complex<double> CharValue::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return root_of_unity(exp_, order_);
}

CharValue operator*(const CharValue& u, const CharValue& v) {
  if (u.is_zero() || v.is_zero()) return CharValue::zero();
  if (u.order_ != v.order_) {
    throw UsageError("multiplying character values of different orders");
  }
  u64 t = static_cast<u64>(u.exp_) + v.exp_;
  if (t >= u.order_) t -= u.order_;
  return CharValue(static_cast<std::uint32_t>(t), u.order_);
}

std::complex<double> root_of_unity(i64 t, u64 d) {
  const u64 r = nt::reduce_signed(t, d);
  if (r == 0) return {1.0, 0.0};
  // Exact values on the axes keep real characters free of rounding.
  if (4 * r == d) return {0.0, 1.0};
  if (2 * r == d) return {-1.0, 0.0};
  if (4 * r == 3 * d) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<u64> valid_character_orders(const PrimeField& field) {
  const u64 n = field.modulus() - 1;
  std::vector<u64> out;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    if (d >= 2) out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Character::Character(const PrimeField& field, u64 d, u64 twist)
    : field_(field), d_(d), twist_(twist % (d == 0 ? 1 : d)) {
  const u64 p = field.modulus();
  if (d < 2 || (p - 1) % d != 0) {
    std::string orders;
    for (u64 v : valid_character_orders(field)) {
      if (!orders.empty()) orders += ", ";
      orders += std::to_string(v);
    }
    throw UsageError("character order " + std::to_string(d) +
                     " does not divide p - 1 = " + std::to_string(p - 1) +
                     "; valid orders: " + orders);
  }
  if (d > 0xffffffffULL) throw UsageError("character order exceeds 32 bits");
  if (std::gcd(twist, d) != 1) {
    throw UsageError("twist " + std::to_string(twist) +
                     " is not coprime to the order " + std::to_string(d));
  }
  g_ = find_primitive_root(field);

  if (p <= kTableCap) {
    auto table = std::make_shared<std::vector<std::uint32_t>>(p, 0);
    u64 x = 1;
    for (u64 i = 0; i < p - 1; ++i) {
      (*table)[x] = static_cast<std::uint32_t>(i);
      x = nt::mul_mod(x, g_.value(), p);
    }
    index_ = std::move(table);
  } else {
    const u64 h = nt::pow_mod(g_.value(), (p - 1) / d, p);
    u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(d))));
    while (m * m < d) ++m;
    auto baby = std::make_shared<std::unordered_map<u64, std::uint32_t>>();
    baby->reserve(m);
    u64 cur = 1;
    for (u64 j = 0; j < m; ++j) {
      baby->emplace(cur, static_cast<std::uint32_t>(j));
      cur = nt::mul_mod(cur, h, p);
    }
    baby_ = std::move(baby);
    baby_count_ = m;
    // h^(-m) = h^(d - m mod d)
    giant_step_ = nt::pow_mod(h, (d - m % d) % d, p);
  }
}

u64 Character::index_mod_order(const FieldElem& x) const {
  if (!field_.contains(x)) throw UsageError("character applied to foreign field element");
  if (x.is_zero()) throw UsageError("discrete log of zero");
  if (index_) return (*index_)[x.value()] % d_;
  const u64 p = field_.modulus();
  u64 y = nt::pow_mod(x.value(), (p - 1) / d_, p);
  for (u64 i = 0; i <= baby_count_; ++i) {
    auto it = baby_->find(y);
    if (it != baby_->end()) return (i * baby_count_ + it->second) % d_;
    y = nt::mul_mod(y, giant_step_, p);
  }
  throw std::logic_error("baby-step giant-step failed to find a discrete log");
}

CharValue Character::eval(const FieldElem& x) const {
  if (x.is_zero()) return CharValue::zero();
  const u64 t = nt::mul_mod(index_mod_order(x), twist_, d_);
  return CharValue::root(static_cast<i64>(t), static_cast<std::uint32_t>(d_));
}

Character char_build(const PrimeField& field, u64 d, u64 twist) {
  return Character(field, d, twist);
}

void CycloVec::accumulate(const CharValue& v, i64 weight_exp) {
  if (v.is_zero()) return;
  if (v.order() != order()) {
    throw UsageError("accumulating a character value of order " +
                     std::to_string(v.order()) + " into a sum of order " +
                     std::to_string(order()));
  }
  counts_[v.pow(weight_exp).exponent()] += 1;
}

CycloVec& CycloVec::operator+=(const CycloVec& other) {
  if (counts_.empty()) {
    counts_ = other.counts_;
    return *this;
  }
  if (other.counts_.size() != counts_.size()) {
    throw UsageError("adding cyclotomic sums of different orders");
  }
  for (std::size_t j = 0; j < counts_.size(); ++j) counts_[j] += other.counts_[j];
  return *this;
}

std::complex<double> CycloVec::to_complex() const {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] != 0) {
      sum += static_cast<double>(counts_[j]) *
             root_of_unity(static_cast<i64>(j), counts_.size());
    }
  }
  return sum;
}

std::vector<i64> cyclotomic_polynomial(std::uint32_t d) {
  static std::recursive_mutex mu;
  static std::map<std::uint32_t, std::vector<i64>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;

  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, by exact division.
  std::vector<i64> num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (std::uint32_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    const std::vector<i64> den = cyclotomic_polynomial(e);
    // Monic long division.
    const std::size_t dn = den.size() - 1;
    std::vector<i64> quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
      const i64 c = num[i];
      quot[i - dn] = c;
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  cache.emplace(d, num);
  return num;
}

std::vector<i64> CycloVec::canonical() const {
  const auto d = order();
  if (d == 0) return {};
  std::vector<i64> rem = counts_;
  const auto phi = cyclotomic_polynomial(d);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = rem.size(); i-- > deg;) {
    const i64 c = rem[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) rem[i - deg + j] -= c * phi[j];
  }
  rem.resize(deg);
  return rem;
}

bool CycloVec::is_zero() const {
  for (i64 c : canonical()) {
    if (c != 0) return false;
  }
  return true;
}

bool operator==(const CycloVec& u, const CycloVec& v) {
  if (u.order() != v.order()) return false;
  return u.canonical() == v.canonical();
}

}  // namespace edscorr
