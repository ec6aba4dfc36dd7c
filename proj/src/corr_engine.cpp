#include "edscorr/corr_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "edscorr/rng.hpp"
#include "fft.hpp"

namespace edscorr {

namespace {

constexpr std::int32_t kZeroExp = -1;

// Exponent per position, kZeroExp for the zero value.
std::vector<std::int32_t> exponents(const CharSeq& seq) {
  std::vector<std::int32_t> e(seq.period());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const CharValue& v = seq.values()[i];
    e[i] = v.is_zero() ? kZeroExp : static_cast<std::int32_t>(v.exponent());
  }
  return e;
}

std::vector<cplx> root_table(u64 d) {
  std::vector<cplx> roots(d);
  for (u64 t = 0; t < d; ++t) roots[t] = root_of_unity(static_cast<i64>(t), d);
  return roots;
}

void require_window(u64 value, u64 R, const char* name) {
  if (value < 1 || value > R) {
    throw UsageError(std::string(name) + " = " + std::to_string(value) +
                     " is outside 1 <= " + name + " <= R = " + std::to_string(R));
  }
}

u64 saturating_pow(u64 base, unsigned exp) {
  u64 out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<u64>::max() / base) {
      return std::numeric_limits<u64>::max();
    }
    out *= base;
  }
  return out;
}

// Accumulates sum_n of prod of signed exponents; exact for small d.
class TermSum {
 public:
  explicit TermSum(u64 d) : d_(d), exact_(d <= kExactOrderLimit) {
    if (exact_) {
      counts_.assign(d, 0);
    } else {
      roots_ = root_table(d);
    }
  }

  void add(u64 t) {
    if (exact_) {
      ++counts_[t];
    } else {
      sum_ += roots_[t];
    }
  }

  cplx value() const {
    return exact_ ? CycloVec(counts_).to_complex() : sum_;
  }

  void reset() {
    std::fill(counts_.begin(), counts_.end(), 0);
    sum_ = {0.0, 0.0};
  }

 private:
  u64 d_;
  bool exact_;
  std::vector<i64> counts_;
  std::vector<cplx> roots_;
  cplx sum_{0.0, 0.0};
};

}  // namespace

CharSeq::CharSeq(EdsContext ctx, Character chi)
    : ctx_(std::move(ctx)), chi_(std::move(chi)) {
  if (!(chi_.field() == ctx_.field())) {
    throw UsageError("character and curve are over different fields");
  }
  const u64 R = static_cast<u64>(chi_.order()) * ctx_.order();
  values_ = char_values(ctx_, chi_, 1, R);
}

std::vector<cplx> CharSeq::as_complex() const {
  std::vector<cplx> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i].to_complex();
  return out;
}

std::vector<CharValue> char_values(const EdsContext& ctx, const Character& chi,
                                   i64 n_start, std::size_t count) {
  std::vector<CharValue> out;
  out.reserve(count);
  constexpr std::size_t kChunk = 1 << 16;
  for (std::size_t done = 0; done < count;) {
    const std::size_t len = std::min(kChunk, count - done);
    // Restarting the recurrence per chunk costs four ladder evaluations.
    const auto psi = psi_range(ctx, n_start + static_cast<i64>(done), len);
    for (const FieldElem& v : psi) out.push_back(chi.eval(v));
    done += len;
  }
  return out;
}

CycloVec sum_S(const CharSeq& seq, u64 N) {
  if (N > seq.period()) {
    throw UsageError("N = " + std::to_string(N) + " exceeds R = " +
                     std::to_string(seq.period()));
  }
  CycloVec acc(seq.order());
  for (u64 n = 1; n <= N; ++n) acc.accumulate(seq.at(static_cast<i64>(n)));
  return acc;
}

CycloVec corr_S(const CharSeq& seq, u64 N, i64 h, bool conj_second) {
  if (N > seq.period()) {
    throw UsageError("N = " + std::to_string(N) + " exceeds R = " +
                     std::to_string(seq.period()));
  }
  CycloVec acc(seq.order());
  for (u64 n = 1; n <= N; ++n) {
    const i64 i = static_cast<i64>(n);
    const CharValue second = conj_second ? seq.at(i + h).conj() : seq.at(i + h);
    acc.accumulate(seq.at(i) * second);
  }
  return acc;
}

namespace {

std::vector<cplx> corr_direct(const CharSeq& seq, u64 N, u64 H, bool conj_second) {
  const u64 R = seq.period();
  const u64 d = seq.order();
  const auto e = exponents(seq);
  std::vector<cplx> out(H);
  TermSum acc(d);
  for (u64 h = 1; h <= H; ++h) {
    acc.reset();
    u64 j = h % R;
    for (u64 i = 0; i < N; ++i, ++j) {
      if (j == R) j = 0;
      const std::int32_t a = e[i];
      const std::int32_t b = e[j];
      if (a == kZeroExp || b == kZeroExp) continue;
      u64 t = static_cast<u64>(a) + (conj_second ? (d - b) : static_cast<u64>(b));
      if (t >= d) t -= d;
      if (t >= d) t -= d;
      acc.add(t);
    }
    out[h - 1] = acc.value();
  }
  return out;
}

std::vector<cplx> corr_fft(const CharSeq& seq, u64 H, bool conj_second) {
  const u64 R = seq.period();
  const auto s = seq.as_complex();
  std::vector<cplx> b = s;
  if (conj_second) {
    for (auto& v : b) v = std::conj(v);
  }
  // Index n - 1 throughout; the cyclic shift is unaffected.
  const auto A = detail::dft(s, -1);
  const auto B = detail::dft(b, -1);
  std::vector<cplx> prod(R);
  for (u64 k = 0; k < R; ++k) prod[k] = A[(R - k) % R] * B[k];
  const auto c = detail::dft(prod, +1);
  std::vector<cplx> out(H);
  const double scale = 1.0 / static_cast<double>(R);
  for (u64 h = 1; h <= H; ++h) out[h - 1] = c[h % R] * scale;
  return out;
}

}  // namespace

std::vector<cplx> corr_all_shifts(const CharSeq& seq, u64 N, u64 H,
                                  bool conj_second, Strategy strategy) {
  const u64 R = seq.period();
  require_window(N, R, "N");
  require_window(H, R, "H");
  if (strategy == Strategy::kFft) {
    if (N != R) {
      throw UsageError("the FFT path computes cyclic correlations only (needs N = R = " +
                       std::to_string(R) + ", got N = " + std::to_string(N) + ")");
    }
    return corr_fft(seq, H, conj_second);
  }
  return corr_direct(seq, N, H, conj_second);
}

double T_sum(const CharSeq& seq, u64 H, Strategy strategy) {
  const auto c = corr_all_shifts(seq, seq.period(), H, true, strategy);
  double total = 0;
  for (const cplx& v : c) total += std::norm(v);
  return total;
}

std::vector<cplx> spectrum(const CharSeq& seq) {
  const u64 R = seq.period();
  std::vector<cplx> x(R);
  for (u64 n = 1; n <= R; ++n) x[n % R] = seq.values()[n - 1].to_complex();
  const auto y = detail::dft(x, +1);
  std::vector<cplx> out(R);
  for (u64 a = 1; a <= R; ++a) out[a - 1] = y[a % R];
  return out;
}

cplx spectrum_at(const CharSeq& seq, i64 a) {
  const u64 R = seq.period();
  const u64 step = R / seq.order();  // zeta_d = e_R(R / d)
  const u64 ar = nt::reduce_signed(a, R);
  cplx sum{0.0, 0.0};
  for (u64 n = 1; n <= R; ++n) {
    const CharValue& v = seq.values()[n - 1];
    if (v.is_zero()) continue;
    const u64 t = (nt::mul_mod(v.exponent(), step, R) + nt::mul_mod(ar, n, R)) % R;
    sum += root_of_unity(static_cast<i64>(t), R);
  }
  return sum;
}

SpectralIdentity spectral_T_identity(const CharSeq& seq) {
  const u64 R = seq.period();
  SpectralIdentity out;
  out.lhs = T_sum(seq, R, Strategy::kDirect);
  const auto spec = spectrum(seq);
  // spec[a - 1] = hat S(a); hat S(-lambda) = hat S(R - lambda).
  auto at = [&](u64 a) -> const cplx& { return spec[(a + R - 1) % R]; };
  double acc = 0;
  for (u64 lambda = 1; lambda <= R; ++lambda) {
    acc += std::norm(at(lambda)) * std::norm(at(R - lambda));
  }
  out.rhs = acc / static_cast<double>(R);
  return out;
}

cplx tuple_sum(const CharSeq& seq, u64 N, bool include_base,
               const std::vector<u64>& shifts) {
  const u64 R = seq.period();
  const u64 d = seq.order();
  TermSum acc(d);
  for (u64 n = 1; n <= N; ++n) {
    u64 t = 0;
    bool zero = false;
    if (include_base) {
      const CharValue& v = seq.values()[n - 1];
      if (v.is_zero()) continue;
      t = v.exponent();
    }
    for (u64 h : shifts) {
      const CharValue& v = seq.values()[(n - 1 + h) % R];
      if (v.is_zero()) {
        zero = true;
        break;
      }
      t += v.exponent();
    }
    if (!zero) acc.add(t % d);
  }
  return acc.value();
}

namespace {

TupleAverage tuple_average(const CharSeq& seq, unsigned k, u64 H, u64 N,
                           bool include_base, std::optional<SampleSpec> sample,
                           u64 budget) {
  const u64 R = seq.period();
  require_window(N, R, "N");
  require_window(H, R, "H");
  TupleAverage out;
  out.tuples_total = saturating_pow(H, k);
  const bool overflow = out.tuples_total == std::numeric_limits<u64>::max();

  std::vector<u64> shifts(k);
  auto decode = [&](u64 idx) {
    for (unsigned j = k; j-- > 0;) {
      shifts[j] = idx % H + 1;
      idx /= H;
    }
  };

  double total = 0;
  if (!sample) {
    if (overflow || out.tuples_total > budget) {
      throw CapacityError(std::to_string(H) + "^" + std::to_string(k) +
                          " shift tuples exceed the enumeration budget of " +
                          std::to_string(budget) + "; supply a sample count and seed");
    }
    for (u64 idx = 0; idx < out.tuples_total; ++idx) {
      decode(idx);
      total += std::abs(tuple_sum(seq, N, include_base, shifts));
    }
    out.tuples_used = out.tuples_total;
    out.value = total / static_cast<double>(out.tuples_used);
    return out;
  }

  if (sample->count == 0) throw UsageError("sample count must be positive");
  Rng rng(sample->seed);
  out.sampled = true;
  if (overflow) {
    for (u64 s = 0; s < sample->count; ++s) {
      for (unsigned j = 0; j < k; ++j) shifts[j] = rng.uniform(H) + 1;
      total += std::abs(tuple_sum(seq, N, include_base, shifts));
    }
    out.tuples_used = sample->count;
  } else {
    // Floyd's algorithm: count distinct indices, uniformly.
    const u64 count = std::min(sample->count, out.tuples_total);
    std::unordered_set<u64> chosen;
    chosen.reserve(count);
    for (u64 j = out.tuples_total - count; j < out.tuples_total; ++j) {
      const u64 t = rng.uniform(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<u64> order(chosen.begin(), chosen.end());
    std::sort(order.begin(), order.end());
    for (u64 idx : order) {
      decode(idx);
      total += std::abs(tuple_sum(seq, N, include_base, shifts));
    }
    out.tuples_used = count;
  }
  out.value = total / static_cast<double>(out.tuples_used);
  return out;
}

}  // namespace

TupleAverage U_avg(const CharSeq& seq, unsigned m, u64 H, u64 N,
                   std::optional<SampleSpec> sample, u64 budget) {
  if (m < 2) throw UsageError("U_m needs m >= 2");
  return tuple_average(seq, m - 1, H, N, true, sample, budget);
}

TupleAverage V_avg(const CharSeq& seq, unsigned m, u64 H, u64 N,
                   std::optional<SampleSpec> sample, u64 budget) {
  if (m < 2) throw UsageError("V_m needs m >= 2");
  return tuple_average(seq, m, H, N, false, sample, budget);
}

double U2_from_shifts(const CharSeq& seq, u64 H, u64 N, Strategy strategy) {
  const auto c = corr_all_shifts(seq, N, H, false, strategy);
  double total = 0;
  for (const cplx& v : c) total += std::abs(v);
  return total / static_cast<double>(H);
}

WeightVector::WeightVector(std::vector<cplx> weights) : weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (std::abs(weights_[i]) > 1.0 + kTolerance) {
      throw UsageError("weight alpha_" + std::to_string(i + 1) +
                       " has modulus above 1");
    }
  }
}

ChainCheck weighted_chain_check(const CharSeq& seq, const WeightVector& w, u64 H) {
  const u64 R = seq.period();
  require_window(H, R, "H");
  if (w.size() != R) {
    throw UsageError("weight vector length " + std::to_string(w.size()) +
                     " differs from R = " + std::to_string(R));
  }
  const auto s = seq.as_complex();
  ChainCheck out;
  for (u64 h = 1; h <= H; ++h) {
    cplx inner{0.0, 0.0};
    u64 j = h % R;
    for (u64 i = 0; i < R; ++i, ++j) {
      if (j == R) j = 0;
      inner += w.weights()[i] * s[j];
    }
    out.s_w += std::abs(inner);
  }
  out.t_h = T_sum(seq, H, Strategy::kDirect);
  const double h3 = std::pow(static_cast<double>(H), 3);
  const double r2 = static_cast<double>(R) * static_cast<double>(R);
  const double rhs4 = 2.0 * h3 * r2 * out.t_h + h3 * r2 * r2;
  out.bound = std::pow(rhs4, 0.25);
  const double lhs4 = out.s_w * out.s_w * out.s_w * out.s_w;
  out.ok = lhs4 <= rhs4 * (1.0 + 1e-9);
  return out;
}

WeilSum weil_sum_check(const EdsContext& ctx, const Character& chi, i64 k,
                       i64 l, i64 mshift, i64 a) {
  const u64 ord = ctx.order();
  const u64 R = static_cast<u64>(chi.order()) * ord;
  if (k < 1 || l < 1) throw UsageError("k and l must be positive");
  if (k == l) throw UsageError("k and l must differ");
  if (std::gcd(static_cast<u64>(k) * static_cast<u64>(l), R) != 1) {
    throw UsageError("gcd(k*l, R) must be 1 (k=" + std::to_string(k) +
                     ", l=" + std::to_string(l) + ", R=" + std::to_string(R) + ")");
  }
  if (nt::reduce_signed(mshift, ord) == 0) {
    throw UsageError("ord P = " + std::to_string(ord) + " divides the shift m = " +
                     std::to_string(mshift));
  }
  const Curve& curve = ctx.curve();
  const CurvePoint& P = ctx.point();
  const u64 d = chi.order();
  const u64 step = R / d;
  const u64 ar = nt::reduce_signed(a, R);
  const CurvePoint mP = curve.scalar_mul(mshift, P);

  WeilSum out;
  CurvePoint Q = CurvePoint::infinity();
  for (u64 n = 1; n <= R; ++n) {
    Q = curve.add(Q, P);
    const CurvePoint Qm = curve.add(Q, mP);
    if (Q.is_infinity() || Qm.is_infinity()) continue;
    const CharValue num1 = chi(psi_at(curve, Q, k));
    const CharValue den1 = chi(psi_at(curve, Qm, k));
    const CharValue den2 = chi(psi_at(curve, Q, l));
    const CharValue num2 = chi(psi_at(curve, Qm, l));
    if (num1.is_zero() || den1.is_zero() || den2.is_zero() || num2.is_zero()) {
      continue;
    }
    const CharValue v = num1 * den1.conj() * den2.conj() * num2;
    const u64 t = (nt::mul_mod(v.exponent(), step, R) + nt::mul_mod(ar, n, R)) % R;
    out.value += root_of_unity(static_cast<i64>(t), R);
  }
  out.budget = 2.0 * static_cast<double>(k * k + l * l) *
               std::sqrt(static_cast<double>(ctx.field().modulus()));
  return out;
}

bool mult_identity_check(const EdsContext& ctx, const Character& chi, i64 m,
                         i64 n) {
  if (nt::reduce_signed(n, ctx.order()) == 0) {
    throw PreconditionError("ord P = " + std::to_string(ctx.order()) +
                            " divides n = " + std::to_string(n));
  }
  const CharValue lhs = chi(psi_eval(ctx, m * n));
  const CurvePoint nP = ctx.curve().scalar_mul(n, ctx.point());
  const CharValue outer = chi(psi_at(ctx.curve(), nP, m));
  const CharValue inner = chi(psi_eval(ctx, n)).pow(m * m);
  return lhs == outer * inner;
}

}  // namespace edscorr
