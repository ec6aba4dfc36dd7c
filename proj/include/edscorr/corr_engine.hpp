#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "edscorr/characters.hpp"
#include "edscorr/division_poly.hpp"

namespace edscorr {

using cplx = std::complex<double>;

// One full period of s_n = chi(psi_n(P)), n = 1..R, R = d * ord P. Reads
// outside 1..R wrap into the period.
class CharSeq {
 public:
  CharSeq(EdsContext ctx, Character chi);

  const EdsContext& context() const { return ctx_; }
  const Character& character() const { return chi_; }
  u64 period() const { return values_.size(); }
  std::uint32_t order() const { return chi_.order(); }

  // values()[n - 1] = s_n.
  const std::vector<CharValue>& values() const { return values_; }
  const CharValue& at(i64 n) const {
    const i64 r = static_cast<i64>(values_.size());
    i64 k = (n - 1) % r;
    if (k < 0) k += r;
    return values_[static_cast<std::size_t>(k)];
  }

  std::vector<cplx> as_complex() const;

 private:
  EdsContext ctx_;
  Character chi_;
  std::vector<CharValue> values_;
};

inline CharSeq build_charseq(const EdsContext& ctx, const Character& chi) {
  return CharSeq(ctx, chi);
}

// chi(psi_n(P)) for n = n_start .. n_start + count - 1, generated afresh
// (no periodic wrap). Used to confirm periodicity.
std::vector<CharValue> char_values(const EdsContext& ctx, const Character& chi,
                                   i64 n_start, std::size_t count);

// Sums are accumulated exactly in Z[zeta_d] up to this order; above it the
// bulk paths accumulate complex doubles in a fixed order.
inline constexpr std::uint32_t kExactOrderLimit = 64;

// S(N) = sum_{n<=N} s_n, 0 <= N <= R.
CycloVec sum_S(const CharSeq& seq, u64 N);

// S(N, h) = sum_{n<=N} s_n s_{n+h}, or s_n conj(s_{n+h}) when conj_second.
CycloVec corr_S(const CharSeq& seq, u64 N, i64 h, bool conj_second);

enum class Strategy { kDirect, kFft };

// S(N, h) for h = 1..H. kFft computes the full cyclic correlation through
// length-R transforms and requires N = R.
std::vector<cplx> corr_all_shifts(const CharSeq& seq, u64 N, u64 H,
                                  bool conj_second,
                                  Strategy strategy = Strategy::kDirect);

// T(H) = sum_{h<=H} |sum_{n<=R} s_n conj(s_{n+h})|^2.
double T_sum(const CharSeq& seq, u64 H, Strategy strategy = Strategy::kDirect);

// hat S(a) = sum_{n<=R} s_n e_R(a n) for a = 1..R (entry a - 1).
std::vector<cplx> spectrum(const CharSeq& seq);
// Single frequency by direct summation.
cplx spectrum_at(const CharSeq& seq, i64 a);

struct SpectralIdentity {
  double lhs = 0;  // T(R), direct
  double rhs = 0;  // (1/R) sum_lambda |hat S(lambda)|^2 |hat S(-lambda)|^2
};
SpectralIdentity spectral_T_identity(const CharSeq& seq);

struct SampleSpec {
  u64 count = 0;
  u64 seed = 0;
};

struct TupleAverage {
  double value = 0;
  bool sampled = false;
  u64 tuples_used = 0;
  u64 tuples_total = 0;  // saturates at UINT64_MAX
};

inline constexpr u64 kDefaultTupleBudget = 1'000'000;

// U_m(H, N) = H^{1-m} sum_{h_2..h_m <= H} |sum_{n<=N} s_n prod_j s_{n+h_j}|.
// Exhaustive unless a sample spec is supplied; throws CapacityError when the
// tuple count exceeds the budget and no sample spec is given. Sampling draws
// distinct tuples uniformly (with replacement only if H^{m-1} overflows).
TupleAverage U_avg(const CharSeq& seq, unsigned m, u64 H, u64 N,
                   std::optional<SampleSpec> sample = std::nullopt,
                   u64 budget = kDefaultTupleBudget);

// V_m(H, N) = H^{-m} sum_{h_1..h_m <= H} |sum_{n<=N} prod_j s_{n+h_j}|.
TupleAverage V_avg(const CharSeq& seq, unsigned m, u64 H, u64 N,
                   std::optional<SampleSpec> sample = std::nullopt,
                   u64 budget = kDefaultTupleBudget);

// Inner sum of a single U or V term, exposed for tests and the CLI.
cplx tuple_sum(const CharSeq& seq, u64 N, bool include_base,
               const std::vector<u64>& shifts);

// U_2 from the per-shift correlations: (1/H) sum_h |S(N, h)|.
double U2_from_shifts(const CharSeq& seq, u64 H, u64 N,
                      Strategy strategy = Strategy::kDirect);

// Weights alpha_1..alpha_R with |alpha_n| <= 1.
class WeightVector {
 public:
  static constexpr double kTolerance = 1e-12;
  // Throws UsageError if some |alpha_n| > 1 + 1e-12.
  explicit WeightVector(std::vector<cplx> weights);

  const std::vector<cplx>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<cplx> weights_;
};

struct ChainCheck {
  double s_w = 0;        // sum_h |sum_n alpha_n s_{n+h}|
  double bound = 0;      // (2 H^3 R^2 T(H) + H^3 R^4)^{1/4}
  double t_h = 0;        // T(H)
  bool ok = false;       // s_w^4 <= bound^4 (1 + 1e-9)
};
ChainCheck weighted_chain_check(const CharSeq& seq, const WeightVector& w, u64 H);

struct WeilSum {
  cplx value;
  double budget = 0;  // 2 (k^2 + l^2) sqrt(p)
};

// sum_{n<=R} chi(Psi(nP)) e_R(a n) with
//   Psi(Q) = psi_k(Q) psi_k(Q + mP)^{-1} psi_l(Q)^{-1} psi_l(Q + mP);
// terms where Psi vanishes or is undefined contribute 0.
WeilSum weil_sum_check(const EdsContext& ctx, const Character& chi, i64 k,
                       i64 l, i64 mshift, i64 a);

// chi(psi_{mn}(P)) == chi(psi_m(nP)) chi(psi_n(P))^{m^2}. Requires ord P ∤ n.
bool mult_identity_check(const EdsContext& ctx, const Character& chi, i64 m,
                         i64 n);

}  // namespace edscorr
