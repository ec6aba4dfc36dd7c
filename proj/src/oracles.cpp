#include "edscorr/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edscorr::oracle {

namespace {

using Poly = std::vector<u64>;

u64 mulm(u64 x, u64 y, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(x) * y % p);
}

u64 powm(u64 x, u64 e, u64 p) {
  u64 r = 1;
  x %= p;
  while (e) {
    if (e & 1) r = mulm(r, x, p);
    x = mulm(x, x, p);
    e >>= 1;
  }
  return r;
}

u64 invm(u64 x, u64 p) { return powm(x, p - 2, p); }

u64 red(i64 v, u64 p) {
  i64 r = v % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly add(const Poly& f, const Poly& g, u64 p) {
  Poly out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = (out[i] + g[i]) % p;
  trim(out);
  return out;
}

Poly sub(const Poly& f, const Poly& g, u64 p) {
  Poly out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = (out[i] + p - g[i]) % p;
  trim(out);
  return out;
}

Poly mul(const Poly& f, const Poly& g, u64 p) {
  if (f.empty() || g.empty()) return {};
  Poly out(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      out[i + j] = (out[i + j] + mulm(f[i], g[j], p)) % p;
    }
  }
  trim(out);
  return out;
}

// Exact quotient f / g; throws InexactDivision on a remainder.
Poly divide_exact(Poly f, const Poly& g, u64 p, int index) {
  if (g.empty()) throw InexactDivision{index};
  if (f.empty()) return {};
  if (f.size() < g.size()) throw InexactDivision{index};
  const u64 lead_inv = invm(g.back(), p);
  Poly q(f.size() - g.size() + 1, 0);
  for (std::size_t i = f.size(); i-- >= g.size();) {
    const u64 c = mulm(f[i], lead_inv, p);
    q[i - g.size() + 1] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const std::size_t k = i - g.size() + 1 + j;
      f[k] = (f[k] + p - mulm(c, g[j], p)) % p;
    }
  }
  for (u64 r : f) {
    if (r != 0) throw InexactDivision{index};
  }
  trim(q);
  return q;
}

CurvePoly make(u64 p, u64 a, u64 b, Poly c0, Poly c1) {
  trim(c0);
  trim(c1);
  CurvePoly out;
  out.p = p;
  out.a = a;
  out.b = b;
  out.c0 = std::move(c0);
  out.c1 = std::move(c1);
  return out;
}

Poly cubic(const CurvePoly& f) { return Poly{f.b % f.p, f.a % f.p, 0, 1}; }

CurvePoly cp_sub(const CurvePoly& f, const CurvePoly& g) {
  return make(f.p, f.a, f.b, sub(f.c0, g.c0, f.p), sub(f.c1, g.c1, f.p));
}

CurvePoly cp_mul(const CurvePoly& f, const CurvePoly& g) {
  const u64 p = f.p;
  // (f0 + y f1)(g0 + y g1) with y^2 = x^3 + a x + b.
  Poly c0 = add(mul(f.c0, g.c0, p), mul(cubic(f), mul(f.c1, g.c1, p), p), p);
  Poly c1 = add(mul(f.c0, g.c1, p), mul(f.c1, g.c0, p), p);
  return make(p, f.a, f.b, std::move(c0), std::move(c1));
}

CurvePoly cp_div(const CurvePoly& f, const CurvePoly& g, int index) {
  const u64 p = f.p;
  if (g.c1.empty()) {
    return make(p, f.a, f.b, divide_exact(f.c0, g.c0, p, index),
                divide_exact(f.c1, g.c0, p, index));
  }
  if (g.c0.empty()) {
    // f / (y g1) = f y / (F g1), and f y = f1 F + y f0.
    const Poly denom = mul(cubic(f), g.c1, p);
    return make(p, f.a, f.b, divide_exact(mul(f.c1, cubic(f), p), denom, p, index),
                divide_exact(f.c0, denom, p, index));
  }
  throw InexactDivision{index};
}

}  // namespace

long CurvePoly::x_degree() const {
  return static_cast<long>(std::max(c0.size(), c1.size())) - 1;
}

std::vector<CurvePoly> poly_psi_table(u64 p, u64 a, u64 b, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  a %= p;
  b %= p;
  std::vector<CurvePoly> psi;
  const u64 a2 = mulm(a, a, p);
  psi.push_back(make(p, a, b, {}, {}));
  psi.push_back(make(p, a, b, {1}, {}));
  psi.push_back(make(p, a, b, {}, {2 % p}));
  // 3x^4 + 6a x^2 + 12b x - a^2
  psi.push_back(make(p, a, b, {red(-static_cast<i64>(a2), p), mulm(12, b, p),
                               mulm(6, a, p), 0, 3 % p},
                     {}));
  // 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
  const u64 sextic0 = (p - mulm(8, mulm(b, b, p), p) + p - mulm(a2, a, p)) % p;
  Poly sextic = {sextic0,
                 (p - mulm(4, mulm(a, b, p), p)) % p,
                 (p - mulm(5, a2, p)) % p,
                 mulm(20, b, p),
                 mulm(5, a, p),
                 0,
                 1};
  for (u64& c : sextic) c = mulm(c, 4, p);
  psi.push_back(make(p, a, b, {}, sextic));
  psi.resize(std::min<std::size_t>(psi.size(), static_cast<std::size_t>(n_max) + 1));

  const CurvePoly psi2_sq = n_max >= 2 ? cp_mul(psi[2], psi[2]) : CurvePoly{};
  for (int m = 3; m + 2 <= n_max; ++m) {
    // psi_{m+2} psi_{m-2} = psi_{m+1} psi_{m-1} psi_2^2 - psi_3 psi_m^2
    const CurvePoly num =
        cp_sub(cp_mul(cp_mul(psi[m + 1], psi[m - 1]), psi2_sq),
               cp_mul(psi[3], cp_mul(psi[m], psi[m])));
    psi.push_back(cp_div(num, psi[m - 2], m + 2));
  }
  return psi;
}

CurvePoly poly_psi(u64 p, u64 a, u64 b, int n, int n_max) {
  if (n < 0 || n > n_max) throw std::invalid_argument("poly_psi index out of range");
  return poly_psi_table(p, a, b, n).at(n);
}

u64 poly_eval(const CurvePoly& f, u64 x, u64 y) {
  auto horner = [&](const Poly& c) {
    u64 acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (mulm(acc, x, f.p) + c[i]) % f.p;
    return acc;
  };
  return (horner(f.c0) + mulm(y % f.p, horner(f.c1), f.p)) % f.p;
}

std::vector<std::pair<u64, u64>> brute_points(u64 p, u64 a, u64 b) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 x = 0; x < p; ++x) {
    const u64 rhs = (mulm(mulm(x, x, p), x, p) + mulm(a % p, x, p) + b % p) % p;
    for (u64 y = 0; y < p; ++y) {
      if (mulm(y, y, p) == rhs) out.emplace_back(x, y);
    }
  }
  return out;
}

Pt brute_add(u64 p, u64 a, const Pt& P, const Pt& Q) {
  if (!P) return Q;
  if (!Q) return P;
  const auto [x1, y1] = *P;
  const auto [x2, y2] = *Q;
  u64 lambda;
  if (x1 == x2) {
    if ((y1 + y2) % p == 0) return std::nullopt;
    lambda = mulm((3 * mulm(x1, x1, p) + a) % p, invm(2 * y1 % p, p), p);
  } else {
    lambda = mulm((y2 + p - y1) % p, invm((x2 + p - x1) % p, p), p);
  }
  const u64 x3 = (mulm(lambda, lambda, p) + 2 * p - x1 - x2) % p;
  const u64 y3 = (mulm(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
  return std::make_pair(x3, y3);
}

Pt brute_multiple(u64 p, u64 a, u64 n, const Pt& P) {
  Pt acc;
  for (u64 i = 0; i < n; ++i) acc = brute_add(p, a, acc, P);
  return acc;
}

u64 brute_order(u64 p, u64 a, const Pt& P) {
  Pt acc = P;
  u64 r = 1;
  while (acc) {
    acc = brute_add(p, a, acc, P);
    ++r;
  }
  return r;
}

u64 brute_primitive_root(u64 p) {
  for (u64 g = 2; g < p; ++g) {
    u64 x = g, k = 1;
    while (x != 1) {
      x = mulm(x, g, p);
      ++k;
    }
    if (k == p - 1) return g;
  }
  throw std::logic_error("no primitive root");
}

i64 brute_char_exponent(u64 p, u64 g, u64 d, u64 x) {
  x %= p;
  if (x == 0) return -1;
  u64 cur = 1;
  for (u64 i = 0; i < p - 1; ++i) {
    if (cur == x) return static_cast<i64>(i % d);
    cur = mulm(cur, g, p);
  }
  throw std::logic_error("discrete log not found");
}

std::complex<double> direct_corr(const std::vector<std::complex<double>>& s,
                                 u64 N, i64 h, bool conj_second) {
  const i64 R = static_cast<i64>(s.size());
  std::complex<double> sum{0.0, 0.0};
  for (u64 n = 1; n <= N; ++n) {
    i64 k = (static_cast<i64>(n) + h - 1) % R;
    if (k < 0) k += R;
    const auto second = conj_second ? std::conj(s[k]) : s[k];
    sum += s[n - 1] * second;
  }
  return sum;
}

std::complex<double> direct_twisted_sum(const std::vector<std::complex<double>>& s,
                                        i64 a) {
  const double R = static_cast<double>(s.size());
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t n = 1; n <= s.size(); ++n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(a) *
                         static_cast<double>(n) / R;
    sum += s[n - 1] * std::polar(1.0, angle);
  }
  return sum;
}

}  // namespace edscorr::oracle
