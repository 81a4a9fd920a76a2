#pragma once

// Arithmetic in A1 = A0[b]/(w(a,b)), a free A0-module with basis 1, b, ..., b^p:
// the Weierstrass-style coefficients w_i, the dual parameter b' with
// b*b' = w_0 = (-1)^{p+1} p, and the composition-sum coefficients d_{i,tau}
// of the powers b'^tau.

#include "phi2/coeff_ring.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace phi2 {

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline BigInt w0_value(std::int64_t p) { return ((p + 1) % 2 == 0) ? BigInt(p) : BigInt(-p); }

// Coefficients of w(a,b) = (b - p)(b + (-1)^p)^p - (a - p^2 + (-1)^p) b,
// collected in powers of b; w[p+1] = 1, w[1] = -a, w[0] = (-1)^{p+1} p.
struct WeierstrassCoeffs {
  std::int64_t p = 2;
  std::vector<IntPoly> w;  // size p + 2
};

inline WeierstrassCoeffs w_coeffs(std::int64_t p) {
  if (p < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("w_coeffs: p must be prime");
  const BigInt eps = (p % 2 == 0) ? 1 : -1;  // (-1)^p
  // (b + eps)^p by the binomial theorem, then times (b - p).
  std::vector<BigInt> pw(static_cast<std::size_t>(p) + 1);
  for (std::int64_t i = 0; i <= p; ++i) {
    BigInt e = 1;
    for (std::int64_t j = 0; j < p - i; ++j) e *= eps;
    pw[static_cast<std::size_t>(i)] = binomial(p, i) * e;
  }
  std::vector<BigInt> full(static_cast<std::size_t>(p) + 2, BigInt(0));
  for (std::int64_t i = 0; i <= p; ++i) {
    full[static_cast<std::size_t>(i) + 1] += pw[static_cast<std::size_t>(i)];
    full[static_cast<std::size_t>(i)] -= BigInt(p) * pw[static_cast<std::size_t>(i)];
  }
  // - (a - p^2 + eps) b : the constant part goes into w_1, plus the -a term.
  full[1] += BigInt(p) * BigInt(p) - eps;
  WeierstrassCoeffs wc;
  wc.p = p;
  wc.w.reserve(static_cast<std::size_t>(p) + 2);
  for (std::int64_t i = 0; i <= p + 1; ++i) {
    if (i == 1)
      wc.w.push_back(IntPoly(std::vector<BigInt>{full[1], BigInt(-1)}));
    else
      wc.w.push_back(IntPoly::constant(full[static_cast<std::size_t>(i)]));
  }
  return wc;
}

// Closed binomial form of w_i for 2 <= i <= p.
inline IntPoly w_closed(std::int64_t p, int i) {
  if (i < 2 || i > p) throw std::out_of_range("w_closed: index must satisfy 2 <= i <= p");
  BigInt body = binomial(p, i - 1);
  BigInt corr = BigInt(p) * binomial(p, i);
  body += (p % 2 == 0) ? -corr : corr;  // (-1)^{p+1} p C(p, i)
  std::int64_t sign_exp = p * (p - i + 1);
  if (sign_exp % 2 != 0) body = -body;
  return IntPoly::constant(body);
}

// Coordinate vector in the ordered basis 1, b, b^2, ..., b^p. Always stored
// fully reduced (length exactly p + 1).
struct A1Elem {
  std::vector<IntPoly> coords;

  friend bool operator==(const A1Elem&, const A1Elem&) = default;
};

struct A1TruncElem {
  std::vector<TruncElem> coords;

  friend bool operator==(const A1TruncElem&, const A1TruncElem&) = default;
};

inline A1Elem a1_zero(std::int64_t p) {
  return A1Elem{std::vector<IntPoly>(static_cast<std::size_t>(p) + 1)};
}

inline A1Elem a1_basis(std::int64_t p, int i) {
  if (i < 0 || i > p) throw std::out_of_range("a1_basis: index out of range");
  A1Elem x = a1_zero(p);
  x.coords[static_cast<std::size_t>(i)] = IntPoly::constant(1);
  return x;
}

inline A1Elem a1_one(std::int64_t p) { return a1_basis(p, 0); }

inline A1Elem a1_add(const A1Elem& x, const A1Elem& y) {
  A1Elem r = x;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += y.coords[i];
  return r;
}

inline A1Elem a1_scale(const IntPoly& s, const A1Elem& x) {
  A1Elem r = x;
  for (auto& c : r.coords) c = s * c;
  return r;
}

namespace detail {

// Product in the basis 1..b^p: convolve in b, then eliminate b^{p+1} and up
// with b^{p+1} = -(w_p b^p + ... + w_1 b + w_0), valid since w_{p+1} = 1.
template <class Elem, class Ops>
std::vector<Elem> a1_mul_core(const std::vector<Elem>& x, const std::vector<Elem>& y,
                              const std::vector<Elem>& w, const Ops& ops) {
  const std::size_t n = x.size();  // p + 1
  std::vector<Elem> prod(2 * n - 1, ops.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (ops.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n; ++j)
      prod[i + j] = ops.add(prod[i + j], ops.mul(x[i], y[j]));
  }
  for (std::size_t d = prod.size(); d-- > n;) {
    Elem c = prod[d];
    if (ops.is_zero(c)) continue;
    prod[d] = ops.zero();
    for (std::size_t i = 0; i < n; ++i)
      prod[d - n + i] = ops.add(prod[d - n + i], ops.neg(ops.mul(c, w[i])));
  }
  prod.resize(n);
  return prod;
}

struct IntPolyOps {
  IntPoly zero() const { return {}; }
  bool is_zero(const IntPoly& f) const { return f.is_zero(); }
  IntPoly add(const IntPoly& f, const IntPoly& g) const { return f + g; }
  IntPoly mul(const IntPoly& f, const IntPoly& g) const { return f * g; }
  IntPoly neg(const IntPoly& f) const { return -f; }
};

struct TruncOps {
  PrimeConfig cfg;
  TruncElem zero() const { return trunc_zero(cfg); }
  bool is_zero(const TruncElem& x) const { return trunc_is_zero(x); }
  TruncElem add(const TruncElem& x, const TruncElem& y) const { return trunc_add(x, y, cfg); }
  TruncElem mul(const TruncElem& x, const TruncElem& y) const { return trunc_mul(x, y, cfg); }
  TruncElem neg(const TruncElem& x) const { return trunc_neg(x, cfg); }
};

}  // namespace detail

inline A1Elem a1_mul(const A1Elem& x, const A1Elem& y, const WeierstrassCoeffs& w) {
  if (x.coords.size() != y.coords.size() || x.coords.size() != w.w.size() - 1)
    throw std::invalid_argument("a1_mul: rank mismatch");
  std::vector<IntPoly> wlow(w.w.begin(), w.w.end() - 1);
  return A1Elem{detail::a1_mul_core(x.coords, y.coords, wlow, detail::IntPolyOps{})};
}

inline std::vector<TruncElem> reduce_w(const WeierstrassCoeffs& w, const PrimeConfig& cfg) {
  std::vector<TruncElem> r;
  r.reserve(w.w.size() - 1);
  for (std::size_t i = 0; i + 1 < w.w.size(); ++i) r.push_back(reduce_poly(w.w[i], cfg));
  return r;
}

inline A1TruncElem reduce_a1(const A1Elem& x, const PrimeConfig& cfg) {
  A1TruncElem r;
  r.coords.reserve(x.coords.size());
  for (const auto& c : x.coords) r.coords.push_back(reduce_poly(c, cfg));
  return r;
}

inline A1TruncElem a1_mul(const A1TruncElem& x, const A1TruncElem& y,
                          const std::vector<TruncElem>& wlow, const PrimeConfig& cfg) {
  if (x.coords.size() != y.coords.size() || x.coords.size() != wlow.size())
    throw std::invalid_argument("a1_mul: rank mismatch");
  return A1TruncElem{detail::a1_mul_core(x.coords, y.coords, wlow, detail::TruncOps{cfg})};
}

inline A1Elem a1_pow(const A1Elem& x, std::int64_t e, const WeierstrassCoeffs& w) {
  if (e < 0) throw std::invalid_argument("a1_pow: negative exponent");
  A1Elem r = a1_one(w.p);
  A1Elem base = x;
  while (e > 0) {
    if (e & 1) r = a1_mul(r, base, w);
    e >>= 1;
    if (e) base = a1_mul(base, base, w);
  }
  return r;
}

// b' = -(w_1 + w_2 b + ... + w_{p+1} b^p); satisfies b * b' = w_0.
inline A1Elem b_prime(const WeierstrassCoeffs& w) {
  A1Elem x = a1_zero(w.p);
  for (std::size_t i = 0; i + 1 < w.w.size(); ++i) x.coords[i] = -w.w[i + 1];
  return x;
}

inline A1Elem b_prime_pow(const WeierstrassCoeffs& w, std::int64_t tau) {
  if (tau < 0) throw std::invalid_argument("b_prime_pow: tau must be >= 0");
  return a1_pow(b_prime(w), tau, w);
}

inline A1Elem b_pow(const WeierstrassCoeffs& w, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("b_pow: m must be >= 0");
  return a1_pow(a1_basis(w.p, 1), m, w);
}

// d_{i,tau}: coefficient of b^i in b'^tau, by the composition-sum formula
//   d_{i,tau} = sum_{n=0}^{tau-1} (-1)^{tau-n} w_0^n
//               sum_{m_1+...+m_{tau-n} = tau+i, 1 <= m_s <= p+1, last >= i+1}
//               w_{m_1} ... w_{m_{tau-n}}.
// Enumeration is depth-first over the parts; tau and p stay small here.
inline IntPoly d_coeff(std::int64_t p, int i, int tau) {
  if (i < 0 || i > p) throw std::out_of_range("d_coeff: i must satisfy 0 <= i <= p");
  if (tau < 1) throw std::invalid_argument("d_coeff: tau must be >= 1");
  const WeierstrassCoeffs w = w_coeffs(p);
  const BigInt w0 = w0_value(p);
  IntPoly total;

  for (int n = 0; n < tau; ++n) {
    const int parts = tau - n;
    IntPoly partial;
    // DFS over compositions; the last-part constraint is checked at the leaf
    // level by restricting its admissible range.
    auto rec = [&](auto&& self, int pos, int remaining, const IntPoly& acc) -> void {
      if (pos == parts - 1) {
        if (remaining >= std::max(1, i + 1) && remaining <= p + 1)
          partial += acc * w.w[static_cast<std::size_t>(remaining)];
        return;
      }
      for (int m = 1; m <= p + 1 && m < remaining; ++m)
        self(self, pos + 1, remaining - m, acc * w.w[static_cast<std::size_t>(m)]);
    };
    rec(rec, 0, tau + i, IntPoly::constant(1));
    BigInt scale = 1;
    for (int t = 0; t < n; ++t) scale *= w0;
    if ((tau - n) % 2 != 0) scale = -scale;
    total += scale * partial;
  }
  return total;
}

}  // namespace phi2
