#pragma once

// Exact coefficient arithmetic: integer polynomials in the deformation
// parameter a, and the truncated local ring R_{N,K} = (Z/p^N)[a]/(a^K)
// that makes all downstream linear algebra finite.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phi2 {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 add_mod(u64 x, u64 y, u64 q) {
  u64 s = x + y;
  return s >= q ? s - q : s;
}

inline u64 sub_mod(u64 x, u64 y, u64 q) { return x >= y ? x - y : x + (q - y); }

inline u64 mul_mod(u64 x, u64 y, u64 q) { return static_cast<u64>(u128(x) * y % q); }

inline u64 pow_mod(u64 b, u64 e, u64 q) {
  u64 r = 1 % q;
  b %= q;
  while (e) {
    if (e & 1) r = mul_mod(r, b, q);
    b = mul_mod(b, b, q);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 s : kWitnesses)
    if (n % s == 0) return n == s;
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : kWitnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
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

// p-adic valuation of x, with val(0) reported as `cap`.
inline int val_p(u64 x, u64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline u64 pow_u64(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Inverse of x mod q, requires gcd(x, q) = 1.
inline u64 inv_mod(u64 x, u64 q) {
  i128 t = 0, nt = 1;
  i128 r = static_cast<i128>(q), nr = static_cast<i128>(x % q);
  while (nr != 0) {
    i128 quo = r / nr;
    i128 tmp = t - quo * nt;
    t = nt;
    nt = tmp;
    tmp = r - quo * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("inv_mod: element is not invertible");
  if (t < 0) t += static_cast<i128>(q);
  return static_cast<u64>(t);
}

inline u64 big_mod(const BigInt& v, u64 q) {
  BigInt r = v % q;
  if (r < 0) r += q;
  return r.convert_to<u64>();
}

}  // namespace detail

// Prime p together with the truncation parameters: residues live in Z/p^N and
// polynomials in a are cut off at degree K.
struct PrimeConfig {
  std::int64_t p = 2;
  int p_prec = 1;  // N
  int a_prec = 1;  // K
  std::uint64_t modulus = 2;  // p^N

  friend bool operator==(const PrimeConfig&, const PrimeConfig&) = default;

  static PrimeConfig make(std::int64_t p, int p_prec, int a_prec) {
    if (p < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(p)))
      throw std::invalid_argument("PrimeConfig: p must be prime");
    if (p_prec < 1) throw std::invalid_argument("PrimeConfig: pPrec must be >= 1");
    if (a_prec < 1) throw std::invalid_argument("PrimeConfig: aPrec must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < p_prec; ++i) {
      if (q > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p))
        throw std::invalid_argument("PrimeConfig: p^N exceeds the supported 2^62 bound");
      q *= static_cast<std::uint64_t>(p);
    }
    return PrimeConfig{p, p_prec, a_prec, q};
  }

  // Default precision policy for a job at level m: N = m + 2 so that p^m
  // torsion stays visible with headroom, and K large enough for every
  // relation polynomial (a-degree <= m) at both ladder truncations.
  static PrimeConfig defaults_for(std::int64_t p, std::int64_t m) {
    int n = static_cast<int>(m) + 2;
    std::int64_t k = std::max<std::int64_t>(2 * (m + 1) * (p + 1), 16);
    return make(p, n, static_cast<int>(k));
  }
};

inline int default_a_prec(std::int64_t p, std::int64_t m) {
  return static_cast<int>(std::max<std::int64_t>(2 * (m + 1) * (p + 1), 16));
}

// Polynomial in Z[a], dense ascending-degree coefficients, normalized so the
// top coefficient is nonzero (zero polynomial = empty list).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPoly constant(BigInt v) {
    IntPoly f;
    if (v != 0) f.c_.push_back(std::move(v));
    return f;
  }
  static IntPoly variable() { return IntPoly{0, 1}; }
  static IntPoly monomial(BigInt v, int deg) {
    IntPoly f;
    if (v != 0) {
      f.c_.assign(static_cast<std::size_t>(deg) + 1, BigInt(0));
      f.c_.back() = std::move(v);
    }
    return f;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  BigInt coeff(int j) const {
    return (j >= 0 && j < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(j)] : BigInt(0);
  }
  const std::vector<BigInt>& coeffs() const { return c_; }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  friend IntPoly operator+(const IntPoly& f, const IntPoly& g) {
    std::vector<BigInt> c(std::max(f.c_.size(), g.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < f.c_.size(); ++i) c[i] += f.c_[i];
    for (std::size_t i = 0; i < g.c_.size(); ++i) c[i] += g.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& f, const IntPoly& g) {
    std::vector<BigInt> c(std::max(f.c_.size(), g.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < f.c_.size(); ++i) c[i] += f.c_[i];
    for (std::size_t i = 0; i < g.c_.size(); ++i) c[i] -= g.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& f) {
    std::vector<BigInt> c(f.c_);
    for (auto& v : c) v = -v;
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<BigInt> c(f.c_.size() + g.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < f.c_.size(); ++i)
      for (std::size_t j = 0; j < g.c_.size(); ++j) c[i + j] += f.c_[i] * g.c_[j];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const BigInt& s, const IntPoly& f) {
    std::vector<BigInt> c(f.c_);
    for (auto& v : c) v *= s;
    return IntPoly(std::move(c));
  }
  IntPoly& operator+=(const IntPoly& g) { return *this = *this + g; }
  IntPoly& operator-=(const IntPoly& g) { return *this = *this - g; }

  static IntPoly pow(const IntPoly& f, int e) {
    if (e < 0) throw std::invalid_argument("IntPoly::pow: negative exponent");
    IntPoly r = constant(1);
    for (int i = 0; i < e; ++i) r = r * f;
    return r;
  }

 private:
  std::vector<BigInt> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (int j = f.degree(); j >= 0; --j) {
    BigInt c = f.coeff(j);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    BigInt ab = c < 0 ? BigInt(-c) : c;
    if (ab != 1 || j == 0) os << ab.str();
    if (j >= 1) os << (ab != 1 ? "*a" : "a");
    if (j >= 2) os << "^" << j;
  }
  return os;
}

// Element of R_{N,K}: exactly K residues, each fully reduced into [0, p^N).
struct TruncElem {
  PrimeConfig cfg;
  std::vector<std::uint64_t> coeffs;

  friend bool operator==(const TruncElem&, const TruncElem&) = default;
};

namespace detail {
inline void require_cfg(const TruncElem& x, const PrimeConfig& cfg, const char* where) {
  if (x.cfg != cfg) throw std::invalid_argument(std::string(where) + ": mismatched PrimeConfig");
}
}  // namespace detail

inline TruncElem trunc_zero(const PrimeConfig& cfg) {
  return TruncElem{cfg, std::vector<std::uint64_t>(static_cast<std::size_t>(cfg.a_prec), 0)};
}

inline TruncElem trunc_scalar(const BigInt& v, const PrimeConfig& cfg) {
  TruncElem x = trunc_zero(cfg);
  x.coeffs[0] = detail::big_mod(v, cfg.modulus);
  return x;
}

inline TruncElem trunc_one(const PrimeConfig& cfg) { return trunc_scalar(1, cfg); }

inline bool trunc_is_zero(const TruncElem& x) {
  return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](std::uint64_t c) { return c == 0; });
}

inline int trunc_a_degree(const TruncElem& x) {
  for (int j = static_cast<int>(x.coeffs.size()) - 1; j >= 0; --j)
    if (x.coeffs[static_cast<std::size_t>(j)] != 0) return j;
  return -1;
}

inline TruncElem reduce_poly(const IntPoly& f, const PrimeConfig& cfg) {
  TruncElem x = trunc_zero(cfg);
  int top = std::min(f.degree(), cfg.a_prec - 1);
  for (int j = 0; j <= top; ++j) x.coeffs[static_cast<std::size_t>(j)] = detail::big_mod(f.coeff(j), cfg.modulus);
  return x;
}

inline TruncElem trunc_add(const TruncElem& x, const TruncElem& y, const PrimeConfig& cfg) {
  detail::require_cfg(x, cfg, "trunc_add");
  detail::require_cfg(y, cfg, "trunc_add");
  TruncElem r = trunc_zero(cfg);
  for (std::size_t j = 0; j < r.coeffs.size(); ++j)
    r.coeffs[j] = detail::add_mod(x.coeffs[j], y.coeffs[j], cfg.modulus);
  return r;
}

inline TruncElem trunc_sub(const TruncElem& x, const TruncElem& y, const PrimeConfig& cfg) {
  detail::require_cfg(x, cfg, "trunc_sub");
  detail::require_cfg(y, cfg, "trunc_sub");
  TruncElem r = trunc_zero(cfg);
  for (std::size_t j = 0; j < r.coeffs.size(); ++j)
    r.coeffs[j] = detail::sub_mod(x.coeffs[j], y.coeffs[j], cfg.modulus);
  return r;
}

inline TruncElem trunc_neg(const TruncElem& x, const PrimeConfig& cfg) {
  return trunc_sub(trunc_zero(cfg), x, cfg);
}

inline TruncElem trunc_mul(const TruncElem& x, const TruncElem& y, const PrimeConfig& cfg) {
  detail::require_cfg(x, cfg, "trunc_mul");
  detail::require_cfg(y, cfg, "trunc_mul");
  TruncElem r = trunc_zero(cfg);
  const int k = cfg.a_prec;
  for (int i = 0; i < k; ++i) {
    if (x.coeffs[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j < k; ++j) {
      auto& slot = r.coeffs[static_cast<std::size_t>(i + j)];
      slot = detail::add_mod(slot,
                             detail::mul_mod(x.coeffs[static_cast<std::size_t>(i)],
                                             y.coeffs[static_cast<std::size_t>(j)], cfg.modulus),
                             cfg.modulus);
    }
  }
  return r;
}

// Multiplication by a^t (a shift; degrees falling off the end are truncated).
inline TruncElem trunc_shift(const TruncElem& x, int t, const PrimeConfig& cfg) {
  detail::require_cfg(x, cfg, "trunc_shift");
  TruncElem r = trunc_zero(cfg);
  for (int j = 0; j + t < cfg.a_prec; ++j)
    r.coeffs[static_cast<std::size_t>(j + t)] = x.coeffs[static_cast<std::size_t>(j)];
  return r;
}

// Units of the local ring R_{N,K}: exactly the elements whose constant term
// is invertible mod p.
inline bool is_unit(const TruncElem& x, const PrimeConfig& cfg) {
  detail::require_cfg(x, cfg, "is_unit");
  return x.coeffs[0] % static_cast<std::uint64_t>(cfg.p) != 0;
}

inline TruncElem inv_unit(const TruncElem& x, const PrimeConfig& cfg) {
  detail::require_cfg(x, cfg, "inv_unit");
  if (!is_unit(x, cfg)) throw std::domain_error("inv_unit: constant term is divisible by p");
  // Invert the constant term mod p^N, then Newton-lift in a: each step
  // y <- y(2 - xy) doubles the number of correct a-adic digits.
  TruncElem y = trunc_scalar(BigInt(detail::inv_mod(x.coeffs[0], cfg.modulus)), cfg);
  TruncElem two = trunc_scalar(2, cfg);
  for (int prec = 1; prec < cfg.a_prec; prec *= 2)
    y = trunc_mul(y, trunc_sub(two, trunc_mul(x, y, cfg), cfg), cfg);
  if (!(trunc_mul(x, y, cfg) == trunc_one(cfg)))
    throw std::logic_error("inv_unit: Newton lift failed to converge");
  return y;
}

}  // namespace phi2
