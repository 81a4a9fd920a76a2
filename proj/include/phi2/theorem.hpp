#pragma once

// The claimed presentations of B_m = H^2 as checkable objects: generator
// annihilator exponents, the relation vectors r_j, the leading-term property,
// torsion sharpness certificates, and the height-1 reference values.

#include "phi2/koszul.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phi2 {

// Index range J(m, p) of the relations r_j, inclusive; lo > hi means empty.
inline std::pair<std::int64_t, std::int64_t> relation_index_range(std::int64_t p, std::int64_t m) {
  if (m < 2) return {1, 0};
  if (m <= p + 2) return {1, m - 1};
  return {m - p - 1, m - 1};
}

// r_j = w_0^{m-1-j} * sum_i d_{i,j+1} x_i, built from the multiplication
// oracle b'^(j+1); the closed-form d coefficients are cross-checked
// separately (relation_formula_agrees).
inline std::vector<IntPoly> relation_r(std::int64_t p, std::int64_t m, std::int64_t j) {
  auto [lo, hi] = relation_index_range(p, m);
  if (j < lo || j > hi)
    throw std::out_of_range("relation_r: j outside the relation index range J(m, p)");
  const WeierstrassCoeffs w = w_coeffs(p);
  const A1Elem bp = b_prime_pow(w, j + 1);
  BigInt scale = 1;
  const BigInt w0 = w0_value(p);
  for (std::int64_t t = 0; t < m - 1 - j; ++t) scale *= w0;
  std::vector<IntPoly> r;
  r.reserve(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) r.push_back(scale * bp.coords[static_cast<std::size_t>(i)]);
  return r;
}

// Oracle-vs-formula agreement for the coordinates of b'^tau.
inline bool relation_formula_agrees(std::int64_t p, int tau) {
  const WeierstrassCoeffs w = w_coeffs(p);
  const A1Elem bp = b_prime_pow(w, tau);
  for (int i = 0; i <= p; ++i)
    if (!(d_coeff(p, i, tau) == bp.coords[static_cast<std::size_t>(i)])) return false;
  return true;
}

struct ClaimedPresentation {
  ModulePresentation pres;
  std::vector<std::int64_t> relation_indices;  // the j's, ascending
};

// The presentation of B_m: m = 0 gives the zero module, m = 1 gives
// (E_0/p)^(p-1) with x_p collapsed (exponent 0), and m >= 2 the generators
// x_1..x_{p-1} of order p^m, x_p of order p^{m-1}, with relations over J(m,p).
inline ClaimedPresentation claimed_presentation(std::int64_t p, std::int64_t m,
                                                const PrimeConfig& cfg) {
  if (m < 0) throw std::invalid_argument("claimed_presentation: m must be >= 0");
  if (cfg.p != p) throw std::invalid_argument("claimed_presentation: cfg prime mismatch");
  ClaimedPresentation cp;
  cp.pres.p = p;
  cp.pres.cfg = cfg;
  const int gens = static_cast<int>(p);
  if (m == 0) {
    cp.pres.order_exp.assign(static_cast<std::size_t>(gens), 0);
    return cp;
  }
  cp.pres.order_exp.assign(static_cast<std::size_t>(gens), static_cast<int>(m));
  cp.pres.order_exp.back() = static_cast<int>(m) - 1;
  auto [lo, hi] = relation_index_range(p, m);
  for (std::int64_t j = lo; j <= hi; ++j) {
    cp.relation_indices.push_back(j);
    cp.pres.relations.push_back(relation_r(p, m, j));
  }
  return cp;
}

inline ClaimedPresentation claimed_presentation(std::int64_t p, std::int64_t m) {
  return claimed_presentation(p, m, PrimeConfig::defaults_for(p, m));
}

// r_j contains the term (-1)^{j+1} w_0^{m-1-j} w_1^j x_p, i.e. the x_p
// coefficient has a^j-coefficient equal to -w_0^{m-1-j}.
inline bool leading_term_check(std::int64_t p, std::int64_t m, std::int64_t j) {
  std::vector<IntPoly> r = relation_r(p, m, j);
  BigInt expected = -1;
  const BigInt w0 = w0_value(p);
  for (std::int64_t t = 0; t < m - 1 - j; ++t) expected *= w0;
  return r.back().coeff(static_cast<int>(j)) == expected;
}

struct TorsionCheck {
  std::string label;
  bool expected_member = false;
  bool is_member = false;
  bool pass = false;
};

struct TorsionReport {
  bool pass = false;
  std::vector<TorsionCheck> checks;
};

// Membership certificates for the p-power torsion bounds and their
// sharpness: p^m x_i (i < p) and p^{m-1} x_p lie in the relation span,
// while p^{m-1} x_1 and (for m >= 2) p^{m-2} x_p do not.
inline TorsionReport torsion_and_sharpness(std::int64_t p, std::int64_t m,
                                           const PrimeConfig& cfg) {
  if (m < 1) throw std::invalid_argument("torsion_and_sharpness: m must be >= 1");
  if (cfg.p_prec < m + 1)
    throw std::invalid_argument("torsion_and_sharpness: pPrec must be at least m + 1");
  const H2Result h2 = h2_cokernel(KoszulJob{cfg, m});
  const int gens = static_cast<int>(p);
  TorsionReport rep;
  rep.pass = true;

  auto probe = [&](std::int64_t exp, int gen, bool expect) {
    BigInt s = 1;
    for (std::int64_t t = 0; t < exp; ++t) s *= p;
    bool got = member(scaled_basis_vector(s, gen, gens, cfg), h2.span).member;
    TorsionCheck c;
    c.label = "p^" + std::to_string(exp) + "*x" + std::to_string(gen + 1);
    c.expected_member = expect;
    c.is_member = got;
    c.pass = (got == expect);
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  };

  for (int i = 0; i < gens - 1; ++i) probe(m, i, true);
  probe(m - 1, gens - 1, true);
  probe(m - 1, 0, false);
  if (m >= 2) probe(m - 2, gens - 1, false);
  return rep;
}

struct Height1Ref {
  BigInt order;      // p^m
  bool applicable;   // hypotheses: p != 3, and if p = 2 then m = 0, 3 mod 4
};

inline Height1Ref height1_reference(std::int64_t p, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("height1_reference: m must be >= 0");
  Height1Ref r;
  r.order = 1;
  for (std::int64_t t = 0; t < m; ++t) r.order *= p;
  r.applicable = (p != 3) && (p != 2 || (m % 4 == 0 || m % 4 == 3));
  return r;
}

}  // namespace phi2
