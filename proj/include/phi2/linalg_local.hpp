#pragma once

// Exact linear algebra over R_{N,K} by flattening to Z/p^N: Howell canonical
// row-span forms with membership certificates, Smith-style invariant factors
// of truncated cokernels, kernels, and module-presentation comparison.
//
// Z/p^N has zero divisors, so plain row echelon does not decide span
// membership; the Howell property (closure under annihilator multiples)
// does. All pivoting is by minimal p-adic valuation with fixed tie-breaking,
// which keeps every routine deterministic.

#include "phi2/coeff_ring.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phi2 {

using FlatRow = std::vector<std::uint64_t>;

struct FlatMatrix {
  PrimeConfig cfg;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint64_t> a;  // row-major

  std::uint64_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::uint64_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  FlatRow row(int r) const {
    return FlatRow(a.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                   a.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols);
  }

  static FlatMatrix zero(const PrimeConfig& cfg, int rows, int cols) {
    return FlatMatrix{cfg, rows, cols,
                      std::vector<std::uint64_t>(static_cast<std::size_t>(rows) * cols, 0)};
  }
  static FlatMatrix from_rows(const std::vector<FlatRow>& rows, int cols, const PrimeConfig& cfg) {
    FlatMatrix m = zero(cfg, static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(rows[r].size()) != cols)
        throw std::invalid_argument("FlatMatrix::from_rows: ragged input");
      for (int c = 0; c < cols; ++c) m.at(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
    }
    return m;
  }
};

struct TruncMatrix {
  PrimeConfig cfg;
  int rows = 0;
  int cols = 0;
  std::vector<TruncElem> e;  // row-major

  const TruncElem& at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }
};

// Each R-entry becomes a K x K block realizing multiplication by that element
// in the basis {a^j}: column t of the block is the coefficient vector of
// e * a^t, so multiplication by a is the nilpotent shift.
inline FlatMatrix flatten(const TruncMatrix& m) {
  const int k = m.cfg.a_prec;
  FlatMatrix f = FlatMatrix::zero(m.cfg, m.rows * k, m.cols * k);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      const TruncElem& e = m.at(r, c);
      for (int s = 0; s < k; ++s)
        for (int t = 0; t <= s; ++t) f.at(r * k + s, c * k + t) = e.coeffs[static_cast<std::size_t>(s - t)];
    }
  return f;
}

// Scalar generators of the Z/p^N row span of an R-matrix: for each R-row,
// the K rows of coefficients of a^t * (that row), t = 0..K-1.
inline FlatMatrix flatten_row_span(const TruncMatrix& m) {
  const int k = m.cfg.a_prec;
  FlatMatrix f = FlatMatrix::zero(m.cfg, m.rows * k, m.cols * k);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      const TruncElem& e = m.at(r, c);
      for (int t = 0; t < k; ++t)
        for (int s = t; s < k; ++s) f.at(r * k + t, c * k + s) = e.coeffs[static_cast<std::size_t>(s - t)];
    }
  return f;
}

// Coefficient coordinates of an R-vector, blocks of K scalars per entry.
inline FlatRow flat_vector(const std::vector<TruncElem>& v, const PrimeConfig& cfg) {
  FlatRow r;
  r.reserve(v.size() * static_cast<std::size_t>(cfg.a_prec));
  for (const auto& e : v) {
    detail::require_cfg(e, cfg, "flat_vector");
    r.insert(r.end(), e.coeffs.begin(), e.coeffs.end());
  }
  return r;
}

inline FlatRow flat_poly_vector(const std::vector<IntPoly>& v, const PrimeConfig& cfg) {
  std::vector<TruncElem> t;
  t.reserve(v.size());
  for (const auto& f : v) t.push_back(reduce_poly(f, cfg));
  return flat_vector(t, cfg);
}

// scalar * e_gen as a flattened vector in R^gens.
inline FlatRow scaled_basis_vector(const BigInt& scalar, int gen, int gens, const PrimeConfig& cfg) {
  FlatRow r(static_cast<std::size_t>(gens) * cfg.a_prec, 0);
  r[static_cast<std::size_t>(gen) * cfg.a_prec] = detail::big_mod(scalar, cfg.modulus);
  return r;
}

// Canonical row-span form over Z/p^N. Two matrices have equal row spans iff
// their HowellBasis rows are identical.
struct HowellBasis {
  PrimeConfig cfg;
  int cols = 0;
  std::vector<FlatRow> rows;   // sorted by pivot column
  std::vector<int> pivot_col;
  std::vector<int> pivot_exp;  // pivot entry is exactly p^exp

  friend bool operator==(const HowellBasis&, const HowellBasis&) = default;
};

namespace detail {

inline int first_nonzero(const FlatRow& r, int from = 0) {
  for (int j = from; j < static_cast<int>(r.size()); ++j)
    if (r[static_cast<std::size_t>(j)] != 0) return j;
  return -1;
}

inline void row_submul(FlatRow& r, const FlatRow& s, u64 f, u64 q) {
  if (f == 0) return;
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = sub_mod(r[j], mul_mod(f, s[j], q), q);
}

inline FlatRow row_scaled(const FlatRow& r, u64 f, u64 q) {
  FlatRow s(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) s[j] = mul_mod(f, r[j], q);
  return s;
}

}  // namespace detail

inline HowellBasis howell_rows(std::vector<FlatRow> input, int cols, const PrimeConfig& cfg) {
  using namespace detail;
  const u64 q = cfg.modulus;
  const u64 p = static_cast<u64>(cfg.p);
  const int n = cfg.p_prec;

  std::map<int, FlatRow> piv;
  std::map<int, int> piv_exp;
  std::deque<FlatRow> work(input.begin(), input.end());

  auto claim = [&](FlatRow r, int j, std::deque<FlatRow>& w) {
    int e = val_p(r[static_cast<std::size_t>(j)], p, n);
    u64 unit = r[static_cast<std::size_t>(j)] / pow_u64(p, e);
    r = row_scaled(r, inv_mod(unit, q), q);
    r[static_cast<std::size_t>(j)] = pow_u64(p, e);  // kill the (1 + cq) residue exactly
    if (e > 0) {
      FlatRow ann = row_scaled(r, pow_u64(p, n - e), q);
      if (first_nonzero(ann) >= 0) w.push_back(std::move(ann));
    }
    piv_exp[j] = e;
    piv[j] = std::move(r);
  };

  while (!work.empty()) {
    FlatRow r = std::move(work.front());
    work.pop_front();
    int j = first_nonzero(r);
    while (j >= 0) {
      auto it = piv.find(j);
      if (it == piv.end()) {
        claim(std::move(r), j, work);
        break;
      }
      int e0 = piv_exp[j];
      int e = val_p(r[static_cast<std::size_t>(j)], p, n);
      if (e >= e0) {
        row_submul(r, it->second, r[static_cast<std::size_t>(j)] / pow_u64(p, e0), q);
        j = first_nonzero(r, j);
      } else {
        FlatRow old = std::move(it->second);
        piv.erase(it);
        piv_exp.erase(j);
        claim(std::move(r), j, work);
        work.push_back(std::move(old));
        break;
      }
    }
  }

  HowellBasis h;
  h.cfg = cfg;
  h.cols = cols;
  for (auto& [j, r] : piv) {
    h.rows.push_back(std::move(r));
    h.pivot_col.push_back(j);
    h.pivot_exp.push_back(piv_exp[j]);
  }
  // Normalize entries above each pivot into [0, p^e); later rows only touch
  // later columns, so one ascending pass suffices.
  for (std::size_t l = 0; l < h.rows.size(); ++l) {
    const int jl = h.pivot_col[l];
    const u64 pe = detail::pow_u64(p, h.pivot_exp[l]);
    for (std::size_t k = 0; k < l; ++k)
      detail::row_submul(h.rows[k], h.rows[l], h.rows[k][static_cast<std::size_t>(jl)] / pe, q);
  }
  return h;
}

inline HowellBasis howell(const FlatMatrix& m) {
  std::vector<FlatRow> rows;
  rows.reserve(static_cast<std::size_t>(m.rows));
  for (int r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
  return howell_rows(std::move(rows), m.cols, m.cfg);
}

struct MemberResult {
  bool member = false;
  FlatRow remainder;  // zero iff member; otherwise the reduction witness
};

inline MemberResult member(FlatRow v, const HowellBasis& h) {
  using namespace detail;
  if (static_cast<int>(v.size()) != h.cols)
    throw std::invalid_argument("member: dimension mismatch");
  const u64 q = h.cfg.modulus;
  const u64 p = static_cast<u64>(h.cfg.p);
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    const int j = h.pivot_col[i];
    const u64 vj = v[static_cast<std::size_t>(j)];
    if (vj == 0) continue;
    const u64 pe = pow_u64(p, h.pivot_exp[i]);
    if (vj % pe != 0) return {false, std::move(v)};
    row_submul(v, h.rows[i], vj / pe, q);
  }
  bool zero = first_nonzero(v) < 0;
  return {zero, std::move(v)};
}

namespace detail {

// Diagonalization over Z/p^N by minimal-valuation pivoting: returns the
// diagonal valuations (ascending) and, optionally, the invertible row
// transform U with U * M * V = diag(p^{e_k}).
struct DiagResult {
  std::vector<int> val;          // size min(rows, cols); N encodes a zero entry
  std::vector<FlatRow> u;        // rows x rows, only if track_u
};

inline DiagResult diagonalize(const FlatMatrix& m, bool track_u) {
  const u64 q = m.cfg.modulus;
  const u64 p = static_cast<u64>(m.cfg.p);
  const int n = m.cfg.p_prec;
  const int rows = m.rows, cols = m.cols;

  std::vector<FlatRow> a(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) a[static_cast<std::size_t>(r)] = m.row(r);
  std::vector<FlatRow> u;
  if (track_u) {
    u.assign(static_cast<std::size_t>(rows), FlatRow(static_cast<std::size_t>(rows), 0));
    for (int r = 0; r < rows; ++r) u[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = 1;
  }

  DiagResult out;
  const int steps = std::min(rows, cols);
  out.val.assign(static_cast<std::size_t>(steps), n);

  for (int k = 0; k < steps; ++k) {
    int best_v = n, bi = -1, bj = -1;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        int v = val_p(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p, n);
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;  // all remaining entries vanish
    std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(bi)]);
    if (track_u) std::swap(u[static_cast<std::size_t>(k)], u[static_cast<std::size_t>(bi)]);
    if (bj != k)
      for (int i = 0; i < rows; ++i)
        std::swap(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                  a[static_cast<std::size_t>(i)][static_cast<std::size_t>(bj)]);

    const int e = best_v;
    const u64 pe = pow_u64(p, e);
    const u64 unit = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] / pe;
    const u64 iu = inv_mod(unit, q);
    a[static_cast<std::size_t>(k)] = row_scaled(a[static_cast<std::size_t>(k)], iu, q);
    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = pe;
    if (track_u) u[static_cast<std::size_t>(k)] = row_scaled(u[static_cast<std::size_t>(k)], iu, q);

    for (int i = 0; i < rows; ++i) {
      if (i == k) continue;
      const u64 f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / pe;
      if (f == 0) continue;
      row_submul(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(k)], f, q);
      if (track_u) row_submul(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(k)], f, q);
    }
    for (int j = k + 1; j < cols; ++j) {
      const u64 f = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] / pe;
      if (f == 0) continue;
      for (int i = 0; i < rows; ++i)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            sub_mod(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    mul_mod(f, a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], q), q);
    }
    out.val[static_cast<std::size_t>(k)] = e;
  }
  out.u = std::move(u);
  return out;
}

}  // namespace detail

// Invariant factors of (Z/p^N)^cols / rowspan(M) as a multiset of prime
// powers, ascending; factors equal to 1 are omitted. Computed as the Smith
// form of the integer lift augmented by p^N-identity rows -- operationally,
// all entries stay reduced mod p^N, which the augmentation rows justify.
inline std::vector<std::uint64_t> coker_invariants(const FlatMatrix& m) {
  auto d = detail::diagonalize(m, false);
  std::vector<std::uint64_t> inv;
  const int steps = std::min(m.rows, m.cols);
  for (int k = 0; k < steps; ++k) {
    int e = d.val[static_cast<std::size_t>(k)];
    if (e >= 1) inv.push_back(detail::pow_u64(static_cast<std::uint64_t>(m.cfg.p), e));
  }
  for (int c = steps; c < m.cols; ++c) inv.push_back(m.cfg.modulus);
  std::sort(inv.begin(), inv.end());
  return inv;
}

inline std::vector<std::uint64_t> coker_invariants(const HowellBasis& h) {
  return coker_invariants(FlatMatrix::from_rows(h.rows, h.cols, h.cfg));
}

// Generators of { x : x M = 0 } over Z/p^N. With U M V = diag(p^{e_k}),
// the kernel is spanned by p^{N - e_k} * (row k of U).
inline std::vector<FlatRow> left_kernel(const FlatMatrix& m) {
  auto d = detail::diagonalize(m, true);
  const std::uint64_t p = static_cast<std::uint64_t>(m.cfg.p);
  const int n = m.cfg.p_prec;
  std::vector<FlatRow> gens;
  for (int k = 0; k < m.rows; ++k) {
    int e = (k < static_cast<int>(d.val.size())) ? d.val[static_cast<std::size_t>(k)] : n;
    if (e == 0) continue;
    FlatRow g = detail::row_scaled(d.u[static_cast<std::size_t>(k)], detail::pow_u64(p, n - e),
                                   m.cfg.modulus);
    if (detail::first_nonzero(g) >= 0) gens.push_back(std::move(g));
  }
  return gens;
}

// Finitely presented module over R: generators x_1..x_p with declared
// p-power annihilator exponents, plus exact polynomial relation vectors.
// Its relation span inside R^p is the input to all membership questions.
struct ModulePresentation {
  std::int64_t p = 2;
  std::vector<int> order_exp;                   // size p; x_i has p^{order_exp[i-1]} x_i = 0
  std::vector<std::vector<IntPoly>> relations;  // each of length p
  PrimeConfig cfg;
};

struct LabeledRow {
  std::string label;
  FlatRow row;
};

// Flattened scalar generators of the relation span: every relation vector in
// all K a-shifts, plus the annihilator rows p^{e_i} x_i (also shifted).
inline std::vector<LabeledRow> presentation_rows(const ModulePresentation& mp) {
  const PrimeConfig& cfg = mp.cfg;
  const int k = cfg.a_prec;
  const int gens = static_cast<int>(mp.p);
  if (static_cast<int>(mp.order_exp.size()) != gens)
    throw std::invalid_argument("presentation_rows: order_exp size must equal p");
  std::vector<LabeledRow> rows;
  for (std::size_t r = 0; r < mp.relations.size(); ++r) {
    if (static_cast<int>(mp.relations[r].size()) != gens)
      throw std::invalid_argument("presentation_rows: relation length must equal p");
    std::vector<TruncElem> red;
    red.reserve(static_cast<std::size_t>(gens));
    for (const auto& f : mp.relations[r]) red.push_back(reduce_poly(f, cfg));
    for (int t = 0; t < k; ++t) {
      std::vector<TruncElem> shifted;
      shifted.reserve(red.size());
      for (const auto& e : red) shifted.push_back(trunc_shift(e, t, cfg));
      rows.push_back({"r[" + std::to_string(r) + "]*a^" + std::to_string(t),
                      flat_vector(shifted, cfg)});
    }
  }
  for (int i = 0; i < gens; ++i) {
    BigInt ann = 1;
    for (int t = 0; t < mp.order_exp[static_cast<std::size_t>(i)]; ++t) ann *= mp.p;
    std::uint64_t res = detail::big_mod(ann, cfg.modulus);
    if (res == 0) continue;
    for (int t = 0; t < k; ++t) {
      FlatRow row(static_cast<std::size_t>(gens) * k, 0);
      row[static_cast<std::size_t>(i) * k + static_cast<std::size_t>(t)] = res;
      rows.push_back({"p^" + std::to_string(mp.order_exp[static_cast<std::size_t>(i)]) + "*x" +
                          std::to_string(i + 1) + "*a^" + std::to_string(t),
                      std::move(row)});
    }
  }
  return rows;
}

inline HowellBasis presentation_span(const ModulePresentation& mp) {
  auto rows = presentation_rows(mp);
  std::vector<FlatRow> raw;
  raw.reserve(rows.size());
  for (auto& r : rows) raw.push_back(std::move(r.row));
  return howell_rows(std::move(raw), static_cast<int>(mp.p) * mp.cfg.a_prec, mp.cfg);
}

struct MatchReport {
  bool match = false;
  bool claimed_in_computed = true;
  bool computed_in_claimed = true;
  bool invariants_agree = true;
  std::vector<std::uint64_t> claimed_invariants;
  std::vector<std::uint64_t> computed_invariants;
  std::vector<std::string> failures;
  std::optional<FlatRow> witness;
};

// Mutual span inclusion plus invariant-factor agreement, with membership
// witnesses on failure.
inline MatchReport modules_match(const ModulePresentation& claimed, const HowellBasis& computed) {
  if (claimed.cfg != computed.cfg)
    throw std::invalid_argument("modules_match: mismatched PrimeConfig");
  MatchReport rep;
  const HowellBasis claimed_span = presentation_span(claimed);

  for (const auto& lr : presentation_rows(claimed)) {
    auto mr = member(lr.row, computed);
    if (!mr.member) {
      rep.claimed_in_computed = false;
      rep.failures.push_back("claimed relation not in computed span: " + lr.label);
      if (!rep.witness) rep.witness = mr.remainder;
    }
  }
  for (std::size_t i = 0; i < computed.rows.size(); ++i) {
    auto mr = member(computed.rows[i], claimed_span);
    if (!mr.member) {
      rep.computed_in_claimed = false;
      rep.failures.push_back("computed span row " + std::to_string(i) + " not in claimed span");
      if (!rep.witness) rep.witness = mr.remainder;
    }
  }
  rep.claimed_invariants = coker_invariants(claimed_span);
  rep.computed_invariants = coker_invariants(computed);
  rep.invariants_agree = rep.claimed_invariants == rep.computed_invariants;
  if (!rep.invariants_agree) rep.failures.push_back("cokernel invariant factors disagree");
  rep.match = rep.claimed_in_computed && rep.computed_in_claimed && rep.invariants_agree;
  return rep;
}

}  // namespace phi2
