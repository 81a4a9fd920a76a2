// Acceptance suite: one test case per criterion, each printing a single
// [criterion N] PASS/FAIL line with its runtime against the pinned budget.

#include "phi2/phi2.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace phi2;

namespace {

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void report(int n, bool pass, double secs, double budget, const std::string& desc) {
  std::printf("[criterion %d] %s  %-58s (%.2fs, budget %.0fs)\n", n, pass ? "PASS" : "FAIL",
              desc.c_str(), secs, budget);
  std::fflush(stdout);
}

}  // namespace

TEST_CASE("criterion 1: worked relation tables at p = 2", "[acceptance]") {
  Timer t;
  bool ok = true;

  const std::vector<std::vector<std::vector<IntPoly>>> expected = {
      // m = 2
      {{IntPoly{2}, IntPoly{0, -1}}},
      // m = 3
      {{IntPoly{-4}, IntPoly{0, 2}}, {IntPoly{0, 2}, IntPoly{0, 0, -1}}},
      // m = 4
      {{IntPoly{8}, IntPoly{0, -4}},
       {IntPoly{0, -4}, IntPoly{0, 0, 2}},
       {IntPoly{0, 0, 2}, IntPoly{4, 0, 0, -1}}},
      // m = 5
      {{IntPoly{0, 8}, IntPoly{0, 0, -4}},
       {IntPoly{0, 0, -4}, IntPoly{-8, 0, 0, 2}},
       {IntPoly{-8, 0, 0, 2}, IntPoly{0, 8, 0, 0, -1}}}};
  const std::vector<std::vector<std::string>> expected_pretty = {
      {"a x2 = 2 x1"},
      {"2 a x2 = 4 x1", "a^2 x2 = 2 a x1"},
      {"4 a x2 = 8 x1", "2 a^2 x2 = 4 a x1", "a^3 x2 = 2 a^2 x1 + 4 x2"},
      {"4 a^2 x2 = 8 a x1", "2 a^3 x2 = 4 a^2 x1 + 8 x2",
       "a^4 x2 = (2 a^3 - 8) x1 + 8 a x2"}};

  for (std::int64_t m = 2; m <= 5; ++m) {
    const auto& exp_rel = expected[static_cast<std::size_t>(m - 2)];
    ClaimedPresentation cp = claimed_presentation(2, m);
    ok = ok && cp.pres.relations == exp_rel;

    Json doc = presentation_json(2, m, PrimeConfig::defaults_for(2, m), true);
    Json exp_json = Json::array();
    for (const auto& r : exp_rel) {
      Json rr = Json::array();
      for (const auto& f : r) rr.push_back(poly_json(f));
      exp_json.push_back(rr);
    }
    ok = ok && doc["relations"] == exp_json;
    Json pj = Json::array();
    for (const auto& s : expected_pretty[static_cast<std::size_t>(m - 2)]) pj.push_back(s);
    ok = ok && doc["prettyRelations"] == pj;
  }

  double secs = t.seconds();
  report(1, ok && secs < 1.0, secs, 1, "presentation tables p=2, m=2..5, exact");
  REQUIRE(ok);
  REQUIRE(secs < 1.0);
}

TEST_CASE("criterion 2: claimed presentation equals computed cokernel", "[acceptance]") {
  Timer t;
  bool ok = true;
  for (std::int64_t p : {2, 3}) {
    for (std::int64_t m = 0; m <= 6; ++m) {
      const int k0 = default_a_prec(p, m);
      for (int k : {k0, 2 * k0}) {
        PrimeConfig cfg = PrimeConfig::make(p, static_cast<int>(m) + 2, k);
        H2Result h2 = h2_cokernel(KoszulJob{cfg, m});
        MatchReport mr = modules_match(claimed_presentation(p, m, cfg).pres, h2.span);
        if (!mr.match) {
          UNSCOPED_INFO("mismatch at p=" << p << " m=" << m << " K=" << k);
          ok = false;
        }
      }
    }
  }
  double secs = t.seconds();
  report(2, ok && secs < 30.0, secs, 30, "modules_match p=2,3, m=0..6, K and 2K");
  REQUIRE(ok);
  REQUIRE(secs < 30.0);
}

TEST_CASE("criterion 3: formula cross-validation", "[acceptance]") {
  Timer t;
  bool ok = true;

  for (std::int64_t p : {2, 3, 5}) {
    const WeierstrassCoeffs w = w_coeffs(p);
    const int hi = static_cast<int>(std::min<std::int64_t>(8, p + 1));
    for (int tau = 1; tau <= hi; ++tau) {
      const A1Elem bp = b_prime_pow(w, tau);
      for (int i = 0; i <= p; ++i)
        ok = ok && d_coeff(p, i, tau) == bp.coords[static_cast<std::size_t>(i)];
    }
  }
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    const WeierstrassCoeffs w = w_coeffs(p);
    for (int i = 2; i <= p; ++i) ok = ok && w_closed(p, i) == w.w[static_cast<std::size_t>(i)];
  }
  for (std::int64_t p : {2, 3, 5, 7}) {
    const WeierstrassCoeffs w = w_coeffs(p);
    A1Elem prod = a1_mul(a1_basis(p, 1), b_prime(w), w);
    ok = ok && prod == a1_scale(IntPoly::constant(w0_value(p)), a1_one(p));
  }

  double secs = t.seconds();
  report(3, ok && secs < 5.0, secs, 5, "d_coeff vs oracle, w closed form, b*b' = w0");
  REQUIRE(ok);
  REQUIRE(secs < 5.0);
}

TEST_CASE("criterion 4: vanishing checks", "[acceptance]") {
  Timer t;
  bool ok = true;
  for (std::int64_t p : {2, 3}) {
    for (std::int64_t m = 0; m <= 6; ++m) {
      PrimeConfig cfg = PrimeConfig::defaults_for(p, m);
      CheckReport h0 = h0_vanishes(KoszulJob{cfg, m});
      CheckReport h1 = h1_vanishes_window(KoszulJob{cfg, m});
      if (!h0.pass || !h1.pass) {
        UNSCOPED_INFO("vanishing failure at p=" << p << " m=" << m);
        ok = false;
      }
    }
  }
  double secs = t.seconds();
  report(4, ok && secs < 60.0, secs, 60, "H^0 and windowed H^1 checks, p=2,3, m<=6");
  REQUIRE(ok);
  REQUIRE(secs < 60.0);
}

TEST_CASE("criterion 5: torsion structure and sharpness", "[acceptance]") {
  Timer t;
  bool ok = true;
  for (std::int64_t m = 2; m <= 5; ++m) {
    TorsionReport tr = torsion_and_sharpness(2, m, PrimeConfig::defaults_for(2, m));
    if (!tr.pass) {
      UNSCOPED_INFO("torsion failure at m=" << m);
      ok = false;
    }
  }
  double secs = t.seconds();
  report(5, ok, secs, 60, "p^m/p^{m-1} annihilation with sharpness, p=2, m=2..5");
  REQUIRE(ok);
}

TEST_CASE("criterion 6: degenerate cases", "[acceptance]") {
  Timer t;
  bool ok = true;
  for (std::int64_t p : {2, 3}) {
    PrimeConfig cfg0 = PrimeConfig::defaults_for(p, 0);
    H2Result b0 = h2_cokernel(KoszulJob{cfg0, 0});
    ok = ok && b0.zero_module && b0.invariants.empty();
    ok = ok && modules_match(claimed_presentation(p, 0, cfg0).pres, b0.span).match;

    PrimeConfig cfg1 = PrimeConfig::defaults_for(p, 1);
    H2Result b1 = h2_cokernel(KoszulJob{cfg1, 1});
    std::vector<std::uint64_t> expected(
        static_cast<std::size_t>((p - 1) * cfg1.a_prec), static_cast<std::uint64_t>(p));
    ok = ok && b1.invariants == expected;
  }
  double secs = t.seconds();
  report(6, ok, secs, 60, "B_0 = 0 and B_1 = (E_0/p)^(p-1) at truncation, p=2,3");
  REQUIRE(ok);
}

TEST_CASE("criterion 7: leading-term claim", "[acceptance]") {
  Timer t;
  bool ok = true;
  for (std::int64_t p : {2, 3, 5}) {
    for (std::int64_t m = 0; m <= 6; ++m) {
      auto [lo, hi] = relation_index_range(p, m);
      for (std::int64_t j = lo; j <= hi; ++j)
        if (!leading_term_check(p, m, j)) {
          UNSCOPED_INFO("leading term failure at p=" << p << " m=" << m << " j=" << j);
          ok = false;
        }
    }
  }
  double secs = t.seconds();
  report(7, ok, secs, 60, "r_j contains (-1)^{j+1} w0^{m-1-j} w1^j x_p, all J(m,p)");
  REQUIRE(ok);
}

TEST_CASE("criterion 8: height-1 reference table", "[acceptance]") {
  Timer t;
  struct Entry {
    std::int64_t p, m;
    const char* order;
    bool applicable;
  };
  const Entry table[12] = {
      {2, 0, "1", true},    {2, 1, "2", false},  {2, 2, "4", false},
      {2, 3, "8", true},    {2, 4, "16", true},  {2, 7, "128", true},
      {3, 2, "9", false},   {5, 2, "25", true},  {5, 3, "125", true},
      {7, 1, "7", true},    {11, 2, "121", true}, {13, 4, "28561", true}};
  bool ok = true;
  for (const auto& e : table) {
    Height1Ref r = height1_reference(e.p, e.m);
    ok = ok && r.order.str() == e.order && r.applicable == e.applicable;
  }
  double secs = t.seconds();
  report(8, ok, secs, 60, "E_0/p^m orders and hypothesis gating, 12 pairs");
  REQUIRE(ok);
}
