// phi2: compute and verify presentations of the second Koszul cohomology
// B_m = A1 / (A0 + b'^m A1) for the height-2 power operation algebra, the
// groups behind the completed E-homology of the Bousfield-Kuhn functor on
// odd spheres. All output is deterministic JSON.

#include "phi2/phi2.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

int emit(const phi2::RunResult& res, const std::optional<std::string>& out) {
  const std::string text = phi2::render(res.doc);
  if (out) {
    std::ofstream f(*out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << *out << "\n";
      return 2;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Koszul-complex cohomology for height-2 power operations"};
  app.require_subcommand(1);

  phi2::JobSpec spec;
  std::int64_t p = 2, m = 0;
  int p_prec = 0, a_prec = 0, window = -1;
  std::string out;

  auto add_common = [&](CLI::App* sub, bool needs_m) {
    sub->add_option("--prime", p, "the prime p")->required();
    if (needs_m) sub->add_option("--m", m, "the level m (sphere S^{2m+1})")->required();
    sub->add_option("--p-prec", p_prec, "p-adic precision exponent N (default m + 2)");
    sub->add_option("--a-prec", a_prec, "a-adic truncation degree K (default max(2(m+1)(p+1), 16))");
    sub->add_option("--out", out, "write the JSON document to this file");
  };

  auto* c_w = app.add_subcommand("w-coeffs", "coefficients w_0..w_{p+1} of w(a,b)");
  add_common(c_w, false);

  auto* c_d = app.add_subcommand("d-coeffs", "coefficients of b'^tau in the basis 1..b^p (tau = --m)");
  add_common(c_d, true);

  auto* c_pres = app.add_subcommand("presentation", "claimed presentation of B_m");
  add_common(c_pres, true);
  c_pres->add_flag("--pretty", spec.pretty, "also render relations in equation form");

  auto* c_coh = app.add_subcommand("cohomology", "compute H^0/H^1 checks and the H^2 cokernel");
  add_common(c_coh, true);
  c_coh->add_option("--window", window, "override the H^1 a-degree window");

  auto* c_ver = app.add_subcommand("verify", "run the full check suite for (p, m)");
  add_common(c_ver, true);
  c_ver->add_option("--window", window, "override the H^1 a-degree window");

  auto* c_h1 = app.add_subcommand("height1", "height-1 reference value E_0/p^m");
  add_common(c_h1, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  spec.command = app.get_subcommands().front()->get_name();
  spec.p = p;
  spec.m = m;
  if (p_prec > 0) spec.p_prec = p_prec;
  if (a_prec > 0) spec.a_prec = a_prec;
  if (window >= 0) spec.window = window;
  if (!out.empty()) spec.out = out;

  return emit(phi2::run(spec), spec.out);
}
