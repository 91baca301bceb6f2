// Command-line front end for the height, gap, certification and
// construction routines.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "faltings/certify.hpp"
#include "faltings/construct.hpp"
#include "faltings/gap.hpp"
#include "faltings/heights.hpp"
#include "faltings/polyparse.hpp"
#include "faltings/report.hpp"

namespace {

using namespace faltings;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;
constexpr int kPrecondition = 3;
constexpr int kCertFailed = 4;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ParseError("grid must look like NxM, got \"" + text + "\"");
  try {
    std::size_t used = 0;
    g.nx = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("nx");
    std::string rest = text.substr(x + 1);
    g.ny = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("ny");
  } catch (const std::logic_error&) {
    throw ParseError("grid must look like NxM, got \"" + text + "\"");
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("FileNotFound", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable Faltings heights, the explicit gap above h_min, lemma certification and Eisenstein families"};
  app.require_subcommand(1);

  int digits = 40;
  bool json = false;

  auto* hmin = app.add_subcommand("hmin", "h_min from the Gamma closed form, cross-checked against V(rho)");
  hmin->add_option("--digits", digits, "working precision in decimal digits");
  hmin->add_flag("--json", json, "emit JSON");

  std::string poly_text, coeffs_text;
  auto* height = app.add_subcommand("height", "Weil and stable Faltings height of a root of a polynomial");
  auto* poly_opt = height->add_option("--poly", poly_text, "polynomial expression in x");
  auto* coeffs_opt = height->add_option("--coeffs", coeffs_text, "coefficients c0,c1,...,cn (low to high)");
  poly_opt->excludes(coeffs_opt);
  height->add_option("--digits", digits, "working precision in decimal digits");
  height->add_flag("--json", json, "emit JSON");

  int gap_digits = 60;
  std::string pmin = "0.5", pmax = "0.9999", tolp = "1e-6";
  auto* gap = app.add_subcommand("gap", "maximize the explicit gap function over P");
  gap->add_option("--digits", gap_digits, "working precision in decimal digits");
  gap->add_option("--pmin", pmin, "lower end of the P range");
  gap->add_option("--pmax", pmax, "upper end of the P range");
  gap->add_option("--tolp", tolp, "tolerance on P*");
  gap->add_flag("--json", json, "emit JSON");

  std::string lemma, grid_text = "100x100";
  double ymax = 5.0, delta = 0.0;
  auto* cert = app.add_subcommand("certify", "check a lemma on a sample grid");
  cert->add_option("--lemma", lemma, "fp_i, fp_ii, fp_iii, l53, l54, bilu, e2id, vmono, l64, r61 or constants")
      ->required();
  cert->add_option("--grid", grid_text, "grid size NxM");
  cert->add_option("--ymax", ymax, "upper end of the y range");
  cert->add_option("--delta", delta, "exclusion radius around the corners (l64)");
  cert->add_option("--digits", digits, "working precision in decimal digits");
  cert->add_flag("--json", json, "emit JSON");

  int n = 0;
  std::string p_text;
  auto* construct = app.add_subcommand("construct", "Eisenstein polynomial of degree n at p");
  construct->add_option("--n", n, "degree")->required();
  construct->add_option("--p", p_text, "prime with p = (-1)^n mod 9 (default 17 for odd n, 19 for even n)");
  construct->add_flag("--json", json, "emit JSON");

  std::string corpus_path;
  auto* scan = app.add_subcommand("scan", "stable heights of every polynomial in a corpus file, ascending");
  scan->add_option("--corpus", corpus_path, "corpus file, one expression per line")->required();
  scan->add_option("--digits", digits, "working precision in decimal digits");
  scan->add_flag("--json", json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*hmin) {
      PrecisionContext ctx(digits);
      HminReport r = hmin_two_ways(ctx);
      if (json)
        emit(to_json(r, ctx));
      else
        std::cout << to_text(r, ctx);
    } else if (*height) {
      if (poly_text.empty() == coeffs_text.empty()) {
        std::cerr << "height: give exactly one of --poly or --coeffs\n";
        return kUsage;
      }
      PrecisionContext ctx(digits);
      const std::string& input = poly_text.empty() ? coeffs_text : poly_text;
      IntPolynomial poly = parse_poly(input);
      HeightReport r = faltings_stable(poly, ctx);
      if (json)
        emit(to_json(r, input, ctx));
      else
        std::cout << to_text(r, input, ctx);
    } else if (*gap) {
      PrecisionContext ctx(gap_digits);
      GapResult r = maximize_gap(ctx, ctx.real(pmin), ctx.real(pmax), ctx.real(tolp));
      if (json)
        emit(to_json(r, ctx));
      else
        std::cout << to_text(r, ctx);
    } else if (*cert) {
      PrecisionContext ctx(digits);
      CertResult r;
      if (lemma == "constants") {
        r = derived_constants_check(ctx);
      } else {
        GridSpec g = parse_grid(grid_text);
        g.y_max = ymax;
        g.exclusion_delta = delta;
        r = certify(lemma, g, ctx);
      }
      if (json)
        emit(to_json(r, ctx));
      else
        std::cout << to_text(r, ctx);
      return r.passed ? kOk : kCertFailed;
    } else if (*construct) {
      PrecisionContext ctx(40);
      BigInt p = p_text.empty() ? BigInt(auto_p(n)) : detail::parse_list_entry(p_text, 0);
      EisensteinResult r = build_eisenstein(n, p);
      if (!verify_eisenstein(r)) throw NoConvergence("constructed polynomial failed verification");
      FamilyEntry fam = family_entry(n, p, ctx);
      if (json)
        emit(to_json(r, fam, ctx));
      else
        std::cout << to_text(r, fam, ctx);
    } else if (*scan) {
      PrecisionContext ctx(digits);
      std::vector<IntPolynomial> polys = parse_corpus(read_file(corpus_path));
      std::vector<ScanEntry> entries = scan_corpus(polys, ctx);
      if (json)
        emit(to_json(entries, ctx));
      else
        std::cout << to_text(entries, ctx);
    }
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return kPrecondition;
  } catch (const NumericError& e) {
    std::cerr << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
