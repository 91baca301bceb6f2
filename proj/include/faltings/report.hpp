#pragma once

// JSON (schema 1) and plain-text renderings of the computation results.
// Every number is a decimal string with the context's significant digits.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "faltings/certify.hpp"
#include "faltings/construct.hpp"
#include "faltings/gap.hpp"
#include "faltings/heights.hpp"

namespace faltings {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

inline std::string dec(const Real& x, const PrecisionContext& ctx) { return x.str(ctx.digits()); }

inline Json coeff_list(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(c.str());
  return a;
}

struct HminReport {
  Real closed;
  Real modular;  // V(rho) + (1/2) log pi
  Real difference;
};

inline HminReport hmin_two_ways(const PrecisionContext& ctx) {
  Real closed = hmin_closed(ctx);
  Real modular = v_eval(rho_point(ctx), ctx) + log(const_pi(ctx)) / 2L;
  Real diff = abs(closed - modular);
  return {std::move(closed), std::move(modular), std::move(diff)};
}

inline Json to_json(const HminReport& r, const PrecisionContext& ctx) {
  Json j;
  j["schema"] = kSchema;
  j["digits"] = ctx.digits();
  j["hmin"] = dec(r.closed, ctx);
  j["hmin_modular"] = dec(r.modular, ctx);
  j["difference"] = r.difference.str(6);
  return j;
}

inline Json to_json(const HeightReport& r, const std::string& input, const PrecisionContext& ctx) {
  Json j;
  j["schema"] = kSchema;
  j["input"] = input;
  j["degree"] = r.degree;
  j["digits"] = ctx.digits();
  j["weil"] = {{"total", dec(r.weil_total, ctx)}, {"finite", dec(r.weil_finite, ctx)}, {"arch", dec(r.weil_arch, ctx)}};
  j["faltings_stable"] = dec(r.faltings_stable, ctx);
  j["hmin"] = dec(hmin_closed(ctx), ctx);
  j["gap_to_hmin"] = dec(r.hmin_gap, ctx);
  Json roots = Json::array();
  for (const auto& info : r.per_root) {
    roots.push_back({{"re", dec(info.root.re, ctx)},
                     {"im", dec(info.root.im, ctx)},
                     {"tau_re", dec(info.tau.point.x, ctx)},
                     {"tau_im", dec(info.tau.point.y, ctx)},
                     {"v", dec(info.v, ctx)}});
  }
  j["roots"] = std::move(roots);
  return j;
}

inline Json to_json(const GapResult& r, const PrecisionContext& ctx) {
  Json j;
  j["schema"] = kSchema;
  j["p_star"] = dec(r.p_star, ctx);
  j["eps"] = dec(r.eps, ctx);
  j["delta"] = dec(r.delta, ctx);
  j["delta_prime"] = dec(r.delta_prime, ctx);
  j["c_value"] = dec(r.c_value, ctx);
  j["gap"] = dec(r.gap, ctx);
  j["final_gap"] = dec(r.final_gap, ctx);
  j["digits"] = r.digits_used;
  return j;
}

inline Json to_json(const CertEntry& e, const PrecisionContext& ctx) {
  Json j;
  j["check"] = e.label;
  if (e.point) {
    j["x"] = dec(e.point->x, ctx);
    j["y"] = dec(e.point->y, ctx);
  }
  j["lhs"] = dec(e.lhs, ctx);
  j["rhs"] = dec(e.rhs, ctx);
  return j;
}

inline Json to_json(const CertResult& r, const PrecisionContext& ctx) {
  Json j;
  j["schema"] = kSchema;
  j["lemma"] = r.lemma_id;
  j["points"] = r.points_checked;
  j["min_margin"] = r.min_margin ? Json(dec(*r.min_margin, ctx)) : Json(nullptr);
  j["passed"] = r.passed;
  Json v = Json::array();
  for (const auto& e : r.violations) v.push_back(to_json(e, ctx));
  j["violations"] = std::move(v);
  if (!r.entries.empty()) {
    Json c = Json::array();
    for (const auto& e : r.entries) {
      Json x = to_json(e, ctx);
      x["margin"] = dec(e.rhs - e.lhs, ctx);
      c.push_back(std::move(x));
    }
    j["constants"] = std::move(c);
  }
  return j;
}

inline Json to_json(const EisensteinResult& r, const FamilyEntry& fam, const PrecisionContext& ctx) {
  Json j;
  j["schema"] = kSchema;
  j["n"] = r.spec.n;
  j["p"] = r.spec.p.str();
  j["b"] = coeff_list(r.b);
  j["f"] = coeff_list(r.f_coeffs);
  j["h0"] = dec(fam.h0, ctx);
  j["height"] = dec(fam.height, ctx);
  return j;
}

inline Json to_json(const std::vector<ScanEntry>& entries, const PrecisionContext& ctx) {
  Json j;
  j["schema"] = kSchema;
  j["digits"] = ctx.digits();
  j["hmin"] = dec(hmin_closed(ctx), ctx);
  Json list = Json::array();
  for (const auto& e : entries) {
    Json x;
    x["input"] = e.poly.to_string();
    x["degree"] = e.poly.degree();
    if (e.report) {
      x["weil_total"] = dec(e.report->weil_total, ctx);
      x["faltings_stable"] = dec(e.report->faltings_stable, ctx);
      x["gap_to_hmin"] = dec(e.report->hmin_gap, ctx);
      x["sandwich"] = silverman_sandwich_check(*e.report, ctx);
    } else {
      x["error"] = e.error;
    }
    list.push_back(std::move(x));
  }
  j["entries"] = std::move(list);
  return j;
}

// Plain text ---------------------------------------------------------------

inline std::string to_text(const HminReport& r, const PrecisionContext& ctx) {
  std::ostringstream os;
  os << "h_min (Gamma closed form)   " << dec(r.closed, ctx) << "\n"
     << "V(rho) + (1/2) log pi       " << dec(r.modular, ctx) << "\n"
     << "difference                  " << r.difference.str(6) << "\n";
  return os.str();
}

inline std::string to_text(const HeightReport& r, const std::string& input, const PrecisionContext& ctx) {
  std::ostringstream os;
  os << "polynomial        " << r.poly.to_string() << "   (input: " << input << ")\n"
     << "degree            " << r.degree << "\n"
     << "h(j)              " << dec(r.weil_total, ctx) << "\n"
     << "  finite          " << dec(r.weil_finite, ctx) << "\n"
     << "  archimedean     " << dec(r.weil_arch, ctx) << "\n"
     << "h_stab            " << dec(r.faltings_stable, ctx) << "\n"
     << "h_stab - h_min    " << dec(r.hmin_gap, ctx) << "\n"
     << "roots:\n";
  for (const auto& info : r.per_root)
    os << "  j = " << info.root.re.str(20) << " + " << info.root.im.str(20) << "i   tau = "
       << info.tau.point.x.str(20) << " + " << info.tau.point.y.str(20) << "i   V = " << info.v.str(20) << "\n";
  return os.str();
}

inline std::string to_text(const GapResult& r, const PrecisionContext& ctx) {
  std::ostringstream os;
  os << "P*          " << dec(r.p_star, ctx) << "\n"
     << "eps         " << dec(r.eps, ctx) << "\n"
     << "delta       " << dec(r.delta, ctx) << "\n"
     << "delta'      " << dec(r.delta_prime, ctx) << "\n"
     << "C(delta')   " << dec(r.c_value, ctx) << "\n"
     << "gap         " << dec(r.gap, ctx) << "\n"
     << "final gap   " << dec(r.final_gap, ctx) << "\n";
  return os.str();
}

inline std::string to_text(const CertResult& r, const PrecisionContext&) {
  std::ostringstream os;
  os << r.lemma_id << ": " << (r.passed ? "passed" : "FAILED") << ", " << r.points_checked << " checks";
  if (r.min_margin) os << ", min margin " << r.min_margin->str(10);
  os << "\n";
  for (const auto& e : r.entries)
    os << "  " << e.label << ": " << e.lhs.str(12) << " vs " << e.rhs.str(12) << ", margin "
       << (e.rhs - e.lhs).str(6) << "\n";
  for (const auto& e : r.violations) {
    os << "  violation: " << e.label;
    if (e.point) os << " at " << e.point->x.str(15) << " + " << e.point->y.str(15) << "i";
    os << ": " << e.lhs.str(15) << " vs " << e.rhs.str(15) << "\n";
  }
  return os.str();
}

inline std::string to_text(const EisensteinResult& r, const FamilyEntry& fam, const PrecisionContext& ctx) {
  std::ostringstream os;
  os << "n = " << r.spec.n << ", p = " << r.spec.p << ", m = " << r.spec.m << "\n"
     << "b = (";
  for (std::size_t k = 0; k < r.b.size(); ++k) os << (k ? ", " : "") << r.b[k];
  os << ")\n"
     << "f = " << Poly(r.f_coeffs).to_string() << "\n"
     << "h0 = log p / 3n = " << dec(fam.h0, ctx) << "\n"
     << "height = h_min + h0 = " << dec(fam.height, ctx) << "\n";
  return os.str();
}

inline std::string to_text(const std::vector<ScanEntry>& entries, const PrecisionContext& ctx) {
  std::ostringstream os;
  for (const auto& e : entries) {
    if (e.report)
      os << e.report->faltings_stable.str(20) << "  " << e.report->weil_total.str(12) << "  "
         << e.poly.to_string() << "\n";
    else
      os << "error  " << e.poly.to_string() << "  " << e.error << "\n";
  }
  (void)ctx;
  return os.str();
}

}  // namespace faltings
