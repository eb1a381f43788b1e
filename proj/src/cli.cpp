#include "ffzeta/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffzeta/bounds.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/factor.hpp"
#include "ffzeta/moments.hpp"
#include "ffzeta/northcott.hpp"
#include "ffzeta/zetafn.hpp"
#include "json.hpp"

namespace ffzeta {

namespace {

using Json = nlohmann::ordered_json;

// interpretation failures become usage errors (exit 2), never error objects
struct UsageFail {
  std::string message;
};

[[noreturn]] void usage_fail(const std::string& flag, const std::string& why) {
  throw UsageFail{flag + ": " + why};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

Json cplx_json(Cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

FieldRef make_field(const std::string& q_lit, const std::string& mod_lit) {
  try {
    return field_from_q(q_lit, mod_lit);
  } catch (const Error& e) {
    throw UsageFail{"--q/--modulus: " + std::string(e.what())};
  }
}

Poly parse_poly_flag(const FieldRef& F, const std::string& lit) {
  try {
    return Poly::parse(F, lit);
  } catch (const Error& e) {
    throw UsageFail{"--D: " + std::string(e.what())};
  }
}

Cplx parse_cplx_flag(const char* flag, const std::string& lit) {
  try {
    return parse_complex_literal(lit);
  } catch (const Error& e) {
    throw UsageFail{std::string(flag) + ": " + std::string(e.what())};
  }
}

std::vector<double> parse_grid(const char* flag, const std::string& lit) {
  std::vector<double> out;
  std::stringstream ss(lit);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    char* end = nullptr;
    double v = std::strtod(piece.c_str(), &end);
    if (end == piece.c_str() || *end != '\0')
      usage_fail(flag, "bad number '" + piece + "'");
    out.push_back(v);
  }
  if (out.empty()) usage_fail(flag, "empty grid");
  return out;
}

Json bound_json(const BoundReport& r) {
  return Json{{"name", r.name},         {"value", r.value},
              {"log_scale", r.log_scale}, {"log_base_q", r.log_base_q},
              {"exact", r.exact},       {"note", r.note}};
}

BoundReport wrap_value(const std::string& name, long long q, double value,
                       const std::string& note) {
  BoundReport r;
  r.name = name;
  r.value = value;
  r.log_scale = false;
  r.log_base_q =
      value > 0 ? std::log(value) / std::log(static_cast<double>(q)) : 0.0;
  r.note = note;
  return r;
}

// same membership size as compute_S: |zeta*_K(s)|, or the plain central
// value when requested at s = 1/2
double member_size(const SpecialValue& sv, const LPolynomial& L, Cplx s,
                   bool plain) {
  if (plain && s == Cplx(0.5, 0.0))
    return sv.order > 0 ? 0.0 : std::abs(zeta_eval(L, s));
  return std::abs(sv.leading);
}

struct GlobalOpts {
  int threads = 1;
  long long budget = 100000000;
  unsigned long long seed = kDefaultFactorSeed;
  std::string out_path;
};

std::string run_field(const std::string& q_lit, const std::string& mod_lit) {
  FieldRef F = make_field(q_lit, mod_lit);
  Json j{{"q", F->q()},
         {"p", F->p()},
         {"e", F->e()},
         {"q_literal", F->q_literal()},
         {"modulus", F->modulus_literal()}};
  return j.dump(2) + "\n";
}

std::string run_poly(const std::string& q_lit, const std::string& mod_lit,
                     const std::string& d_lit, const GlobalOpts& g) {
  FieldRef F = make_field(q_lit, mod_lit);
  Poly D = parse_poly_flag(F, d_lit);
  Factorization fac = factor(D, g.seed);
  Json factors = Json::array();
  for (const auto& [P, m] : fac.factors)
    factors.push_back(Json{{"factor", P.str()}, {"multiplicity", m}});
  Json j{{"q", F->q()},
         {"D", D.str()},
         {"degree", D.degree()},
         {"monic", D.is_monic()},
         {"squarefree", is_squarefree(D)},
         {"monic_index", D.is_monic() ? Json(D.monic_index()) : Json(nullptr)},
         {"unit", F->format_element(fac.unit_rank)},
         {"factors", factors}};
  return j.dump(2) + "\n";
}

std::string run_lpoly(const std::string& q_lit, const std::string& mod_lit,
                      const std::string& d_lit, const GlobalOpts& g) {
  FieldRef F = make_field(q_lit, mod_lit);
  CurveModel curve = CurveModel::make(F, parse_poly_flag(F, d_lit));
  PrimeCounts counts =
      prime_counts_via_splitting(curve, curve.genus, g.budget);
  LPolynomial L = lpoly_from_prime_counts(counts, F->q(), curve.genus);
  WeilReport weil = check_weil_package(L);
  Json j{{"q", F->q()},
         {"D", curve.D.str()},
         {"genus", curve.genus},
         {"L", L.c},
         {"h", class_number(L)},
         {"rh_ok", weil.rh},
         {"funceq_ok", weil.funceq},
         {"central_zero", central_value_is_zero(L)}};
  return j.dump(2) + "\n";
}

std::string run_zeta(const std::string& q_lit, const std::string& mod_lit,
                     const std::string& d_lit, const std::string& s_lit,
                     const GlobalOpts& g) {
  FieldRef F = make_field(q_lit, mod_lit);
  Cplx s = parse_cplx_flag("--s", s_lit);
  CurveModel curve = CurveModel::make(F, parse_poly_flag(F, d_lit));
  PrimeCounts counts =
      prime_counts_via_splitting(curve, curve.genus, g.budget);
  LPolynomial L = lpoly_from_prime_counts(counts, F->q(), curve.genus);
  SpecialValue sv = zeta_special_value(L, s);
  Json j{{"q", F->q()},
         {"D", curve.D.str()},
         {"genus", curve.genus},
         {"s", cplx_json(s)},
         {"is_pole_of_zeta", zeta_is_pole(F->q(), s)},
         {"order", sv.order},
         {"exact_order", sv.exact_order},
         {"leading", cplx_json(sv.leading)},
         {"abs_leading", std::abs(sv.leading)},
         {"value", sv.order == 0 ? cplx_json(sv.at) : Json(nullptr)}};
  return j.dump(2) + "\n";
}

Json verdict_json(const RegionVerdict& v) {
  return Json{{"kind", region_kind_name(v.kind)},
              {"provenance", v.provenance},
              {"has_threshold", v.has_threshold},
              {"threshold_B",
               v.has_threshold ? Json(v.threshold_B) : Json(nullptr)},
              {"assumptions", v.assumptions},
              {"note", v.note}};
}

std::string run_classify(long long q, const std::string& s_lit, int trunc) {
  Cplx s = parse_cplx_flag("--s", s_lit);
  RegionVerdict v = classify_point(q, s, trunc);
  Json j{{"q", q}, {"s", cplx_json(s)}};
  Json body = verdict_json(v);
  for (auto& [k, val] : body.items()) j[k] = val;
  return j.dump(2) + "\n";
}

std::string run_plot_data(long long q, double smin, double smax, double sstep,
                          double tmin, double tmax, double tstep, int trunc) {
  if (!(sstep > 0)) usage_fail("--sigma-step", "must be positive");
  if (!(tstep > 0)) usage_fail("--tau-step", "must be positive");
  std::string csv = "sigma,tau,kind,provenance,has_threshold,threshold_B\n";
  long long ns = static_cast<long long>((smax - smin) / sstep + 1e-9) + 1;
  long long nt = static_cast<long long>((tmax - tmin) / tstep + 1e-9) + 1;
  for (long long it = 0; it < nt; ++it) {
    for (long long is = 0; is < ns; ++is) {
      double sigma = smin + static_cast<double>(is) * sstep;
      double tau = tmin + static_cast<double>(it) * tstep;
      csv += fmt(sigma) + "," + fmt(tau) + ",";
      try {
        RegionVerdict v = classify_point(q, Cplx(sigma, tau), trunc);
        csv += region_kind_name(v.kind) + "," + v.provenance + ",";
        csv += v.has_threshold ? "true," + fmt(v.threshold_B) : "false,";
      } catch (const Error& e) {
        csv += "error," + std::string(e.code()) + ",false,";
      }
      csv += "\n";
    }
  }
  return csv;
}

std::string run_bounds_list(long long q, int genus, double B, double Q,
                            int ell, int trunc, const std::string& grid_lit) {
  std::vector<double> grid = parse_grid("--sigma-grid", grid_lit);
  std::string csv = "sigma,calculator,value,log_scale,log_base_q,exact,note\n";
  auto emit = [&](const std::string& sigma, const BoundReport& r) {
    csv += sigma + "," + r.name + "," + fmt(r.value) + ",";
    csv += (r.log_scale ? "true," : "false,") + fmt(r.log_base_q) + ",";
    csv += csv_quote(r.exact) + "," + csv_quote(r.note) + "\n";
  };
  auto emit_error = [&](const std::string& sigma, const std::string& name,
                        const Error& e) {
    csv += sigma + "," + name + ",,false,,\"\"," +
           csv_quote("error: " + std::string(e.code())) + "\n";
  };

  emit("", wrap_value("northcott_sigma_cut", q, northcott_sigma_cut(q), ""));
  emit("", couveignes_count_bound(q, genus, -1, Q));
  for (const BoundReport& r : misc_count_bounds(q, genus))
    emit("", r);
  emit("", wrap_value("a_ell_upper", q, a_ell_upper(q, genus, ell),
                      "ell = " + std::to_string(ell)));

  for (double sigma : grid) {
    std::string sg = fmt(sigma);
    Cplx s(sigma, 0.0);
    try {
      emit(sg, wrap_value("genus_cap", q,
                          static_cast<double>(genus_cap(q, s, B)),
                          "B = " + fmt(B)));
    } catch (const Error& e) {
      emit_error(sg, "genus_cap", e);
    }
    try {
      emit(sg, right_threshold_B(q, sigma));
    } catch (const Error& e) {
      emit_error(sg, "right_threshold", e);
    }
    try {
      emit(sg, wrap_value("moment_threshold_B", q,
                          moment_threshold_B(q, s, trunc), ""));
    } catch (const Error& e) {
      emit_error(sg, "moment_threshold_B", e);
    }
    try {
      emit(sg, size_bound_S(q, s, B, Q));
    } catch (const Error& e) {
      emit_error(sg, "size_bound", e);
    }
    try {
      emit(sg, wrap_value("zeta_sigma_upper", q,
                          zeta_sigma_upper(q, genus, sigma),
                          "genus = " + std::to_string(genus)));
    } catch (const Error& e) {
      emit_error(sg, "zeta_sigma_upper", e);
    }
  }
  return csv;
}

std::string run_northcott(long long q, const std::string& s_lit, double B,
                          const EnumerationScope& scope, bool plain,
                          const std::string& format, const GlobalOpts& g) {
  Cplx s = parse_cplx_flag("--s", s_lit);
  if (format == "csv") {
    // raw table over the literal scope; the json format applies the
    // genus-cap extension via compute_S instead
    std::vector<FieldEntry> fields = enumerate_fields(scope, g.threads);
    std::string csv = "D,genus,h,order,abs_leading,in_S\n";
    for (const FieldEntry& f : fields) {
      SpecialValue sv = zeta_special_value(f.L, s);
      double size = member_size(sv, f.L, s, plain);
      csv += csv_quote(f.D.str()) + "," + std::to_string(f.genus) + "," +
             std::to_string(class_number(f.L)) + "," +
             std::to_string(sv.order) + "," + fmt(size) + "," +
             (size <= B ? "true" : "false") + "\n";
    }
    return csv;
  }
  NorthcottReport rep = compute_S(q, s, B, scope, g.threads, plain);
  Json members = Json::array();
  for (const MemberRow& m : rep.members)
    members.push_back(Json{{"D", m.D.str()},
                           {"genus", m.genus},
                           {"h", m.h},
                           {"order", m.order},
                           {"abs_leading", m.abs_leading}});
  Json j{{"q", q},
         {"s", cplx_json(s)},
         {"B", B},
         {"dedupe", dedupe_name(scope.dedupe)},
         {"plain_central_value", plain},
         {"complete_within_scope", rep.complete_within_scope},
         {"scope_caveat", rep.scope_caveat},
         {"has_genus_cap", rep.has_genus_cap},
         {"genus_cap_used", rep.genus_cap_used},
         {"enumerated", rep.enumerated},
         {"members", members}};
  return j.dump(2) + "\n";
}

std::string run_central_zeros(long long q, int max_deg,
                              const std::string& format,
                              const GlobalOpts& g) {
  CentralZeroReport rep = central_zero_search(q, max_deg, g.budget, g.threads);
  if (format == "csv") {
    std::string csv = "D,degree,abs_value,exact_zero\n";
    for (const Witness& w : rep.witnesses)
      csv += csv_quote(w.D.str()) + "," + std::to_string(w.D.degree()) + "," +
             fmt(std::abs(w.value)) + "," +
             (w.exact_zero ? "true" : "false") + "\n";
    return csv;
  }
  Json witnesses = Json::array();
  for (const Witness& w : rep.witnesses)
    witnesses.push_back(Json{{"D", w.D.str()},
                             {"degree", w.D.degree()},
                             {"value", cplx_json(w.value)},
                             {"abs_value", std::abs(w.value)},
                             {"exact_zero", w.exact_zero}});
  Json j{{"q", q},
         {"max_deg", rep.max_deg},
         {"searched", rep.searched},
         {"verified_empty", rep.verified_empty},
         {"certificate", rep.certificate},
         {"witnesses", witnesses}};
  return j.dump(2) + "\n";
}

std::string run_moments(long long q, int genus, const std::string& alpha_lit,
                        int trunc, const GlobalOpts& g) {
  Cplx alpha = parse_cplx_flag("--alpha", alpha_lit);
  MomentReport rep =
      second_moment_exhaustive(q, genus, alpha, g.threads, trunc, g.budget);
  Json j{{"q", rep.q},
         {"g", rep.g},
         {"alpha", cplx_json(rep.alpha)},
         {"empirical", rep.empirical},
         {"predicted", rep.predicted},
         {"ratio", rep.ratio},
         {"truncation_deg", rep.truncation_deg},
         {"tail_flag", rep.tail_flag}};
  return j.dump(2) + "\n";
}

std::string run_verify_afe(const std::string& q_lit,
                           const std::string& mod_lit,
                           const std::string& d_lit,
                           const std::string& alpha_lit,
                           const GlobalOpts& g) {
  FieldRef F = make_field(q_lit, mod_lit);
  Cplx alpha = parse_cplx_flag("--alpha", alpha_lit);
  CurveModel curve = CurveModel::make(F, parse_poly_flag(F, d_lit));
  AfePair pair = approx_funceq_eval(curve, alpha, g.budget);
  double diff = std::abs(pair.lhs - pair.rhs);
  Json j{{"q", F->q()},
         {"D", curve.D.str()},
         {"genus", curve.genus},
         {"alpha", cplx_json(alpha)},
         {"lhs", pair.lhs},
         {"rhs", pair.rhs},
         {"abs_diff", diff},
         {"pass", diff <= 1e-9 * (1.0 + std::abs(pair.lhs))}};
  return j.dump(2) + "\n";
}

}  // namespace

Cplx parse_complex_literal(const std::string& raw) {
  size_t lo = raw.find_first_not_of(" \t");
  size_t hi = raw.find_last_not_of(" \t");
  if (lo == std::string::npos)
    fail("ParseError", "empty complex literal");
  std::string text = raw.substr(lo, hi - lo + 1);

  auto number_at = [&](size_t pos, const std::string& piece) {
    char* end = nullptr;
    double v = std::strtod(piece.c_str(), &end);
    if (end == piece.c_str() ||
        static_cast<size_t>(end - piece.c_str()) != piece.size())
      fail("ParseError", "bad number in complex literal '" + text +
                             "' at position " + std::to_string(pos));
    return v;
  };
  // the imaginary component with its sign and trailing i stripped; a bare
  // sign means coefficient 1
  auto imag_of = [&](size_t pos, std::string piece) {
    if (piece.empty() || piece.back() != 'i')
      fail("ParseError", "expected trailing i in complex literal '" + text +
                             "' at position " + std::to_string(pos));
    piece.pop_back();
    if (piece.empty() || piece == "+") return 1.0;
    if (piece == "-") return -1.0;
    return number_at(pos, piece);
  };

  // split before the last +/- that does not follow an exponent marker
  size_t split = std::string::npos;
  for (size_t j = text.size() - 1; j >= 1; --j) {
    char c = text[j];
    if ((c == '+' || c == '-') && text[j - 1] != 'e' && text[j - 1] != 'E') {
      split = j;
      break;
    }
  }
  if (split != std::string::npos) {
    double re = number_at(0, text.substr(0, split));
    double im = imag_of(split, text.substr(split));
    return Cplx(re, im);
  }
  if (text.back() == 'i') return Cplx(0.0, imag_of(0, text));
  return Cplx(number_at(0, text), 0.0);
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"zeta functions of hyperelliptic function fields over F_q"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker thread count")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "max enumeration count")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "factorization seed");
  app.add_option("--out", g.out_path, "write the payload to this file");

  std::string q_lit = "5", mod_lit, d_lit, s_lit, alpha_lit, u_lit;
  std::string format = "json", dedupe = "raw";
  double B = 10.0, sigma = 2.0, Q = 1.0, c1 = 1.0, c2 = 1.0;
  double u_smin = -1.0, u_smax = 2.0, u_sstep = 0.05;
  double u_tmin = 0.0, u_tmax = 0.0, u_tstep = 0.25;
  int genus = 1, ell = 2, trunc = 12, max_deg = 3, n_gonality = -1;
  int genus_min = 0, genus_max = 2, mg = 1;
  bool plain = false, emit_plot = false, want_list = false;
  std::string grid_lit = "0.25,0.75,1.1,1.5,2,3";

  CLI::App* sc_field = app.add_subcommand("field", "finite field info");
  sc_field->add_option("--q", q_lit, "prime power, e.g. 9 or 3^2")->required();
  sc_field->add_option("--modulus", mod_lit, "modulus over F_p");

  CLI::App* sc_poly = app.add_subcommand("poly", "parse and factor D");
  sc_poly->add_option("--q", q_lit)->required();
  sc_poly->add_option("--modulus", mod_lit);
  sc_poly->add_option("--D", d_lit, "polynomial literal")->required();

  CLI::App* sc_lpoly =
      app.add_subcommand("lpoly", "L-polynomial of y^2 = D(T)");
  sc_lpoly->add_option("--q", q_lit)->required();
  sc_lpoly->add_option("--modulus", mod_lit);
  sc_lpoly->add_option("--D", d_lit)->required();

  CLI::App* sc_zeta = app.add_subcommand("zeta", "zeta value at s");
  sc_zeta->add_option("--q", q_lit)->required();
  sc_zeta->add_option("--modulus", mod_lit);
  sc_zeta->add_option("--D", d_lit)->required();
  sc_zeta->add_option("--s", s_lit, "complex point a+bi")->required();

  CLI::App* sc_classify =
      app.add_subcommand("classify", "Northcott region verdict at (q, s)");
  sc_classify->add_option("--q", q_lit)->required();
  sc_classify->add_option("--s", s_lit);
  sc_classify->add_option("--trunc", trunc, "Euler product truncation");
  sc_classify->add_flag("--emit-plot-data", emit_plot,
                        "CSV verdicts over a sigma/tau grid");
  sc_classify->add_option("--sigma-min", u_smin);
  sc_classify->add_option("--sigma-max", u_smax);
  sc_classify->add_option("--sigma-step", u_sstep);
  sc_classify->add_option("--tau-min", u_tmin);
  sc_classify->add_option("--tau-max", u_tmax);
  sc_classify->add_option("--tau-step", u_tstep);

  CLI::App* sc_bounds =
      app.add_subcommand("bounds", "closed-form bound calculators");
  sc_bounds->require_subcommand(0, 1);
  sc_bounds->add_option("--q", q_lit)->required();
  sc_bounds->add_flag("--list", want_list,
                      "CSV table of all calculators over a sigma grid");
  sc_bounds->add_option("--genus", genus);
  sc_bounds->add_option("--B", B);
  sc_bounds->add_option("--Q", Q, "non-effective constant");
  sc_bounds->add_option("--ell", ell);
  sc_bounds->add_option("--trunc", trunc);
  sc_bounds->add_option("--sigma-grid", grid_lit, "comma-separated sigmas");

  CLI::App* b_right = sc_bounds->add_subcommand(
      "right-threshold", "1/((1-q^-sigma)(1-q^(1-sigma))^2)");
  b_right->add_option("--sigma", sigma)->required();
  CLI::App* b_moment = sc_bounds->add_subcommand(
      "moment-threshold", "moment-based non-Northcott threshold");
  b_moment->add_option("--s", s_lit)->required();
  CLI::App* b_cap =
      sc_bounds->add_subcommand("genus-cap", "genus bound for members of S");
  b_cap->add_option("--s", s_lit)->required();
  b_cap->add_option("--B", B)->required();
  CLI::App* b_hasse =
      sc_bounds->add_subcommand("hasse", "envelope for |L(u)|");
  b_hasse->add_option("--u", u_lit, "complex point a+bi")->required();
  b_hasse->add_option("--genus", genus)->required();
  CLI::App* b_couv =
      sc_bounds->add_subcommand("couveignes", "genus-g field count bound");
  b_couv->add_option("--genus", genus)->required();
  b_couv->add_option("--n", n_gonality, "gonality; -1 picks the default");
  b_couv->add_option("--Q", Q);
  CLI::App* b_size =
      sc_bounds->add_subcommand("size", "bound on #S_{q,s,B}");
  b_size->add_option("--s", s_lit)->required();
  b_size->add_option("--B", B)->required();
  b_size->add_option("--Q", Q);
  CLI::App* b_counts = sc_bounds->add_subcommand(
      "counts", "isomorphism-class count bounds at genus g");
  b_counts->add_option("--genus", genus)->required();
  b_counts->add_option("--c1", c1);
  b_counts->add_option("--c2", c2);
  CLI::App* b_aell =
      sc_bounds->add_subcommand("a-ell", "bound on degree-l place counts");
  b_aell->add_option("--genus", genus)->required();
  b_aell->add_option("--ell", ell)->required();
  CLI::App* b_zupper =
      sc_bounds->add_subcommand("zeta-upper", "upper bound for zeta_K(sigma)");
  b_zupper->add_option("--genus", genus)->required();
  b_zupper->add_option("--sigma", sigma)->required();
  CLI::App* b_cut =
      sc_bounds->add_subcommand("sigma-cut", "left Northcott strip edge");

  CLI::App* sc_north =
      app.add_subcommand("northcott", "materialize S_{q,s,B}");
  sc_north->add_option("--q", q_lit)->required();
  sc_north->add_option("--s", s_lit)->required();
  sc_north->add_option("--B", B)->required();
  sc_north->add_option("--genus-min", genus_min);
  sc_north->add_option("--genus-max", genus_max);
  sc_north->add_option("--dedupe", dedupe)
      ->check(CLI::IsMember({"raw", "affine_orbit", "by_lpolynomial"}));
  sc_north->add_flag("--plain-central-value", plain,
                     "member test on zeta_K(1/2) instead of zeta*_K(1/2)");
  sc_north->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sc_central =
      app.add_subcommand("central-zeros", "search for L(q^(-1/2)) = 0");
  sc_central->add_option("--q", q_lit)->required();
  sc_central->add_option("--max-deg", max_deg)->required();
  sc_central->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sc_moments =
      app.add_subcommand("moments", "exhaustive shifted second moment");
  sc_moments->add_option("--q", q_lit)->required();
  CLI::Option* opt_g = sc_moments->add_option("--g", mg, "genus");
  CLI::Option* opt_alpha = sc_moments->add_option("--alpha", alpha_lit);
  sc_moments->add_option("--trunc", trunc);
  CLI::App* m_afe = sc_moments->add_subcommand(
      "verify-afe", "both sides of the approximate functional equation");
  m_afe->add_option("--D", d_lit)->required();
  m_afe->add_option("--modulus", mod_lit);
  CLI::Option* afe_alpha = m_afe->add_option("--alpha", alpha_lit);

  for (CLI::App* sub :
       {sc_field, sc_poly, sc_lpoly, sc_zeta, sc_classify, sc_bounds,
        sc_north, sc_central, sc_moments, b_right, b_moment, b_cap, b_hasse,
        b_couv, b_size, b_counts, b_aell, b_zupper, b_cut, m_afe})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::string payload;
    if (*sc_field) {
      payload = run_field(q_lit, mod_lit);
    } else if (*sc_poly) {
      payload = run_poly(q_lit, mod_lit, d_lit, g);
    } else if (*sc_lpoly) {
      payload = run_lpoly(q_lit, mod_lit, d_lit, g);
    } else if (*sc_zeta) {
      payload = run_zeta(q_lit, mod_lit, d_lit, s_lit, g);
    } else if (*sc_classify) {
      long long q = make_field(q_lit, mod_lit)->q();
      if (emit_plot) {
        payload = run_plot_data(q, u_smin, u_smax, u_sstep, u_tmin, u_tmax,
                                u_tstep, trunc);
      } else {
        if (s_lit.empty()) usage_fail("--s", "required unless --emit-plot-data");
        payload = run_classify(q, s_lit, trunc);
      }
    } else if (*sc_bounds) {
      long long q = make_field(q_lit, mod_lit)->q();
      if (*b_right) {
        payload = bound_json(right_threshold_B(q, sigma)).dump(2) + "\n";
      } else if (*b_moment) {
        Cplx s = parse_cplx_flag("--s", s_lit);
        payload = bound_json(wrap_value("moment_threshold_B", q,
                                        moment_threshold_B(q, s, trunc), ""))
                      .dump(2) +
                  "\n";
      } else if (*b_cap) {
        Cplx s = parse_cplx_flag("--s", s_lit);
        Json j{{"q", q},
               {"s", cplx_json(s)},
               {"B", B},
               {"cap", genus_cap(q, s, B)}};
        payload = j.dump(2) + "\n";
      } else if (*b_hasse) {
        Cplx u = parse_cplx_flag("--u", u_lit);
        auto [low, high] = hasse_envelope(q, genus, u);
        Json j{{"q", q},
               {"genus", genus},
               {"u", cplx_json(u)},
               {"lower", low},
               {"upper", high}};
        payload = j.dump(2) + "\n";
      } else if (*b_couv) {
        payload =
            bound_json(couveignes_count_bound(q, genus, n_gonality, Q))
                .dump(2) +
            "\n";
      } else if (*b_size) {
        Cplx s = parse_cplx_flag("--s", s_lit);
        payload = bound_json(size_bound_S(q, s, B, Q)).dump(2) + "\n";
      } else if (*b_counts) {
        Json arr = Json::array();
        for (const BoundReport& r : misc_count_bounds(q, genus, c1, c2))
          arr.push_back(bound_json(r));
        payload = Json{{"bounds", arr}}.dump(2) + "\n";
      } else if (*b_aell) {
        payload = bound_json(wrap_value("a_ell_upper", q,
                                        a_ell_upper(q, genus, ell),
                                        "ell = " + std::to_string(ell)))
                      .dump(2) +
                  "\n";
      } else if (*b_zupper) {
        payload =
            bound_json(wrap_value("zeta_sigma_upper", q,
                                  zeta_sigma_upper(q, genus, sigma),
                                  "genus = " + std::to_string(genus)))
                .dump(2) +
            "\n";
      } else if (*b_cut) {
        payload = bound_json(wrap_value("northcott_sigma_cut", q,
                                        northcott_sigma_cut(q), ""))
                      .dump(2) +
                  "\n";
      } else if (want_list) {
        payload = run_bounds_list(q, genus, B, Q, ell, trunc, grid_lit);
      } else {
        usage_fail("bounds", "pick a calculator subcommand or --list");
      }
    } else if (*sc_north) {
      long long q = make_field(q_lit, mod_lit)->q();
      EnumerationScope scope;
      scope.q = q;
      scope.genus_min = genus_min;
      scope.genus_max = genus_max;
      scope.dedupe = dedupe_from_string(dedupe);
      scope.budget = g.budget;
      payload = run_northcott(q, s_lit, B, scope, plain, format, g);
    } else if (*sc_central) {
      long long q = make_field(q_lit, mod_lit)->q();
      payload = run_central_zeros(q, max_deg, format, g);
    } else if (*sc_moments) {
      if (*m_afe) {
        if (afe_alpha->count() == 0 && opt_alpha->count() == 0)
          usage_fail("--alpha", "required for verify-afe");
        payload = run_verify_afe(q_lit, mod_lit, d_lit, alpha_lit, g);
      } else {
        if (opt_g->count() == 0) usage_fail("--g", "required for moments");
        if (opt_alpha->count() == 0)
          usage_fail("--alpha", "required for moments");
        long long q = make_field(q_lit, mod_lit)->q();
        payload = run_moments(q, mg, alpha_lit, trunc, g);
      }
    }

    if (!g.out_path.empty()) {
      std::ofstream ofs(g.out_path);
      if (!ofs) usage_fail("--out", "cannot open '" + g.out_path + "'");
      ofs << payload;
    } else {
      out << payload;
    }
    return 0;
  } catch (const UsageFail& u) {
    err << "usage error: " << u.message << "\n";
    return 2;
  } catch (const Error& e) {
    Json j{{"error", Json{{"code", e.code()}, {"message", e.what()}}}};
    out << j.dump(2) << "\n";
    return 1;
  }
}

}  // namespace ffzeta
