// bmtk: majorant toolkit CLI. Ingests function specs, runs the transform /
// regularization / admissibility pipelines, emits JSON reports and
// plot-ready CSV tables.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmtk/admissibility.hpp"
#include "bmtk/function_io.hpp"
#include "bmtk/hilbert.hpp"
#include "bmtk/nazarov.hpp"
#include "bmtk/piecewise.hpp"
#include "bmtk/zoo.hpp"

namespace {

using bmtk::ordered_json;

std::string g_out;

std::string out_path(const std::string& name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(g_out, ec);
  if (ec && !fs::is_directory(g_out)) {
    throw std::runtime_error("io: cannot create output directory " + g_out + ": " +
                             ec.message());
  }
  return (fs::path(g_out) / name).string();
}

double parse_r(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

bmtk::Weight load_weight(const std::string& omega_path, const std::string& log_path) {
  if (!log_path.empty()) {
    return bmtk::Weight::from_log_majorant(bmtk::load_piecewise(log_path));
  }
  if (!omega_path.empty()) {
    return bmtk::Weight::from_omega(bmtk::load_piecewise(omega_path));
  }
  throw std::runtime_error("io: provide --omega or --log-majorant");
}

bmtk::MajorantSpec build_family(const std::string& family, double gamma, double r,
                                double alpha, double beta, int n_min, int n_max) {
  switch (bmtk::family_from_name(family)) {
    case bmtk::Family::thm2: return bmtk::omega_thm2(gamma, n_min, n_max);
    case bmtk::Family::omega_star: return bmtk::omega_star(n_min, n_max);
    case bmtk::Family::prop4: return bmtk::omega_prop4(n_min, n_max);
    case bmtk::Family::myau: return bmtk::omega_myau(r, n_min, n_max);
    case bmtk::Family::upsilon: return bmtk::upsilon_prop35(alpha, beta, n_min, n_max);
  }
  throw std::runtime_error("zoo: unknown family");
}

int classify_error(const std::string& msg) {
  for (const char* tag : {"PRECONDITION", "RANGE", "PARAM", "OVERLAP", "NOT_CERTIFIED",
                          "must be", "must lie", "requires", "DISJOINTNESS"}) {
    if (msg.find(tag) != std::string::npos) return 1;
  }
  for (const char* tag : {"io:", "function spec", "parse"}) {
    if (msg.find(tag) != std::string::npos) return 2;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bmtk: constructive toolkit for Beurling-Malliavin majorants -- "
      "Nazarov-style regularized interval systems and hat majorants, the "
      "modified-kernel Hilbert transform, sigma-admissibility certificates, "
      "and the sharpness example families"};
  app.require_subcommand(1);

  const char* env_out = std::getenv("BMTK_OUT");
  g_out = env_out ? env_out : ".";
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", g_out, "output directory (default: $BMTK_OUT or '.')");
  };

  // ---- hilbert ----
  auto* c_hil = app.add_subcommand(
      "hilbert",
      "modified-kernel Hilbert transform pv-int f(t) (1/(x-t) + t/(1+t^2)) dt "
      "of a piecewise-polynomial function; closed form with an adaptive "
      "principal-value quadrature oracle");
  std::string hil_fn;
  double hil_x0 = -4.0, hil_x1 = 4.0;
  int hil_n = 256;
  bool hil_oracle = false;
  double hil_tol = 1e-9;
  c_hil->add_option("--fn", hil_fn, "function spec JSON")->required();
  c_hil->add_option("--x-min", hil_x0, "table start");
  c_hil->add_option("--x-max", hil_x1, "table end");
  c_hil->add_option("--n", hil_n, "table points");
  c_hil->add_flag("--oracle", hil_oracle, "also run the excision-Richardson oracle");
  c_hil->add_option("--tol", hil_tol, "oracle tolerance");

  // ---- vr-norm ----
  auto* c_vr = app.add_subcommand(
      "vr-norm",
      "V_r block means ((1/|J_j|) int_{J_j} |f'|^r)^(1/r) over the dyadic "
      "blocks J_j and their sup (the V_r norm)");
  std::string vr_fn, vr_r_str = "2";
  int vr_jmin = -8, vr_jmax = 8;
  c_vr->add_option("--fn", vr_fn, "function spec JSON")->required();
  c_vr->add_option("--r", vr_r_str, "exponent r >= 1, or 'inf'");
  c_vr->add_option("--j-min", vr_jmin, "first block index");
  c_vr->add_option("--j-max", vr_jmax, "last block index");

  // ---- poisson ----
  auto* c_poi = app.add_subcommand(
      "poisson", "integral against the Poisson measure dP = dx/(1+x^2), exact "
                 "per-piece antiderivatives");
  std::string poi_fn;
  c_poi->add_option("--fn", poi_fn, "function spec JSON")->required();

  // ---- nazarov-local ----
  auto* c_loc = app.add_subcommand(
      "nazarov-local",
      "local Nazarov majorant: essential dyadic intervals, tails, regularized "
      "system tau, hat-sum majorant F with measured conclusions (support, "
      "majorization, Lipschitz transform, integral bound)");
  std::string loc_fn, loc_r = "2";
  double loc_lo = -0.5, loc_hi = 0.5, loc_delta = 1.0, loc_kappa = 1.0;
  int loc_grid = 1024;
  c_loc->add_option("--fn", loc_fn, "function spec JSON")->required();
  c_loc->add_option("--lo", loc_lo, "interval start");
  c_loc->add_option("--hi", loc_hi, "interval end");
  c_loc->add_option("--delta", loc_delta, "sup-norm budget: ||f||_inf <= delta l(I)");
  c_loc->add_option("--kappa", loc_kappa, "derivative budget: ||f'||_r <= kappa l^(1/r)");
  c_loc->add_option("--r", loc_r, "exponent r > 1, or 'inf'");
  c_loc->add_option("--grid", loc_grid, "probe grid for the transform derivative");

  // ---- nazarov-global ----
  auto* c_glo = app.add_subcommand(
      "nazarov-global",
      "global Nazarov majorant Omega_1 = sum of per-block hat majorants: "
      "majorizes Omega, Poisson-integrable, Hilbert transform Lipschitz");
  std::string glo_fn, glo_family, glo_r = "2";
  double glo_eps = 0.1, glo_R = 2.0;
  int glo_window = 12;
  c_glo->add_option("--fn", glo_fn, "function spec JSON for Omega");
  c_glo->add_option("--family-spec", glo_family, "family spec JSON for Omega");
  c_glo->add_option("--r", glo_r, "exponent r > 1, or 'inf'");
  c_glo->add_option("--eps", glo_eps, "target Lipschitz constant scale");
  c_glo->add_option("--R", glo_R, "truncation radius for the constant-shift step");
  c_glo->add_option("--window", glo_window, "block window |j| <= window");

  // ---- certify ----
  auto* c_cer = app.add_subcommand(
      "certify",
      "sigma-admissibility certificate: finite logarithmic integral "
      "int log(1/omega) dP plus ||(H log(1/omega))'||_inf < pi sigma");
  std::string cer_omega, cer_logm;
  double cer_sigma = 1.0;
  std::string cer_vr_r = "2";
  int cer_grid = 2048;
  c_cer->add_option("--omega", cer_omega, "omega function spec JSON (default 1)");
  c_cer->add_option("--log-majorant", cer_logm, "log(1/omega) function spec JSON");
  c_cer->add_option("--sigma", cer_sigma, "band half-width sigma")->required();
  c_cer->add_option("--vr-r", cer_vr_r, "exponent for the reported V_r norm");
  c_cer->add_option("--grid", cer_grid, "derivative probe grid");

  // ---- synthesize ----
  auto* c_syn = app.add_subcommand(
      "synthesize",
      "bandlimited test function f = omega exp(i(s H log(1/omega) + pi sigma x)) "
      "with tapered sampling; reports spectral concentration in [0, sigma]");
  std::string syn_omega, syn_logm, syn_sign = "auto";
  double syn_sigma = 1.0, syn_L = 64.0;
  int syn_N = 1 << 14;
  c_syn->add_option("--omega", syn_omega, "omega function spec JSON");
  c_syn->add_option("--log-majorant", syn_logm, "log(1/omega) function spec JSON");
  c_syn->add_option("--sigma", syn_sigma, "band half-width sigma")->required();
  c_syn->add_option("--L", syn_L, "sampling half-width");
  c_syn->add_option("--N", syn_N, "sample count (power of two)");
  c_syn->add_option("--sign", syn_sign, "phase sign: auto, plus, minus");

  // ---- zoo ----
  auto* c_zoo = app.add_subcommand(
      "zoo",
      "explicit majorant families: hills at 2^n (thm2, prop4, myau), the "
      "doubly exponential variant (omega_star), the one-sided Sobolev-energy "
      "family (upsilon)");
  std::string zoo_family = "thm2", zoo_family_pos, zoo_emit = "fn", zoo_r_str;
  double zoo_gamma = 2.0, zoo_myau_r = 2.0, zoo_alpha = 0.5, zoo_beta = 1.0;
  int zoo_nmin = 3, zoo_nmax = 12;
  c_zoo->add_option("family_name", zoo_family_pos,
                    "thm2 | omega_star | prop4 | myau | upsilon (positional)");
  c_zoo->add_option("--family", zoo_family, "family name (flag form)");
  c_zoo->add_option("--gamma", zoo_gamma, "thm2 hill sharpness, gamma > 1");
  std::string zoo_r_flag;
  c_zoo->add_option("--r", zoo_r_flag,
                    "myau family exponent r > 1; for other families, the "
                    "block exponent of --emit vr");
  c_zoo->add_option("--alpha", zoo_alpha, "upsilon alpha in (0, 1/2]");
  c_zoo->add_option("--beta", zoo_beta, "upsilon beta, alpha + beta > 1");
  c_zoo->add_option("--n-min", zoo_nmin, "first hill index");
  c_zoo->add_option("--n-max", zoo_nmax, "last hill index");
  c_zoo->add_option("--emit", zoo_emit, "fn | spec | vr | poisson");
  c_zoo->add_option("--vr-r", zoo_r_str, "exponent for --emit vr, or 'inf'");

  // ---- borichev ----
  auto* c_bor = app.add_subcommand(
      "borichev",
      "smallness-propagation iteration: a bandlimited function small on the "
      "hills is exponentially small on dilated intervals; emits the recursion "
      "table and the divergent log-integral partial sums");
  double bor_gamma = 2.0, bor_C = 0.5, bor_alpha = 0.25;
  int bor_mmax = 5, bor_nmin = 3, bor_nmax = 40;
  std::vector<long> bor_caps = {100, 10000, 1000000};
  c_bor->add_option("--gamma", bor_gamma, "hill sharpness gamma > 1");
  c_bor->add_option("--C", bor_C, "imported smallness constant, 0 < C < 1");
  c_bor->add_option("--alpha", bor_alpha, "imported dilation power in (0, 1/2)");
  c_bor->add_option("--m-max", bor_mmax, "iteration depth");
  c_bor->add_option("--n-min", bor_nmin, "first hill");
  c_bor->add_option("--n-max", bor_nmax, "last hill");
  c_bor->add_option("--caps", bor_caps, "partial-sum caps for the divergence report");

  // ---- energy ----
  auto* c_ene = app.add_subcommand(
      "energy",
      "Sobolev-Slobodecki energy of K = Upsilon/x: divergent per-block "
      "series sum n^(-2 alpha) with a 2-D quadrature cross-check");
  double ene_alpha = 0.5, ene_beta = 1.0;
  int ene_nmin = 3, ene_nmax = 8, ene_grid = 256;
  long ene_N = 1000000;
  c_ene->add_option("--alpha", ene_alpha, "alpha in (0, 1/2]");
  c_ene->add_option("--beta", ene_beta, "beta, alpha + beta > 1");
  c_ene->add_option("--n-min", ene_nmin, "first block for the quadrature");
  c_ene->add_option("--n-max", ene_nmax, "last block for the quadrature");
  c_ene->add_option("--N", ene_N, "series cap");
  c_ene->add_option("--quad-n", ene_grid, "2-D quadrature grid per block");

  // ---- obstruction ----
  auto* c_obs = app.add_subcommand(
      "obstruction",
      "no Lipschitz majorant attains the 2^n/sqrt(n) peaks with finite "
      "logarithmic integral: the minimal-envelope Poisson sums grow "
      "harmonically");
  double obs_c0 = 1.0;
  long obs_N = 10000;
  c_obs->add_option("--C0", obs_c0, "Lipschitz constant of the would-be majorant");
  c_obs->add_option("--N", obs_N, "partial-sum cap");

  add_out(c_hil);
  add_out(c_vr);
  add_out(c_poi);
  add_out(c_loc);
  add_out(c_glo);
  add_out(c_cer);
  add_out(c_syn);
  add_out(c_zoo);
  add_out(c_bor);
  add_out(c_ene);
  add_out(c_obs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_hil) {
      const bmtk::PiecewiseFn f = bmtk::load_piecewise(hil_fn);
      std::vector<std::string> cols = {"x", "Hf"};
      if (hil_oracle) {
        cols.push_back("Hf_oracle");
        cols.push_back("est_error");
      }
      bmtk::CsvWriter csv(out_path("hilbert.csv"), cols);
      for (int i = 0; i <= hil_n; ++i) {
        const double x = hil_x0 + (hil_x1 - hil_x0) * i / hil_n;
        std::vector<double> row = {x, bmtk::hilbert_pw(f, x).value};
        if (hil_oracle) {
          const bmtk::HilbertResult q = bmtk::hilbert_quad_oracle(f, x, hil_tol);
          row.push_back(q.value);
          row.push_back(q.est_error);
        }
        csv.row(row);
      }
      csv.close();
      std::printf("hilbert: wrote %d samples to %s\n", hil_n + 1,
                  out_path("hilbert.csv").c_str());
    } else if (*c_vr) {
      const bmtk::PiecewiseFn f = bmtk::load_piecewise(vr_fn);
      const double r = parse_r(vr_r_str);
      const std::vector<double> vals = bmtk::vr_block_norms(f, r, vr_jmin, vr_jmax);
      bmtk::CsvWriter csv(out_path("vr_blocks.csv"), {"j", "block_value"});
      for (size_t i = 0; i < vals.size(); ++i) {
        csv.row({static_cast<double>(vr_jmin + static_cast<int>(i)), vals[i]});
      }
      csv.close();
      const bmtk::VrNorm n = bmtk::vr_norm(f, r, vr_jmin, vr_jmax);
      std::printf("vr-norm: sup %.17g at block %d (table in %s)\n", n.value,
                  n.arg_block, out_path("vr_blocks.csv").c_str());
    } else if (*c_poi) {
      const bmtk::PiecewiseFn f = bmtk::load_piecewise(poi_fn);
      const bmtk::PoissonResult res = bmtk::poisson_integral(f);
      ordered_json j;
      j["value"] = res.value;
      j["tail_bound"] = res.tail_bound;
      bmtk::save_json(j, out_path("poisson.json"));
      std::printf("poisson: %.17g (tail bound %.3g)\n", res.value, res.tail_bound);
    } else if (*c_loc) {
      const bmtk::PiecewiseFn f = bmtk::load_piecewise(loc_fn);
      bmtk::NazarovParams params;
      params.grid_n = loc_grid;
      const bmtk::LocalReport rep = bmtk::local_majorant(
          f, bmtk::Interval(loc_lo, loc_hi), loc_delta, loc_kappa, parse_r(loc_r), params);
      bmtk::save_json(bmtk::local_report_to_json(rep), out_path("local_report.json"));
      bmtk::save_json(bmtk::piecewise_to_json(rep.F), out_path("local_majorant.json"));
      bmtk::save_json(bmtk::interval_system_to_json(rep.tau), out_path("local_tau.json"));
      std::printf(
          "nazarov-local: tau=%zu support_ok=%d majorize_ok=%d deriv_sup=%.6g\n",
          rep.tau.members.size(), rep.prop1_support_ok ? 1 : 0,
          rep.prop2_majorize_ok ? 1 : 0, rep.prop3_deriv_sup);
    } else if (*c_glo) {
      bmtk::PiecewiseFn Om;
      if (!glo_family.empty()) {
        Om = bmtk::family_from_json(bmtk::load_json(glo_family)).lower();
      } else if (!glo_fn.empty()) {
        Om = bmtk::load_piecewise(glo_fn);
      } else {
        throw std::runtime_error("io: provide --fn or --family-spec");
      }
      const bmtk::GlobalResult res =
          bmtk::global_majorant(Om, parse_r(glo_r), glo_eps, glo_R, glo_window);
      bmtk::save_json(bmtk::global_report_to_json(res.report),
                      out_path("global_report.json"));
      bmtk::save_json(bmtk::piecewise_to_json(res.omega1_compact),
                      out_path("global_majorant.json"));
      std::printf(
          "nazarov-global: blocks=%zu majorize_ok=%d poisson=%.6g deriv_sup=%.6g\n",
          res.report.blocks.size(), res.report.majorize_ok ? 1 : 0,
          res.report.poisson_value, res.report.deriv_sup);
    } else if (*c_cer) {
      const bmtk::Weight w = load_weight(cer_omega, cer_logm);
      const bmtk::Certificate cert =
          bmtk::certify_sigma(w, cer_sigma, parse_r(cer_vr_r), cer_grid);
      bmtk::save_json(bmtk::certificate_to_json(cert), out_path("certificate.json"));
      std::printf("certify: verdict=%s deriv_sup=%.6g threshold=%.6g margin=%.6g\n",
                  bmtk::verdict_name(cert.verdict).c_str(), cert.deriv_sup,
                  cert.threshold, cert.margin);
      if (cert.verdict != bmtk::Verdict::pass) return 0;  // verdicts are not errors
    } else if (*c_syn) {
      const bmtk::Weight w = load_weight(syn_omega, syn_logm);
      int sign = 0;
      if (syn_sign == "plus") sign = +1;
      else if (syn_sign == "minus") sign = -1;
      else if (syn_sign != "auto") throw std::runtime_error("io: bad --sign");
      const bmtk::Synthesis s = bmtk::synthesize_testfn(w, syn_sigma, syn_L, syn_N, sign);
      bmtk::save_json(bmtk::spectrum_report_to_json(s.report),
                      out_path("spectrum_report.json"));
      bmtk::CsvWriter csv(out_path("samples.csv"),
                          {"x", "re_f", "im_f", "abs_f", "omega"});
      for (size_t k = 0; k < s.x.size(); ++k) {
        csv.row({s.x[k], s.f[k].real(), s.f[k].imag(), std::abs(s.f[k]),
                 w.omega(s.x[k])});
      }
      csv.close();
      std::printf("synthesize: in-band fraction %.9f (sign %+d)\n",
                  s.report.in_band_energy_fraction, s.report.sign);
    } else if (*c_zoo) {
      if (!zoo_family_pos.empty()) zoo_family = zoo_family_pos;
      if (!zoo_r_flag.empty()) {
        if (zoo_family == "myau") {
          zoo_myau_r = std::stod(zoo_r_flag);
        } else if (zoo_r_str.empty()) {
          zoo_r_str = zoo_r_flag;  // block exponent shorthand for --emit vr
        }
      }
      if (zoo_r_str.empty()) zoo_r_str = "2";
      const bmtk::MajorantSpec spec = build_family(zoo_family, zoo_gamma, zoo_myau_r,
                                                   zoo_alpha, zoo_beta, zoo_nmin, zoo_nmax);
      if (zoo_emit == "spec") {
        bmtk::save_json(bmtk::family_to_json(spec), out_path("family.json"));
        std::printf("zoo: wrote family spec (%s)\n", zoo_family.c_str());
      } else if (zoo_emit == "fn") {
        bmtk::save_json(bmtk::piecewise_to_json(spec.lower()), out_path("family_fn.json"));
        std::printf("zoo: lowered %s over n in [%d, %d]\n", zoo_family.c_str(),
                    zoo_nmin, zoo_nmax);
      } else if (zoo_emit == "vr") {
        const double r = parse_r(zoo_r_str);
        bmtk::CsvWriter csv(out_path("family_vr.csv"), {"j", "block_value"});
        const bool hills_at_2n = spec.family == bmtk::Family::thm2 ||
                                 spec.family == bmtk::Family::prop4 ||
                                 spec.family == bmtk::Family::myau;
        for (int j = zoo_nmin; j < zoo_nmax; ++j) {
          double v;
          if (hills_at_2n) {
            // Analytic per-block values (exact where the family cancels).
            v = r == 1.0 ? spec.v1_block_value(j)
                         : spec.vr_block_value_log(j, r).to_double();
          } else if (spec.family == bmtk::Family::upsilon) {
            v = spec.upsilon_block_value(j, r);
          } else {
            v = bmtk::vr_block_norms(spec.lower(), r, j, j)[0];
          }
          csv.row({static_cast<double>(j), v});
        }
        csv.close();
        std::printf("zoo: V_r block table in %s\n", out_path("family_vr.csv").c_str());
      } else if (zoo_emit == "poisson") {
        const bmtk::PoissonSumReport rep = bmtk::poisson_log_integral(spec);
        bmtk::CsvWriter csv(out_path("family_poisson.csv"), {"n", "partial_sum"});
        for (size_t i = 0; i < rep.partial_sums.size(); ++i) {
          csv.row({static_cast<double>(spec.n_min + static_cast<int>(i)),
                   rep.partial_sums[i]});
        }
        csv.close();
        std::printf("zoo: Poisson partial sums -> %.9g (decreasing=%d divergent=%d)\n",
                    rep.total, rep.increments_decreasing ? 1 : 0, rep.divergent ? 1 : 0);
      } else {
        throw std::runtime_error("io: bad --emit (fn | spec | vr | poisson)");
      }
    } else if (*c_bor) {
      const auto table =
          bmtk::borichev_iterate(bor_gamma, bor_C, bor_alpha, bor_mmax, bor_nmin, bor_nmax);
      bmtk::CsvWriter csv(out_path("borichev.csv"),
                          {"n", "m", "lo", "hi", "e_m", "log_bound"});
      for (const bmtk::IterationState& st : table) {
        // log_bound column: the log of the smallness bound, -C^m 2^n.
        csv.row({static_cast<double>(st.n), static_cast<double>(st.m), st.interval.lo,
                 st.interval.hi, st.e_m, -std::exp(st.log_bound.log_mag)});
      }
      csv.close();
      ordered_json sums = ordered_json::array();
      std::vector<bmtk::IterationState> last_gen;
      for (const auto& st : table) {
        if (st.m == bor_mmax) last_gen.push_back(st);
      }
      for (long cap : bor_caps) {
        sums.push_back({{"cap", cap},
                        {"partial_sum", bmtk::log_integral_divergence(last_gen, cap)}});
      }
      ordered_json j;
      j["e_m"] = last_gen.empty() ? 0.0 : last_gen.front().e_m;
      j["partial_sums"] = std::move(sums);
      bmtk::save_json(j, out_path("borichev_divergence.json"));
      std::printf("borichev: table in %s, divergence sums in %s\n",
                  out_path("borichev.csv").c_str(),
                  out_path("borichev_divergence.json").c_str());
    } else if (*c_ene) {
      const bmtk::MajorantSpec spec =
          bmtk::upsilon_prop35(ene_alpha, ene_beta, ene_nmin, std::max(ene_nmax, ene_nmin));
      ordered_json j;
      j["series_cap"] = ene_N;
      j["series_partial_sum"] = bmtk::energy_lower(spec, ene_N);
      ordered_json blocks = ordered_json::array();
      for (int n = ene_nmin; n <= ene_nmax; ++n) {
        blocks.push_back({{"n", n},
                          {"analytic", std::pow(n, -2.0 * ene_alpha)},
                          {"quadrature", bmtk::energy_block_quadrature(spec, n, ene_grid)}});
      }
      j["blocks"] = std::move(blocks);
      bmtk::save_json(j, out_path("energy.json"));
      std::printf("energy: series partial sum %.9g (cap %ld)\n",
                  bmtk::energy_lower(spec, ene_N), ene_N);
    } else if (*c_obs) {
      ordered_json j;
      j["C0"] = obs_c0;
      ordered_json sums = ordered_json::array();
      for (long cap : {obs_N / 100, obs_N / 10, obs_N}) {
        if (cap < 2) continue;
        sums.push_back({{"cap", cap}, {"partial_sum", bmtk::lipschitz_obstruction(obs_c0, cap)}});
      }
      j["partial_sums"] = std::move(sums);
      bmtk::save_json(j, out_path("obstruction.json"));
      std::printf("obstruction: partial sum %.9g at N=%ld\n",
                  bmtk::lipschitz_obstruction(obs_c0, obs_N), obs_N);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bmtk: %s\n", e.what());
    return classify_error(e.what());
  }
  return 0;
}
