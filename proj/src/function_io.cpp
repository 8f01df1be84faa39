#include "bmtk/function_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bmtk {

namespace {

std::string kind_name(MemberKind k) {
  switch (k) {
    case MemberKind::essential_maximal: return "essential_maximal";
    case MemberKind::tail: return "tail";
    case MemberKind::clipped: return "clipped";
  }
  return "?";
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ordered_json piecewise_to_json(const PiecewiseFn& f) {
  ordered_json j;
  j["default"] = f.default_value();
  ordered_json pieces = ordered_json::array();
  for (const Piece& pc : f.pieces()) {
    ordered_json p;
    p["interval"] = {pc.iv.lo, pc.iv.hi};
    p["coeffs"] = pc.poly.c;
    if (pc.log_scale) {
      p["log_scale"] = {{"sign", pc.log_scale->sign},
                        {"log_mag", pc.log_scale->log_mag}};
    }
    pieces.push_back(std::move(p));
  }
  j["pieces"] = std::move(pieces);
  return j;
}

PiecewiseFn piecewise_from_json(const ordered_json& j) {
  if (!j.contains("default") || !j.contains("pieces")) {
    throw std::runtime_error("function spec: missing 'default' or 'pieces'");
  }
  const int dflt = j.at("default").get<int>();
  std::vector<Piece> ps;
  for (const auto& p : j.at("pieces")) {
    const auto& iv = p.at("interval");
    if (!iv.is_array() || iv.size() != 2) {
      throw std::runtime_error("function spec: 'interval' must be [lo, hi]");
    }
    Piece pc;
    pc.iv = Interval(iv[0].get<double>(), iv[1].get<double>());
    pc.poly = Poly(p.at("coeffs").get<std::vector<double>>());
    if (p.contains("log_scale")) {
      const auto& ls = p.at("log_scale");
      pc.log_scale = LogScalar::from_log(ls.at("sign").get<int>(),
                                         ls.at("log_mag").get<double>());
    }
    ps.push_back(std::move(pc));
  }
  // The PiecewiseFn constructor rejects overlapping pieces, naming both.
  return PiecewiseFn(std::move(ps), dflt);
}

ordered_json interval_system_to_json(const IntervalSystem& sys) {
  ordered_json arr = ordered_json::array();
  for (const SystemMember& m : sys.members) {
    ordered_json e;
    e["kind"] = kind_name(m.kind);
    e["lo"] = m.iv.lo;
    e["hi"] = m.iv.hi;
    e["parent"] = m.parent;
    e["p"] = m.generation;
    arr.push_back(std::move(e));
  }
  ordered_json j;
  j["base"] = {sys.base.lo, sys.base.hi};
  j["members"] = std::move(arr);
  return j;
}

ordered_json certificate_to_json(const Certificate& c) {
  ordered_json j;
  j["sigma"] = c.sigma;
  j["log_integral"] = c.log_integral;
  j["vr_norm"] = c.vr_norm;
  j["vr_block"] = c.vr_block;
  j["vr_r"] = c.vr_r;
  j["deriv_sup"] = c.deriv_unbounded ? "UNBOUNDED" : ordered_json(c.deriv_sup);
  j["threshold"] = c.threshold;
  j["verdict"] = verdict_name(c.verdict);
  j["margin"] = c.margin;
  return j;
}

ordered_json spectrum_report_to_json(const SpectrumReport& r) {
  ordered_json j;
  j["grid"] = {{"half_width", r.L}, {"samples", r.N}};
  j["band"] = {r.band_lo, r.band_hi};
  j["in_band_energy_fraction"] = r.in_band_energy_fraction;
  j["sign"] = r.sign;
  j["window"] = r.window;
  j["normalization"] = r.normalization;
  j["modulus_max_err"] = r.modulus_max_err;
  j["l2_norm"] = r.l2_norm;
  j["lipschitz_max_slope"] = r.lipschitz_max_slope;
  j["sigma_eff_99"] = r.sigma_eff_99;
  return j;
}

ordered_json local_report_to_json(const LocalReport& r) {
  ordered_json j;
  j["delta"] = r.delta;
  j["kappa"] = r.kappa;
  j["kappa_eff"] = r.kappa_eff;
  j["r"] = std::isinf(r.r) ? ordered_json("inf") : ordered_json(r.r);
  j["sup_f"] = r.sup_f;
  j["lr_norm"] = r.lr_norm;
  j["tau_size"] = r.tau.members.size();
  j["prop1_support_ok"] = r.prop1_support_ok;
  j["prop2_majorize_ok"] = r.prop2_majorize_ok;
  j["majorize_min_gap"] = r.majorize_min_gap;
  j["prop3_deriv_sup"] = r.prop3_deriv_sup;
  j["prop4_lhs"] = r.prop4_lhs;
  j["prop4_rhs"] = r.prop4_rhs;
  return j;
}

ordered_json global_report_to_json(const GlobalReport& r) {
  ordered_json j;
  j["eps"] = r.eps;
  j["r"] = std::isinf(r.r) ? ordered_json("inf") : ordered_json(r.r);
  j["mu"] = r.mu;
  j["R"] = r.R;
  j["shift"] = r.shift;
  ordered_json blocks = ordered_json::array();
  for (const BlockReport& b : r.blocks) {
    blocks.push_back({{"j", b.j},
                      {"delta_j", b.delta_j},
                      {"kappa_j", b.kappa_j},
                      {"tau_size", b.tau_size},
                      {"prop3", b.prop3},
                      {"prop4_lhs", b.prop4_lhs},
                      {"prop4_rhs", b.prop4_rhs}});
  }
  j["blocks"] = std::move(blocks);
  ordered_json growth = ordered_json::array();
  for (const GrowthProbe& g : r.growth) {
    growth.push_back({{"x", g.x},
                      {"omega", g.omega_x},
                      {"chain_bound", g.chain_bound},
                      {"eps_ratio", g.eps_ratio},
                      {"ok", g.ok}});
  }
  j["growth"] = std::move(growth);
  j["growth_max_eps_ratio"] = r.growth_max_eps_ratio;
  j["majorize_ok"] = r.majorize_ok;
  j["majorize_min_gap"] = r.majorize_min_gap;
  j["poisson_value"] = r.poisson_value;
  j["poisson_of_omega"] = r.poisson_of_omega;
  j["deriv_sup"] = r.deriv_sup;
  return j;
}

ordered_json family_to_json(const MajorantSpec& spec) {
  ordered_json j;
  j["family"] = family_name(spec.family);
  ordered_json params;
  switch (spec.family) {
    case Family::thm2: params["gamma"] = spec.gamma; break;
    case Family::omega_star: break;
    case Family::prop4: break;
    case Family::myau: params["r"] = spec.r; break;
    case Family::upsilon:
      params["alpha"] = spec.alpha;
      params["beta"] = spec.beta;
      break;
  }
  j["params"] = std::move(params);
  j["n_range"] = {spec.n_min, spec.n_max};
  return j;
}

MajorantSpec family_from_json(const ordered_json& j) {
  const Family fam = family_from_name(j.at("family").get<std::string>());
  const auto& nr = j.at("n_range");
  const int n_min = nr[0].get<int>();
  const int n_max = nr[1].get<int>();
  const auto& params = j.at("params");
  switch (fam) {
    case Family::thm2: return omega_thm2(params.at("gamma").get<double>(), n_min, n_max);
    case Family::omega_star: return omega_star(n_min, n_max);
    case Family::prop4: return omega_prop4(n_min, n_max);
    case Family::myau: return omega_myau(params.at("r").get<double>(), n_min, n_max);
    case Family::upsilon:
      return upsilon_prop35(params.at("alpha").get<double>(),
                            params.at("beta").get<double>(), n_min, n_max);
  }
  throw std::runtime_error("zoo: unknown family");
}

void save_json(const ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("io: write failed: " + path);
}

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot open: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("io: parse error in " + path + ": " + e.what());
  }
  return j;
}

PiecewiseFn load_piecewise(const std::string& path) {
  return piecewise_from_json(load_json(path));
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), cols_(columns.size()) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += columns[i];
  }
  buf_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != cols_) throw std::runtime_error("io: csv row arity mismatch");
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += fmt_double(values[i]);
  }
  buf_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("io: cannot open for writing: " + path_);
  out << buf_;
  if (!out) throw std::runtime_error("io: write failed: " + path_);
  closed_ = true;
}

}  // namespace bmtk
