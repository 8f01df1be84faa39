#include "bmtk/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bmtk/quadrature.hpp"

namespace bmtk {

namespace {

constexpr double kPi = std::numbers::pi;

double piece_eval(const Piece& pc, double u) {
  const double v = pc.poly.eval(u);
  if (v == 0.0) return 0.0;  // keep 0 * exp(huge) well-defined
  return pc.log_scale ? v * pc.log_scale->to_double() : v;
}

LogScalar piece_eval_log(const Piece& pc, double u) {
  LogScalar v = LogScalar::from_double(pc.poly.eval(u));
  if (pc.log_scale) v = v.mul(*pc.log_scale);
  return v;
}

// atan(v2) - atan(v1) without cancellation for nearby large arguments.
double atan_diff(double v1, double v2) {
  const double prod = v1 * v2;
  if (prod > -1.0) return std::atan((v2 - v1) / (1.0 + prod));
  return std::atan(v2) - std::atan(v1);
}

// (1/2) ln((1+v2^2)/(1+v1^2)) without cancellation.
double half_log_ratio(double v1, double v2) {
  return 0.5 * std::log1p((v2 - v1) * (v2 + v1) / (1.0 + v1 * v1));
}

// Divide p(u) by u^2 + B u + C: p = q * (u^2 + Bu + C) + beta*u + alpha.
void divide_by_quadratic(const Poly& p, double B, double C, Poly& q,
                         double& beta, double& alpha) {
  std::vector<double> w = p.c;
  const int n = static_cast<int>(w.size()) - 1;
  std::vector<double> qc(n >= 2 ? static_cast<size_t>(n - 1) : 0, 0.0);
  for (int k = n; k >= 2; --k) {
    const double t = w[static_cast<size_t>(k)];
    qc[static_cast<size_t>(k - 2)] = t;
    w[static_cast<size_t>(k - 1)] -= t * B;
    w[static_cast<size_t>(k - 2)] -= t * C;
  }
  q = Poly(std::move(qc));
  beta = w.size() > 1 ? w[1] : 0.0;
  alpha = w.empty() ? 0.0 : w[0];
}

// Exact integral of pc over [x1, x2] subset of its interval.
double piece_integral(const Piece& pc, double x1, double x2) {
  const Poly P = pc.poly.antiderivative();
  const double v = P.eval(x2 - pc.iv.lo) - P.eval(x1 - pc.iv.lo);
  if (v == 0.0) return 0.0;
  return pc.log_scale ? v * pc.log_scale->to_double() : v;
}

// Exact integral of pc against dP over [x1, x2] subset of its interval.
double piece_poisson(const Piece& pc, double x1, double x2) {
  const double lo = pc.iv.lo;
  const double u1 = x1 - lo;
  const double u2 = x2 - lo;
  Poly q;
  double beta = 0.0, alpha = 0.0;
  divide_by_quadratic(pc.poly, 2.0 * lo, 1.0 + lo * lo, q, beta, alpha);
  const Poly Q = q.antiderivative();
  double v = Q.eval(u2) - Q.eval(u1);
  // Remainder (beta*u + alpha)/((u+lo)^2 + 1), substituted v = u + lo.
  const double w1 = x1;  // u1 + lo
  const double w2 = x2;
  v += beta * half_log_ratio(w1, w2) + (alpha - beta * lo) * atan_diff(w1, w2);
  if (v == 0.0) return 0.0;
  return pc.log_scale ? v * pc.log_scale->to_double() : v;
}

double safe_pow(double base, double r) { return std::pow(base, r); }

// int_{s1}^{s2} |a*u + b|^r du, exact (the antiderivative is C^1 across the
// zero of the linear function).
double linear_abs_power_integral(double a, double b, double r, double s1, double s2) {
  if (a == 0.0) return safe_pow(std::fabs(b), r) * (s2 - s1);
  auto F = [&](double u) {
    const double g = a * u + b;
    const double m = std::fabs(g);
    return std::copysign(safe_pow(m, r + 1.0), g) / (a * (r + 1.0));
  };
  return F(s2) - F(s1);
}

// int_{x1}^{x2} |g|^r for one derivative piece (poly d, scale s), local
// coordinates relative to `lo`.
double piece_abs_power_integral(const Poly& d, double scale_mag, double lo,
                                double x1, double x2, double r) {
  const double u1 = x1 - lo;
  const double u2 = x2 - lo;
  const int deg = d.degree();
  double base = 0.0;
  if (deg <= 0) {
    base = safe_pow(std::fabs(d.eval(0.0)), r) * (u2 - u1);
  } else if (deg == 1) {
    base = linear_abs_power_integral(d.c[1], d.c[0], r, u1, u2);
  } else {
    // Split at sign changes so |d|^r is smooth on each segment.
    std::vector<double> nodes = d.roots_in(u1, u2);
    nodes.insert(nodes.begin(), u1);
    nodes.push_back(u2);
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double a = nodes[i];
      const double b = nodes[i + 1];
      if (!(a < b)) continue;
      auto fn = [&](double u) { return safe_pow(std::fabs(d.eval(u)), r); };
      const double crude = fn(0.5 * (a + b)) * (b - a);
      const double tol = 1e-13 * std::max(crude, 1e-300);
      base += adaptive_quad(fn, a, b, tol);
    }
  }
  if (base == 0.0) return 0.0;
  return base * safe_pow(scale_mag, r);
}

}  // namespace

// ---- PiecewiseFn ------------------------------------------------------------

PiecewiseFn::PiecewiseFn(std::vector<Piece> pieces, int default_value,
                         bool declared_continuous)
    : pieces_(std::move(pieces)),
      default_value_(default_value),
      declared_continuous_(declared_continuous) {
  if (default_value_ != 0 && default_value_ != 1) {
    throw std::runtime_error("piecewise: default value must be 0 or 1");
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.iv.lo < b.iv.lo; });
  for (const Piece& pc : pieces_) {
    if (!(pc.iv.lo < pc.iv.hi)) {
      throw std::runtime_error("piecewise: piece with empty interval");
    }
  }
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (pieces_[i + 1].iv.lo < pieces_[i].iv.hi) {
      throw std::runtime_error(
          "piecewise: overlapping pieces [" + std::to_string(pieces_[i].iv.lo) +
          ", " + std::to_string(pieces_[i].iv.hi) + ") and [" +
          std::to_string(pieces_[i + 1].iv.lo) + ", " +
          std::to_string(pieces_[i + 1].iv.hi) + ")");
    }
  }
}

PiecewiseFn PiecewiseFn::tent(double center, double half_width, double height) {
  const double slope = height / half_width;
  std::vector<Piece> ps;
  ps.push_back({Interval(center - half_width, center), Poly::linear(0.0, slope), {}});
  ps.push_back({Interval(center, center + half_width), Poly::linear(height, -slope), {}});
  return PiecewiseFn(std::move(ps), 0);
}

PiecewiseFn PiecewiseFn::box(double lo, double hi, double height, int default_value) {
  std::vector<Piece> ps;
  ps.push_back({Interval(lo, hi), Poly::constant(height), {}});
  return PiecewiseFn(std::move(ps), default_value, false);
}

size_t PiecewiseFn::piece_index(double x) const {
  size_t lo = 0, hi = pieces_.size();
  while (lo < hi) {
    const size_t m = (lo + hi) / 2;
    if (pieces_[m].iv.hi <= x) {
      lo = m + 1;
    } else {
      hi = m;
    }
  }
  if (lo < pieces_.size() && pieces_[lo].iv.contains(x)) return lo;
  return pieces_.size();
}

double PiecewiseFn::value(double x) const {
  const size_t i = piece_index(x);
  if (i == pieces_.size()) return static_cast<double>(default_value_);
  return piece_eval(pieces_[i], x - pieces_[i].iv.lo);
}

LogScalar PiecewiseFn::value_log(double x) const {
  const size_t i = piece_index(x);
  if (i == pieces_.size()) return LogScalar::from_double(default_value_);
  return piece_eval_log(pieces_[i], x - pieces_[i].iv.lo);
}

std::optional<Interval> PiecewiseFn::support() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Piece& pc : pieces_) {
    if (pc.poly.is_zero()) continue;
    lo = std::min(lo, pc.iv.lo);
    hi = std::max(hi, pc.iv.hi);
  }
  if (!(lo < hi)) return std::nullopt;
  return Interval(lo, hi);
}

PiecewiseFn PiecewiseFn::derivative() const {
  std::vector<Piece> ps;
  ps.reserve(pieces_.size());
  for (const Piece& pc : pieces_) {
    ps.push_back({pc.iv, pc.poly.derivative(), pc.log_scale});
  }
  return PiecewiseFn(std::move(ps), 0, false);
}

std::vector<double> PiecewiseFn::breakpoints() const {
  std::vector<double> b;
  for (const Piece& pc : pieces_) {
    b.push_back(pc.iv.lo);
    b.push_back(pc.iv.hi);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double PiecewiseFn::max_jump() const {
  double worst = 0.0;
  const double dflt = static_cast<double>(default_value_);
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& pc = pieces_[i];
    // Left edge: compare against previous piece's right limit or the default.
    double left = dflt;
    if (i > 0 && pieces_[i - 1].iv.hi == pc.iv.lo) {
      left = piece_eval(pieces_[i - 1], pieces_[i - 1].iv.length());
    }
    worst = std::max(worst, std::fabs(left - piece_eval(pc, 0.0)));
    // Right edge against default when nothing follows contiguously.
    const bool contiguous =
        i + 1 < pieces_.size() && pieces_[i + 1].iv.lo == pc.iv.hi;
    if (!contiguous) {
      worst = std::max(worst, std::fabs(piece_eval(pc, pc.iv.length()) - dflt));
    }
  }
  return worst;
}

PiecewiseFn PiecewiseFn::scaled(double c) const {
  if (default_value_ != 0 && c != 1.0) {
    throw std::runtime_error("piecewise: scaled() needs default 0");
  }
  std::vector<Piece> ps = pieces_;
  for (Piece& pc : ps) pc.poly = pc.poly.scaled(c);
  return PiecewiseFn(std::move(ps), default_value_, declared_continuous_);
}

PiecewiseFn PiecewiseFn::rescaled(double shift, double stretch, double height) const {
  if (!(stretch > 0.0)) throw std::runtime_error("piecewise: stretch must be > 0");
  if (default_value_ != 0 && height != 1.0) {
    throw std::runtime_error("piecewise: rescaled() with height needs default 0");
  }
  std::vector<Piece> ps;
  ps.reserve(pieces_.size());
  for (const Piece& pc : pieces_) {
    Piece np;
    np.iv = Interval(shift + stretch * pc.iv.lo, shift + stretch * pc.iv.hi);
    np.poly = pc.poly.stretched(1.0 / stretch).scaled(height);
    np.log_scale = pc.log_scale;
    ps.push_back(std::move(np));
  }
  return PiecewiseFn(std::move(ps), default_value_, declared_continuous_);
}

PiecewiseFn PiecewiseFn::restricted(const Interval& I) const {
  std::vector<Piece> ps;
  double cursor = I.lo;
  for (const Piece& pc : pieces_) {
    const double x1 = std::max(pc.iv.lo, I.lo);
    const double x2 = std::min(pc.iv.hi, I.hi);
    if (!(x1 < x2)) continue;
    if (default_value_ != 0 && cursor < x1) {
      ps.push_back({Interval(cursor, x1), Poly::constant(default_value_), {}});
    }
    Piece np;
    np.iv = Interval(x1, x2);
    np.poly = pc.poly.shifted(x1 - pc.iv.lo);
    np.log_scale = pc.log_scale;
    ps.push_back(std::move(np));
    cursor = x2;
  }
  if (default_value_ != 0 && cursor < I.hi) {
    ps.push_back({Interval(cursor, I.hi), Poly::constant(default_value_), {}});
  }
  return PiecewiseFn(std::move(ps), 0, declared_continuous_);
}

PiecewiseFn PiecewiseFn::positive_part_minus(double m) const {
  if (default_value_ != 0) {
    throw std::runtime_error("piecewise: positive_part_minus needs default 0");
  }
  std::vector<Piece> ps;
  for (const Piece& pc : pieces_) {
    if (pc.log_scale) {
      throw std::runtime_error("piecewise: positive_part_minus on log-scaled piece");
    }
    Poly g = pc.poly;
    if (g.c.empty()) g.c.push_back(0.0);
    g.c[0] -= m;
    const double w = pc.iv.length();
    std::vector<double> nodes = g.roots_in(0.0, w);
    nodes.insert(nodes.begin(), 0.0);
    nodes.push_back(w);
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double a = nodes[i];
      const double b = nodes[i + 1];
      if (!(a < b)) continue;
      if (g.eval(0.5 * (a + b)) <= 0.0) continue;
      Piece np;
      np.iv = Interval(pc.iv.lo + a, pc.iv.lo + b);
      np.poly = g.shifted(a);
      ps.push_back(std::move(np));
    }
  }
  return PiecewiseFn(std::move(ps), 0, declared_continuous_);
}

PiecewiseFn PiecewiseFn::sum(const PiecewiseFn& a, const PiecewiseFn& b) {
  const int dflt = a.default_value_ + b.default_value_;
  if (dflt > 1) throw std::runtime_error("piecewise: sum of two default-1 functions");
  for (const auto* f : {&a, &b}) {
    for (const Piece& pc : f->pieces_) {
      if (pc.log_scale && std::fabs(pc.log_scale->log_mag) > 690.0) {
        throw std::runtime_error("piecewise: sum with non-representable log scale");
      }
    }
  }
  std::vector<double> cuts;
  for (const auto* f : {&a, &b}) {
    for (double x : f->breakpoints()) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Piece> ps;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double x1 = cuts[i];
    const double x2 = cuts[i + 1];
    const double xm = 0.5 * (x1 + x2);
    Poly s = Poly::constant(0.0);
    bool covered = false;
    for (const auto* f : {&a, &b}) {
      const size_t idx = f->piece_index(xm);
      if (idx == f->pieces_.size()) {
        s = s.plus(Poly::constant(f->default_value_));
      } else {
        const Piece& pc = f->pieces_[idx];
        Poly local = pc.poly.shifted(x1 - pc.iv.lo);
        if (pc.log_scale) local = local.scaled(pc.log_scale->to_double());
        s = s.plus(local);
        covered = true;
      }
    }
    if (!covered) continue;  // pure default region, no piece needed
    const int deg = s.degree();
    if (deg < 0 && dflt == 0) continue;
    if (deg == 0 && s.c[0] == static_cast<double>(dflt)) continue;
    if (deg < 0 && dflt == 1) {
      // explicit zero on a covered stretch of a default-1 function
      ps.push_back({Interval(x1, x2), Poly::constant(0.0), {}});
      continue;
    }
    ps.push_back({Interval(x1, x2), std::move(s), {}});
  }
  const bool cont = a.declared_continuous_ && b.declared_continuous_;
  return PiecewiseFn(std::move(ps), dflt, cont);
}

// ---- operations -------------------------------------------------------------

double integrate(const PiecewiseFn& f, const Interval& I) {
  double total = 0.0;
  double covered = 0.0;
  for (const Piece& pc : f.pieces()) {
    const double x1 = std::max(pc.iv.lo, I.lo);
    const double x2 = std::min(pc.iv.hi, I.hi);
    if (!(x1 < x2)) continue;
    total += piece_integral(pc, x1, x2);
    covered += x2 - x1;
  }
  if (f.default_value() != 0) {
    total += static_cast<double>(f.default_value()) * (I.length() - covered);
  }
  return total;
}

LogScalar integrate_log(const PiecewiseFn& f, const Interval& I) {
  LogScalar total = LogScalar::zero();
  double covered = 0.0;
  for (const Piece& pc : f.pieces()) {
    const double x1 = std::max(pc.iv.lo, I.lo);
    const double x2 = std::min(pc.iv.hi, I.hi);
    if (!(x1 < x2)) continue;
    const Poly P = pc.poly.antiderivative();
    LogScalar v = LogScalar::from_double(P.eval(x2 - pc.iv.lo) - P.eval(x1 - pc.iv.lo));
    if (pc.log_scale) v = v.mul(*pc.log_scale);
    total = total.add(v);
    covered += x2 - x1;
  }
  if (f.default_value() != 0) {
    total = total.add(LogScalar::from_double(
        static_cast<double>(f.default_value()) * (I.length() - covered)));
  }
  return total;
}

std::pair<double, double> min_max(const PiecewiseFn& f, const Interval& I) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto consider = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  double covered = 0.0;
  for (const Piece& pc : f.pieces()) {
    const double x1 = std::max(pc.iv.lo, I.lo);
    const double x2 = std::min(pc.iv.hi, I.hi);
    if (x1 > x2) continue;
    const double u1 = x1 - pc.iv.lo;
    const double u2 = x2 - pc.iv.lo;
    consider(piece_eval(pc, u1));
    consider(piece_eval(pc, u2));
    for (double rt : pc.poly.derivative().roots_in(u1, u2)) {
      consider(piece_eval(pc, rt));
    }
    covered += std::max(0.0, x2 - x1);
  }
  if (covered < I.length() - 1e-15 * std::max(1.0, std::fabs(I.length()))) {
    consider(static_cast<double>(f.default_value()));
  }
  if (lo > hi) {  // nothing touched I at all
    consider(static_cast<double>(f.default_value()));
  }
  return {lo, hi};
}

double sup_norm(const PiecewiseFn& f, const Interval& I) {
  const auto [lo, hi] = min_max(f, I);
  return std::max(std::fabs(lo), std::fabs(hi));
}

PoissonResult poisson_integral(const PiecewiseFn& f, double tail_tol) {
  if (!(tail_tol > 0.0)) throw std::runtime_error("poisson: tail_tol must be > 0");
  double total = 0.0;
  if (f.default_value() != 0) total = static_cast<double>(f.default_value()) * kPi;
  for (const Piece& pc : f.pieces()) {
    total += piece_poisson(pc, pc.iv.lo, pc.iv.hi);
    if (f.default_value() != 0) {
      total -= static_cast<double>(f.default_value()) * atan_diff(pc.iv.lo, pc.iv.hi);
    }
  }
  return {total, 0.0};
}

namespace {

// Jump of f at breakpoint x (left limit vs right limit, default-aware).
double jump_at(const PiecewiseFn& f, double x) {
  double left = static_cast<double>(f.default_value());
  double right = left;
  for (const Piece& pc : f.pieces()) {
    if (pc.iv.hi == x) left = piece_eval(pc, pc.iv.length());
    if (pc.iv.lo == x) right = piece_eval(pc, 0.0);
  }
  return std::fabs(right - left);
}

}  // namespace

double poisson_integral_over(const PiecewiseFn& f, const Interval& I) {
  double total = 0.0;
  double covered_atan = 0.0;
  for (const Piece& pc : f.pieces()) {
    const double x1 = std::max(pc.iv.lo, I.lo);
    const double x2 = std::min(pc.iv.hi, I.hi);
    if (!(x1 < x2)) continue;
    total += piece_poisson(pc, x1, x2);
    covered_atan += atan_diff(x1, x2);
  }
  if (f.default_value() != 0) {
    total += static_cast<double>(f.default_value()) *
             (atan_diff(I.lo, I.hi) - covered_atan);
  }
  return total;
}

std::vector<double> vr_block_norms(const PiecewiseFn& f, double r, int j_lo, int j_hi) {
  if (!(r >= 1.0)) throw std::runtime_error("vr: r must be >= 1");
  if (j_lo > j_hi) throw std::runtime_error("vr: empty block range");
  // Absolute continuity on the requested blocks: no value jumps strictly
  // inside any block (a.e. derivatives ignore the block-edge tiling points).
  double scale = 1.0;
  for (const Piece& pc : f.pieces()) {
    scale = std::max(scale, std::fabs(piece_eval(pc, 0.0)));
    scale = std::max(scale, std::fabs(piece_eval(pc, pc.iv.length())));
  }
  for (double b : f.breakpoints()) {
    bool interior = false;
    for (int j = j_lo; j <= j_hi; ++j) {
      const Interval J = DyadicBlock(j).interval();
      if (b > J.lo && b < J.hi) {
        interior = true;
        break;
      }
    }
    if (interior && jump_at(f, b) > 1e-9 * scale) {
      throw std::runtime_error("vr: NOT_AC (function has jump discontinuities)");
    }
  }

  const bool inf_r = std::isinf(r);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(j_hi - j_lo + 1));
  for (int j = j_lo; j <= j_hi; ++j) {
    const Interval J = DyadicBlock(j).interval();
    if (inf_r) {
      double s = 0.0;
      for (const Piece& pc : f.pieces()) {
        const double x1 = std::max(pc.iv.lo, J.lo);
        const double x2 = std::min(pc.iv.hi, J.hi);
        if (!(x1 < x2)) continue;
        const Poly d = pc.poly.derivative();
        const double u1 = x1 - pc.iv.lo;
        const double u2 = x2 - pc.iv.lo;
        double m = std::max(std::fabs(d.eval(u1)), std::fabs(d.eval(u2)));
        for (double rt : d.derivative().roots_in(u1, u2)) {
          m = std::max(m, std::fabs(d.eval(rt)));
        }
        const double mag = pc.log_scale ? std::exp(pc.log_scale->log_mag) : 1.0;
        s = std::max(s, m * mag);
      }
      out.push_back(s);
      continue;
    }
    double acc = 0.0;
    for (const Piece& pc : f.pieces()) {
      const double x1 = std::max(pc.iv.lo, J.lo);
      const double x2 = std::min(pc.iv.hi, J.hi);
      if (!(x1 < x2)) continue;
      const Poly d = pc.poly.derivative();
      const double mag = pc.log_scale ? std::exp(pc.log_scale->log_mag) : 1.0;
      acc += piece_abs_power_integral(d, mag, pc.iv.lo, x1, x2, r);
    }
    out.push_back(std::pow(acc / J.length(), 1.0 / r));
  }
  return out;
}

VrNorm vr_norm(const PiecewiseFn& f, double r, int j_lo, int j_hi) {
  const std::vector<double> vals = vr_block_norms(f, r, j_lo, j_hi);
  VrNorm n;
  n.value = -1.0;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] > n.value) {
      n.value = vals[i];
      n.arg_block = j_lo + static_cast<int>(i);
    }
  }
  return n;
}

double lr_power_integral(const PiecewiseFn& g, const Interval& I, double r) {
  double acc = 0.0;
  for (const Piece& pc : g.pieces()) {
    const double x1 = std::max(pc.iv.lo, I.lo);
    const double x2 = std::min(pc.iv.hi, I.hi);
    if (!(x1 < x2)) continue;
    const double mag = pc.log_scale ? std::exp(pc.log_scale->log_mag) : 1.0;
    acc += piece_abs_power_integral(pc.poly, mag, pc.iv.lo, x1, x2, r);
  }
  return acc;
}

double lr_norm_of_derivative(const PiecewiseFn& f, const Interval& I, double r) {
  if (std::isinf(r)) {
    double s = 0.0;
    for (const Piece& pc : f.pieces()) {
      const double x1 = std::max(pc.iv.lo, I.lo);
      const double x2 = std::min(pc.iv.hi, I.hi);
      if (!(x1 < x2)) continue;
      const Poly d = pc.poly.derivative();
      const double u1 = x1 - pc.iv.lo;
      const double u2 = x2 - pc.iv.lo;
      double m = std::max(std::fabs(d.eval(u1)), std::fabs(d.eval(u2)));
      for (double rt : d.derivative().roots_in(u1, u2)) {
        m = std::max(m, std::fabs(d.eval(rt)));
      }
      const double mag = pc.log_scale ? std::exp(pc.log_scale->log_mag) : 1.0;
      s = std::max(s, m * mag);
    }
    return s;
  }
  return std::pow(lr_power_integral(f.derivative(), I, r), 1.0 / r);
}

}  // namespace bmtk
