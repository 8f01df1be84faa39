#include "bmtk/hilbert.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bmtk/quadrature.hpp"

namespace bmtk {

namespace {

double require_compact(const PiecewiseFn& f) {
  if (f.default_value() != 0) {
    throw std::runtime_error("hilbert: function is not compactly supported");
  }
  const auto supp = f.support();
  return supp ? supp->length() : 0.0;
}

double piece_scale_mag(const Piece& pc) {
  return pc.log_scale ? pc.log_scale->to_double() : 1.0;
}

// atan/log helpers shared with the Poisson machinery (duplicated to keep the
// translation unit self-contained).
double atan_diff(double v1, double v2) {
  const double prod = v1 * v2;
  if (prod > -1.0) return std::atan((v2 - v1) / (1.0 + prod));
  return std::atan(v2) - std::atan(v1);
}

double half_log_ratio(double v1, double v2) {
  return 0.5 * std::log1p((v2 - v1) * (v2 + v1) / (1.0 + v1 * v1));
}

// Divide q(u) by (u - xi): q(u) = (u - xi) s(u) + q(xi).
Poly deflate(const Poly& q, double xi, double& value) {
  if (q.c.empty()) {
    value = 0.0;
    return Poly();
  }
  std::vector<double> s(q.c.size() > 1 ? q.c.size() - 1 : 0, 0.0);
  double acc = q.c.back();
  for (size_t k = q.c.size() - 1; k-- > 0;) {
    if (k < s.size()) s[k] = acc;
    acc = q.c[k] + xi * acc;
  }
  value = acc;
  return Poly(std::move(s));
}

// Exact int over [u1,u2] of num(u) / ((u + a)^2 + 1) du.
double rational_integral(const Poly& num, double a, double u1, double u2) {
  std::vector<double> w = num.c;
  const int n = static_cast<int>(w.size()) - 1;
  const double B = 2.0 * a;
  const double C = 1.0 + a * a;
  std::vector<double> qc(n >= 2 ? static_cast<size_t>(n - 1) : 0, 0.0);
  for (int k = n; k >= 2; --k) {
    const double t = w[static_cast<size_t>(k)];
    qc[static_cast<size_t>(k - 2)] = t;
    w[static_cast<size_t>(k - 1)] -= t * B;
    w[static_cast<size_t>(k - 2)] -= t * C;
  }
  const double beta = w.size() > 1 ? w[1] : 0.0;
  const double alpha = w.empty() ? 0.0 : w[0];
  const Poly Q = Poly(std::move(qc)).antiderivative();
  const double v1 = u1 + a;
  const double v2 = u2 + a;
  return Q.eval(u2) - Q.eval(u1) + beta * half_log_ratio(v1, v2) +
         (alpha - beta * a) * atan_diff(v1, v2);
}

// x-independent regularizing constant: int f(t) * t/(1+t^2) dt.
double regularizer_constant(const PiecewiseFn& f) {
  double total = 0.0;
  for (const Piece& pc : f.pieces()) {
    const double a = pc.iv.lo;
    // numerator q(u) * (u + a)
    const Poly num = pc.poly.times(Poly::linear(a, 1.0));
    const double v = rational_integral(num, a, 0.0, pc.iv.length());
    total += v * piece_scale_mag(pc);
  }
  return total;
}

// Closed-form pv-int f(t)/(x-t) dt for x off the breakpoints.
double classical_pv_closed(const PiecewiseFn& f, double x) {
  double total = 0.0;
  for (const Piece& pc : f.pieces()) {
    const double w = pc.iv.length();
    const double xi = x - pc.iv.lo;
    double qxi = 0.0;
    const Poly s = deflate(pc.poly, xi, qxi);
    double v = 0.0;
    if (qxi != 0.0) {
      // Log arguments from global differences: near a breakpoint the local
      // coordinate would swallow a perturbation of x into rounding.
      v += qxi * (std::log(std::fabs(x - pc.iv.lo)) - std::log(std::fabs(x - pc.iv.hi)));
    }
    const Poly S = s.antiderivative();
    v -= S.eval(w) - S.eval(0.0);
    total += v * piece_scale_mag(pc);
  }
  return total;
}

bool near_breakpoint(const PiecewiseFn& f, double x, double h, double* bp) {
  for (double b : f.breakpoints()) {
    if (std::fabs(x - b) <= h) {
      *bp = b;
      return true;
    }
  }
  return false;
}

double value_jump_at(const PiecewiseFn& f, double x) {
  double left = 0.0, right = 0.0;
  for (const Piece& pc : f.pieces()) {
    if (pc.iv.hi == x) {
      const double v = pc.poly.eval(pc.iv.length());
      left = v == 0.0 ? 0.0 : v * piece_scale_mag(pc);
    }
    if (pc.iv.lo == x) {
      const double v = pc.poly.eval(0.0);
      right = v == 0.0 ? 0.0 : v * piece_scale_mag(pc);
    }
  }
  return std::fabs(right - left);
}

double function_scale(const PiecewiseFn& f) {
  double s = 0.0;
  for (const Piece& pc : f.pieces()) {
    s = std::max(s, std::fabs(pc.poly.eval(0.0) * piece_scale_mag(pc)));
    s = std::max(s, std::fabs(pc.poly.eval(pc.iv.length()) * piece_scale_mag(pc)));
  }
  return std::max(s, 1e-300);
}

}  // namespace

HilbertResult hilbert_pw(const PiecewiseFn& f, double x, HilbertKernel kernel,
                         KernelSign sign) {
  const double L = require_compact(f);
  if (L == 0.0) return {0.0, HilbertMethod::closed_form, 0.0};

  const double h = 1e-12 * L;
  double bp = 0.0;
  double pv = 0.0;
  if (near_breakpoint(f, x, h, &bp)) {
    if (value_jump_at(f, bp) > 1e-9 * function_scale(f)) {
      throw std::runtime_error("hilbert: AT_BREAKPOINT (jump of f at x)");
    }
    pv = 0.5 * (classical_pv_closed(f, bp - h) + classical_pv_closed(f, bp + h));
  } else {
    pv = classical_pv_closed(f, x);
  }
  if (sign == KernelSign::reflected) pv = -pv;
  double v = pv;
  if (kernel == HilbertKernel::modified) v += regularizer_constant(f);
  return {v, HilbertMethod::closed_form, 0.0};
}

HilbertResult hilbert_quad_oracle(const PiecewiseFn& f, double x, double tol,
                                  HilbertKernel kernel) {
  if (!(tol > 0.0)) throw std::runtime_error("hilbert: tol must be > 0");
  const double L = require_compact(f);
  if (L == 0.0) return {0.0, HilbertMethod::quadrature, 0.0};
  const Interval supp = *f.support();

  const double quad_tol = tol / 16.0;
  auto integrand = [&](double t) { return f.value(t) / (x - t); };

  // Integrate f(t)/(x-t) over the pieces minus the excision (x-eps, x+eps).
  auto excised = [&](double eps) {
    double total = 0.0;
    for (const Piece& pc : f.pieces()) {
      const double a = pc.iv.lo;
      const double b = pc.iv.hi;
      const double c1 = std::min(b, std::max(a, x - eps));
      const double c2 = std::min(b, std::max(a, x + eps));
      if (a < c1) total += adaptive_quad(integrand, a, c1, quad_tol);
      if (c2 < b) total += adaptive_quad(integrand, c2, b, quad_tol);
    }
    return total;
  };

  double pv = 0.0;
  double est = 0.0;
  if (x < supp.lo || x > supp.hi) {
    // No singularity inside the support: plain quadrature.
    pv = excised(0.0);
    est = quad_tol;
  } else {
    constexpr int kMin = 4, kMax = 20;
    std::vector<std::vector<double>> T;
    bool converged = false;
    for (int k = kMin; k <= kMax && !converged; ++k) {
      const double eps = std::ldexp(L, -k);
      std::vector<double> row(1, excised(eps));
      const size_t prev = T.size();
      for (size_t j = 1; j <= prev; ++j) {
        const double denom = std::ldexp(1.0, static_cast<int>(2 * j - 1)) - 1.0;
        row.push_back(row[j - 1] + (row[j - 1] - T[prev - 1][j - 1]) / denom);
      }
      if (prev >= 1) {
        const double diff = std::fabs(row.back() - T[prev - 1].back());
        if (diff <= tol / 2.0) {
          pv = row.back();
          est = diff + 4.0 * quad_tol;
          converged = true;
        }
      }
      T.push_back(std::move(row));
    }
    if (!converged) {
      throw std::runtime_error(
          "hilbert: NO_CONVERGENCE (principal value extrapolation stalled)");
    }
  }

  double v = pv;
  if (kernel == HilbertKernel::modified) {
    for (const Piece& pc : f.pieces()) {
      auto reg = [&](double t) { return f.value(t) * t / (1.0 + t * t); };
      v += adaptive_quad(reg, pc.iv.lo, pc.iv.hi, quad_tol);
    }
    est += quad_tol;
  }
  return {v, HilbertMethod::quadrature, est};
}

DerivSupResult hilbert_deriv_sup(const PiecewiseFn& f, const Interval& region,
                                 int grid_n) {
  require_compact(f);
  // A value jump of f already makes the transform non-Lipschitz (the
  // derivative picks up a 1/(x-b) pole, stronger than the log of a kink).
  for (double b : f.breakpoints()) {
    if (value_jump_at(f, b) > 1e-9 * function_scale(f)) {
      return {true, std::numeric_limits<double>::infinity(), b};
    }
  }
  const PiecewiseFn fp = f.derivative();
  if (!fp.support()) return {false, 0.0, region.lo};
  const double scale = function_scale(fp);

  // A jump of f' makes pv-int f'(t)/(x-t) dt log-divergent; confirm each
  // candidate by refinement toward the breakpoint.
  const double ref_len = fp.support()->length();
  for (double b : fp.breakpoints()) {
    if (value_jump_at(fp, b) <= 1e-8 * scale) continue;
    double prev = std::fabs(classical_pv_closed(fp, b + ref_len * std::ldexp(1.0, -10)));
    bool growing = true;
    double last = prev;
    for (int k = 14; k <= 26; k += 4) {
      const double g =
          std::fabs(classical_pv_closed(fp, b + ref_len * std::ldexp(1.0, -k)));
      if (g <= last) growing = false;
      last = g;
    }
    if (growing && last > prev + 0.5 * std::log(2.0) * value_jump_at(fp, b)) {
      return {true, std::numeric_limits<double>::infinity(), b};
    }
  }

  // Bounded case: grid sup with refinement near the breakpoints of f'.
  grid_n = std::max(grid_n, 64);
  std::vector<double> xs;
  xs.reserve(static_cast<size_t>(grid_n) + 16 * fp.breakpoints().size());
  for (int i = 0; i <= grid_n; ++i) {
    xs.push_back(region.lo + region.length() * i / grid_n);
  }
  const double len = region.length();
  for (double b : fp.breakpoints()) {
    if (b < region.lo || b > region.hi) continue;
    for (int k = 4; k <= 18; k += 2) {
      xs.push_back(b + len * std::ldexp(1.0, -k));
      xs.push_back(b - len * std::ldexp(1.0, -k));
    }
  }

  DerivSupResult out;
  const double h = 1e-12 * len;
  for (double x : xs) {
    if (x < region.lo || x > region.hi) continue;
    double bp = 0.0;
    double g;
    if (near_breakpoint(fp, x, h, &bp)) {
      g = 0.5 * (classical_pv_closed(fp, bp - h) + classical_pv_closed(fp, bp + h));
    } else {
      g = classical_pv_closed(fp, x);
    }
    if (std::fabs(g) > out.value) {
      out.value = std::fabs(g);
      out.witness = x;
    }
  }
  return out;
}

}  // namespace bmtk

namespace bmtk {

ClassicalPvEvaluator::ClassicalPvEvaluator(PiecewiseFn f) : f_(std::move(f)) {
  require_compact(f_);
  breakpoints_ = f_.breakpoints();
  const auto supp = f_.support();
  h_ = supp ? 1e-12 * supp->length() : 0.0;
}

double ClassicalPvEvaluator::operator()(double x) const {
  if (f_.pieces().empty()) return 0.0;
  for (double b : breakpoints_) {
    if (std::fabs(x - b) <= h_) {
      return 0.5 * (classical_pv_closed(f_, b - h_) + classical_pv_closed(f_, b + h_));
    }
  }
  return classical_pv_closed(f_, x);
}

}  // namespace bmtk
