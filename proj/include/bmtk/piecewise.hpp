#ifndef BMTK_PIECEWISE_HPP
#define BMTK_PIECEWISE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bmtk/interval.hpp"
#include "bmtk/log_scalar.hpp"
#include "bmtk/poly.hpp"

namespace bmtk {

// One polynomial piece on [iv.lo, iv.hi), coefficients in the local
// variable u = x - iv.lo. An optional log-domain multiplier carries the
// extreme constructions (slopes like e^(2^n)).
struct Piece {
  Interval iv;
  Poly poly;
  std::optional<LogScalar> log_scale;

  double scale_value() const { return log_scale ? log_scale->to_double() : 1.0; }
};

// Exact piecewise-polynomial function on the line. Outside all pieces the
// function equals `default_value` (0 or 1; majorants default to 1, their
// logarithms to 0). Pieces are kept sorted and pairwise disjoint.
class PiecewiseFn {
 public:
  PiecewiseFn() = default;
  PiecewiseFn(std::vector<Piece> pieces, int default_value,
              bool declared_continuous = true);

  static PiecewiseFn zero() { return PiecewiseFn({}, 0); }
  static PiecewiseFn tent(double center, double half_width, double height);
  static PiecewiseFn box(double lo, double hi, double height, int default_value = 0);

  const std::vector<Piece>& pieces() const { return pieces_; }
  int default_value() const { return default_value_; }
  bool declared_continuous() const { return declared_continuous_; }

  double value(double x) const;
  LogScalar value_log(double x) const;

  // Closure of {f != 0}; meaningful for default 0 with nontrivial pieces.
  std::optional<Interval> support() const;

  // Piecewise a.e. derivative (default region contributes 0).
  PiecewiseFn derivative() const;

  std::vector<double> breakpoints() const;

  // Max jump of the value across breakpoints / support edges; 0 for a
  // genuinely continuous function up to roundoff.
  double max_jump() const;
  bool is_continuous(double tol) const { return max_jump() <= tol; }

  // y-scale: c*f requires default*c to stay a valid default, so it is only
  // allowed for default 0 or c == 1; use offset-aware callers otherwise.
  PiecewiseFn scaled(double c) const;

  // x -> height*f((x - shift)/stretch), stretch > 0. Defaults carry over.
  PiecewiseFn rescaled(double shift, double stretch, double height) const;

  // Restriction to I: pieces clipped, default value 0 outside and inside
  // the uncovered part of I keeps the original default as explicit boxes.
  PiecewiseFn restricted(const Interval& I) const;

  // max(f - m, 0) for default-0 f (pieces split at sign changes).
  PiecewiseFn positive_part_minus(double m) const;

  // f + g pointwise (defaults add; result default must be 0 or 1).
  static PiecewiseFn sum(const PiecewiseFn& a, const PiecewiseFn& b);

 private:
  std::vector<Piece> pieces_;
  int default_value_ = 0;
  bool declared_continuous_ = true;

  size_t piece_index(double x) const;  // pieces_.size() if none
};

// ---- funcmodel operations -------------------------------------------------

// Exact integral over a finite interval (per-piece antiderivatives plus the
// default value on the uncovered part).
double integrate(const PiecewiseFn& f, const Interval& I);

// Log-domain accumulation for functions whose pieces overflow doubles.
LogScalar integrate_log(const PiecewiseFn& f, const Interval& I);

// Exact sup of |f| over I via endpoints plus critical points.
double sup_norm(const PiecewiseFn& f, const Interval& I);

// Signed extrema of f over I (min, max), same enumeration as sup_norm.
std::pair<double, double> min_max(const PiecewiseFn& f, const Interval& I);

struct PoissonResult {
  double value = 0.0;
  double tail_bound = 0.0;  // certified; 0 for finite-piece functions
};

// Exact integral of f against dP = dx/(1+x^2). The default region is
// integrated in closed form, so the certified tail bound is 0.
PoissonResult poisson_integral(const PiecewiseFn& f, double tail_tol = 1e-10);

// Exact integral of f dP restricted to [I.lo, I.hi].
double poisson_integral_over(const PiecewiseFn& f, const Interval& I);

// ((1/|J_j|) int_{J_j} |f'|^r)^{1/r} for each j in [j_lo, j_hi]. r = inf
// (pass std::numeric_limits<double>::infinity()) means ess sup of |f'|.
// Throws "vr: NOT_AC ..." when f has jump discontinuities.
std::vector<double> vr_block_norms(const PiecewiseFn& f, double r, int j_lo, int j_hi);

struct VrNorm {
  double value = 0.0;
  int arg_block = 0;
};

VrNorm vr_norm(const PiecewiseFn& f, double r, int j_lo, int j_hi);

// (int_I |f'|^r)^{1/r}, or ess sup |f'| on I for r = inf.
double lr_norm_of_derivative(const PiecewiseFn& f, const Interval& I, double r);

// int_I |g|^r for a piecewise function g (no differentiation), used by the
// block norms and the local lemma preconditions.
double lr_power_integral(const PiecewiseFn& g, const Interval& I, double r);

}  // namespace bmtk

#endif  // BMTK_PIECEWISE_HPP
