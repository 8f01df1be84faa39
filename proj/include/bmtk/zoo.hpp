#ifndef BMTK_ZOO_HPP
#define BMTK_ZOO_HPP

#include <string>
#include <vector>

#include "bmtk/interval.hpp"
#include "bmtk/log_scalar.hpp"
#include "bmtk/piecewise.hpp"

namespace bmtk {

enum class Family { thm2, omega_star, prop4, myau, upsilon };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// One "hill" of a log-majorant (or of the function itself for the myau and
// upsilon families): a tent supported on [center - hw, center + hw] (or
// [lo, lo + 2hw] for the one-sided upsilon intervals), apex value `peak`.
struct Hill {
  int n = 0;
  double center = 0.0;     // tent apex position
  double peak = 0.0;       // exact apex value (slope * half_width, canonical)
  LogScalar slope;         // |derivative| on the tent
  LogScalar half_width;
  double lo = 0.0;         // double view of the support (may collapse)
  double hi = 0.0;
};

// Analytic descriptor of a hills family; lowering to PiecewiseFn is exact
// whenever the support is representable in doubles.
struct MajorantSpec {
  Family family = Family::thm2;
  double gamma = 0.0;
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double rho = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::vector<Hill> hills;

  bool hill_lowerable(const Hill& h) const;
  bool lowerable() const;
  PiecewiseFn lower() const;  // throws when a hill's support collapses

  // Block values of the V_r means over J_m for the hills-at-2^n families
  // (thm2, prop4, myau): right half of hill m plus left half of hill m+1.
  // Requires m and m+1 in range. Exact in log domain.
  LogScalar vr_block_value_log(int m, double r_exp) const;
  double v1_block_value(int m) const;  // exact (powers of two cancel)

  // upsilon: hill m lies inside J_m on its own.
  double upsilon_block_value(int m, double r_exp) const;
};

MajorantSpec omega_thm2(double gamma, int n_min, int n_max);
MajorantSpec omega_star(int n_min, int n_max);
MajorantSpec omega_prop4(int n_min, int n_max);
MajorantSpec omega_myau(double r, int n_min, int n_max);
MajorantSpec upsilon_prop35(double alpha, double beta, int n_min, int n_max);

// Exact bracket of one hill's integral against dP: tent area times the
// min/max of the Poisson weight over the support. `value` is the exact
// integral when the hill is lowerable, otherwise the bracket midpoint in
// log domain.
struct HillPoisson {
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;
};

HillPoisson hill_poisson(const MajorantSpec& spec, int n);

struct PoissonSumReport {
  std::vector<double> partial_sums;  // indexed by n - n_min
  double total = 0.0;
  bool increments_decreasing = false;
  bool divergent = false;  // monotone growth across 3 doubling scales
};

PoissonSumReport poisson_log_integral(const MajorantSpec& spec);

// ---- Borichev smallness propagation ----------------------------------------

struct IterationState {
  int n = 0;
  int m = 0;
  Interval interval{0.0, 1.0};  // exact recursion interval around 2^n
  double e_m = 0.0;             // idealized exponent: gamma (1-alpha)^m
  LogScalar log_bound;          // "-C^m 2^n" smallness bound, log domain
  double len_factor = 0.0;      // |I_{n,m}| / (n^{-e_m} 2^n), n-independent
};

// Full recursion table over n in [n_min, n_max], m in [0, m_max]. Verifies
// pairwise disjointness within each generation; throws DISJOINTNESS_FAIL
// with a witness otherwise.
std::vector<IterationState> borichev_iterate(double gamma, double C, double alpha_B,
                                             int m_max, int n_min, int n_max);

// Partial sum (with the conservative bracket constant of the generation)
// of sum_{n=3}^{n_cap} n^{-e_m}; unbounded in n_cap when e_m <= 1.
double log_integral_divergence(const std::vector<IterationState>& generation,
                               long n_cap);

// Same sum without the bracket constant (pure p-series partial sum).
double p_series_partial(double exponent, long n_lo, long n_cap);

// ---- Appendix energy and the Lipschitz obstruction --------------------------

// Analytic per-block lower-bound series: sum_{n=3}^{N} n^{-2 alpha}.
double energy_lower(const MajorantSpec& upsilon_spec, long N);

// 2-D midpoint quadrature of the Sobolev-Slobodecki integrand restricted to
// one block square I_n x I_n.
double energy_block_quadrature(const MajorantSpec& upsilon_spec, int n, int grid);

// Poisson partial sum of the minimal Lipschitz envelopes
// max(2^n/sqrt(n) - C0 (x - 2^n), 0); grows like (1/(2 C0)) log N.
double lipschitz_obstruction(double C0, long N);

// Single envelope term (exposed for the dual-route regression check).
double lipschitz_obstruction_term(double C0, long n);

// Cited constant: the Beurling-Malliavin density of {2^n} is 0. Documented
// as cited-not-computed.
double bm_density_constant();

}  // namespace bmtk

#endif  // BMTK_ZOO_HPP
