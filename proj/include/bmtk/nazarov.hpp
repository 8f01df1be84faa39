#ifndef BMTK_NAZAROV_HPP
#define BMTK_NAZAROV_HPP

#include <cstdint>
#include <vector>

#include "bmtk/interval.hpp"
#include "bmtk/piecewise.hpp"

namespace bmtk {

// ---- regularized interval system --------------------------------------------

enum class MemberKind { essential_maximal, tail, clipped };

// Dyadic interval relative to a base interval: in normalized coordinates it
// is [offset, offset + 1) * 2^-depth. All system geometry is exact integer
// arithmetic on these keys.
struct DyadicKey {
  int depth = 0;
  int64_t offset = 0;
};

struct SystemMember {
  DyadicKey key;
  Interval iv{0.0, 1.0};  // real coordinates (derived view)
  MemberKind kind = MemberKind::essential_maximal;
  int parent = -1;        // ordinal of the source essential; -1 for essentials
  int generation = 0;     // tail generation p (0 for essentials)
};

struct IntervalSystem {
  Interval base{0.0, 1.0};  // I*
  int max_depth = 48;
  std::vector<SystemMember> members;

  Interval real_interval(const DyadicKey& k) const;
};

struct NazarovParams {
  int max_depth = 48;
  // Tail recipe: generation p holds 3^p members of length 2^-p l(c), split
  // ceil/floor across the two sides, marching outward contiguously. The
  // generation cap keeps member counts tractable; the Lemma-4 and
  // multiplicity contracts are verified on every fixture regardless.
  int tail_generations = 6;
  // Descend only while the cell sup is at least promote_ratio * length;
  // shallower cells with smaller positive sup are promoted to essential
  // (coverage and majorization are preserved, F only grows).
  double promote_ratio = 0x1.0p-10;
  int grid_n = 1024;
};

// Maximal dyadic essential subintervals of I_star: sup f on the cell at
// least half the cell length, found by recursive descent.
IntervalSystem essential_maximal(const PiecewiseFn& f, const Interval& I_star,
                                 const NazarovParams& params = {});

// Tails for each maximal essential interval, maximalization of the union,
// clipping to I*. Returns the regularized system tau.
IntervalSystem attach_tails(const IntervalSystem& am, const NazarovParams& params = {});

struct PairWitness {
  int a = -1;
  int b = -1;
  double required = 0.0;
  double actual = 0.0;
};

struct SeparationReport {
  bool neighbors_ok = true;       // #N(a) <= 9 for every a
  int max_neighbors = 0;
  int neighbors_witness = -1;
  bool separation_ok = true;      // both dilate-gap inequalities
  PairWitness worst_pair;         // minimal slack (actual - required)
  std::vector<PairWitness> violations;
  int max_multiplicity = 0;       // of the doubled system {2b}
  bool multiplicity_ok = true;    // <= 9
};

SeparationReport system_report(const IntervalSystem& tau);

// ---- hats and the local lemma -----------------------------------------------

// A * phi((x - c)/scale) where phi is the fixed C^2 quintic-smoothstep hat:
// 1 on [-1/2, 1/2], support [-3/4, 3/4].
struct ScaledHat {
  double center = 0.0;
  double scale = 1.0;
  double amplitude = 1.0;
};

const PiecewiseFn& hat_profile();
PiecewiseFn hats_to_piecewise(const std::vector<ScaledHat>& hats);

// F = sum of phi_a over tau (amplitude = l(a), the standard construction).
PiecewiseFn hat_majorant(const IntervalSystem& tau);

// (H F)'(x) for F a hat sum, via the scale-invariant per-hat closed form;
// hats farther than 6 scales use a two-term multipole tail.
double hat_sum_deriv(const std::vector<ScaledHat>& hats, double x);

// Sup of |(H F)'| over a probe set adapted to the hats plus a uniform grid
// on `region`.
double hat_sum_deriv_sup(const std::vector<ScaledHat>& hats, const Interval& region,
                         int grid_n);

struct LocalReport {
  double delta = 0.0;
  double kappa = 0.0;
  double kappa_eff = 0.0;  // max(kappa, delta): the normalization the proof uses
  double r = 0.0;
  double sup_f = 0.0;      // measured ||f||_inf(I)
  double lr_norm = 0.0;    // measured (int_I |f'|^r)^(1/r)
  PiecewiseFn F;
  std::vector<ScaledHat> hats;  // real-coordinate hats composing F
  IntervalSystem tau;           // normalized system on I*
  bool prop1_support_ok = false;
  bool prop2_majorize_ok = false;
  double majorize_min_gap = 0.0;  // min over I of F - f
  double prop3_deriv_sup = 0.0;
  double prop4_lhs = 0.0;
  double prop4_rhs = 0.0;
};

// The local lemma pipeline: rescale to I* = [-1/2, 1/2] with delta = 1,
// essential system -> tails -> hat sum, rescale back, measure every claimed
// property. Preconditions ||f||_inf(I) <= delta l(I) and
// ||f'||_{L^r(I)} <= kappa l(I)^{1/r} are verified.
LocalReport local_majorant(const PiecewiseFn& f, const Interval& I, double delta,
                           double kappa, double r, const NazarovParams& params = {});

// ||f||_inf(a) / ((int_a f)^(a/2) (int_a |f'|^r)^((1-a/2)/r)) with
// a = (2r-2)/(2r-1); r = inf uses the classical sup-norm form.
double hadamard_landau_ratio(const PiecewiseFn& f, const Interval& a, double r);

// ---- the global lemma --------------------------------------------------------

struct BlockReport {
  int j = 0;
  double delta_j = 0.0;
  double kappa_j = 0.0;
  int tau_size = 0;
  double prop3 = 0.0;
  double prop4_lhs = 0.0;
  double prop4_rhs = 0.0;
};

struct GrowthProbe {
  double x = 0.0;
  double omega_x = 0.0;
  double chain_bound = 0.0;  // three-factor bound mu^(1-a/2) |x| tail^(a/2)
  double eps_ratio = 0.0;    // Omega(x) / (eps |x|)
  bool ok = false;
};

struct GlobalReport {
  double eps = 0.0;
  double r = 0.0;
  double mu = 0.0;     // V_r norm over the window
  double R = 0.0;
  double shift = 0.0;  // max of Omega over B(0, R), added back as a constant
  std::vector<BlockReport> blocks;
  std::vector<GrowthProbe> growth;
  double growth_max_eps_ratio = 0.0;
  bool majorize_ok = false;
  double majorize_min_gap = 0.0;
  double poisson_value = 0.0;  // int Omega_1 dP including the constant shift
  double poisson_of_omega = 0.0;
  double deriv_sup = 0.0;      // measured Lipschitz constant of H Omega_1
};

struct GlobalResult {
  PiecewiseFn omega1_compact;       // sum of the per-block majorants
  double shift = 0.0;               // Omega_1 = omega1_compact + shift
  std::vector<ScaledHat> all_hats;  // for transform evaluations
  GlobalReport report;
};

// Glue the local construction over the dyadic blocks J_j, |j| <= n_window.
GlobalResult global_majorant(const PiecewiseFn& Omega, double r, double eps,
                             double R, int n_window,
                             const NazarovParams& params = {});

// The linear-growth estimate Omega(x) <= C mu^(1-a/2) |x| tail(x)^(a/2)
// behind the uniform per-block delta; reported per probe.
std::vector<GrowthProbe> linear_growth_check(const PiecewiseFn& Omega, double r,
                                             double eps,
                                             const std::vector<double>& probes);

// ---- diagnostics used by reports and tests -----------------------------------

// max over members of (sup_norm(f, a) - l(a)); <= 0 is the ceiling contract.
double ceiling_violation(const PiecewiseFn& f, const IntervalSystem& tau);

// Fraction of grid points x in I* with f(x) > 0 not covered by any member.
double coverage_gap(const PiecewiseFn& f, const IntervalSystem& tau, int grid_n);

}  // namespace bmtk

#endif  // BMTK_NAZAROV_HPP
