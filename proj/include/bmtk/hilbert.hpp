#ifndef BMTK_HILBERT_HPP
#define BMTK_HILBERT_HPP

#include <vector>

#include "bmtk/interval.hpp"
#include "bmtk/piecewise.hpp"

namespace bmtk {

// The transform of f in L^1(dP) is the principal value integral of
// f(t) * (1/(x-t) + t/(1+t^2)) dt. The regularizing term is an x-independent
// constant for compactly supported f. `classical_pv` drops it.
enum class HilbertKernel { modified, classical_pv };

// 1/(x-t) as printed in the definition, or the reflected 1/(t-x) variant
// (global sign flip of the principal-value part).
enum class KernelSign { as_defined, reflected };

enum class HilbertMethod { closed_form, quadrature };

struct HilbertResult {
  double value = 0.0;
  HilbertMethod method = HilbertMethod::closed_form;
  double est_error = 0.0;  // 0 for the closed form
};

// Exact transform of a compactly supported piecewise polynomial at x.
// Breakpoint x: if f is continuous there the removable log cancellation is
// handled by a symmetric perturbation; a genuine jump throws AT_BREAKPOINT.
HilbertResult hilbert_pw(const PiecewiseFn& f, double x,
                         HilbertKernel kernel = HilbertKernel::modified,
                         KernelSign sign = KernelSign::as_defined);

// Independent oracle: symmetric excision around t = x, Richardson
// extrapolation in the excision radius (radii 2^-k * l(supp), k = 4..20).
// Throws NO_CONVERGENCE when the extrapolation stalls (log singularity).
HilbertResult hilbert_quad_oracle(const PiecewiseFn& f, double x, double tol,
                                  HilbertKernel kernel = HilbertKernel::modified);

struct DerivSupResult {
  bool unbounded = false;
  double value = 0.0;   // sup estimate when bounded
  double witness = 0.0; // arg sup, or the diverging breakpoint
};

// Estimate of sup over `region` of |(Hf)'| via the identity
// (Hf)'(x) = pv-int f'(t)/(x-t) dt. Grid of at least grid_n points with
// refinement near breakpoints of f'; a jump of f' is reported as UNBOUNDED
// (a verdict, not an error).
DerivSupResult hilbert_deriv_sup(const PiecewiseFn& f, const Interval& region,
                                 int grid_n);

// Repeated evaluation of pv-int f(t)/(x-t) dt for a fixed f, without
// per-call setup. x landing on a breakpoint is nudged off symmetrically.
class ClassicalPvEvaluator {
 public:
  explicit ClassicalPvEvaluator(PiecewiseFn f);
  double operator()(double x) const;

 private:
  PiecewiseFn f_;
  std::vector<double> breakpoints_;
  double h_ = 0.0;
};

}  // namespace bmtk

#endif  // BMTK_HILBERT_HPP
