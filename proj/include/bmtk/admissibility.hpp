#ifndef BMTK_ADMISSIBILITY_HPP
#define BMTK_ADMISSIBILITY_HPP

#include <complex>
#include <string>
#include <vector>

#include "bmtk/hilbert.hpp"
#include "bmtk/piecewise.hpp"

namespace bmtk {

// Majorant omega: R -> (0, 1], stored through M = log(1/omega) so the zoo
// families never round-trip exp/log. omega = exp(-M) is the derived view.
class Weight {
 public:
  // M >= 0 piecewise polynomial, default 0 (omega = 1 off the pieces).
  static Weight from_log_majorant(PiecewiseFn M);

  // omega given directly; only piecewise-constant omegas convert exactly.
  // Throws RANGE when omega > 1 or omega touches 0 on positive length.
  static Weight from_omega(const PiecewiseFn& omega);

  const PiecewiseFn& log_majorant() const { return M_; }
  double omega(double x) const { return std::exp(-M_.value(x)); }

 private:
  PiecewiseFn M_;
};

enum class Verdict { pass, fail, log_divergent };

std::string verdict_name(Verdict v);

struct Certificate {
  double sigma = 0.0;
  double log_integral = 0.0;  // int log(1/omega) dP
  double vr_norm = 0.0;
  int vr_block = 0;
  double vr_r = 2.0;
  double deriv_sup = 0.0;  // ||(H log(1/omega))'||_inf estimate
  bool deriv_unbounded = false;
  double threshold = 0.0;  // pi sigma
  Verdict verdict = Verdict::fail;
  double margin = 0.0;  // threshold - deriv_sup
};

// The admissibility criterion: finite logarithmic integral plus
// ||(H log(1/omega))'||_inf < pi sigma.
Certificate certify_sigma(const Weight& w, double sigma, double vr_r = 2.0,
                          int grid_n = 2048);

struct SpectrumReport {
  double L = 0.0;
  int N = 0;
  double band_lo = 0.0;
  double band_hi = 0.0;  // sigma, in cycles per unit length
  double in_band_energy_fraction = 0.0;
  int sign = +1;  // winning phase sign for H M
  std::string window = "raised-cosine outer 10%";
  // Convention, fixed project-wide: fhat(xi) = int f(x) exp(-2 pi i xi x) dx,
  // xi in cycles; spec(f) in [0, sigma] means phase derivative in
  // [0, 2 pi sigma] radians.
  std::string normalization = "fhat(xi) = int f(x) exp(-2*pi*i*xi*x) dx";
  double modulus_max_err = 0.0;  // | |f| - omega*taper | over the grid
  double l2_norm = 0.0;
  double lipschitz_max_slope = 0.0;  // max |d|f||/dx over the grid
  double sigma_eff_99 = 0.0;         // 99%-energy |xi| bandwidth
};

struct Synthesis {
  std::vector<double> x;
  std::vector<std::complex<double>> f;
  SpectrumReport report;
};

// Candidate f(x) = omega(x) exp(i (s H M(x) + pi sigma x)) tapered near the
// domain edges; reports the spectral concentration in [0, sigma].
// sign: +1, -1, or 0 for the automatic trial of both.
Synthesis synthesize_testfn(const Weight& w, double sigma, double L, int N, int sign);

// Lipschitz constant of a [0, sigma]-bandlimited unit: 2 pi sigma^{3/2} ||f||_2.
double bandlimited_lipschitz_bound(double sigma, double l2_norm);

// Power-of-two in-place FFT (exposed for the spectral tests).
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace bmtk

#endif  // BMTK_ADMISSIBILITY_HPP
