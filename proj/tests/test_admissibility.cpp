#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "bmtk/admissibility.hpp"
#include "bmtk/nazarov.hpp"
#include "bmtk/piecewise.hpp"

using namespace bmtk;

namespace {
constexpr double kPi = std::numbers::pi;
// Frozen from the first calibration run of this fixture (grid_n = 2048).
constexpr double kSmoothedTentDerivSup = 16.901410451170;
}  // namespace

TEST_CASE("log_majorant: omega identically 1 gives M identically 0") {
  const Weight w = Weight::from_omega(PiecewiseFn({}, 1));
  CHECK(w.log_majorant().pieces().empty());
  CHECK(w.omega(3.7) == 1.0);
}

TEST_CASE("log_majorant: exp(-tent) round trip") {
  const PiecewiseFn tent = PiecewiseFn::tent(0.0, 1.0, 1.0);
  const Weight w = Weight::from_log_majorant(tent);
  CHECK(w.omega(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(w.omega(5.0) == 1.0);
}

TEST_CASE("log_majorant: RANGE guards") {
  CHECK_THROWS_WITH_AS(Weight::from_omega(PiecewiseFn::box(0.0, 1.0, 0.0, 1)),
                       doctest::Contains("RANGE"), std::runtime_error);
  CHECK_THROWS_WITH_AS(Weight::from_omega(PiecewiseFn::box(0.0, 1.0, 1.5, 1)),
                       doctest::Contains("RANGE"), std::runtime_error);
  const PiecewiseFn neg_m = PiecewiseFn::tent(0.0, 1.0, 1.0).scaled(-1.0);
  CHECK_THROWS_WITH_AS(Weight::from_log_majorant(neg_m), doctest::Contains("RANGE"),
                       std::runtime_error);
}

TEST_CASE("log_majorant: piecewise-constant omega converts exactly") {
  const Weight w = Weight::from_omega(PiecewiseFn::box(0.0, 2.0, std::exp(-3.0), 1));
  CHECK(w.log_majorant().value(1.0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("certify: omega = 1 passes with margin pi sigma") {
  const Weight w = Weight::from_omega(PiecewiseFn({}, 1));
  for (double sigma : {0.1, 1.0, 7.0}) {
    const Certificate c = certify_sigma(w, sigma);
    CHECK(c.verdict == Verdict::pass);
    CHECK(c.deriv_sup == 0.0);
    CHECK(c.margin == doctest::Approx(kPi * sigma).epsilon(1e-15));
  }
}

TEST_CASE("certify: sharp tent fails at every sigma (derivative blows up)") {
  const Weight w = Weight::from_log_majorant(PiecewiseFn::tent(0.0, 1.0, 1.0));
  for (double sigma : {0.5, 5.0, 500.0}) {
    const Certificate c = certify_sigma(w, sigma);
    CHECK(c.verdict == Verdict::fail);
    CHECK(c.deriv_unbounded);
  }
}

TEST_CASE("certify: smoothed tent has the frozen transform derivative") {
  const Weight w = Weight::from_log_majorant(hat_profile());
  const Certificate c = certify_sigma(w, 1.0);
  CHECK(c.deriv_sup == doctest::Approx(kSmoothedTentDerivSup).epsilon(1e-9));
  CHECK_FALSE(c.deriv_unbounded);
  CHECK(c.log_integral == doctest::Approx(1.115758181472).epsilon(1e-9));

  const double threshold_sigma = c.deriv_sup / kPi;
  CHECK(certify_sigma(w, 1.05 * threshold_sigma).verdict == Verdict::pass);
  CHECK(certify_sigma(w, 0.95 * threshold_sigma).verdict == Verdict::fail);
}

TEST_CASE("certificate monotonicity in sigma") {
  const Weight w = Weight::from_log_majorant(hat_profile());
  const double s0 = 1.05 * kSmoothedTentDerivSup / kPi;
  double prev_margin = -std::numeric_limits<double>::infinity();
  for (double mult : {1.0, 2.0, 4.0, 8.0}) {
    const Certificate c = certify_sigma(w, mult * s0);
    CHECK(c.verdict == Verdict::pass);
    CHECK(c.margin > prev_margin);
    prev_margin = c.margin;
  }
}

TEST_CASE("fft: delta, Parseval and inversion") {
  std::vector<std::complex<double>> a(8, {0.0, 0.0});
  a[0] = {1.0, 0.0};
  std::vector<std::complex<double>> b = a;
  fft_radix2(b, false);
  for (const auto& z : b) CHECK(std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-14);

  std::vector<std::complex<double>> sig(16);
  for (size_t k = 0; k < sig.size(); ++k) {
    sig[k] = {std::cos(0.3 * k), std::sin(1.1 * k)};
  }
  std::vector<std::complex<double>> F = sig;
  fft_radix2(F, false);
  double e_time = 0.0, e_freq = 0.0;
  for (const auto& z : sig) e_time += std::norm(z);
  for (const auto& z : F) e_freq += std::norm(z);
  CHECK(e_freq == doctest::Approx(16.0 * e_time).epsilon(1e-12));
  fft_radix2(F, true);
  for (size_t k = 0; k < sig.size(); ++k) CHECK(std::abs(F[k] - sig[k]) < 1e-13);

  std::vector<std::complex<double>> bad(12);
  CHECK_THROWS_AS(fft_radix2(bad, false), std::runtime_error);
}

TEST_CASE("synthesize: pure modulated taper concentrates in band") {
  const Weight w = Weight::from_omega(PiecewiseFn({}, 1));
  const Synthesis s = synthesize_testfn(w, 4.0, 32.0, 1 << 12, +1);
  CHECK(s.report.in_band_energy_fraction >= 0.99);
  CHECK(s.report.modulus_max_err <= 1e-12);
}

TEST_CASE("synthesize: NOT_CERTIFIED on the sharp tent") {
  const Weight w = Weight::from_log_majorant(PiecewiseFn::tent(0.0, 1.0, 1.0));
  CHECK_THROWS_WITH_AS(synthesize_testfn(w, 4.0, 32.0, 1 << 12, 0),
                       doctest::Contains("NOT_CERTIFIED"), std::runtime_error);
}

TEST_CASE("synthesize: smoothed tent at margin factor 4") {
  const Weight w = Weight::from_log_majorant(hat_profile());
  const double sigma = 4.0 * kSmoothedTentDerivSup / kPi;
  const Synthesis s = synthesize_testfn(w, sigma, 64.0, 1 << 14, 0);
  CHECK(s.report.in_band_energy_fraction >= 0.95);
  CHECK(s.report.modulus_max_err <= 1e-12);
  // Deterministic across runs.
  const Synthesis s2 = synthesize_testfn(w, sigma, 64.0, 1 << 14, 0);
  CHECK(s.report.in_band_energy_fraction == s2.report.in_band_energy_fraction);
  CHECK(s.report.sign == s2.report.sign);
  // Empirical Lipschitz check against the bandlimited bound.
  const double bound =
      bandlimited_lipschitz_bound(s.report.sigma_eff_99, s.report.l2_norm);
  CHECK(s.report.lipschitz_max_slope <= 1.1 * bound);
}

TEST_CASE("synthesize: parameter guards") {
  const Weight w = Weight::from_log_majorant(hat_profile());
  CHECK_THROWS_WITH_AS(synthesize_testfn(w, 30.0, 64.0, 1000, 0),
                       doctest::Contains("power of two"), std::runtime_error);
  CHECK_THROWS_WITH_AS(synthesize_testfn(w, 30.0, 1.0, 1 << 10, 0),
                       doctest::Contains("inside [-L/2, L/2]"), std::runtime_error);
}

TEST_CASE("bandlimited_lipschitz_bound values") {
  CHECK(bandlimited_lipschitz_bound(0.0, 5.0) == 0.0);
  CHECK(bandlimited_lipschitz_bound(3.0, 0.0) == 0.0);
  CHECK(bandlimited_lipschitz_bound(1.0, 1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}
