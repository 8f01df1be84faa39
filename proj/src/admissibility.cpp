#include "bmtk/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bmtk {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

double taper_at(double x, double L) {
  const double ax = std::fabs(x);
  const double edge = 0.9 * L;
  if (ax <= edge) return 1.0;
  if (ax >= L) return 0.0;
  const double t = (ax - edge) / (0.1 * L);
  return 0.5 * (1.0 + std::cos(kPi * t));
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::log_divergent: return "log_divergent";
  }
  return "?";
}

Weight Weight::from_log_majorant(PiecewiseFn M) {
  if (M.default_value() != 0) {
    throw std::runtime_error("admissibility: log-majorant must default to 0");
  }
  double mn = 0.0, mx = 0.0;
  for (const Piece& pc : M.pieces()) {
    const auto [lo, hi] = min_max(M, pc.iv);
    mn = std::min(mn, lo);
    mx = std::max(mx, hi);
  }
  if (mn < -1e-12 * std::max(1.0, mx)) {
    throw std::runtime_error(
        "admissibility: RANGE: log(1/omega) must be nonnegative (omega <= 1)");
  }
  Weight w;
  w.M_ = std::move(M);
  return w;
}

Weight Weight::from_omega(const PiecewiseFn& omega) {
  if (omega.default_value() != 1) {
    throw std::runtime_error(
        "admissibility: RANGE: omega must default to 1 away from its pieces");
  }
  std::vector<Piece> ps;
  for (const Piece& pc : omega.pieces()) {
    if (pc.poly.degree() > 0) {
      throw std::runtime_error(
          "admissibility: omega with non-constant pieces has no exact "
          "piecewise-polynomial logarithm; supply log(1/omega) directly");
    }
    const double c = pc.poly.is_zero() ? 0.0 : pc.poly.eval(0.0) *
                         (pc.log_scale ? pc.log_scale->to_double() : 1.0);
    if (!(c > 0.0)) {
      throw std::runtime_error(
          "admissibility: RANGE: omega touches 0 on a set of positive length");
    }
    if (c > 1.0 + 1e-15) {
      throw std::runtime_error("admissibility: RANGE: omega must be <= 1");
    }
    const double m = -std::log(c);
    if (m != 0.0) {
      ps.push_back({pc.iv, Poly::constant(m), {}});
    }
  }
  Weight w;
  w.M_ = PiecewiseFn(std::move(ps), 0, omega.declared_continuous());
  return w;
}

Certificate certify_sigma(const Weight& w, double sigma, double vr_r, int grid_n) {
  if (!(sigma > 0.0)) throw std::runtime_error("admissibility: sigma must be > 0");
  const PiecewiseFn& M = w.log_majorant();
  Certificate cert;
  cert.sigma = sigma;
  cert.threshold = kPi * sigma;
  cert.vr_r = vr_r;

  cert.log_integral = poisson_integral(M).value;
  if (!std::isfinite(cert.log_integral)) {
    cert.verdict = Verdict::log_divergent;
    cert.margin = -std::numeric_limits<double>::infinity();
    return cert;
  }

  const auto supp = M.support();
  if (!supp) {  // omega identically 1
    cert.deriv_sup = 0.0;
    cert.vr_norm = 0.0;
    cert.verdict = Verdict::pass;
    cert.margin = cert.threshold;
    return cert;
  }

  int j_hi = 0;
  while (std::ldexp(1.0, j_hi + 1) < std::max(std::fabs(supp->lo), std::fabs(supp->hi)) &&
         j_hi < 60) {
    ++j_hi;
  }
  const VrNorm vn = vr_norm(M, vr_r, -(j_hi + 1), j_hi + 1);
  cert.vr_norm = vn.value;
  cert.vr_block = vn.arg_block;

  const DerivSupResult d = hilbert_deriv_sup(M, supp->dilate(3.0), grid_n);
  cert.deriv_unbounded = d.unbounded;
  cert.deriv_sup = d.value;
  if (d.unbounded) {
    cert.verdict = Verdict::fail;
    cert.margin = -std::numeric_limits<double>::infinity();
    return cert;
  }
  cert.margin = cert.threshold - cert.deriv_sup;
  cert.verdict = cert.margin > 0.0 ? Verdict::pass : Verdict::fail;
  return cert;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::runtime_error("admissibility: fft length must be a power of two");
  }
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& z : a) z /= static_cast<double>(n);
  }
}

Synthesis synthesize_testfn(const Weight& w, double sigma, double L, int N, int sign) {
  if (!is_pow2(N)) throw std::runtime_error("admissibility: N must be a power of two");
  if (!(L > 0.0)) throw std::runtime_error("admissibility: L must be > 0");
  const Certificate cert = certify_sigma(w, sigma);
  if (cert.verdict != Verdict::pass) {
    throw std::runtime_error("admissibility: NOT_CERTIFIED (verdict " +
                             verdict_name(cert.verdict) + ")");
  }
  const PiecewiseFn& M = w.log_majorant();
  if (const auto supp = M.support()) {
    if (supp->lo < -L / 2.0 || supp->hi > L / 2.0) {
      throw std::runtime_error(
          "admissibility: support of log(1/omega) must lie inside [-L/2, L/2]");
    }
  }

  const double dx = 2.0 * L / N;
  std::vector<double> xs(static_cast<size_t>(N));
  std::vector<double> hm(static_cast<size_t>(N));
  std::vector<double> om(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double x = -L + dx * k;
    xs[static_cast<size_t>(k)] = x;
    hm[static_cast<size_t>(k)] = M.pieces().empty() ? 0.0 : hilbert_pw(M, x).value;
    om[static_cast<size_t>(k)] = w.omega(x);
  }

  auto build = [&](int s) {
    std::vector<std::complex<double>> f(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) {
      const double x = xs[static_cast<size_t>(k)];
      const double phase = s * hm[static_cast<size_t>(k)] + kPi * sigma * x;
      const double mag = om[static_cast<size_t>(k)] * taper_at(x, L);
      f[static_cast<size_t>(k)] =
          std::complex<double>(mag * std::cos(phase), mag * std::sin(phase));
    }
    return f;
  };

  auto fraction_of = [&](const std::vector<std::complex<double>>& f, double* total_out,
                         std::vector<double>* power_out) {
    std::vector<std::complex<double>> F = f;
    fft_radix2(F, false);
    double total = 0.0, in_band = 0.0;
    std::vector<double> power(F.size());
    for (size_t m = 0; m < F.size(); ++m) {
      const double p = std::norm(F[m]);
      power[m] = p;
      total += p;
      const double xi = (m <= F.size() / 2)
                            ? static_cast<double>(m) / (2.0 * L)
                            : (static_cast<double>(m) - static_cast<double>(F.size())) /
                                  (2.0 * L);
      if (xi >= 0.0 && xi <= sigma) in_band += p;
    }
    if (total_out) *total_out = total;
    if (power_out) *power_out = std::move(power);
    return total > 0.0 ? in_band / total : 0.0;
  };

  int best_sign = sign == 0 ? +1 : sign;
  std::vector<std::complex<double>> f = build(best_sign);
  double total = 0.0;
  std::vector<double> power;
  double frac = fraction_of(f, &total, &power);
  if (sign == 0) {
    std::vector<std::complex<double>> f2 = build(-1);
    double total2 = 0.0;
    std::vector<double> power2;
    const double frac2 = fraction_of(f2, &total2, &power2);
    if (frac2 > frac) {
      best_sign = -1;
      f = std::move(f2);
      frac = frac2;
      total = total2;
      power = std::move(power2);
    }
  }

  Synthesis out;
  out.x = xs;
  out.f = f;
  SpectrumReport& rep = out.report;
  rep.L = L;
  rep.N = N;
  rep.band_hi = sigma;
  rep.in_band_energy_fraction = frac;
  rep.sign = best_sign;

  double max_err = 0.0, l2sq = 0.0, max_slope = 0.0;
  for (int k = 0; k < N; ++k) {
    const double mag = std::abs(f[static_cast<size_t>(k)]);
    const double want = om[static_cast<size_t>(k)] * taper_at(xs[static_cast<size_t>(k)], L);
    max_err = std::max(max_err, std::fabs(mag - want));
    l2sq += mag * mag * dx;
    if (k > 0) {
      const double prev = std::abs(f[static_cast<size_t>(k - 1)]);
      max_slope = std::max(max_slope, std::fabs(mag - prev) / dx);
    }
  }
  rep.modulus_max_err = max_err;
  rep.l2_norm = std::sqrt(l2sq);
  rep.lipschitz_max_slope = max_slope;

  // 99%-energy bandwidth over |xi|.
  std::vector<std::pair<double, double>> by_freq;  // (|xi|, power)
  by_freq.reserve(power.size());
  for (size_t m = 0; m < power.size(); ++m) {
    const double xi = (m <= power.size() / 2)
                          ? static_cast<double>(m) / (2.0 * L)
                          : (static_cast<double>(m) - static_cast<double>(power.size())) /
                                (2.0 * L);
    by_freq.push_back({std::fabs(xi), power[m]});
  }
  std::sort(by_freq.begin(), by_freq.end());
  double acc = 0.0;
  for (const auto& [axi, p] : by_freq) {
    acc += p;
    if (acc >= 0.99 * total) {
      rep.sigma_eff_99 = axi;
      break;
    }
  }
  return out;
}

double bandlimited_lipschitz_bound(double sigma, double l2_norm) {
  if (sigma < 0.0 || l2_norm < 0.0) {
    throw std::runtime_error("admissibility: sigma and the norm must be >= 0");
  }
  return 2.0 * kPi * std::pow(sigma, 1.5) * l2_norm;
}

}  // namespace bmtk
