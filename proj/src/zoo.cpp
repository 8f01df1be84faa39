#include "bmtk/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bmtk {

namespace {

double atan_diff(double v1, double v2) {
  const double prod = v1 * v2;
  if (prod > -1.0) return std::atan((v2 - v1) / (1.0 + prod));
  return std::atan(v2) - std::atan(v1);
}

double half_log_ratio(double v1, double v2) {
  return 0.5 * std::log1p((v2 - v1) * (v2 + v1) / (1.0 + v1 * v1));
}

double pow2(int n) { return std::ldexp(1.0, n); }

void check_disjoint_hills(const std::vector<Hill>& hills, const char* who) {
  for (size_t i = 0; i + 1 < hills.size(); ++i) {
    // Compare in double view; families whose supports collapse in doubles
    // (prop4 at large n) have centers separated by whole powers of two.
    const double hi = hills[i].hi;
    const double lo = hills[i + 1].lo;
    if (!(hi <= lo)) {
      throw std::runtime_error(std::string(who) + ": OVERLAP between hills n=" +
                               std::to_string(hills[i].n) + " and n=" +
                               std::to_string(hills[i + 1].n));
    }
  }
}

const Hill& hill_for(const MajorantSpec& spec, int n) {
  for (const Hill& h : spec.hills) {
    if (h.n == n) return h;
  }
  throw std::runtime_error("zoo: hill index out of range: n=" + std::to_string(n));
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::thm2: return "thm2";
    case Family::omega_star: return "omega_star";
    case Family::prop4: return "prop4";
    case Family::myau: return "myau";
    case Family::upsilon: return "upsilon";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "thm2") return Family::thm2;
  if (s == "omega_star") return Family::omega_star;
  if (s == "prop4") return Family::prop4;
  if (s == "myau") return Family::myau;
  if (s == "upsilon") return Family::upsilon;
  throw std::runtime_error("zoo: unknown family '" + s + "'");
}

bool MajorantSpec::hill_lowerable(const Hill& h) const {
  return h.lo < h.center && h.center < h.hi;
}

bool MajorantSpec::lowerable() const {
  for (const Hill& h : hills) {
    if (!hill_lowerable(h)) return false;
  }
  return true;
}

PiecewiseFn MajorantSpec::lower() const {
  std::vector<Piece> ps;
  for (const Hill& h : hills) {
    if (!hill_lowerable(h)) {
      throw std::runtime_error(
          "zoo: hill n=" + std::to_string(h.n) +
          " is not representable in doubles (support collapses); use the "
          "analytic log-domain routes");
    }
    const double slope = h.peak / (h.center - h.lo);
    ps.push_back({Interval(h.lo, h.center), Poly::linear(0.0, slope), {}});
    ps.push_back({Interval(h.center, h.hi), Poly::linear(h.peak, -slope), {}});
  }
  return PiecewiseFn(std::move(ps), 0);
}

LogScalar MajorantSpec::vr_block_value_log(int m, double r_exp) const {
  if (family != Family::thm2 && family != Family::prop4 && family != Family::myau) {
    throw std::runtime_error("zoo: vr_block_value_log applies to hills-at-2^n families");
  }
  const Hill& a = hill_for(*this, m);
  const Hill& b = hill_for(*this, m + 1);
  const LogScalar right = a.slope.pow(r_exp).mul(a.half_width);
  const LogScalar left = b.slope.pow(r_exp).mul(b.half_width);
  const LogScalar block_len = LogScalar::from_log(1, m * std::log(2.0));
  return right.add(left).div(block_len).pow(1.0 / r_exp);
}

double MajorantSpec::v1_block_value(int m) const {
  if (family != Family::thm2 && family != Family::prop4 && family != Family::myau) {
    throw std::runtime_error("zoo: v1_block_value applies to hills-at-2^n families");
  }
  const Hill& a = hill_for(*this, m);
  const Hill& b = hill_for(*this, m + 1);
  // int |M'| over a half hill equals the peak; powers of two cancel exactly.
  return a.peak / pow2(m) + b.peak / pow2(m);
}

double MajorantSpec::upsilon_block_value(int m, double r_exp) const {
  if (family != Family::upsilon) {
    throw std::runtime_error("zoo: upsilon_block_value applies to the upsilon family");
  }
  const Hill& h = hill_for(*this, m);
  const double width = h.hi - h.lo;
  const double s = h.slope.to_double();
  return std::pow(std::pow(s, r_exp) * width / pow2(m), 1.0 / r_exp);
}

MajorantSpec omega_thm2(double gamma, int n_min, int n_max) {
  if (!(gamma > 1.0)) throw std::runtime_error("zoo: thm2 requires gamma > 1");
  if (n_min < 3) throw std::runtime_error("zoo: thm2 requires n_min >= 3");
  if (n_min > n_max) throw std::runtime_error("zoo: empty n range");
  MajorantSpec spec;
  spec.family = Family::thm2;
  spec.gamma = gamma;
  spec.n_min = n_min;
  spec.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    Hill h;
    h.n = n;
    h.center = pow2(n);
    h.peak = pow2(n);  // slope * half_width = n^g * 2^n/n^g
    const double hw = pow2(n) / std::pow(n, gamma);
    h.slope = LogScalar::from_double(std::pow(n, gamma));
    h.half_width = LogScalar::from_double(hw);
    h.lo = h.center - hw;
    h.hi = h.center + hw;
    spec.hills.push_back(h);
  }
  check_disjoint_hills(spec.hills, "zoo(thm2)");
  return spec;
}

MajorantSpec omega_star(int n_min, int n_max) {
  if (n_min < 3) throw std::runtime_error("zoo: omega_star requires n_min >= 3");
  if (n_max > 6) throw std::runtime_error("zoo: omega_star requires n_max <= 6");
  if (n_min > n_max) throw std::runtime_error("zoo: empty n range");
  MajorantSpec spec;
  spec.family = Family::omega_star;
  spec.n_min = n_min;
  spec.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    Hill h;
    h.n = n;
    h.lo = pow2(1 << n);        // 2^(2^n)
    h.hi = pow2(1 << (n + 1));  // 2^(2^(n+1))
    h.center = 0.5 * (h.lo + h.hi);
    const double hw = 0.5 * (h.hi - h.lo);
    h.slope = LogScalar::from_double(static_cast<double>(n) * n);
    h.half_width = LogScalar::from_double(hw);
    h.peak = static_cast<double>(n) * n * hw;
    spec.hills.push_back(h);
  }
  check_disjoint_hills(spec.hills, "zoo(omega_star)");
  return spec;
}

MajorantSpec omega_prop4(int n_min, int n_max) {
  if (n_min < 1) throw std::runtime_error("zoo: prop4 requires n_min >= 1");
  if (n_min > n_max) throw std::runtime_error("zoo: empty n range");
  MajorantSpec spec;
  spec.family = Family::prop4;
  spec.n_min = n_min;
  spec.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    Hill h;
    h.n = n;
    h.center = pow2(n);
    h.peak = pow2(n);  // e^(2^n) * 2^n e^(-2^n), cancelled symbolically
    h.slope = LogScalar::from_log(1, pow2(n));
    h.half_width = LogScalar::from_log(1, n * std::log(2.0) - pow2(n));
    const double hw = h.half_width.to_double();
    h.lo = h.center - hw;
    h.hi = h.center + hw;
    spec.hills.push_back(h);
  }
  check_disjoint_hills(spec.hills, "zoo(prop4)");
  return spec;
}

MajorantSpec omega_myau(double r, int n_min, int n_max) {
  if (!(r > 1.0)) throw std::runtime_error("zoo: myau requires r > 1");
  if (n_min < 2) throw std::runtime_error("zoo: myau requires n_min >= 2");
  if (n_min > n_max) throw std::runtime_error("zoo: empty n range");
  MajorantSpec spec;
  spec.family = Family::myau;
  spec.r = r;
  spec.rho = r / (2.0 * r - 2.0);
  spec.n_min = n_min;
  spec.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    Hill h;
    h.n = n;
    h.center = pow2(n);
    h.peak = pow2(n) / std::sqrt(static_cast<double>(n));
    const double hw = pow2(n) / std::pow(n, spec.rho);
    h.slope = LogScalar::from_double(std::pow(n, spec.rho - 0.5));
    h.half_width = LogScalar::from_double(hw);
    h.lo = h.center - hw;
    h.hi = h.center + hw;
    spec.hills.push_back(h);
  }
  check_disjoint_hills(spec.hills, "zoo(myau)");
  return spec;
}

MajorantSpec upsilon_prop35(double alpha, double beta, int n_min, int n_max) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw std::runtime_error("zoo: PARAM: upsilon requires alpha in (0, 1/2]");
  }
  if (!(beta > 0.0) || !(alpha + beta > 1.0)) {
    throw std::runtime_error("zoo: PARAM: upsilon requires beta > 0 and alpha + beta > 1");
  }
  if (n_min < 3) throw std::runtime_error("zoo: upsilon requires n_min >= 3");
  if (n_min > n_max) throw std::runtime_error("zoo: empty n range");
  MajorantSpec spec;
  spec.family = Family::upsilon;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.n_min = n_min;
  spec.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    Hill h;
    h.n = n;
    h.lo = pow2(n);
    const double width = pow2(n) / std::pow(n, beta);
    h.hi = h.lo + width;
    h.center = h.lo + 0.5 * width;
    h.slope = LogScalar::from_double(std::pow(n, beta - alpha));
    h.half_width = LogScalar::from_double(0.5 * width);
    h.peak = std::pow(n, beta - alpha) * 0.5 * width;
    spec.hills.push_back(h);
  }
  check_disjoint_hills(spec.hills, "zoo(upsilon)");
  return spec;
}

HillPoisson hill_poisson(const MajorantSpec& spec, int n) {
  const Hill& h = hill_for(spec, n);
  HillPoisson out;
  // Bracket: tent area times Poisson weight extremes over the support.
  const LogScalar area = h.half_width.mul(LogScalar::from_double(h.peak));
  const double far = std::max(std::fabs(h.lo), std::fabs(h.hi));
  const double near = std::min(std::fabs(h.lo), std::fabs(h.hi));
  out.lower = area.mul(LogScalar::from_double(1.0 / (1.0 + far * far))).to_double();
  out.upper = area.mul(LogScalar::from_double(1.0 / (1.0 + near * near))).to_double();
  if (spec.hill_lowerable(h)) {
    MajorantSpec one = spec;
    one.hills.assign(1, h);
    out.value = poisson_integral(one.lower()).value;
  } else {
    // Width is far below the weight's variation scale; the bracket collapses.
    out.value = area.mul(LogScalar::from_double(
                             1.0 / (1.0 + h.center * h.center))).to_double();
  }
  return out;
}

PoissonSumReport poisson_log_integral(const MajorantSpec& spec) {
  PoissonSumReport rep;
  double total = 0.0;
  std::vector<double> increments;
  for (int n = spec.n_min; n <= spec.n_max; ++n) {
    const double v = hill_poisson(spec, n).value;
    total += v;
    increments.push_back(v);
    rep.partial_sums.push_back(total);
  }
  rep.total = total;
  rep.increments_decreasing = true;
  for (size_t i = increments.size() / 2; i + 1 < increments.size(); ++i) {
    if (increments[i + 1] > increments[i]) rep.increments_decreasing = false;
  }
  // Monotone growth across 3 consecutive doubling scales signals divergence.
  rep.divergent = false;
  const size_t k = rep.partial_sums.size();
  if (k >= 5) {
    const double s4 = rep.partial_sums[k - 1];
    const double s2 = rep.partial_sums[k / 2];
    const double s1 = rep.partial_sums[k / 4];
    rep.divergent = (s2 - s1) > 0.0 && (s4 - s2) >= (s2 - s1);
  }
  return rep;
}

std::vector<IterationState> borichev_iterate(double gamma, double C, double alpha_B,
                                             int m_max, int n_min, int n_max) {
  if (!(gamma > 1.0)) throw std::runtime_error("borichev: gamma must be > 1");
  if (!(C > 0.0 && C < 1.0)) throw std::runtime_error("borichev: C must lie in (0,1)");
  if (!(alpha_B > 0.0 && alpha_B < 0.5)) {
    throw std::runtime_error("borichev: alpha must lie in (0, 1/2)");
  }
  if (m_max < 0 || n_min < 3 || n_min > n_max) {
    throw std::runtime_error("borichev: bad ranges");
  }

  std::vector<IterationState> out;
  const double ln2 = std::log(2.0);
  for (int n = n_min; n <= n_max; ++n) {
    const double X = std::ldexp(1.0, n);
    double len = 2.0 * X / std::pow(n, gamma);
    double hslope = std::pow(n, gamma);
    LogScalar bound = LogScalar::from_log(-1, n * ln2);  // -2^n at m=0
    double e = gamma;
    for (int m = 0; m <= m_max; ++m) {
      IterationState st;
      st.n = n;
      st.m = m;
      st.e_m = e;
      st.interval = Interval(X - 0.5 * len, X + 0.5 * len);
      st.log_bound = bound;
      st.len_factor = len / (std::pow(n, -e) * X);
      out.push_back(st);
      // Next generation: smallness e^{-C h |I|} on (h^alpha / 2) I.
      const double next_bound = C * hslope * len;
      len *= 0.5 * std::pow(hslope, alpha_B);
      hslope = next_bound / len;
      bound = bound.mul(LogScalar::from_double(C));  // idealized -C^m 2^n
      e *= 1.0 - alpha_B;
    }
  }

  // Disjointness within each generation.
  for (int m = 0; m <= m_max; ++m) {
    const IterationState* prev = nullptr;
    for (const IterationState& st : out) {
      if (st.m != m) continue;
      if (prev && !(prev->interval.hi < st.interval.lo)) {
        throw std::runtime_error(
            "borichev: DISJOINTNESS_FAIL at m=" + std::to_string(m) + " between n=" +
            std::to_string(prev->n) + " and n=" + std::to_string(st.n));
      }
      prev = &st;
    }
  }
  return out;
}

double p_series_partial(double exponent, long n_lo, long n_cap) {
  double s = 0.0;
  for (long n = n_lo; n <= n_cap; ++n) {
    s += std::pow(static_cast<double>(n), -exponent);
  }
  return s;
}

double log_integral_divergence(const std::vector<IterationState>& generation,
                               long n_cap) {
  if (generation.empty()) throw std::runtime_error("borichev: empty generation");
  const int m = generation.front().m;
  const double e = generation.front().e_m;
  double c_min = std::numeric_limits<double>::infinity();
  for (const IterationState& st : generation) {
    if (st.m != m) throw std::runtime_error("borichev: mixed generations");
    // Exact per-n term: C^m 2^n * dP-measure of the interval.
    const double weight = std::exp(st.log_bound.log_mag);  // C^m 2^n
    const double term = weight * atan_diff(st.interval.lo, st.interval.hi);
    c_min = std::min(c_min, term / std::pow(static_cast<double>(st.n), -e));
  }
  return c_min * p_series_partial(e, 3, n_cap);
}

double energy_lower(const MajorantSpec& spec, long N) {
  if (spec.family != Family::upsilon) {
    throw std::runtime_error("zoo: energy_lower takes an upsilon spec");
  }
  return p_series_partial(2.0 * spec.alpha, 3, N);
}

double energy_block_quadrature(const MajorantSpec& spec, int n, int grid) {
  const Hill& h = hill_for(spec, n);
  const double slope = h.slope.to_double();
  auto upsilon = [&](double x) {
    if (x <= h.lo || x >= h.hi) return 0.0;
    return slope * std::min(x - h.lo, h.hi - x);
  };
  auto K = [&](double x) { return upsilon(x) / x; };
  auto Kprime = [&](double x) {
    const double up = x < h.center ? slope : -slope;
    return (up * x - upsilon(x)) / (x * x);
  };
  const double w = h.hi - h.lo;
  const double step = w / grid;
  double acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = h.lo + (i + 0.5) * step;
    for (int j = 0; j < grid; ++j) {
      const double y = h.lo + (j + 0.5) * step;
      double q;
      if (i == j) {
        q = Kprime(x);
      } else {
        q = (K(x) - K(y)) / (x - y);
      }
      acc += q * q;
    }
  }
  return acc * step * step;
}

double lipschitz_obstruction_term(double C0, long n) {
  const double u = 1.0 / (std::sqrt(static_cast<double>(n)) * C0);
  if (n <= 250) {
    const double X = std::ldexp(1.0, static_cast<int>(n));
    const double h = X / std::sqrt(static_cast<double>(n));
    const double a = h / C0;
    return (h + C0 * X) * atan_diff(X, X + a) - C0 * half_log_ratio(X, X + a);
  }
  // X^-2 is far below double resolution: exact-to-double asymptotic form.
  return 1.0 / (static_cast<double>(n) * C0 * (1.0 + u)) +
         C0 * (u / (1.0 + u) - std::log1p(u));
}

double lipschitz_obstruction(double C0, long N) {
  if (!(C0 > 0.0) || N < 1) throw std::runtime_error("zoo: bad obstruction params");
  long n0 = 1;
  while (std::sqrt(static_cast<double>(n0)) * C0 <= 1.0) ++n0;  // a_n < 2^n
  double s = 0.0;
  for (long n = n0; n <= N; ++n) s += lipschitz_obstruction_term(C0, n);
  return s;
}

double bm_density_constant() { return 0.0; }

}  // namespace bmtk
