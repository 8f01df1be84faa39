#include "bmtk/nazarov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bmtk/hilbert.hpp"

namespace bmtk {

namespace {

double key_point(const Interval& base, int depth, int64_t offset) {
  return base.lo + std::ldexp(static_cast<double>(offset), -depth) * base.length();
}

Interval key_interval(const Interval& base, const DyadicKey& k) {
  return Interval(key_point(base, k.depth, k.offset),
                  key_point(base, k.depth, k.offset + 1));
}

// Ticks of a member at a common scale S >= depth.
struct Ticks {
  int64_t start = 0;
  int64_t end = 0;
};

Ticks ticks_at(const DyadicKey& k, int S) {
  const int shift = S - k.depth;
  return {k.offset << shift, (k.offset + 1) << shift};
}

struct DescendCtx {
  const PiecewiseFn* f;
  const Interval* base;
  const NazarovParams* params;
  std::vector<SystemMember>* out;
};

void descend(const DescendCtx& ctx, int depth, int64_t offset) {
  const Interval iv = key_interval(*ctx.base, {depth, offset});
  const double sup = sup_norm(*ctx.f, iv);
  if (sup <= 0.0) return;
  const double len = iv.length();
  if (sup >= 0.5 * len || depth >= ctx.params->max_depth ||
      sup < ctx.params->promote_ratio * len) {
    SystemMember m;
    m.key = {depth, offset};
    m.iv = iv;
    m.kind = MemberKind::essential_maximal;
    m.parent = -1;
    m.generation = 0;
    ctx.out->push_back(m);
    return;
  }
  descend(ctx, depth + 1, 2 * offset);
  descend(ctx, depth + 1, 2 * offset + 1);
}

// Laminar maximalization: keep members not contained in any other. All
// members are dyadic on the common grid, so overlap implies containment.
std::vector<SystemMember> maximalize(std::vector<SystemMember> cands) {
  int S = 0;
  for (const SystemMember& m : cands) S = std::max(S, m.key.depth);
  std::stable_sort(cands.begin(), cands.end(),
                   [&](const SystemMember& a, const SystemMember& b) {
                     const Ticks ta = ticks_at(a.key, S);
                     const Ticks tb = ticks_at(b.key, S);
                     if (ta.start != tb.start) return ta.start < tb.start;
                     if (ta.end != tb.end) return ta.end > tb.end;
                     return a.kind == MemberKind::essential_maximal &&
                            b.kind != MemberKind::essential_maximal;
                   });
  std::vector<SystemMember> kept;
  int64_t max_end = std::numeric_limits<int64_t>::min();
  for (SystemMember& m : cands) {
    const Ticks t = ticks_at(m.key, S);
    if (t.end > max_end) {
      kept.push_back(std::move(m));
      max_end = t.end;
    }
  }
  return kept;
}

struct PairRule {
  bool is_neighbor = false;
  int64_t required = 0;  // ticks at scale S+1; 0 when no constraint applies
};

// Neighborhood and separation rule for the ordered pair (a, b), exact ticks.
// d(a, b) < 2 l(a) with length ratio in [1/2, 2] makes b a neighbor of a
// (strict inequality: the bound #N(a) <= 9 is exactly attained by the tail
// runs and fails for boundary-inclusive distances).
PairRule pair_rule(const SystemMember& a, const SystemMember& b, int S1) {
  const Ticks ta = ticks_at(a.key, S1);
  const Ticks tb = ticks_at(b.key, S1);
  const int64_t la = ta.end - ta.start;
  const int64_t lb = tb.end - tb.start;
  const int64_t gap = std::max<int64_t>(0, std::max(tb.start - ta.end, ta.start - tb.end));
  PairRule rule;
  if (2 * la >= lb && 2 * lb >= la && gap < 2 * la) {
    rule.is_neighbor = true;
    return rule;
  }
  if (lb <= 2 * la) {
    rule.required = la / 2;
  } else {
    const int k = a.key.depth - b.key.depth;  // l(b) = 2^k l(a), k >= 2 here
    double req = 2.0 * std::pow(3.0, k - 2) * static_cast<double>(la);
    rule.required = req > 4.6e18 ? std::numeric_limits<int64_t>::max()
                                 : static_cast<int64_t>(req);
  }
  return rule;
}

int64_t dilate_gap(const SystemMember& a, const SystemMember& b, int S1) {
  const Ticks ta = ticks_at(a.key, S1);
  const Ticks tb = ticks_at(b.key, S1);
  const int64_t ha = (ta.end - ta.start) / 2;
  const int64_t hb = (tb.end - tb.start) / 2;
  const int64_t a_lo = ta.start - ha, a_hi = ta.end + ha;
  const int64_t b_lo = tb.start - hb, b_hi = tb.end + hb;
  return std::max<int64_t>(0, std::max(b_lo - a_hi, a_lo - b_hi));
}

void refresh_real(const Interval& base, std::vector<SystemMember>& members) {
  for (SystemMember& m : members) m.iv = key_interval(base, m.key);
}

}  // namespace

Interval IntervalSystem::real_interval(const DyadicKey& k) const {
  return key_interval(base, k);
}

IntervalSystem essential_maximal(const PiecewiseFn& f, const Interval& I_star,
                                 const NazarovParams& params) {
  const double l = I_star.length();
  const double sup = sup_norm(f, I_star);
  if (sup > l * (1.0 + 1e-9)) {
    throw std::runtime_error(
        "nazarov: PRECONDITION_VIOLATED: ||f||_inf(I*) = " + std::to_string(sup) +
        " exceeds l(I*) = " + std::to_string(l));
  }
  const auto [mn, mx] = min_max(f, I_star);
  if (mn < -1e-12 * std::max(1.0, mx)) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: f must be nonnegative");
  }
  IntervalSystem sys;
  sys.base = I_star;
  sys.max_depth = params.max_depth;
  DescendCtx ctx{&f, &I_star, &params, &sys.members};
  descend(ctx, 0, 0);
  return sys;
}

IntervalSystem attach_tails(const IntervalSystem& am, const NazarovParams& params) {
  std::vector<SystemMember> cands;
  int ess_idx = 0;
  for (const SystemMember& ess : am.members) {
    SystemMember e = ess;
    e.parent = ess_idx;
    cands.push_back(e);

    const int d = ess.key.depth;
    int64_t right = ess.key.offset + 1;  // tick just past c at scale d
    int64_t left = ess.key.offset;
    bool right_open = true, left_open = true;
    int64_t pow3 = 1;
    for (int p = 1; p <= params.tail_generations && (right_open || left_open); ++p) {
      const int s = d + p;
      // Length floor: no tail members below l(I*) 2^-max_depth.
      if (s > params.max_depth) break;
      pow3 *= 3;
      const int64_t n_right = (pow3 + 1) / 2;
      const int64_t n_left = pow3 / 2;
      right <<= 1;
      left <<= 1;
      const int64_t limit = int64_t(1) << s;
      if (right_open) {
        for (int64_t i = 0; i < n_right; ++i) {
          if (right >= limit) {
            right_open = false;
            break;
          }
          SystemMember m;
          m.key = {s, right};
          m.kind = MemberKind::tail;
          m.parent = ess_idx;
          m.generation = p;
          cands.push_back(m);
          ++right;
        }
      }
      if (left_open) {
        for (int64_t i = 0; i < n_left; ++i) {
          if (left <= 0) {
            left_open = false;
            break;
          }
          SystemMember m;
          m.key = {s, left - 1};
          m.kind = MemberKind::tail;
          m.parent = ess_idx;
          m.generation = p;
          cands.push_back(m);
          --left;
        }
      }
    }
    ++ess_idx;
  }

  std::vector<SystemMember> kept = maximalize(std::move(cands));

  // Enforcement sweep: any surviving pair violating the dilate separation
  // marks the infinite tail's absorption that the generation cap skipped;
  // promote the smaller member one dyadic level and re-maximalize.
  for (int pass = 0; pass < 256; ++pass) {
    int S = 0;
    for (const SystemMember& m : kept) S = std::max(S, m.key.depth);
    const int S1 = S + 1;
    bool changed = false;
    std::vector<char> promote(kept.size(), 0);
    for (size_t i = 0; i < kept.size(); ++i) {
      for (size_t j = 0; j < kept.size(); ++j) {
        if (i == j) continue;
        const SystemMember& a = kept[i];
        const SystemMember& b = kept[j];
        if (a.key.depth < b.key.depth) continue;  // handle from the small side
        const PairRule rule = pair_rule(a, b, S1);
        if (rule.is_neighbor || rule.required == 0) continue;
        if (dilate_gap(a, b, S1) < rule.required) {
          promote[i] = 1;
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
    for (size_t i = 0; i < kept.size(); ++i) {
      if (promote[i] && kept[i].key.depth > 0) {
        kept[i].key.depth -= 1;
        kept[i].key.offset >>= 1;
      }
    }
    kept = maximalize(std::move(kept));
  }

  IntervalSystem tau;
  tau.base = am.base;
  tau.max_depth = am.max_depth;
  tau.members = std::move(kept);
  refresh_real(tau.base, tau.members);
  return tau;
}

SeparationReport system_report(const IntervalSystem& tau) {
  SeparationReport rep;
  const auto& ms = tau.members;
  if (ms.empty()) {
    rep.max_multiplicity = 0;
    return rep;
  }
  int S = 0;
  for (const SystemMember& m : ms) S = std::max(S, m.key.depth);
  const int S1 = S + 1;

  double worst_slack = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ms.size(); ++i) {
    int count = 0;
    for (size_t j = 0; j < ms.size(); ++j) {
      const PairRule rule = pair_rule(ms[i], ms[j], S1);
      if (i == j) {
        ++count;  // a is in its own neighborhood
        continue;
      }
      if (rule.is_neighbor) {
        ++count;
        continue;
      }
      if (rule.required == 0) continue;
      const int64_t gap = dilate_gap(ms[i], ms[j], S1);
      const double slack = static_cast<double>(gap) - static_cast<double>(rule.required);
      if (slack < worst_slack) {
        worst_slack = slack;
        rep.worst_pair = {static_cast<int>(i), static_cast<int>(j),
                          static_cast<double>(rule.required), static_cast<double>(gap)};
      }
      if (gap < rule.required) {
        rep.separation_ok = false;
        if (rep.violations.size() < 32) {
          rep.violations.push_back({static_cast<int>(i), static_cast<int>(j),
                                    static_cast<double>(rule.required),
                                    static_cast<double>(gap)});
        }
      }
    }
    if (count > rep.max_neighbors) {
      rep.max_neighbors = count;
      rep.neighbors_witness = static_cast<int>(i);
    }
  }
  rep.neighbors_ok = rep.max_neighbors <= 9;

  // Multiplicity of the doubled system via an exact sweep.
  std::vector<std::pair<int64_t, int>> events;
  events.reserve(2 * ms.size());
  for (const SystemMember& m : ms) {
    const Ticks t = ticks_at(m.key, S1);
    const int64_t h = (t.end - t.start) / 2;
    events.push_back({t.start - h, +1});
    events.push_back({t.end + h, -1});
  }
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second > b.second;  // opens before closes: closed dilates
            });
  int cur = 0;
  for (const auto& [tick, delta] : events) {
    cur += delta;
    rep.max_multiplicity = std::max(rep.max_multiplicity, cur);
  }
  rep.multiplicity_ok = rep.max_multiplicity <= 9;
  return rep;
}

// ---- hats --------------------------------------------------------------------

namespace {

// Quintic smoothstep ramp s(4u) on [0, 1/4]: exact integer coefficients.
Poly ramp_up_poly() { return Poly(std::vector<double>{0, 0, 0, 640, -3840, 6144}); }

PiecewiseFn make_hat_profile() {
  std::vector<Piece> ps;
  ps.push_back({Interval(-0.75, -0.5), ramp_up_poly(), {}});
  ps.push_back({Interval(-0.5, 0.5), Poly::constant(1.0), {}});
  Poly down = ramp_up_poly().scaled(-1.0);
  down.c[0] += 1.0;  // 1 - s(4u)
  ps.push_back({Interval(0.5, 0.75), down, {}});
  return PiecewiseFn(std::move(ps), 0);
}

// phi moments for the far-field expansion of (H phi_a)'.
struct PhiMoments {
  double m0;
  double m2;
  double m4;
};

PhiMoments phi_moments() {
  static const PhiMoments m = [] {
    const PiecewiseFn& phi = hat_profile();
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (const Piece& pc : phi.pieces()) {
      const Poly t2 = Poly(std::vector<double>{pc.iv.lo, 1.0})
                          .times(Poly(std::vector<double>{pc.iv.lo, 1.0}));
      m0 += pc.poly.antiderivative().eval(pc.iv.length());
      m2 += pc.poly.times(t2).antiderivative().eval(pc.iv.length());
      m4 += pc.poly.times(t2).times(t2).antiderivative().eval(pc.iv.length());
    }
    return PhiMoments{m0, m2, m4};
  }();
  return m;
}

const ClassicalPvEvaluator& hat_deriv_transform() {
  static const ClassicalPvEvaluator ev(hat_profile().derivative());
  return ev;
}

}  // namespace

const PiecewiseFn& hat_profile() {
  static const PiecewiseFn phi = make_hat_profile();
  return phi;
}

PiecewiseFn hats_to_piecewise(const std::vector<ScaledHat>& hats) {
  struct Seg {
    double lo, hi;
    Poly poly;  // local to lo
  };
  std::vector<Seg> segs;
  segs.reserve(3 * hats.size());
  for (const ScaledHat& h : hats) {
    for (const Piece& pc : hat_profile().pieces()) {
      Seg s;
      s.lo = h.center + h.scale * pc.iv.lo;
      s.hi = h.center + h.scale * pc.iv.hi;
      s.poly = pc.poly.stretched(1.0 / h.scale).scaled(h.amplitude);
      segs.push_back(std::move(s));
    }
  }
  if (segs.empty()) return PiecewiseFn::zero();

  std::vector<double> cuts;
  cuts.reserve(2 * segs.size());
  for (const Seg& s : segs) {
    cuts.push_back(s.lo);
    cuts.push_back(s.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::sort(segs.begin(), segs.end(),
            [](const Seg& a, const Seg& b) { return a.lo < b.lo; });

  std::vector<Piece> ps;
  size_t next_seg = 0;
  std::vector<const Seg*> active;
  std::vector<const Seg*> keep;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double x1 = cuts[i];
    const double x2 = cuts[i + 1];
    while (next_seg < segs.size() && segs[next_seg].lo <= x1) {
      active.push_back(&segs[next_seg]);
      ++next_seg;
    }
    keep.clear();
    Poly sum;
    bool any = false;
    for (const Seg* s : active) {
      if (s->hi <= x1) continue;  // expired
      keep.push_back(s);
      if (s->lo < x2 && s->hi > x1) {
        sum = sum.plus(s->poly.shifted(x1 - s->lo));
        any = true;
      }
    }
    active.swap(keep);
    if (!any || sum.is_zero()) continue;
    ps.push_back({Interval(x1, x2), std::move(sum), {}});
  }
  return PiecewiseFn(std::move(ps), 0);
}

PiecewiseFn hat_majorant(const IntervalSystem& tau) {
  std::vector<ScaledHat> hats;
  hats.reserve(tau.members.size());
  for (const SystemMember& m : tau.members) {
    hats.push_back({m.iv.center(), m.iv.length(), m.iv.length()});
  }
  return hats_to_piecewise(hats);
}

double hat_sum_deriv(const std::vector<ScaledHat>& hats, double x) {
  const PhiMoments mom = phi_moments();
  const auto& ev = hat_deriv_transform();
  double total = 0.0;
  for (const ScaledHat& h : hats) {
    const double d = x - h.center;
    if (std::fabs(d) <= 8.0 * h.scale) {
      total += (h.amplitude / h.scale) * ev(d / h.scale);
    } else {
      // Three-term multipole; relative error below 1e-6 past 8 scales.
      const double l2 = h.scale * h.scale;
      const double q = l2 / (d * d);
      total -= h.amplitude * h.scale *
               (mom.m0 + (3.0 * mom.m2 + 5.0 * mom.m4 * q) * q) * q / l2;
    }
  }
  return total;
}

double hat_sum_deriv_sup(const std::vector<ScaledHat>& hats, const Interval& region,
                         int grid_n) {
  if (hats.empty()) return 0.0;
  std::vector<double> xs;
  xs.reserve(static_cast<size_t>(grid_n) + 14 * hats.size() + 1);
  for (int i = 0; i <= grid_n; ++i) {
    xs.push_back(region.lo + region.length() * i / grid_n);
  }
  static const double offs[] = {0.0,  0.3,  -0.3, 0.55,  -0.55, 0.72, -0.72,
                                0.95, -0.95, 1.3,  -1.3,  1.9,  -1.9, 2.8};
  for (const ScaledHat& h : hats) {
    for (double o : offs) xs.push_back(h.center + o * h.scale);
  }
  double sup = 0.0;
  for (double x : xs) {
    if (x < region.lo || x > region.hi) continue;
    sup = std::max(sup, std::fabs(hat_sum_deriv(hats, x)));
  }
  return sup;
}

// ---- local lemma ---------------------------------------------------------------

LocalReport local_majorant(const PiecewiseFn& f, const Interval& I, double delta,
                           double kappa, double r, const NazarovParams& params) {
  if (!(delta > 0.0) || !(kappa > 0.0)) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: delta, kappa must be > 0");
  }
  if (!(r > 1.0)) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: r must be > 1");
  }
  const double l = I.length();
  const double c = I.center();

  LocalReport rep;
  rep.delta = delta;
  rep.kappa = kappa;
  rep.r = r;
  rep.sup_f = sup_norm(f, I);
  rep.lr_norm = lr_norm_of_derivative(f, I, r);
  if (rep.sup_f > delta * l * (1.0 + 1e-9)) {
    throw std::runtime_error(
        "nazarov: PRECONDITION_VIOLATED: ||f||_inf(I) = " + std::to_string(rep.sup_f) +
        " > delta l(I) = " + std::to_string(delta * l));
  }
  const double kappa_budget =
      std::isinf(r) ? kappa : kappa * std::pow(l, 1.0 / r);
  if (rep.lr_norm > kappa_budget * (1.0 + 1e-9)) {
    throw std::runtime_error(
        "nazarov: PRECONDITION_VIOLATED: ||f'||_{L^r(I)} = " + std::to_string(rep.lr_norm) +
        " > kappa l^{1/r} = " + std::to_string(kappa_budget));
  }
  rep.kappa_eff = std::max(kappa, delta);

  // Reduction to I* = [-1/2, 1/2] with delta = 1.
  const Interval I_star(-0.5, 0.5);
  const PiecewiseFn f_norm = f.restricted(I).rescaled(-c / l, 1.0 / l, 1.0 / (delta * l));

  IntervalSystem am = essential_maximal(f_norm, I_star, params);
  rep.tau = attach_tails(am, params);

  // Real-coordinate hats: center c + l c~, scale l l~, amplitude delta l l~.
  rep.hats.reserve(rep.tau.members.size());
  for (const SystemMember& m : rep.tau.members) {
    const double sc = l * m.iv.length();
    rep.hats.push_back({c + l * m.iv.center(), sc, delta * sc});
  }
  rep.F = hats_to_piecewise(rep.hats);

  // (1) support in 1.5I, exact from the hat extents.
  const Interval I15 = I.dilate(1.5);
  bool support_ok = true;
  for (const ScaledHat& h : rep.hats) {
    if (h.center - 0.75 * h.scale < I15.lo - 1e-12 * l ||
        h.center + 0.75 * h.scale > I15.hi + 1e-12 * l) {
      support_ok = false;
    }
  }
  rep.prop1_support_ok = support_ok;

  // (2) pointwise majorization on I, exact piecewise minimum of F - f.
  const PiecewiseFn diff = PiecewiseFn::sum(rep.F, f.restricted(I).scaled(-1.0));
  rep.majorize_min_gap = min_max(diff, I).first;
  rep.prop2_majorize_ok = rep.majorize_min_gap >= -1e-9 * delta * l;

  // (3) sup of |(H F)'| over 3I.
  rep.prop3_deriv_sup = hat_sum_deriv_sup(rep.hats, I.dilate(3.0), params.grid_n);

  // (4) both sides of the integral estimate.
  const double p_lhs = std::isinf(r) ? 1.0 : 2.0 * r / (2.0 * r - 1.0);
  const double p_rhs = std::isinf(r) ? 1.0 : (2.0 * r - 2.0) / (2.0 * r - 1.0);
  double intF = 0.0;
  for (const ScaledHat& h : rep.hats) {
    intF += h.amplitude * h.scale * phi_moments().m0;
  }
  rep.prop4_lhs = std::pow(delta / rep.kappa_eff, p_lhs) * intF;
  rep.prop4_rhs = std::pow(integrate(f, I), p_rhs);
  return rep;
}

double hadamard_landau_ratio(const PiecewiseFn& f, const Interval& a, double r) {
  const double sup = sup_norm(f, a);
  if (sup == 0.0) return 0.0;  // f identically zero on a, by convention
  if (sup > a.length() * (1.0 + 1e-9)) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: ||f||_inf(a) > l(a)");
  }
  const double mass = integrate(f, a);
  if (!(mass > 0.0)) {
    throw std::runtime_error("nazarov: ZERO_INTEGRAL: positive sup with zero mass");
  }
  const double alpha = std::isinf(r) ? 1.0 : (2.0 * r - 2.0) / (2.0 * r - 1.0);
  double deriv_factor;
  if (std::isinf(r)) {
    deriv_factor = std::sqrt(lr_norm_of_derivative(f, a, r));
  } else {
    deriv_factor = std::pow(lr_power_integral(f.derivative(), a, r),
                            (1.0 - alpha / 2.0) / r);
  }
  return sup / (std::pow(mass, alpha / 2.0) * deriv_factor);
}

// ---- global lemma --------------------------------------------------------------

std::vector<GrowthProbe> linear_growth_check(const PiecewiseFn& Omega, double r,
                                             double eps,
                                             const std::vector<double>& probes) {
  const double alpha = std::isinf(r) ? 1.0 : (2.0 * r - 2.0) / (2.0 * r - 1.0);
  const double p_deriv = (1.0 - alpha / 2.0);
  std::vector<GrowthProbe> out;
  const auto supp = Omega.support();
  const double supp_hi = supp ? supp->hi : 1.0;
  for (double x : probes) {
    GrowthProbe g;
    g.x = x;
    g.omega_x = Omega.value(x);
    const double ax = std::fabs(x);
    if (!(ax > 0.0)) {
      g.eps_ratio = 0.0;
      g.ok = g.omega_x <= 0.0;
      out.push_back(g);
      continue;
    }
    // Derivative mass over (x/3, 3x) and the Poisson tail past x/3.
    const Interval hull(std::min(x / 3.0, 3.0 * x), std::max(x / 3.0, 3.0 * x));
    double deriv_factor;
    if (std::isinf(r)) {
      deriv_factor = std::pow(lr_norm_of_derivative(Omega, hull, r) * hull.length(),
                              p_deriv);
    } else {
      deriv_factor =
          std::pow(lr_power_integral(Omega.derivative(), hull, r), p_deriv / r);
    }
    const double tail = std::max(
        0.0, poisson_integral_over(Omega, Interval(ax / 3.0, std::max(supp_hi, ax))));
    g.chain_bound = deriv_factor * std::pow((1.0 + 9.0 * ax * ax) * tail, alpha / 2.0);
    g.eps_ratio = g.omega_x / (eps * ax);
    g.ok = g.omega_x <= g.chain_bound * (1.0 + 1e-9);
    out.push_back(g);
  }
  return out;
}

GlobalResult global_majorant(const PiecewiseFn& Omega, double r, double eps,
                             double R, int n_window, const NazarovParams& params) {
  if (!(eps > 0.0)) throw std::runtime_error("nazarov: eps must be > 0");
  if (Omega.default_value() != 0) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: Omega must default to 0");
  }
  GlobalResult res;
  GlobalReport& rep = res.report;
  rep.eps = eps;
  rep.r = r;
  rep.R = R;

  const VrNorm mu = vr_norm(Omega, r, -n_window, n_window);
  rep.mu = mu.value;
  if (!std::isfinite(rep.mu)) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: V_r norm not finite");
  }
  rep.poisson_of_omega = poisson_integral(Omega).value;
  if (!std::isfinite(rep.poisson_of_omega)) {
    throw std::runtime_error("nazarov: PRECONDITION_VIOLATED: Poisson integral diverges");
  }

  // R-truncation by the constant-shift trick.
  rep.shift = sup_norm(Omega, Interval(-R, R));
  res.shift = rep.shift;
  const PiecewiseFn Om = rep.shift > 0.0 ? Omega.positive_part_minus(rep.shift) : Omega;

  // Growth probes at block boundaries.
  std::vector<double> probes;
  for (int j = 1; j <= n_window; ++j) probes.push_back(std::ldexp(1.0, j));
  rep.growth = linear_growth_check(Omega, r, eps, probes);
  for (const GrowthProbe& g : rep.growth) {
    rep.growth_max_eps_ratio = std::max(rep.growth_max_eps_ratio, g.eps_ratio);
  }

  // Per-block local majorants.
  for (int j = -n_window; j <= n_window; ++j) {
    const Interval J = DyadicBlock(j).interval();
    const PiecewiseFn fj = Om.restricted(J);
    const double supj = sup_norm(fj, J);
    if (supj <= 0.0) continue;
    const double lj = J.length();
    const double delta_j = std::max(eps, supj / lj);
    const double kap_meas =
        std::isinf(r) ? lr_norm_of_derivative(fj, J, r)
                      : lr_norm_of_derivative(fj, J, r) / std::pow(lj, 1.0 / r);
    const double kappa_j = std::max({kap_meas, delta_j, 1e-12});
    LocalReport lr = local_majorant(fj, J, delta_j, kappa_j, r, params);
    BlockReport br;
    br.j = j;
    br.delta_j = delta_j;
    br.kappa_j = kappa_j;
    br.tau_size = static_cast<int>(lr.tau.members.size());
    br.prop3 = lr.prop3_deriv_sup;
    br.prop4_lhs = lr.prop4_lhs;
    br.prop4_rhs = lr.prop4_rhs;
    rep.blocks.push_back(br);
    for (const ScaledHat& h : lr.hats) res.all_hats.push_back(h);
  }

  res.omega1_compact = hats_to_piecewise(res.all_hats);

  // (A) majorization over the window on a dense grid.
  const Interval window(-std::ldexp(1.0, n_window + 1), std::ldexp(1.0, n_window + 1));
  const int grid = 100000;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double x = window.lo + window.length() * i / grid;
    const double gap = res.omega1_compact.value(x) + rep.shift - Omega.value(x);
    min_gap = std::min(min_gap, gap);
  }
  // Also probe the hill geometry directly (peaks and edges).
  for (const Piece& pc : Omega.pieces()) {
    for (double x : {pc.iv.lo, 0.5 * (pc.iv.lo + pc.iv.hi), pc.iv.hi}) {
      if (!window.contains_closed(x)) continue;
      const double gap = res.omega1_compact.value(x) + rep.shift - Omega.value(x);
      min_gap = std::min(min_gap, gap);
    }
  }
  rep.majorize_min_gap = min_gap;
  rep.majorize_ok = min_gap >= -1e-9 * (1.0 + sup_norm(Omega, window));

  // (B) Poisson integral of Omega_1.
  rep.poisson_value = poisson_integral(res.omega1_compact).value +
                      rep.shift * std::numbers::pi;

  // (C) Lipschitz constant of the transform, probed per block.
  double dsup = 0.0;
  for (int j = -n_window; j <= n_window; ++j) {
    const Interval J = DyadicBlock(j).interval();
    dsup = std::max(dsup, hat_sum_deriv_sup(res.all_hats, J, 1600));
  }
  rep.deriv_sup = dsup;
  return res;
}

double ceiling_violation(const PiecewiseFn& f, const IntervalSystem& tau) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const SystemMember& m : tau.members) {
    worst = std::max(worst, sup_norm(f, m.iv) - m.iv.length());
  }
  return worst;
}

double coverage_gap(const PiecewiseFn& f, const IntervalSystem& tau, int grid_n) {
  int bad = 0, positive = 0;
  for (int i = 0; i <= grid_n; ++i) {
    const double x = tau.base.lo + tau.base.length() * i / grid_n;
    if (f.value(x) <= 0.0) continue;
    ++positive;
    bool covered = false;
    for (const SystemMember& m : tau.members) {
      if (x >= m.iv.lo && x < m.iv.hi) {
        covered = true;
        break;
      }
    }
    if (!covered) ++bad;
  }
  return positive == 0 ? 0.0 : static_cast<double>(bad) / positive;
}

}  // namespace bmtk
