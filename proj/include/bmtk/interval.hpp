#ifndef BMTK_INTERVAL_HPP
#define BMTK_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bmtk {

// Closed-left, open-right interval [lo, hi). All constructions treat the
// closure for sup/integral purposes, so the half-open convention only
// matters for tiling membership.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::runtime_error("interval: requires lo < hi");
  }

  double length() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x < hi; }
  bool contains_closed(double x) const { return x >= lo && x <= hi; }

  // lambda * I: same center, length scaled.
  Interval dilate(double lambda) const {
    const double c = center();
    const double h = 0.5 * lambda * length();
    return Interval(c - h, c + h);
  }
};

// Gap between two intervals (0 if they touch or overlap).
inline double interval_gap(const Interval& a, const Interval& b) {
  return std::max({0.0, b.lo - a.hi, a.lo - b.hi});
}

inline bool intervals_overlap(const Interval& a, const Interval& b) {
  return a.lo < b.hi && b.lo < a.hi;
}

// Distance from x to the complement of I: zero outside, distance to the
// nearer endpoint inside.
inline double dist_to_complement(const Interval& I, double x) {
  if (x <= I.lo || x >= I.hi) return 0.0;
  return std::min(x - I.lo, I.hi - x);
}

// Dyadic block J_j: J_0 = [-2,2), J_j = [2^j, 2^{j+1}) and
// J_{-j} = [-2^{j+1}, -2^j) for j >= 1. The blocks tile the line.
struct DyadicBlock {
  int index = 0;

  explicit DyadicBlock(int j) : index(j) {}

  Interval interval() const {
    if (index == 0) return Interval(-2.0, 2.0);
    const int j = std::abs(index);
    const double a = std::ldexp(1.0, j);
    const double b = std::ldexp(1.0, j + 1);
    if (index > 0) return Interval(a, b);
    return Interval(-b, -a);
  }

  double length() const { return interval().length(); }

  static DyadicBlock containing(double x) {
    if (x >= -2.0 && x < 2.0) return DyadicBlock(0);
    const int j = static_cast<int>(std::floor(std::log2(std::fabs(x))));
    return DyadicBlock(x > 0 ? j : -j);
  }
};

}  // namespace bmtk

#endif  // BMTK_INTERVAL_HPP
