#ifndef BMTK_POLY_HPP
#define BMTK_POLY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace bmtk {

// Dense real polynomial in one local variable. Coefficient order: value =
// c[0] + c[1]*u + c[2]*u^2 + ...
struct Poly {
  std::vector<double> c;

  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

  static Poly constant(double v) { return Poly(std::vector<double>{v}); }
  static Poly linear(double c0, double c1) { return Poly(std::vector<double>{c0, c1}); }

  int degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      if (c[static_cast<size_t>(k)] != 0.0) return k;
    }
    return -1;  // zero polynomial
  }

  bool is_zero() const { return degree() < 0; }

  double eval(double u) const {
    double v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * u + c[k];
    return v;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<double> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return Poly(std::move(d));
  }

  // Antiderivative with zero constant term.
  Poly antiderivative() const {
    std::vector<double> a(c.size() + 1, 0.0);
    for (size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / static_cast<double>(k + 1);
    return Poly(std::move(a));
  }

  // p(u + dx) as a polynomial in u (repeated synthetic division).
  Poly shifted(double dx) const {
    std::vector<double> r = c;
    const int n = static_cast<int>(r.size());
    for (int i = 0; i < n; ++i) {
      for (int j = n - 2; j >= i; --j) {
        r[static_cast<size_t>(j)] += dx * r[static_cast<size_t>(j + 1)];
      }
    }
    return Poly(std::move(r));
  }

  Poly plus(const Poly& o) const {
    std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
    for (size_t k = 0; k < c.size(); ++k) r[k] += c[k];
    for (size_t k = 0; k < o.c.size(); ++k) r[k] += o.c[k];
    return Poly(std::move(r));
  }

  Poly scaled(double a) const {
    Poly r = *this;
    for (double& x : r.c) x *= a;
    return r;
  }

  Poly times(const Poly& o) const {
    if (c.empty() || o.c.empty()) return Poly();
    std::vector<double> r(c.size() + o.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    }
    return Poly(std::move(r));
  }

  // p(a*u) as polynomial in u.
  Poly stretched(double a) const {
    Poly r = *this;
    double f = 1.0;
    for (size_t k = 0; k < r.c.size(); ++k) {
      r.c[k] *= f;
      f *= a;
    }
    return r;
  }

  // Real roots in [u0, u1], ascending, deduplicated. Derivative cascade:
  // the extrema of p bracket its monotone segments.
  std::vector<double> roots_in(double u0, double u1) const;
};

}  // namespace bmtk

#endif  // BMTK_POLY_HPP
