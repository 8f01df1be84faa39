#include "bmtk/poly.hpp"

#include <cmath>

namespace bmtk {

namespace {

// Bisection to machine precision on a bracketing interval; fa, fb of
// opposite (weak) sign.
double bisect(const Poly& p, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) return m;
    const double fm = p.eval(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> Poly::roots_in(double u0, double u1) const {
  std::vector<double> out;
  if (u0 > u1) return out;
  const int deg = degree();
  if (deg <= 0) return out;  // constants: no isolated roots
  if (deg == 1) {
    const double r = -c[0] / c[1];
    if (r >= u0 && r <= u1) out.push_back(r);
    return out;
  }

  std::vector<double> nodes = derivative().roots_in(u0, u1);
  nodes.insert(nodes.begin(), u0);
  nodes.push_back(u1);

  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    if (!(a < b)) continue;
    const double fa = eval(a);
    const double fb = eval(b);
    if (fa == 0.0) {
      out.push_back(a);
      continue;
    }
    if ((fa < 0.0) != (fb <= 0.0)) {
      out.push_back(bisect(*this, a, b, fa, fb));
    }
  }
  const double fend = eval(u1);
  if (fend == 0.0) out.push_back(u1);

  // Dedupe near-coincident roots from touching segments.
  std::sort(out.begin(), out.end());
  const double eps = 1e-14 * std::max({1.0, std::fabs(u0), std::fabs(u1)});
  std::vector<double> uniq;
  for (double r : out) {
    if (uniq.empty() || r - uniq.back() > eps) uniq.push_back(r);
  }
  return uniq;
}

}  // namespace bmtk
