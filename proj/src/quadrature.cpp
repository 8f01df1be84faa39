#include "bmtk/quadrature.hpp"

#include <array>
#include <cstdlib>

namespace bmtk {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the rule
// is symmetric). The embedded 7-point rule reuses every other node of the
// companion 7-point Gauss rule evaluated separately.
constexpr std::array<double, 8> kG15X = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854,
};
constexpr std::array<double, 8> kG15W = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

constexpr std::array<double, 4> kG7X = {
    0.0,
    0.4058451513773972,
    0.7415311855993945,
    0.9491079123427585,
};
constexpr std::array<double, 4> kG7W = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct PairEval {
  double g7;
  double g15;
};

PairEval eval_pair(const std::function<double(double)>& fn, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s15 = kG15W[0] * fn(c);
  for (size_t i = 1; i < kG15X.size(); ++i) {
    s15 += kG15W[i] * (fn(c - h * kG15X[i]) + fn(c + h * kG15X[i]));
  }
  double s7 = kG7W[0] * fn(c);
  for (size_t i = 1; i < kG7X.size(); ++i) {
    s7 += kG7W[i] * (fn(c - h * kG7X[i]) + fn(c + h * kG7X[i]));
  }
  return {s7 * h, s15 * h};
}

double recurse(const std::function<double(double)>& fn, double a, double b,
               double tol, int depth, int max_depth) {
  const PairEval e = eval_pair(fn, a, b);
  const double err = std::fabs(e.g15 - e.g7);
  if (err <= tol || depth >= max_depth) return e.g15;
  const double c = 0.5 * (a + b);
  return recurse(fn, a, c, 0.5 * tol, depth + 1, max_depth) +
         recurse(fn, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_quad(const std::function<double(double)>& fn, double a, double b,
                     double tol, int max_depth) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_quad(fn, b, a, tol, max_depth);
  return recurse(fn, a, b, tol, 0, max_depth);
}

}  // namespace bmtk
