#ifndef BMTK_QUADRATURE_HPP
#define BMTK_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace bmtk {

// Adaptive Gauss(7)/Kronrod-style quadrature built from nested Gauss rules.
// `tol` is an absolute tolerance for the whole interval.
double adaptive_quad(const std::function<double(double)>& fn, double a, double b,
                     double tol, int max_depth = 48);

}  // namespace bmtk

#endif  // BMTK_QUADRATURE_HPP
