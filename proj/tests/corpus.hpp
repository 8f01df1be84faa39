#ifndef BMTK_TESTS_CORPUS_HPP
#define BMTK_TESTS_CORPUS_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "bmtk/interval.hpp"
#include "bmtk/piecewise.hpp"
#include "test_util.hpp"

namespace bmtk::testutil {

// The frozen 50-function corpus behind the local-lemma regression constants.
// Every entry is a nonnegative continuous piecewise-quadratic on I* with a
// delta budget inflated by up to 2^3 (deeper essential structure) and the
// measured derivative budget.
struct CorpusEntry {
  PiecewiseFn f;
  Interval I{-0.5, 0.5};
  double delta = 1.0;
  double kappa = 1.0;
  double r = 2.0;
};

inline std::vector<CorpusEntry> local_corpus(int count = 50) {
  const double rs[] = {1.25, 2.0, 4.0, std::numeric_limits<double>::infinity()};
  Rng rng(20240817);
  std::vector<CorpusEntry> out;
  out.reserve(static_cast<size_t>(count));
  const int stress = 5;
  for (int i = 0; i < count - stress; ++i) {
    CorpusEntry e;
    e.f = random_bump_function(rng, e.I);
    e.r = rs[i % 4];
    const double l = e.I.length();
    const double sup = sup_norm(e.f, e.I);
    const int k = rng.uniform_int(1, 5);
    e.delta = std::ldexp(std::max(sup, 1e-6) / l, k);
    const double lr = lr_norm_of_derivative(e.f, e.I, e.r);
    const double kap =
        std::isinf(e.r) ? lr : lr / std::pow(l, 1.0 / e.r);
    e.kappa = std::max(kap, e.delta);
    out.push_back(std::move(e));
  }
  // Plateau fixtures: long equal-scale essential runs (the #N(a) and
  // multiplicity bounds are tight exactly there), plus one spike mix.
  for (int s = 0; s < stress; ++s) {
    CorpusEntry e;
    const double level = std::ldexp(1.0, -5 - s);  // 2^-5 .. 2^-9
    PiecewiseFn f = trapezoid(-0.45, 0.45, 0.02, level);
    if (s == 3) {
      f = PiecewiseFn::sum(f, PiecewiseFn::tent(0.1251220703125, 0.004, 0.22));
    }
    if (s == 4) {
      f = PiecewiseFn::sum(f, trapezoid(-0.25, -0.1, 0.01, std::ldexp(1.0, -3)));
    }
    e.f = std::move(f);
    e.r = rs[s % 4];
    e.delta = 1.0;  // absolute budget: the low plateau forces deep runs
    const double lr = lr_norm_of_derivative(e.f, e.I, e.r);
    const double kap = std::isinf(e.r) ? lr : lr / std::pow(e.I.length(), 1.0 / e.r);
    e.kappa = std::max(kap, e.delta);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace bmtk::testutil

#endif  // BMTK_TESTS_CORPUS_HPP
