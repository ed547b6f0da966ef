#pragma once

#include <functional>

#include "qwd/hermitian.hpp"

namespace qwd {

struct NelderMeadOptions {
  double initial_step = 0.5;
  double f_tol = 1e-10;  // stop when the simplex values span less than this
  double x_tol = 1e-8;   // and the simplex diameter is below this
  int max_evaluations = 2000;
};

struct NelderMeadResult {
  RVector x;
  double value = 0.0;
  double initial_value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Maximises f from x0 with the standard reflection / expansion /
/// contraction / shrink moves.
NelderMeadResult nelder_mead_maximize(const std::function<double(const RVector&)>& f,
                                      const RVector& x0, const NelderMeadOptions& opt = {});

}  // namespace qwd
