#include "qwd/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "qwd/errors.hpp"

namespace qwd {

NelderMeadResult nelder_mead_maximize(const std::function<double(const RVector&)>& f,
                                      const RVector& x0, const NelderMeadOptions& opt) {
  const Eigen::Index n = x0.size();
  if (n < 1) throw InvalidInput("nelder_mead_maximize: empty parameter vector");

  // Minimise g = −f internally.
  int evals = 0;
  auto g = [&](const RVector& x) {
    ++evals;
    return -f(x);
  };

  std::vector<RVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> val(pts.size());
  val[0] = g(x0);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts[static_cast<std::size_t>(i + 1)](i) += opt.initial_step;
    val[static_cast<std::size_t>(i + 1)] = g(pts[static_cast<std::size_t>(i + 1)]);
  }

  NelderMeadResult res;
  res.initial_value = -val[0];
  std::vector<std::size_t> order(pts.size());
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).lpNorm<Eigen::Infinity>());
    if (val[worst] - val[best] <= opt.f_tol && diameter <= opt.x_tol) {
      res.converged = true;
      break;
    }
    if (evals >= opt.max_evaluations) break;

    RVector centroid = RVector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const RVector xr = centroid + (centroid - pts[worst]);
    const double fr = g(xr);
    if (fr < val[best]) {
      const RVector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = g(xe);
      if (fe < fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    const RVector xc = outside ? RVector(centroid + 0.5 * (xr - centroid))
                               : RVector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = g(xc);
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = xc;
      val[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      val[i] = g(pts[i]);
    }
  }
  const std::size_t best = static_cast<std::size_t>(
      std::min_element(val.begin(), val.end()) - val.begin());
  res.x = pts[best];
  res.value = -val[best];
  res.evaluations = evals;
  return res;
}

}  // namespace qwd
