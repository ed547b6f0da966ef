#include "qwd/bounds.hpp"

#include <cmath>
#include <sstream>

#include "qwd/errors.hpp"

namespace qwd {

namespace {

constexpr double kMomentTolerance = 1e-10;

void require_dims(const DensityMatrix& rho, const ObservableSet& a, const char* what) {
  if (rho.dim() != a.dim()) {
    std::ostringstream msg;
    msg << what << ": state dimension " << rho.dim() << " differs from observable dimension "
        << a.dim();
    throw DimensionMismatch(msg.str());
  }
}

double second_moment(const CMatrix& sum_sq, const DensityMatrix& rho) {
  const double v = (sum_sq * rho.matrix()).trace().real();
  return v < 0.0 && v >= -kMomentTolerance ? 0.0 : v;
}

}  // namespace

HellingerBoundInput hellinger_input(const DensityMatrix& rho, const DensityMatrix& omega,
                                    const ObservableSet& a) {
  require_dims(rho, a, "hellinger_input");
  require_dims(omega, a, "hellinger_input");
  CMatrix sum_sq = CMatrix::Zero(a.dim(), a.dim());
  for (const auto& obs : a) sum_sq += obs.matrix() * obs.matrix();
  return {second_moment(sum_sq, omega), second_moment(sum_sq, rho)};
}

double hellinger_bound(const HellingerBoundInput& in) {
  const double a = std::max(in.alpha, 0.0);
  const double b = std::max(in.beta, 0.0);
  if (a == 0.0 || b == 0.0) return a + b;
  return std::max(0.0, a + b - 2.0 * std::sqrt(a * b));
}

double hellinger_lower_bound(const DensityMatrix& rho, const DensityMatrix& omega,
                             const ObservableSet& a) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double lo = a[j].min_eigenvalue();
    if (lo < -kMomentTolerance) {
      std::ostringstream msg;
      msg << "hellinger_lower_bound: observable " << j << " has eigenvalue " << lo
          << "; the bound needs positive semidefinite observables";
      throw NotPsd(msg.str());
    }
  }
  return hellinger_bound(hellinger_input(rho, omega, a));
}

double energy(const DensityMatrix& rho, const ObservableSet& a) {
  require_dims(rho, a, "energy");
  double total = 0.0;
  for (const auto& obs : a) total += (obs.matrix() * rho.matrix() * obs.matrix()).trace().real();
  return total;
}

}  // namespace qwd
