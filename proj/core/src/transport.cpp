#include "qwd/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "qwd/errors.hpp"

namespace qwd {

namespace {

constexpr double kSupportTol = 1e-10;
constexpr double kNegativeClamp = 1e-9;

void check_dims(const DensityMatrix& rho, const DensityMatrix& omega, const CostOperator& c) {
  if (rho.dim() != omega.dim() || rho.dim() != c.dim) {
    std::ostringstream os;
    os << "transport: state dimensions " << rho.dim() << ", " << omega.dim()
       << " do not match cost dimension " << c.dim;
    throw DimensionMismatch(os.str());
  }
}

TransportStatus from_sdp(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return TransportStatus::optimal;
    case SdpStatus::max_iter: return TransportStatus::max_iter;
    case SdpStatus::numerical_failure: return TransportStatus::infeasible_detected;
  }
  return TransportStatus::infeasible_detected;
}

double clamp_value(double v) {
  if (v < 0.0 && v >= -kNegativeClamp) return 0.0;
  if (v < -kNegativeClamp) {
    std::ostringstream os;
    os << "transport value " << v << " is negative beyond tolerance";
    throw SolverError(os.str());
  }
  return v;
}

void require_optimal(const SdpSolution& sol, const char* what) {
  if (sol.status == SdpStatus::optimal) return;
  std::ostringstream os;
  os << what << ": solver stopped with status " << to_string(sol.status) << " after "
     << sol.iterations << " iterations (relative gap " << sol.relative_gap << ", primal residual "
     << sol.primal_infeasibility << ", dual residual " << sol.dual_infeasibility << ")";
  throw SolverError(os.str());
}

// Marginal constraints in Hermitian-basis coordinates:
//   ⟨B_a ⊗ I, Π⟩ = tr(B_a · first)   for every basis element B_a of dim d1,
//   ⟨I ⊗ B_b, Π⟩ = tr(B_b · second)  for every B_b of dim d2 but the last
// diagonal unit, whose equation is implied by the trace of the first set.
struct MarginalConstraints {
  std::vector<SparseHermitian> constraints;
  RVector rhs;
  int first_count = 0;
};

MarginalConstraints marginal_constraints(const CMatrix& first, const CMatrix& second) {
  const int d1 = static_cast<int>(first.rows());
  const int d2 = static_cast<int>(second.rows());
  const auto basis1 = hermitian_basis(d1);
  const auto basis2 = hermitian_basis(d2);
  const CMatrix id1 = CMatrix::Identity(d1, d1);
  const CMatrix id2 = CMatrix::Identity(d2, d2);

  MarginalConstraints out;
  std::vector<double> rhs;
  for (const auto& b : basis1) {
    out.constraints.push_back(SparseHermitian::from_dense(kron(b.matrix(), id2)));
    rhs.push_back((b.matrix() * first).trace().real());
  }
  out.first_count = static_cast<int>(basis1.size());
  for (std::size_t k = 0; k < basis2.size(); ++k) {
    if (static_cast<int>(k) == d2 - 1) continue;
    out.constraints.push_back(SparseHermitian::from_dense(kron(id1, basis2[k].matrix())));
    rhs.push_back((basis2[k].matrix() * second).trace().real());
  }
  out.rhs = Eigen::Map<RVector>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return out;
}

// Orthonormal eigenvectors spanning the support, with the (renormalised)
// eigenvalues on it.
struct Support {
  CMatrix basis;
  RVector weights;
};

Support support_of(const CMatrix& state) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(state);
  const RVector& ev = es.eigenvalues();
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > kSupportTol) keep.push_back(i);
  Support s;
  s.basis.resize(state.rows(), static_cast<Eigen::Index>(keep.size()));
  s.weights.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    s.basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
    s.weights(static_cast<Eigen::Index>(k)) = ev(keep[k]);
  }
  s.weights /= s.weights.sum();
  return s;
}

CMatrix second_marginal(const DensityMatrix& rho, bool transpose) {
  return transpose ? CMatrix(rho.matrix().transpose()) : rho.matrix();
}

}  // namespace

std::string to_string(TransportStatus s) {
  switch (s) {
    case TransportStatus::optimal: return "optimal";
    case TransportStatus::max_iter: return "max-iter";
    case TransportStatus::infeasible_detected: return "infeasible-detected";
  }
  return "unknown";
}

TransportResult solve_primal(const DensityMatrix& rho, const DensityMatrix& omega,
                             const CostOperator& c, const SolverConfig& cfg,
                             const ConeSolver& solver) {
  check_dims(rho, omega, c);
  const Support s1 = support_of(omega.matrix());
  const Support s2 = support_of(second_marginal(rho, c.transpose));
  const int r1 = static_cast<int>(s1.weights.size());
  const int r2 = static_cast<int>(s2.weights.size());

  const CMatrix v = kron(s1.basis, s2.basis);
  const CMatrix w1 = s1.weights.cast<Complex>().asDiagonal();
  const CMatrix w2 = s2.weights.cast<Complex>().asDiagonal();
  const MarginalConstraints mc = marginal_constraints(w1, w2);

  SdpProblem problem;
  problem.cost = v.adjoint() * c.matrix.matrix() * v;
  problem.cost = 0.5 * (problem.cost + problem.cost.adjoint());
  problem.constraints = mc.constraints;
  problem.rhs = mc.rhs;

  // Tensor coupling is strictly feasible on the support; Y = −t I makes the
  // dual slack C̃ + t I positive definite.
  const int n = r1 * r2;
  const double t = std::max(1.0, problem.cost.trace().real() / n);
  SdpPoint start;
  start.x = kron(w1, w2);
  start.y = RVector::Zero(problem.num_constraints());
  for (int k = 0; k < r1; ++k) start.y(k) = -t;
  start.s = problem.cost + t * CMatrix::Identity(n, n);

  const SdpSolution sol = solver.solve(problem, cfg, start);
  require_optimal(sol, "solve_primal");

  CMatrix pi = v * sol.point.x * v.adjoint();
  pi = 0.5 * (pi + pi.adjoint());
  pi /= pi.trace().real();

  TransportResult out;
  out.squared_distance = clamp_value(sol.primal_objective);
  out.coupling = DensityMatrix(HermitianMatrix::hermitian_part(pi));
  out.duality_gap = sol.relative_gap;
  out.iterations = sol.iterations;
  out.status = from_sdp(sol.status);
  return out;
}

TransportResult solve_dual(const DensityMatrix& rho, const DensityMatrix& omega,
                           const CostOperator& c, const SolverConfig& cfg,
                           const ConeSolver& solver) {
  check_dims(rho, omega, c);
  const int d = c.dim;
  const Support s1 = support_of(omega.matrix());
  const Support s2 = support_of(second_marginal(rho, c.transpose));
  const int r1 = static_cast<int>(s1.weights.size());
  const int r2 = static_cast<int>(s2.weights.size());

  // Solve on supp(ω) ⊗ supp(ρᵀ), where the problem is strictly feasible.
  const CMatrix v = kron(s1.basis, s2.basis);
  const CMatrix w1 = s1.weights.cast<Complex>().asDiagonal();
  const CMatrix w2 = s2.weights.cast<Complex>().asDiagonal();
  const MarginalConstraints mc = marginal_constraints(w1, w2);

  SdpProblem problem;
  problem.cost = v.adjoint() * c.matrix.matrix() * v;
  problem.cost = 0.5 * (problem.cost + problem.cost.adjoint());
  problem.constraints = mc.constraints;
  problem.rhs = mc.rhs;

  const int n = r1 * r2;
  const double t0 = std::max(1.0, problem.cost.trace().real() / n);
  SdpPoint start;
  start.x = kron(w1, w2);
  start.y = RVector::Zero(problem.num_constraints());
  for (int k = 0; k < r1; ++k) start.y(k) = -t0;
  start.s = problem.cost + t0 * CMatrix::Identity(n, n);

  const SdpSolution sol = solver.solve(problem, cfg, start);
  require_optimal(sol, "solve_dual");

  const auto basis1 = hermitian_basis(r1);
  const auto basis2 = hermitian_basis(r2);
  CMatrix yr = CMatrix::Zero(r1, r1);
  CMatrix xtr = CMatrix::Zero(r2, r2);
  for (int k = 0; k < mc.first_count; ++k) yr += sol.point.y(k) * basis1[k].matrix();
  int idx = mc.first_count;
  for (int k = 0; k < static_cast<int>(basis2.size()); ++k) {
    if (k == r2 - 1) continue;
    xtr += sol.point.y(idx++) * basis2[k].matrix();
  }

  // Lift to the full space with −t on the kernels. Those blocks do not enter
  // the objective; a larger t tightens the slack at the cost of conditioning,
  // so a geometric range is tried and the best repaired value kept.
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix y_supp = s1.basis * yr * s1.basis.adjoint();
  const CMatrix xt_supp = s2.basis * xtr * s2.basis.adjoint();
  const CMatrix k1 = id - s1.basis * s1.basis.adjoint();
  const CMatrix k2 = id - s2.basis * s2.basis.adjoint();
  const bool full = r1 == d && r2 == d;
  const double scale = std::max({1.0, c.matrix.matrix().cwiseAbs().maxCoeff(), y_supp.cwiseAbs().maxCoeff(),
                                 xt_supp.cwiseAbs().maxCoeff()});

  std::optional<DualCertificate> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int e = 0; e <= (full ? 0 : 24); ++e) {
    const double t = full ? 0.0 : scale * std::pow(10.0, 0.5 * e);
    const CMatrix y = y_supp - t * k1;
    const CMatrix xt = xt_supp - t * k2;
    const CMatrix x = c.transpose ? CMatrix(xt.transpose()) : xt;
    DualCertificate cert{HermitianMatrix::hermitian_part(x), HermitianMatrix::hermitian_part(y)};
    // Eigenvalues of the slack are only known to about n·ε·‖S‖.
    const double noise = 8.0 * d * d * std::numeric_limits<double>::epsilon() * (scale + 2.0 * t);
    const double slack = dual_slack(c, cert) - (full ? 0.0 : noise);
    if (slack < 0.0) cert.y = cert.y + HermitianMatrix::identity(d) * slack;
    const double value = dual_objective(rho, omega, cert);
    if (value > best_value) {
      best_value = value;
      best = std::move(cert);
    }
  }

  TransportResult out;
  out.squared_distance = clamp_value(best_value);
  out.certificates = std::move(best);
  out.duality_gap = sol.relative_gap;
  out.iterations = sol.iterations;
  out.status = from_sdp(sol.status);
  return out;
}

double transport_cost(const CMatrix& coupling, const CostOperator& c) {
  return (coupling * c.matrix.matrix()).trace().real();
}

DensityMatrix tensor_coupling(const DensityMatrix& rho, const DensityMatrix& omega, bool transpose) {
  if (rho.dim() != omega.dim()) throw DimensionMismatch("tensor_coupling: state dimensions differ");
  return DensityMatrix(
      HermitianMatrix::hermitian_part(kron(omega.matrix(), second_marginal(rho, transpose))));
}

double tensor_coupling_cost(const DensityMatrix& rho, const DensityMatrix& omega,
                            const CostOperator& c) {
  check_dims(rho, omega, c);
  return transport_cost(tensor_coupling(rho, omega, c.transpose).matrix(), c);
}

double dual_objective(const DensityMatrix& rho, const DensityMatrix& omega,
                      const DualCertificate& cert) {
  if (cert.x.dim() != rho.dim() || cert.y.dim() != omega.dim())
    throw DimensionMismatch("dual_objective: certificate dimension differs from states");
  return (cert.x.matrix() * rho.matrix()).trace().real() +
         (cert.y.matrix() * omega.matrix()).trace().real();
}

double dual_slack(const CostOperator& c, const DualCertificate& cert) {
  const int d = c.dim;
  if (cert.x.dim() != d || cert.y.dim() != d)
    throw DimensionMismatch("dual_slack: certificate dimension differs from cost");
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix xt = c.transpose ? CMatrix(cert.x.matrix().transpose()) : cert.x.matrix();
  const CMatrix s = c.matrix.matrix() - kron(cert.y.matrix(), id) - kron(id, xt);
  return HermitianMatrix::hermitian_part(s).min_eigenvalue();
}

double pure_state_distance_sq(const DensityMatrix& rho, const DensityMatrix& omega,
                              const ObservableSet& a) {
  if (rho.dim() != omega.dim() || rho.dim() != a.dim())
    throw DimensionMismatch("pure_state_distance_sq: dimensions differ");
  if (!rho.is_pure() && !omega.is_pure())
    throw NotPure("pure_state_distance_sq: neither state is pure");
  double total = 0.0;
  for (const auto& obs : a) {
    const CMatrix& am = obs.matrix();
    total += (am * omega.matrix() * am).trace().real() + (am * rho.matrix() * am).trace().real() -
             2.0 * (omega.matrix() * am).trace().real() * (rho.matrix() * am).trace().real();
  }
  return clamp_value(total);
}

double self_distance_sq(const DensityMatrix& rho, const ObservableSet& a) {
  if (rho.dim() != a.dim()) throw DimensionMismatch("self_distance_sq: dimensions differ");
  const CMatrix root = sqrt_psd(rho.hermitian()).matrix();
  double total = 0.0;
  for (const auto& obs : a) {
    const CMatrix comm = obs.matrix() * root - root * obs.matrix();
    total += comm.squaredNorm();
  }
  return total;
}

}  // namespace qwd
