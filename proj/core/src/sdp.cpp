#include "qwd/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwd/errors.hpp"

namespace qwd {

void SolverConfig::validate() const {
  if (!(gap_tol > 0.0) || !(feas_tol > 0.0)) throw InvalidInput("solver tolerances must be positive");
  if (max_iter < 1) throw InvalidInput("solver max_iter must be positive");
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max-iter";
    case SdpStatus::numerical_failure: return "infeasible-detected";
  }
  return "unknown";
}

SparseHermitian SparseHermitian::from_dense(const CMatrix& m, double drop) {
  SparseHermitian out;
  out.dim = static_cast<int>(m.rows());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > drop) out.entries.push_back({i, j, m(i, j)});
  return out;
}

CMatrix SparseHermitian::to_dense() const {
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& e : entries) out(e.row, e.col) += e.value;
  return out;
}

double SparseHermitian::dot(const CMatrix& x) const {
  // Re tr(A X) = Re Σ A(r,c) X(c,r)
  double acc = 0.0;
  for (const auto& e : entries) acc += (e.value * x(e.col, e.row)).real();
  return acc;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix herm(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Re tr(A B) for Hermitian A.
double inner(const CMatrix& a, const CMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

bool finite(const CMatrix& m) { return m.allFinite(); }

class Operators {
 public:
  explicit Operators(const SdpProblem& p) : p_(p) {}

  RVector apply(const CMatrix& x) const {
    RVector out(p_.num_constraints());
    for (int i = 0; i < p_.num_constraints(); ++i) out(i) = p_.constraints[i].dot(x);
    return out;
  }

  CMatrix adjoint(const RVector& y) const {
    CMatrix out = CMatrix::Zero(p_.dim(), p_.dim());
    for (int i = 0; i < p_.num_constraints(); ++i)
      for (const auto& e : p_.constraints[i].entries) out(e.row, e.col) += y(i) * e.value;
    return out;
  }

  /// G† A_i G for every constraint, as isometric real vectors (columns).
  Eigen::MatrixXd scaled_constraints(const CMatrix& g) const;

  const SdpProblem& problem() const { return p_; }

 private:
  const SdpProblem& p_;
};

// Isometry from n×n Hermitian matrices to R^{n²}: diagonal entries, then
// √2·Re and √2·Im of the strict upper triangle.
void pack(const CMatrix& h, double* out) {
  const Eigen::Index n = h.rows();
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) out[k++] = h(i, i).real();
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index j = 1; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i) {
      out[k++] = r2 * h(i, j).real();
      out[k++] = r2 * h(i, j).imag();
    }
}

CMatrix unpack(const RVector& v, Eigen::Index n) {
  CMatrix h(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = v(k++);
  const double r2 = std::sqrt(0.5);
  for (Eigen::Index j = 1; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i) {
      const Complex z(r2 * v(k), r2 * v(k + 1));
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

Eigen::MatrixXd Operators::scaled_constraints(const CMatrix& g) const {
  const int n = p_.dim();
  const int m = p_.num_constraints();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n) * n, m);
  CMatrix ag(n, n);
  for (int i = 0; i < m; ++i) {
    // A_i G touches only the rows present in A_i.
    ag.setZero();
    for (const auto& e : p_.constraints[i].entries) ag.row(e.row) += e.value * g.row(e.col);
    const CMatrix scaled = g.adjoint() * ag;
    pack(0.5 * (scaled + scaled.adjoint()), out.col(i).data());
  }
  return out;
}

struct Scaling {
  CMatrix g;  // X = G Λ G†,  S = G^{-†} Λ G^{-1}
  RVector lambda;
};

bool nt_scaling(const CMatrix& x, const CMatrix& s, Scaling& out) {
  Eigen::LLT<CMatrix> lx(x);
  Eigen::LLT<CMatrix> ls(s);
  if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) return false;
  const CMatrix l_x = lx.matrixL();
  const CMatrix l_s = ls.matrixL();
  const CMatrix k = l_s.adjoint() * l_x;
  Eigen::BDCSVD<CMatrix> svd(k, Eigen::ComputeThinV);
  out.lambda = svd.singularValues();
  if (!(out.lambda.minCoeff() > 0.0) || !out.lambda.allFinite()) return false;
  const CMatrix& v = svd.matrixV();
  const RVector root = out.lambda.cwiseSqrt();
  out.g = l_x * v * root.cwiseInverse().cast<Complex>().asDiagonal();
  return finite(out.g);
}

// Largest α with diag(λ) + α D ⪰ 0.
double max_step(const RVector& lambda, const CMatrix& d) {
  const RVector s = lambda.cwiseSqrt().cwiseInverse();
  const CMatrix t = herm(s.cast<Complex>().asDiagonal() * d * s.cast<Complex>().asDiagonal());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(t, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo >= 0.0 ? kInf : -1.0 / lo;
}

// Newton system in NT-scaled coordinates (X̂ = Ŝ = Λ):
//   Ã(ΔX̂) = rp,   Ã*(Δy) + ΔŜ = R̂d,   ΔX̂ + ΔŜ = Z.
// Eliminating ΔŜ shows ΔX̂ is the point nearest to u = Z − R̂d on the affine
// set Ã(·) = rp, so it is computed as a projection with a QR factorisation of
// Ãᵀ instead of forming the Schur complement ÃÃᵀ, whose condition number is
// the square of that of Ã.
class NewtonSystem {
 public:
  NewtonSystem(const Operators& ops, const Scaling& sc)
      : ops_(ops), sc_(sc), qr_(ops.scaled_constraints(sc.g)) {
    ok_ = qr_.rank() == ops.problem().num_constraints();
  }

  bool ok() const { return ok_; }

  struct Direction {
    CMatrix dx, ds;          // unscaled
    CMatrix dx_hat, ds_hat;  // scaled
    RVector dy;
  };

  Direction solve(const RVector& rp, const CMatrix& rd, const CMatrix& z) const {
    const Eigen::Index n = z.rows();
    const Eigen::Index m = qr_.cols();
    const CMatrix rd_hat = herm(sc_.g.adjoint() * rd * sc_.g);
    RVector u(n * n);
    pack(herm(z - rd_hat), u.data());

    const auto r = qr_.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
    const RVector prp = qr_.colsPermutation().transpose() * rp;
    const RVector w = r.transpose().solve(prp);  // R^{-T} Pᵀ rp
    // v = u + Q(w − Qᵀu), with Q applied as its Householder sequence.
    RVector t = u;
    t.applyOnTheLeft(qr_.householderQ().transpose());
    const RVector qtu = t.head(m);
    t.head(m) = w - qtu;
    t.tail(t.size() - m).setZero();
    t.applyOnTheLeft(qr_.householderQ());
    const RVector v = u + t;
    const RVector dy_perm = r.solve(RVector(w - qtu));

    Direction d;
    d.dy = qr_.colsPermutation() * dy_perm;
    d.dx_hat = unpack(v, n);
    d.dx = herm(sc_.g * d.dx_hat * sc_.g.adjoint());
    d.ds = herm(rd - ops_.adjoint(d.dy));
    d.ds_hat = herm(sc_.g.adjoint() * d.ds * sc_.g);
    return d;
  }

 private:
  const Operators& ops_;
  const Scaling& sc_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  bool ok_ = false;
};

SdpPoint default_start(const SdpProblem& p) {
  const int n = p.dim();
  double xi = 1.0;
  double eta = std::max(1.0, p.cost.norm());
  for (int i = 0; i < p.num_constraints(); ++i) {
    double a_norm = 0.0;
    for (const auto& e : p.constraints[i].entries) a_norm += std::norm(e.value);
    a_norm = std::sqrt(a_norm);
    xi = std::max(xi, n * (1.0 + std::abs(p.rhs(i))) / (1.0 + a_norm));
    eta = std::max(eta, a_norm);
  }
  eta = std::max(1.0, eta / std::sqrt(static_cast<double>(n)));
  return {xi * CMatrix::Identity(n, n), RVector::Zero(p.num_constraints()),
          eta * CMatrix::Identity(n, n)};
}

}  // namespace

SdpSolution InteriorPointSolver::solve(const SdpProblem& problem, const SolverConfig& cfg,
                                       const std::optional<SdpPoint>& start) const {
  cfg.validate();
  const int n = problem.dim();
  const int m = problem.num_constraints();
  if (n < 1 || problem.rhs.size() != m) throw DimensionMismatch("malformed SDP problem");
  for (const auto& a : problem.constraints)
    if (a.dim != n) throw DimensionMismatch("SDP constraint dimension differs from cost");

  const Operators ops(problem);
  const CMatrix c = herm(problem.cost);
  const double b_norm = problem.rhs.norm();
  const double c_norm = c.norm();

  SdpPoint pt = start ? *start : default_start(problem);
  pt.x = herm(pt.x);
  pt.s = herm(pt.s);

  SdpSolution sol;
  SdpSolution best;
  bool have_best = false;
  for (int it = 0;; ++it) {
    const RVector rp = problem.rhs - ops.apply(pt.x);
    const CMatrix rd = herm(c - pt.s - ops.adjoint(pt.y));
    sol.primal_objective = inner(c, pt.x);
    sol.dual_objective = problem.rhs.dot(pt.y);
    sol.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    sol.dual_infeasibility = rd.norm() / (1.0 + c_norm);
    const double xs = inner(pt.x, pt.s);
    sol.relative_gap = std::abs(sol.primal_objective - sol.dual_objective) /
                       (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
    sol.iterations = it;
    sol.point = pt;

    if (!std::isfinite(sol.relative_gap) || !std::isfinite(xs)) {
      sol.status = SdpStatus::numerical_failure;
      break;
    }
    const double merit = std::max({sol.relative_gap, sol.primal_infeasibility, sol.dual_infeasibility});
    if (!have_best || merit < std::max({best.relative_gap, best.primal_infeasibility,
                                        best.dual_infeasibility})) {
      best = sol;
      have_best = true;
    }
    if (sol.relative_gap <= cfg.gap_tol && sol.primal_infeasibility <= cfg.feas_tol &&
        sol.dual_infeasibility <= cfg.feas_tol) {
      sol.status = SdpStatus::optimal;
      return sol;
    }
    if (it >= cfg.max_iter) {
      sol.status = SdpStatus::max_iter;
      break;
    }

    Scaling sc;
    if (!nt_scaling(pt.x, pt.s, sc)) {
      sol.status = SdpStatus::numerical_failure;
      break;
    }
    const NewtonSystem newton(ops, sc);
    if (!newton.ok()) {
      sol.status = SdpStatus::numerical_failure;
      break;
    }

    // Predictor (affine scaling): Z = −Λ.
    CMatrix z = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) z(i, i) = -sc.lambda(i);
    const auto aff = newton.solve(rp, rd, z);
    const double ap_aff = std::min(1.0, max_step(sc.lambda, aff.dx_hat));
    const double ad_aff = std::min(1.0, max_step(sc.lambda, aff.ds_hat));
    const double mu = xs / n;
    const double xs_aff = inner(CMatrix(pt.x + ap_aff * aff.dx), CMatrix(pt.s + ad_aff * aff.ds));
    const double sigma = std::clamp(std::pow(std::max(xs_aff, 0.0) / xs, 3.0), 0.0, 1.0);

    // Corrector: Λ∘Z = σμI − Λ² − ΔX̂_a∘ΔŜ_a, a diagonal Lyapunov equation.
    CMatrix target = -herm(aff.dx_hat * aff.ds_hat);
    for (int i = 0; i < n; ++i) target(i, i) += sigma * mu - sc.lambda(i) * sc.lambda(i);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) z(i, j) = 2.0 * target(i, j) / (sc.lambda(i) + sc.lambda(j));
    const auto dir = newton.solve(rp, rd, z);
    if (!finite(dir.dx) || !finite(dir.ds) || !dir.dy.allFinite()) {
      sol.status = SdpStatus::numerical_failure;
      break;
    }

    const double ap_max = max_step(sc.lambda, dir.dx_hat);
    const double ad_max = max_step(sc.lambda, dir.ds_hat);
    const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
    const double ap = std::min(1.0, gamma * ap_max);
    const double ad = std::min(1.0, gamma * ad_max);
    pt.x = herm(pt.x + ap * dir.dx);
    pt.y += ad * dir.dy;
    pt.s = herm(pt.s + ad * dir.ds);
  }
  // Did not converge: hand back the best iterate seen, flagged accordingly.
  const SdpStatus status = sol.status;
  best.status = status;
  return have_best ? best : sol;
}

const ConeSolver& default_cone_solver() {
  static const InteriorPointSolver solver;
  return solver;
}

}  // namespace qwd
