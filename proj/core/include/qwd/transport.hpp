#pragma once

#include <optional>
#include <string>

#include "qwd/cost.hpp"
#include "qwd/hermitian.hpp"
#include "qwd/sdp.hpp"

namespace qwd {

enum class TransportStatus { optimal, max_iter, infeasible_detected };

std::string to_string(TransportStatus s);

/// Dual pair (X, Y): feasible when C − Y ⊗ I − I ⊗ Xᵀ ⪰ 0 (Xᵀ replaced by X
/// for a non-transposed cost). Its value is tr(Xρ) + tr(Yω).
struct DualCertificate {
  HermitianMatrix x;  // acts on the ρ side
  HermitianMatrix y;  // acts on the ω side
};

struct TransportResult {
  double squared_distance = 0.0;
  std::optional<DensityMatrix> coupling;  // primal solves
  std::optional<DualCertificate> certificates;  // dual solves
  double duality_gap = 0.0;  // relative, as measured by the cone solver
  int iterations = 0;
  TransportStatus status = TransportStatus::infeasible_detected;
};

/// Minimises tr(Π C) over couplings Π ⪰ 0 with tr₂Π = ω and tr₁Π = ρᵀ.
///
/// The problem is first restricted to supp(ω) ⊗ supp(ρᵀ), which every
/// coupling lives on; there the tensor coupling is strictly feasible, so the
/// interior-point method starts from a primal–dual feasible point even when
/// the inputs are pure. Throws SolverError unless the solve is optimal.
TransportResult solve_primal(const DensityMatrix& rho, const DensityMatrix& omega,
                             const CostOperator& c, const SolverConfig& cfg = {},
                             const ConeSolver& solver = default_cone_solver());

/// Maximises tr(Xρ) + tr(Yω) subject to C − Y ⊗ I − I ⊗ Xᵀ ⪰ 0. The solve
/// runs on the same reduced face as solve_primal; the certificate is lifted
/// to the full doubled space with large negative blocks on the kernels and
/// then made exactly feasible by shifting Y with the most negative slack
/// eigenvalue, so the reported value is a lower bound up to eigensolver
/// rounding. When ρ or ω is rank deficient the dual optimum is usually not
/// attained and the certificate trails the primal value by about 1e-8
/// relative.
TransportResult solve_dual(const DensityMatrix& rho, const DensityMatrix& omega,
                           const CostOperator& c, const SolverConfig& cfg = {},
                           const ConeSolver& solver = default_cone_solver());

/// tr(Π C).
double transport_cost(const CMatrix& coupling, const CostOperator& c);

/// ω ⊗ ρᵀ (ω ⊗ ρ for a non-transposed cost).
DensityMatrix tensor_coupling(const DensityMatrix& rho, const DensityMatrix& omega,
                              bool transpose = true);
double tensor_coupling_cost(const DensityMatrix& rho, const DensityMatrix& omega,
                            const CostOperator& c);

double dual_objective(const DensityMatrix& rho, const DensityMatrix& omega,
                      const DualCertificate& cert);
/// Minimum eigenvalue of C − Y ⊗ I − I ⊗ Xᵀ; nonnegative iff feasible.
double dual_slack(const CostOperator& c, const DualCertificate& cert);

/// Closed form when ρ or ω is pure (max eigenvalue ≥ 1 − 1e-9), where the
/// tensor product is the only coupling. Throws NotPure otherwise.
double pure_state_distance_sq(const DensityMatrix& rho, const DensityMatrix& omega,
                              const ObservableSet& a);

/// D²(ρ, ρ) = Σ_j ‖A_j √ρ − √ρ A_j‖²_HS, realised by the canonical purification.
double self_distance_sq(const DensityMatrix& rho, const ObservableSet& a);

}  // namespace qwd
