#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qwd/hermitian.hpp"

namespace qwd {

struct SolverConfig {
  double gap_tol = 1e-8;   // |pobj − dobj| / (1 + |pobj| + |dobj|)
  double feas_tol = 1e-8;  // relative primal and dual residuals
  int max_iter = 200;

  void validate() const;
};

/// Hermitian matrix stored as a coordinate list holding both triangles.
struct SparseHermitian {
  struct Entry {
    int row;
    int col;
    Complex value;
  };
  int dim = 0;
  std::vector<Entry> entries;

  static SparseHermitian from_dense(const CMatrix& m, double drop = 0.0);
  CMatrix to_dense() const;
  /// Re tr(this · x).
  double dot(const CMatrix& x) const;
};

/// Standard-form complex SDP
///
///   minimise ⟨C, X⟩  s.t.  ⟨A_i, X⟩ = b_i,  X ⪰ 0
///   maximise bᵀy     s.t.  C − Σ y_i A_i = S ⪰ 0
///
/// with ⟨A, B⟩ = Re tr(A B) over Hermitian matrices.
struct SdpProblem {
  CMatrix cost;
  std::vector<SparseHermitian> constraints;
  RVector rhs;

  int dim() const { return static_cast<int>(cost.rows()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
};

struct SdpPoint {
  CMatrix x;
  RVector y;
  CMatrix s;
};

enum class SdpStatus { optimal, max_iter, numerical_failure };

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpPoint point;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::numerical_failure;
};

/// Seam for substituting a different cone solver.
class ConeSolver {
 public:
  virtual ~ConeSolver() = default;
  virtual SdpSolution solve(const SdpProblem& problem, const SolverConfig& cfg,
                            const std::optional<SdpPoint>& start) const = 0;
};

/// Infeasible primal-dual path-following method with Nesterov–Todd scaling
/// and Mehrotra predictor–corrector steps, working directly on complex
/// Hermitian iterates.
class InteriorPointSolver final : public ConeSolver {
 public:
  SdpSolution solve(const SdpProblem& problem, const SolverConfig& cfg,
                    const std::optional<SdpPoint>& start) const override;
};

/// Process-wide default solver.
const ConeSolver& default_cone_solver();

}  // namespace qwd
