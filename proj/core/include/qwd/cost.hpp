#pragma once

#include "qwd/hermitian.hpp"

namespace qwd {

/// Quadratic cost C = Σ_j (A_j ⊗ I − I ⊗ B_j)² on the doubled space, with
/// B_j = A_jᵀ when `transpose` is set. The first tensor factor is the target
/// (ω) side, the second the source dual (ρᵀ) side.
struct CostOperator {
  int dim;                 // single-system dimension
  HermitianMatrix matrix;  // dim² × dim²
  ObservableSet source;
  bool transpose;
};

CostOperator build_cost(const ObservableSet& a, bool use_transpose = true);

/// build_cost({σ1, σ2, σ3}, true); spectrum {0, 8, 8, 8}.
CostOperator symmetric_cost();

/// All 4ⁿ − 1 nontrivial tensor products of Pauli matrices, lexicographic in
/// (j1, …, jn) with the all-identity word omitted.
ObservableSet pauli_product_set(int num_qubits);

ObservableSet qubit_paulis();

}  // namespace qwd
