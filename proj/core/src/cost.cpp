#include "qwd/cost.hpp"

#include "qwd/errors.hpp"

namespace qwd {

CostOperator build_cost(const ObservableSet& a, bool use_transpose) {
  const int d = a.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix c = CMatrix::Zero(d * d, d * d);
  for (const auto& obs : a) {
    const CMatrix b = use_transpose ? CMatrix(obs.matrix().transpose()) : obs.matrix();
    const CMatrix diff = kron(obs.matrix(), id) - kron(id, b);
    c.noalias() += diff * diff;
  }
  return CostOperator{d, HermitianMatrix::hermitian_part(c), a, use_transpose};
}

ObservableSet qubit_paulis() { return ObservableSet({pauli(1), pauli(2), pauli(3)}); }

CostOperator symmetric_cost() { return build_cost(qubit_paulis(), true); }

ObservableSet pauli_product_set(int num_qubits) {
  if (num_qubits < 1) throw InvalidInput("pauli_product_set requires num_qubits >= 1");
  if (num_qubits > 3) throw InvalidInput("pauli_product_set supports at most 3 qubits");
  std::size_t words = 1;
  for (int q = 0; q < num_qubits; ++q) words *= 4;

  std::vector<HermitianMatrix> out;
  out.reserve(words - 1);
  for (std::size_t w = 1; w < words; ++w) {
    // Digits of w in base 4, most significant first, give (j1, ..., jn).
    CMatrix m = CMatrix::Identity(1, 1);
    std::size_t div = words / 4;
    for (int q = 0; q < num_qubits; ++q) {
      const int j = static_cast<int>((w / div) % 4);
      m = kron(m, pauli(j).matrix());
      div = div == 1 ? 1 : div / 4;
    }
    out.push_back(HermitianMatrix::hermitian_part(m));
  }
  return ObservableSet(std::move(out));
}

}  // namespace qwd
