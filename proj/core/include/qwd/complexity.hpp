#pragma once

#include <cstdint>
#include <vector>

#include "qwd/cost.hpp"
#include "qwd/divergence.hpp"
#include "qwd/hermitian.hpp"
#include "qwd/rng.hpp"
#include "qwd/sdp.hpp"

namespace qwd {

/// Trace-preserving map in Kraus form, ρ ↦ Σ K_i ρ K_i†.
class ChannelSpec {
 public:
  static constexpr double kTolerance = 1e-9;

  /// Throws InvalidInput unless Σ K_i† K_i = I within 1e-9.
  explicit ChannelSpec(std::vector<CMatrix> kraus);

  static ChannelSpec identity(int dim);
  /// Throws InvalidInput unless u is unitary within 1e-9.
  static ChannelSpec unitary(const CMatrix& u);
  /// Qubit: {√(1−3p/4) I, √(p/4) σ_1, √(p/4) σ_2, √(p/4) σ_3}; p ∈ [0, 1].
  static ChannelSpec depolarizing(double p);
  /// Qubit: {√(1−p) I, √p σ_3}; p ∈ [0, 1].
  static ChannelSpec dephasing(double p);
  /// Random channel from a Haar isometry C^dim → C^dim ⊗ C^num_kraus.
  static ChannelSpec random(int dim, int num_kraus, RngStream& rng);

  int dim() const { return static_cast<int>(kraus_.front().rows()); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<CMatrix> kraus_;
};

DensityMatrix apply_channel(const ChannelSpec& phi, const DensityMatrix& rho);
/// outer ∘ inner.
ChannelSpec compose(const ChannelSpec& outer, const ChannelSpec& inner);
/// Φ₁ ⊗ Φ₂ with Kraus operators K_i ⊗ L_j.
ChannelSpec tensor(const ChannelSpec& a, const ChannelSpec& b);

struct ComplexityOptions {
  int restarts = 16;
  std::uint64_t seed = 0;
  int max_evaluations = 600;  // per restart
  int workers = 1;
};

struct RestartRecord {
  double initial_value = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

struct ComplexityResult {
  double value = 0.0;  // a lower bound on max_ρ d(ρ, Φ(ρ))
  DensityMatrix argmax_state = DensityMatrix::maximally_mixed(1);
  int restarts_used = 0;
  bool converged = false;  // best two restarts agree within 1e-4
  std::vector<RestartRecord> restarts;
};

/// Multi-start Nelder–Mead ascent of d(ρ, Φ(ρ)) over ρ = LL†/tr(LL†).
/// Starts: ½I-like maximally mixed, then computational basis states, then
/// Wishart draws keyed by (seed, restart).
ComplexityResult wasserstein_complexity(const ChannelSpec& phi, const CostOperator& c,
                                        const ComplexityOptions& opt,
                                        const SolverConfig& cfg = {});
ComplexityResult wasserstein_complexity(const ChannelSpec& phi, const ObservableSet& a,
                                        int restarts = 16, const SolverConfig& cfg = {});

struct SubadditivityReport {
  double c_first = 0.0;      // C_W(Φ₁)
  double c_second = 0.0;     // C_W(Φ₂)
  double c_composite = 0.0;  // C_W(Φ₂ ∘ Φ₁)
  double slack = 0.0;        // c_first + c_second − c_composite
  bool warning = false;      // slack < −5e-4
};

inline constexpr double kSubadditivityTolerance = 5e-4;

SubadditivityReport subadditivity_report(const ChannelSpec& phi1, const ChannelSpec& phi2,
                                         const CostOperator& c, const ComplexityOptions& opt,
                                         const SolverConfig& cfg = {});
SubadditivityReport subadditivity_report(const ChannelSpec& phi1, const ChannelSpec& phi2,
                                         const ObservableSet& a, int restarts = 16,
                                         const SolverConfig& cfg = {});

}  // namespace qwd
