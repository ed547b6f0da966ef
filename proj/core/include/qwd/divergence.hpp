#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "qwd/cost.hpp"
#include "qwd/hermitian.hpp"
#include "qwd/sdp.hpp"

namespace qwd {

struct DivergenceValue {
  double value = 0.0;        // √max(raw_squared, 0)
  double raw_squared = 0.0;  // D²(ρ,ω) − ½(D²(ρ,ρ) + D²(ω,ω)) before clamping
  double d2_rho_omega = 0.0;
  double d2_rho_rho = 0.0;
  double d2_omega_omega = 0.0;
};

struct GapRecord {
  int dim = 0;
  std::uint64_t seed = 0;
  std::string sampler_tag;
  double d_rho_omega = 0.0;
  double d_omega_tau = 0.0;
  double d_rho_tau = 0.0;
  double gap = 0.0;  // d_rho_omega + d_omega_tau − d_rho_tau
};

/// Read-through cache of self-distances D²(ρ,ρ), keyed by the bytes of ρ and
/// of the cost's observables. Safe for concurrent use.
class SelfDistanceCache {
 public:
  double get(const DensityMatrix& rho, const CostOperator& c, const SolverConfig& cfg);
  std::size_t size() const;
  std::size_t hits() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, double> values_;
  std::atomic<std::size_t> hits_{0};
};

/// Raw values below this are treated as solver error rather than rounding.
inline constexpr double kDivergenceClampWindow = 1e-6;

/// D²(ρ,ρ): the purification formula for the transposed cost, otherwise an
/// SDP solve.
double self_distance_sq(const DensityMatrix& rho, const CostOperator& c, const SolverConfig& cfg);

/// d(ρ,ω) = √(D²(ρ,ω) − ½(D²(ρ,ρ) + D²(ω,ω))). Raw values in [−1e-6, 0) are
/// clamped to 0; anything lower raises ConcavityViolation. States closer than
/// 1e-12 in Frobenius norm are treated as equal, giving d = 0 exactly.
DivergenceValue divergence(const DensityMatrix& rho, const DensityMatrix& omega,
                           const CostOperator& c, const SolverConfig& cfg = {},
                           SelfDistanceCache* cache = nullptr);
DivergenceValue divergence(const DensityMatrix& rho, const DensityMatrix& omega,
                           const ObservableSet& a, const SolverConfig& cfg = {});

GapRecord triangle_gap(const DensityMatrix& rho, const DensityMatrix& omega,
                       const DensityMatrix& tau, const CostOperator& c,
                       const SolverConfig& cfg = {}, SelfDistanceCache* cache = nullptr);
GapRecord triangle_gap(const DensityMatrix& rho, const DensityMatrix& omega,
                       const DensityMatrix& tau, const ObservableSet& a,
                       const SolverConfig& cfg = {});

/// Shortest round-trip decimal form of a double; used by every CSV writer so
/// output bytes depend only on the values.
std::string format_double(double v);

/// "dim,seed,sampler-tag,d_rho_omega,d_omega_tau,d_rho_tau,gap"
std::string gap_csv_header();
std::string gap_csv_row(const GapRecord& r);

}  // namespace qwd
