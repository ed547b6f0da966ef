#include "qwd/divergence.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qwd/errors.hpp"
#include "qwd/transport.hpp"

namespace qwd {

namespace {

void append_bytes(std::string& key, const CMatrix& m) {
  key.append(reinterpret_cast<const char*>(m.data()), sizeof(Complex) * m.size());
}

constexpr double kCoincidentStates = 1e-12;

std::string cache_key(const DensityMatrix& rho, const CostOperator& c) {
  std::string key;
  key.push_back(c.transpose ? 't' : 'n');
  append_bytes(key, rho.matrix());
  for (const auto& a : c.source) append_bytes(key, a.matrix());
  return key;
}

}  // namespace

double self_distance_sq(const DensityMatrix& rho, const CostOperator& c, const SolverConfig& cfg) {
  if (c.transpose) return self_distance_sq(rho, c.source);
  return solve_primal(rho, rho, c, cfg).squared_distance;
}

double SelfDistanceCache::get(const DensityMatrix& rho, const CostOperator& c,
                              const SolverConfig& cfg) {
  const std::string key = cache_key(rho, c);
  {
    std::shared_lock lock(mutex_);
    auto it = values_.find(key);
    if (it != values_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  const double v = self_distance_sq(rho, c, cfg);
  std::unique_lock lock(mutex_);
  values_.emplace(key, v);
  return v;
}

std::size_t SelfDistanceCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

std::size_t SelfDistanceCache::hits() const { return hits_.load(std::memory_order_relaxed); }

DivergenceValue divergence(const DensityMatrix& rho, const DensityMatrix& omega,
                           const CostOperator& c, const SolverConfig& cfg,
                           SelfDistanceCache* cache) {
  if (rho.dim() != omega.dim() || rho.dim() != c.dim)
    throw DimensionMismatch("divergence: states and cost must share a dimension");
  DivergenceValue out;
  if (cache) {
    out.d2_rho_rho = cache->get(rho, c, cfg);
    out.d2_omega_omega = cache->get(omega, c, cfg);
  } else {
    out.d2_rho_rho = self_distance_sq(rho, c, cfg);
    out.d2_omega_omega = self_distance_sq(omega, c, cfg);
  }
  if (c.transpose && frobenius_distance(rho.matrix(), omega.matrix()) <= kCoincidentStates) {
    // D²(ρ,ρ) is exactly the purification value; an SDP solve would only add
    // noise that the square root then magnifies.
    out.d2_rho_omega = 0.5 * (out.d2_rho_rho + out.d2_omega_omega);
  } else {
    out.d2_rho_omega = solve_primal(rho, omega, c, cfg).squared_distance;
  }
  out.raw_squared = out.d2_rho_omega - 0.5 * (out.d2_rho_rho + out.d2_omega_omega);
  if (out.raw_squared < -kDivergenceClampWindow) {
    std::ostringstream msg;
    msg << "divergence: D²(ρ,ω) − ½(D²(ρ,ρ) + D²(ω,ω)) = " << out.raw_squared
        << " is below −" << kDivergenceClampWindow;
    throw ConcavityViolation(msg.str());
  }
  out.value = std::sqrt(std::max(out.raw_squared, 0.0));
  return out;
}

DivergenceValue divergence(const DensityMatrix& rho, const DensityMatrix& omega,
                           const ObservableSet& a, const SolverConfig& cfg) {
  return divergence(rho, omega, build_cost(a), cfg);
}

GapRecord triangle_gap(const DensityMatrix& rho, const DensityMatrix& omega,
                       const DensityMatrix& tau, const CostOperator& c, const SolverConfig& cfg,
                       SelfDistanceCache* cache) {
  GapRecord r;
  r.dim = rho.dim();
  r.d_rho_omega = divergence(rho, omega, c, cfg, cache).value;
  r.d_omega_tau = divergence(omega, tau, c, cfg, cache).value;
  r.d_rho_tau = divergence(rho, tau, c, cfg, cache).value;
  r.gap = r.d_rho_omega + r.d_omega_tau - r.d_rho_tau;
  return r;
}

GapRecord triangle_gap(const DensityMatrix& rho, const DensityMatrix& omega,
                       const DensityMatrix& tau, const ObservableSet& a, const SolverConfig& cfg) {
  return triangle_gap(rho, omega, tau, build_cost(a), cfg);
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string gap_csv_header() { return "dim,seed,sampler-tag,d_rho_omega,d_omega_tau,d_rho_tau,gap"; }

std::string gap_csv_row(const GapRecord& r) {
  std::string row = std::to_string(r.dim) + ',' + std::to_string(r.seed) + ',' + r.sampler_tag;
  for (double v : {r.d_rho_omega, r.d_omega_tau, r.d_rho_tau, r.gap}) {
    row += ',';
    row += format_double(v);
  }
  return row;
}

}  // namespace qwd
