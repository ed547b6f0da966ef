#pragma once

#include <array>
#include <cstdint>

#include "qwd/hermitian.hpp"
#include "qwd/rng.hpp"
#include "qwd/transport.hpp"

namespace qwd {

/// Pauli expectation vector of a qubit state; lies in the closed unit ball.
struct BlochVector {
  static constexpr double kTolerance = 1e-10;

  std::array<double, 3> b{0.0, 0.0, 0.0};

  BlochVector() = default;
  /// Throws OutsideBlochBall when |b| > 1 + 1e-10.
  BlochVector(double x, double y, double z);

  double norm() const;
  double operator[](int i) const { return b[static_cast<std::size_t>(i)]; }
};

double distance(const BlochVector& a, const BlochVector& b);
double dot(const BlochVector& a, const BlochVector& b);

/// b_j = tr(ρ σ_j). Throws DimensionMismatch unless dim = 2.
BlochVector to_bloch(const DensityMatrix& rho);
/// ½(I + b·σ).
DensityMatrix from_bloch(const BlochVector& b);

/// 4|b_ρ − b_ω|, a lower bound on D² for the symmetric cost.
double bloch_lower_bound(const DensityMatrix& rho, const DensityMatrix& omega);

/// The dual pair realising bloch_lower_bound: Y = 4 n·σ and X = −Y with n the
/// unit vector along b_ω − b_ρ (zero when the Bloch vectors coincide).
DualCertificate bloch_certificate(const DensityMatrix& rho, const DensityMatrix& omega);

/// 4(1 − √(1 − |b|²)), the symmetric-cost self-distance.
double symmetric_self_distance_sq(const DensityMatrix& rho);
double symmetric_self_distance_sq(const BlochVector& b);

/// Sufficient condition, from closed forms only, under which the triangle
/// inequality for the symmetric-cost divergence holds on (ρ, ω, τ).
/// Negative radicands are clamped to zero.
bool corollary4_condition(const BlochVector& rho, const BlochVector& omega,
                          const BlochVector& tau);

/// Uniform point in the Bloch ball: isotropic direction, radius U^{1/3}.
BlochVector sample_uniform_ball(RngStream& rng);

struct Corollary4Rate {
  std::uint64_t samples = 0;
  std::uint64_t satisfied = 0;
  double rate() const { return samples ? static_cast<double>(satisfied) / samples : 0.0; }
};

/// Fraction of uniform-ball triplets satisfying corollary4_condition.
Corollary4Rate corollary4_rate(std::uint64_t samples, std::uint64_t seed);

}  // namespace qwd
