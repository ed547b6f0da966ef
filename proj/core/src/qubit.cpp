#include "qwd/qubit.hpp"

#include <cmath>
#include <sstream>

#include "qwd/errors.hpp"

namespace qwd {

namespace {

void require_qubit(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 2) {
    std::ostringstream msg;
    msg << what << ": expected a qubit state, got dimension " << rho.dim();
    throw DimensionMismatch(msg.str());
  }
}

// 1 − √(1 − |b|²) with the radicand clamped at 0.
double purity_defect(const BlochVector& b) {
  const double r = b.norm();
  return 1.0 - std::sqrt(std::max(0.0, 1.0 - r * r));
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z) : b{x, y, z} {
  if (!(norm() <= 1.0 + kTolerance)) {
    std::ostringstream msg;
    msg << "Bloch vector (" << x << ", " << y << ", " << z << ") has norm " << norm() << " > 1";
    throw OutsideBlochBall(msg.str());
  }
}

double BlochVector::norm() const { return std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]); }

double distance(const BlochVector& a, const BlochVector& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double dot(const BlochVector& a, const BlochVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

BlochVector to_bloch(const DensityMatrix& rho) {
  require_qubit(rho, "to_bloch");
  const CMatrix& m = rho.matrix();
  // tr(ρσ1) = 2 Re ρ01, tr(ρσ2) = −2 Im ρ01, tr(ρσ3) = ρ00 − ρ11
  return BlochVector(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
}

DensityMatrix from_bloch(const BlochVector& b) {
  CMatrix m = pauli(0).matrix();
  for (int j = 0; j < 3; ++j) m += b[j] * pauli(j + 1).matrix();
  return DensityMatrix(HermitianMatrix::hermitian_part(0.5 * m));
}

double bloch_lower_bound(const DensityMatrix& rho, const DensityMatrix& omega) {
  require_qubit(omega, "bloch_lower_bound");
  return 4.0 * distance(to_bloch(rho), to_bloch(omega));
}

DualCertificate bloch_certificate(const DensityMatrix& rho, const DensityMatrix& omega) {
  const BlochVector br = to_bloch(rho);
  const BlochVector bw = to_bloch(omega);
  const double len = distance(br, bw);
  CMatrix y = CMatrix::Zero(2, 2);
  if (len > 0.0)
    for (int j = 0; j < 3; ++j) y += (4.0 * (bw[j] - br[j]) / len) * pauli(j + 1).matrix();
  const HermitianMatrix yh = HermitianMatrix::hermitian_part(y);
  return {-yh, yh};
}

double symmetric_self_distance_sq(const BlochVector& b) { return 4.0 * purity_defect(b); }

double symmetric_self_distance_sq(const DensityMatrix& rho) {
  return symmetric_self_distance_sq(to_bloch(rho));
}

bool corollary4_condition(const BlochVector& rho, const BlochVector& omega,
                          const BlochVector& tau) {
  const double ro = distance(rho, omega);
  const double ot = distance(omega, tau);
  const double lhs = 6.0 - 2.0 * dot(rho, tau) - 4.0 * ro - 4.0 * ot + 4.0 * purity_defect(omega);
  const double f1 = 4.0 * ro - 2.0 * purity_defect(rho) - 2.0 * purity_defect(omega);
  const double f2 = 4.0 * ot - 2.0 * purity_defect(omega) - 2.0 * purity_defect(tau);
  const double rhs = 2.0 * std::sqrt(std::max(0.0, f1)) * std::sqrt(std::max(0.0, f2));
  return lhs <= rhs;
}

BlochVector sample_uniform_ball(RngStream& rng) {
  double x, y, z, n;
  do {
    x = rng.normal();
    y = rng.normal();
    z = rng.normal();
    n = std::sqrt(x * x + y * y + z * z);
  } while (n == 0.0);
  const double r = std::cbrt(rng.uniform());
  return BlochVector(r * x / n, r * y / n, r * z / n);
}

Corollary4Rate corollary4_rate(std::uint64_t samples, std::uint64_t seed) {
  RngStream rng(seed, 0);
  Corollary4Rate out;
  out.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const BlochVector r = sample_uniform_ball(rng);
    const BlochVector w = sample_uniform_ball(rng);
    const BlochVector t = sample_uniform_ball(rng);
    if (corollary4_condition(r, w, t)) ++out.satisfied;
  }
  return out;
}

}  // namespace qwd
