#pragma once

#include <cstdint>
#include <random>

#include "qwd/hermitian.hpp"

namespace qwd {

/// Keyed random stream: a fixed (seed, stream) pair always produces the same
/// sequence, so sample i of an experiment can be drawn without touching
/// samples 0..i-1.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Independent child stream keyed by `index`.
  RngStream substream(std::uint64_t index) const;

  double normal();
  double uniform();
  /// Real and imaginary parts i.i.d. N(0,1).
  Complex complex_normal();
  CMatrix complex_gaussian(int rows, int cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Normalised Wishart state X X† / tr(X X†) with X of shape dim×rank.
DensityMatrix random_state(int dim, int rank, RngStream& rng);

/// Y + Y† with Y having i.i.d. complex Gaussian entries.
HermitianMatrix random_observable(int dim, RngStream& rng);

ObservableSet random_observables(int dim, int count, RngStream& rng);

/// Haar-random unitary via QR of a complex Gaussian matrix.
CMatrix random_unitary(int dim, RngStream& rng);

}  // namespace qwd
