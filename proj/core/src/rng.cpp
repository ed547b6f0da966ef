#include "qwd/rng.hpp"

#include <array>

#include "qwd/errors.hpp"

namespace qwd {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::array<std::uint32_t, 4> key{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

// splitmix64 finaliser; mixes a parent key with a child index.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(seed_, mix(stream_ ^ mix(index)));
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

Complex RngStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

CMatrix RngStream::complex_gaussian(int rows, int cols) {
  CMatrix out(rows, cols);
  // Row-major fill so the draw order does not depend on Eigen's storage order.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = complex_normal();
  return out;
}

DensityMatrix random_state(int dim, int rank, RngStream& rng) {
  if (dim < 1 || rank < 1 || rank > dim) throw InvalidInput("random_state requires 1 <= rank <= dim");
  const CMatrix x = rng.complex_gaussian(dim, rank);
  return DensityMatrix::normalized(x * x.adjoint());
}

HermitianMatrix random_observable(int dim, RngStream& rng) {
  if (dim < 1) throw InvalidInput("random_observable requires dim >= 1");
  const CMatrix y = rng.complex_gaussian(dim, dim);
  return HermitianMatrix(CMatrix(y + y.adjoint()));
}

ObservableSet random_observables(int dim, int count, RngStream& rng) {
  if (count < 1) throw InvalidInput("random observable set needs at least one element");
  std::vector<HermitianMatrix> obs;
  obs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) obs.push_back(random_observable(dim, rng));
  return ObservableSet(std::move(obs));
}

CMatrix random_unitary(int dim, RngStream& rng) {
  const CMatrix z = rng.complex_gaussian(dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  // Fix column phases so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

}  // namespace qwd
