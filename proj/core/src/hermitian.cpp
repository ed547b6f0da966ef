#include "qwd/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qwd/errors.hpp"

namespace qwd {

namespace {

std::string dims_message(const char* what, int a, int b) {
  std::ostringstream os;
  os << what << ": dimension " << a << " vs " << b;
  return os.str();
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m, double tol) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DimensionMismatch("HermitianMatrix requires a nonempty square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= tol * scale)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (max |m - m†| = " << asym << ")";
    throw NotHermitian(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::hermitian_part(const CMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DimensionMismatch("HermitianMatrix requires a nonempty square matrix");
  }
  return HermitianMatrix(CMatrix(0.5 * (m + m.adjoint())), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(CMatrix::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(CMatrix::Zero(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& diag) {
  return HermitianMatrix(CMatrix(diag.cast<Complex>().asDiagonal()), Trusted{});
}

HermitianMatrix HermitianMatrix::transpose() const {
  return HermitianMatrix(CMatrix(m_.transpose()), Trusted{});
}

RVector HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double HermitianMatrix::min_eigenvalue() const { return eigenvalues()(0); }

double HermitianMatrix::max_eigenvalue() const {
  const RVector ev = eigenvalues();
  return ev(ev.size() - 1);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw DimensionMismatch(dims_message("operator+", dim(), o.dim()));
  return HermitianMatrix(CMatrix(m_ + o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw DimensionMismatch(dims_message("operator-", dim(), o.dim()));
  return HermitianMatrix(CMatrix(m_ - o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(CMatrix(m_ * s), Trusted{});
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {
  const double tr = h_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix must have unit trace (got " << tr << ")";
    throw NotDensity(os.str());
  }
  const double lo = h_.min_eigenvalue();
  if (!(lo >= -kEigenTolerance)) {
    std::ostringstream os;
    os << "density matrix must be positive semidefinite (min eigenvalue " << lo << ")";
    throw NotDensity(os.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  if (k < 0 || k >= dim) throw InvalidInput("basis_state index out of range");
  CVector psi = CVector::Zero(dim);
  psi(k) = 1.0;
  return pure(psi);
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidInput("pure state vector must be nonzero");
  return DensityMatrix(HermitianMatrix::hermitian_part(psi * psi.adjoint() / n2));
}

DensityMatrix DensityMatrix::normalized(const CMatrix& psd) {
  const double tr = psd.trace().real();
  if (!(tr > 0.0)) throw NotDensity("cannot normalise a matrix with non-positive trace");
  HermitianMatrix h = HermitianMatrix::hermitian_part(psd / tr);
  // Renormalise once more to remove the rounding left by the division.
  return DensityMatrix(h * (1.0 / h.trace()));
}

DensityMatrix DensityMatrix::transpose() const { return DensityMatrix(h_.transpose()); }

bool DensityMatrix::is_pure(double tol) const { return h_.max_eigenvalue() >= 1.0 - tol; }

// ---------------------------------------------------------------------------

ObservableSet::ObservableSet(std::vector<HermitianMatrix> observables)
    : observables_(std::move(observables)) {
  if (observables_.empty()) throw InvalidInput("observable set must be nonempty");
  const int d = observables_.front().dim();
  for (const auto& a : observables_) {
    if (a.dim() != d) throw DimensionMismatch(dims_message("observable set", d, a.dim()));
  }
}

// ---------------------------------------------------------------------------

Eigensystem eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.matrix());
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  CMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::hermitian_part(kron(a.matrix(), b.matrix()));
}

CMatrix partial_trace(const CMatrix& m, Keep keep, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
    throw DimensionMismatch(dims_message("partial_trace", static_cast<int>(m.rows()), d1 * d2));
  }
  if (keep == Keep::first) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& m, Keep keep, int d1, int d2) {
  return HermitianMatrix::hermitian_part(partial_trace(m.matrix(), keep, d1, d2));
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m) {
  Eigensystem es = eigh(m);
  if (!(es.values(0) >= -1e-10)) {
    std::ostringstream os;
    os << "sqrt_psd: matrix is not positive semidefinite (min eigenvalue " << es.values(0) << ")";
    throw NotPsd(os.str());
  }
  // Eigenvalues within rounding of zero are zero; their roots would not be.
  const double noise = 32.0 * m.dim() * std::numeric_limits<double>::epsilon() *
                       es.values.cwiseAbs().maxCoeff();
  const RVector roots =
      es.values.unaryExpr([noise](double v) { return v <= noise ? 0.0 : std::sqrt(v); });
  return HermitianMatrix::hermitian_part(es.vectors * roots.cast<Complex>().asDiagonal() *
                                         es.vectors.adjoint());
}

Complex hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(dims_message("hs_inner", a.dim(), b.dim()));
  // tr(a† b) = Σ conj(a_ij) b_ij
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
}

std::vector<HermitianMatrix> hermitian_basis(int dim) {
  if (dim < 1) throw InvalidInput("hermitian_basis requires dim >= 1");
  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim) * dim);
  const double h = std::sqrt(0.5);
  for (int k = 0; k < dim; ++k) {
    CMatrix e = CMatrix::Zero(dim, dim);
    e(k, k) = 1.0;
    basis.emplace_back(e);
  }
  for (int k = 0; k < dim; ++k) {
    for (int m = k + 1; m < dim; ++m) {
      CMatrix e = CMatrix::Zero(dim, dim);
      e(k, m) = h;
      e(m, k) = h;
      basis.emplace_back(e);
    }
  }
  for (int k = 0; k < dim; ++k) {
    for (int m = k + 1; m < dim; ++m) {
      CMatrix e = CMatrix::Zero(dim, dim);
      e(k, m) = Complex(0.0, -h);
      e(m, k) = Complex(0.0, h);
      basis.emplace_back(e);
    }
  }
  return basis;
}

HermitianMatrix pauli(int index) {
  CMatrix s(2, 2);
  switch (index) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw InvalidInput("Pauli index must be in 0..3");
  }
  return HermitianMatrix(s);
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

}  // namespace qwd
