#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qwd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Dense complex square matrix that is Hermitian by construction.
///
/// The constructor checks `m(i,j) == conj(m(j,i))` to a tolerance relative to
/// the largest entry and then stores the exact Hermitian part, so downstream
/// code may rely on bitwise symmetry.
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit HermitianMatrix(CMatrix m, double tol = kTolerance);

  /// Hermitian part (m + m†)/2 without validation.
  static HermitianMatrix hermitian_part(const CMatrix& m);
  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const RVector& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  HermitianMatrix transpose() const;
  /// Ascending eigenvalues.
  RVector eigenvalues() const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix operator-() const { return *this * -1.0; }

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}

  CMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  static constexpr double kEigenTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kPurityTolerance = 1e-9;

  explicit DensityMatrix(HermitianMatrix h);
  explicit DensityMatrix(CMatrix m) : DensityMatrix(HermitianMatrix(std::move(m))) {}

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix basis_state(int dim, int k);
  /// |ψ⟩⟨ψ| / ⟨ψ|ψ⟩.
  static DensityMatrix pure(const CVector& psi);
  /// X / tr X for PSD X; used for Wishart normalisation and channel outputs.
  static DensityMatrix normalized(const CMatrix& psd);

  int dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }
  DensityMatrix transpose() const;

  bool is_pure(double tol = kPurityTolerance) const;

 private:
  HermitianMatrix h_;
};

/// Ordered, nonempty list of observables sharing one dimension.
class ObservableSet {
 public:
  explicit ObservableSet(std::vector<HermitianMatrix> observables);

  int dim() const { return observables_.front().dim(); }
  std::size_t size() const { return observables_.size(); }
  const HermitianMatrix& operator[](std::size_t i) const { return observables_[i]; }
  auto begin() const { return observables_.begin(); }
  auto end() const { return observables_.end(); }
  const std::vector<HermitianMatrix>& observables() const { return observables_; }

 private:
  std::vector<HermitianMatrix> observables_;
};

enum class Keep { first, second };

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

Eigensystem eigh(const HermitianMatrix& m);

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Partial trace of a (d1·d2)-dimensional operator. `Keep::first` traces out
/// the second factor and returns a d1×d1 matrix; `Keep::second` traces out the
/// first factor.
HermitianMatrix partial_trace(const HermitianMatrix& m, Keep keep, int d1, int d2);
CMatrix partial_trace(const CMatrix& m, Keep keep, int d1, int d2);

/// Unique PSD square root. Eigenvalues in [-1e-10, 0), and positive ones at
/// rounding level relative to the largest, are set to zero; anything more
/// negative throws NotPsd.
HermitianMatrix sqrt_psd(const HermitianMatrix& m);

/// tr(a† b).
Complex hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

/// Orthonormal Hermitian basis of dim² elements: diagonal units E_kk, then
/// (E_km + E_mk)/√2 for k < m, then i(E_mk − E_km)/√2 for k < m.
std::vector<HermitianMatrix> hermitian_basis(int dim);

/// Pauli matrices σ_0 = I, σ_1, σ_2, σ_3.
HermitianMatrix pauli(int index);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

}  // namespace qwd
