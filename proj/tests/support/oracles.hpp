#pragma once

// Independent reference implementations used to cross-check the library.
// They favour obviousness over speed.

#include <cmath>
#include <functional>

#include "qwd/hermitian.hpp"

namespace oracle {

using qwd::CMatrix;
using qwd::Complex;

/// (a ⊗ b)[(i·p + k), (j·q + l)] = a[i,j] b[k,l]
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Keep the first factor: out[i,j] = Σ_k m[(i,k),(j,k)].
inline CMatrix trace_out_second(const CMatrix& m, int d1, int d2) {
  CMatrix out = CMatrix::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j)
      for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
  return out;
}

/// Keep the second factor: out[k,l] = Σ_i m[(i,k),(i,l)].
inline CMatrix trace_out_first(const CMatrix& m, int d1, int d2) {
  CMatrix out = CMatrix::Zero(d2, d2);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i) out(k, l) += m(i * d2 + k, i * d2 + l);
  return out;
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         int iterations = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

/// tr(Π C) evaluated entrywise.
inline double trace_product(const CMatrix& a, const CMatrix& b) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, i);
  return acc.real();
}

}  // namespace oracle
