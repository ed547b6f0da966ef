#pragma once

#include "qwd/hermitian.hpp"

namespace qwd {

/// Second moments α = tr(Σ A_j² ω) and β = tr(Σ A_j² ρ).
struct HellingerBoundInput {
  double alpha = 0.0;
  double beta = 0.0;
};

HellingerBoundInput hellinger_input(const DensityMatrix& rho, const DensityMatrix& omega,
                                    const ObservableSet& a);

/// 2((α+β)/2 − √(αβ)); α + β when either moment vanishes.
double hellinger_bound(const HellingerBoundInput& in);

/// Lower bound on tr(ΠC) over all couplings Π, valid for PSD observables.
/// Throws NotPsd if some A_j has an eigenvalue below −1e-10.
double hellinger_lower_bound(const DensityMatrix& rho, const DensityMatrix& omega,
                             const ObservableSet& a);

/// Σ_j tr(A_j ρ A_j).
double energy(const DensityMatrix& rho, const ObservableSet& a);

}  // namespace qwd
