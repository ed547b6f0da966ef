#include "qwd/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "qwd/errors.hpp"
#include "qwd/nelder_mead.hpp"
#include "qwd/parallel.hpp"

namespace qwd {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": parameter " << p << " outside [0, 1]";
    throw InvalidInput(msg.str());
  }
}

// ρ = LL†/tr(LL†) with L read column-major from re/im pairs.
CMatrix factor_from_params(const RVector& x, int dim) {
  CMatrix l(dim, dim);
  for (int k = 0; k < dim * dim; ++k) l(k % dim, k / dim) = Complex(x(2 * k), x(2 * k + 1));
  return l;
}

RVector params_from_factor(const CMatrix& l) {
  const auto dim = l.rows();
  RVector x(2 * dim * dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) {
    x(2 * k) = l(k % dim, k / dim).real();
    x(2 * k + 1) = l(k % dim, k / dim).imag();
  }
  return x;
}

std::optional<DensityMatrix> state_from_params(const RVector& x, int dim) {
  const CMatrix l = factor_from_params(x, dim);
  const CMatrix p = l * l.adjoint();
  const double tr = p.trace().real();
  if (!(tr > 1e-12) || !std::isfinite(tr)) return std::nullopt;
  return DensityMatrix::normalized(p);
}

CMatrix start_factor(int restart, int dim, std::uint64_t seed) {
  if (restart == 0) return CMatrix::Identity(dim, dim);
  if (restart <= dim) {
    CMatrix l = CMatrix::Zero(dim, dim);
    l(restart - 1, restart - 1) = 1.0;
    return l;
  }
  RngStream rng(seed, static_cast<std::uint64_t>(restart));
  return rng.complex_gaussian(dim, dim);
}

}  // namespace

ChannelSpec::ChannelSpec(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidInput("channel needs at least one Kraus operator");
  const auto d = kraus_.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& k : kraus_) {
    if (k.rows() != d || k.cols() != d) throw DimensionMismatch("Kraus operators must be square and of one size");
    sum += k.adjoint() * k;
  }
  const double err = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(err <= kTolerance)) {
    std::ostringstream msg;
    msg << "channel is not trace preserving: max |Σ K†K − I| = " << err;
    throw InvalidInput(msg.str());
  }
}

ChannelSpec ChannelSpec::identity(int dim) { return ChannelSpec({CMatrix::Identity(dim, dim)}); }

ChannelSpec ChannelSpec::unitary(const CMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("unitary channel needs a square matrix");
  const double err = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (!(err <= kTolerance)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U†U − I| = " << err;
    throw InvalidInput(msg.str());
  }
  return ChannelSpec({u});
}

ChannelSpec ChannelSpec::depolarizing(double p) {
  check_probability(p, "depolarizing");
  std::vector<CMatrix> k{std::sqrt(1.0 - 0.75 * p) * pauli(0).matrix()};
  for (int j = 1; j <= 3; ++j) k.push_back(std::sqrt(0.25 * p) * pauli(j).matrix());
  return ChannelSpec(std::move(k));
}

ChannelSpec ChannelSpec::dephasing(double p) {
  check_probability(p, "dephasing");
  return ChannelSpec({std::sqrt(1.0 - p) * pauli(0).matrix(), std::sqrt(p) * pauli(3).matrix()});
}

ChannelSpec ChannelSpec::random(int dim, int num_kraus, RngStream& rng) {
  if (dim < 1 || num_kraus < 1) throw InvalidInput("random channel needs dim ≥ 1 and at least one Kraus operator");
  const CMatrix u = random_unitary(dim * num_kraus, rng);
  std::vector<CMatrix> k;
  for (int i = 0; i < num_kraus; ++i) k.push_back(u.block(i * dim, 0, dim, dim));
  return ChannelSpec(std::move(k));
}

DensityMatrix apply_channel(const ChannelSpec& phi, const DensityMatrix& rho) {
  if (phi.dim() != rho.dim()) throw DimensionMismatch("apply_channel: channel and state dimensions differ");
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : phi.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::normalized(out);
}

ChannelSpec compose(const ChannelSpec& outer, const ChannelSpec& inner) {
  if (outer.dim() != inner.dim()) throw DimensionMismatch("compose: channel dimensions differ");
  std::vector<CMatrix> k;
  for (const auto& a : outer.kraus())
    for (const auto& b : inner.kraus()) k.push_back(a * b);
  return ChannelSpec(std::move(k));
}

ChannelSpec tensor(const ChannelSpec& a, const ChannelSpec& b) {
  std::vector<CMatrix> k;
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) k.push_back(kron(x, y));
  return ChannelSpec(std::move(k));
}

ComplexityResult wasserstein_complexity(const ChannelSpec& phi, const CostOperator& c,
                                        const ComplexityOptions& opt, const SolverConfig& cfg) {
  if (opt.restarts < 1) throw InvalidInput("wasserstein_complexity: restarts must be at least 1");
  if (phi.dim() != c.dim) throw DimensionMismatch("wasserstein_complexity: channel and cost dimensions differ");
  const int dim = phi.dim();

  auto objective = [&](const RVector& x) {
    const auto rho = state_from_params(x, dim);
    if (!rho) return -std::numeric_limits<double>::infinity();
    return divergence(*rho, apply_channel(phi, *rho), c, cfg).value;
  };

  const auto n = static_cast<std::size_t>(opt.restarts);
  std::vector<NelderMeadResult> runs(n);
  parallel_for(n, opt.workers, [&](std::size_t r) {
    NelderMeadOptions nm;
    nm.max_evaluations = opt.max_evaluations;
    const CMatrix l0 = start_factor(static_cast<int>(r), dim, opt.seed);
    nm.initial_step = 0.5 * std::max(1e-3, l0.cwiseAbs().maxCoeff());
    runs[r] = nelder_mead_maximize(objective, params_from_factor(l0), nm);
  });

  ComplexityResult out;
  out.restarts_used = opt.restarts;
  std::size_t best = 0;
  for (std::size_t r = 0; r < n; ++r) {
    out.restarts.push_back({runs[r].initial_value, runs[r].value, runs[r].evaluations});
    if (runs[r].value > runs[best].value) best = r;
  }
  out.value = runs[best].value;
  out.argmax_state = *state_from_params(runs[best].x, dim);
  if (n == 1) {
    out.converged = false;
  } else {
    std::vector<double> values;
    for (const auto& run : runs) values.push_back(run.value);
    std::sort(values.rbegin(), values.rend());
    out.converged = values[0] - values[1] <= 1e-4;
  }
  return out;
}

ComplexityResult wasserstein_complexity(const ChannelSpec& phi, const ObservableSet& a,
                                        int restarts, const SolverConfig& cfg) {
  ComplexityOptions opt;
  opt.restarts = restarts;
  return wasserstein_complexity(phi, build_cost(a), opt, cfg);
}

SubadditivityReport subadditivity_report(const ChannelSpec& phi1, const ChannelSpec& phi2,
                                         const CostOperator& c, const ComplexityOptions& opt,
                                         const SolverConfig& cfg) {
  if (phi1.dim() != phi2.dim()) throw DimensionMismatch("subadditivity_report: channel dimensions differ");
  SubadditivityReport rep;
  rep.c_first = wasserstein_complexity(phi1, c, opt, cfg).value;
  rep.c_second = wasserstein_complexity(phi2, c, opt, cfg).value;
  rep.c_composite = wasserstein_complexity(compose(phi2, phi1), c, opt, cfg).value;
  rep.slack = rep.c_first + rep.c_second - rep.c_composite;
  rep.warning = rep.slack < -kSubadditivityTolerance;
  return rep;
}

SubadditivityReport subadditivity_report(const ChannelSpec& phi1, const ChannelSpec& phi2,
                                         const ObservableSet& a, int restarts,
                                         const SolverConfig& cfg) {
  ComplexityOptions opt;
  opt.restarts = restarts;
  return subadditivity_report(phi1, phi2, build_cost(a), opt, cfg);
}

}  // namespace qwd
