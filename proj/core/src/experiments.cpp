#include "qwd/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "qwd/errors.hpp"
#include "qwd/parallel.hpp"
#include "qwd/qubit.hpp"
#include "qwd/rng.hpp"

namespace qwd {

namespace {

// Rethrows the active exception with `context` prefixed, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const ConcavityViolation& e) {
    throw ConcavityViolation(context + ": " + e.what());
  } catch (const SolverError& e) {
    throw SolverError(context + ": " + e.what());
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(context + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(context + ": " + e.what());
  } catch (const Error& e) {
    throw Error(context + ": " + e.what());
  }
}

GapRecord gap_against(const DensityMatrix& rho, const DensityMatrix& omega, const DensityMatrix& tau,
                      double d_rho_tau, const CostOperator& c, const SolverConfig& cfg,
                      SelfDistanceCache& cache) {
  GapRecord r;
  r.dim = rho.dim();
  r.d_rho_omega = divergence(rho, omega, c, cfg, &cache).value;
  r.d_omega_tau = divergence(omega, tau, c, cfg, &cache).value;
  r.d_rho_tau = d_rho_tau;
  r.gap = r.d_rho_omega + r.d_omega_tau - r.d_rho_tau;
  return r;
}

HermitianMatrix pauli_word(int j, int k) { return kron(pauli(j), pauli(k)); }

// ¼(I + Σ c·σ_j⊗σ_k)
HermitianMatrix two_qubit(std::initializer_list<std::tuple<int, int, double>> terms) {
  CMatrix m = CMatrix::Identity(4, 4);
  for (const auto& [j, k, c] : terms) m += c * pauli_word(j, k).matrix();
  return HermitianMatrix::hermitian_part(0.25 * m);
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void LatticeSpec::validate() const {
  if (!(step > 0.0)) throw InvalidInput("lattice step must be positive");
  if (radius_bound < 0) throw InvalidInput("lattice radius bound must be nonnegative");
  if (step * step * radius_bound > 1.0 + 1e-12)
    throw InvalidInput("lattice extends outside the Bloch ball: step² · radius_bound > 1");
}

std::vector<LatticePoint> lattice_points(const LatticeSpec& spec) {
  spec.validate();
  int r = 0;
  while ((r + 1) * (r + 1) <= spec.radius_bound) ++r;
  std::vector<LatticePoint> out;
  for (int j = -r; j <= r; ++j)
    for (int k = -r; k <= r; ++k)
      for (int l = -r; l <= r; ++l)
        if (j * j + k * k + l * l <= spec.radius_bound) out.push_back({j, k, l});
  return out;
}

LatticeScan lattice_scan(const DensityMatrix& rho, const DensityMatrix& tau, const CostOperator& c,
                         const LatticeSpec& spec, const SolverConfig& cfg, int workers) {
  if (rho.dim() != 2 || tau.dim() != 2 || c.dim != 2)
    throw DimensionMismatch("lattice_scan works on qubit states only");
  const auto points = lattice_points(spec);
  SelfDistanceCache cache;
  const double d_rho_tau = divergence(rho, tau, c, cfg, &cache).value;

  LatticeScan out;
  out.records.resize(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    const auto& p = points[i];
    try {
      const DensityMatrix omega =
          from_bloch(BlochVector(spec.step * p.j, spec.step * p.k, spec.step * p.l));
      out.records[i] = {p, gap_against(rho, omega, tau, d_rho_tau, c, cfg, cache)};
      out.records[i].gap.sampler_tag = "lattice";
    } catch (...) {
      rethrow_with_context("lattice point (" + std::to_string(p.j) + ", " + std::to_string(p.k) +
                           ", " + std::to_string(p.l) + ")");
    }
  });
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.records.size(); ++i)
    if (out.records[i].gap.gap < out.min_gap) {
      out.min_gap = out.records[i].gap.gap;
      out.argmin = i;
    }
  return out;
}

LatticeScan lattice_scan(const DensityMatrix& rho, const DensityMatrix& tau, const ObservableSet& a,
                         const LatticeSpec& spec, const SolverConfig& cfg) {
  return lattice_scan(rho, tau, build_cost(a), spec, cfg);
}

LatticeDraw lattice_state_pair(std::uint64_t seed, int n) {
  RngStream rng = RngStream(seed, 0).substream(static_cast<std::uint64_t>(n));
  DensityMatrix rho = random_state(2, 2, rng);
  DensityMatrix tau = random_state(2, 2, rng);
  return {std::move(rho), std::move(tau)};
}

ObservableSet lattice_observables(std::uint64_t seed, int m) {
  RngStream rng = RngStream(seed, 1).substream(static_cast<std::uint64_t>(m));
  return random_observables(2, 3, rng);
}

LatticeTable lattice_table(std::uint64_t seed, int size, const LatticeSpec& spec,
                           const SolverConfig& cfg, int workers) {
  if (size < 1) throw InvalidInput("lattice table size must be at least 1");
  LatticeTable out;
  out.size = size;
  for (int m = 0; m < size; ++m) {
    const CostOperator c = build_cost(lattice_observables(seed, m));
    for (int n = 0; n < size; ++n) {
      const auto draw = lattice_state_pair(seed, n);
      auto scan = lattice_scan(draw.rho, draw.tau, c, spec, cfg, workers);
      out.min_gaps.push_back(scan.min_gap);
      const std::string tag = "m" + std::to_string(m + 1) + "n" + std::to_string(n + 1);
      for (auto& r : scan.records) {
        r.gap.seed = seed;
        r.gap.sampler_tag = tag;
        out.records.push_back(std::move(r));
      }
    }
  }
  return out;
}

void SweepSpec::validate() const {
  if (dim < 1) throw InvalidInput("sweep dimension must be positive");
  if (samples < 1) throw InvalidInput("sweep needs at least one sample");
  if (observables < 1) throw InvalidInput("sweep needs at least one observable");
  if (rank < 0 || rank > dim) throw InvalidInput("sweep rank must lie in [1, dim] (0 = dim)");
}

SweepResult min_gap_sweep(const SweepSpec& spec, const SolverConfig& cfg, int workers) {
  spec.validate();
  const int rank = spec.effective_rank();
  const std::string tag = "wishart-r" + std::to_string(rank) + "-k" + std::to_string(spec.observables);
  SweepResult out;
  out.records.resize(static_cast<std::size_t>(spec.samples));
  parallel_for(out.records.size(), workers, [&](std::size_t i) {
    try {
      RngStream rng(spec.seed, i);
      const DensityMatrix rho = random_state(spec.dim, rank, rng);
      const DensityMatrix omega = random_state(spec.dim, rank, rng);
      const DensityMatrix tau = random_state(spec.dim, rank, rng);
      const CostOperator c = build_cost(random_observables(spec.dim, spec.observables, rng));
      GapRecord r = triangle_gap(rho, omega, tau, c, cfg);
      r.seed = spec.seed;
      r.sampler_tag = tag;
      out.records[i] = {i, std::move(r)};
    } catch (...) {
      rethrow_with_context("sample " + std::to_string(i));
    }
  });
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.records.size(); ++i)
    if (out.records[i].gap.gap < out.min_gap) {
      out.min_gap = out.records[i].gap.gap;
      out.argmin = i;
    }
  return out;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::c2_deterministic: return "c2-deterministic";
    case Scenario::c4_deterministic: return "c4-deterministic";
    case Scenario::c2_random: return "c2-random";
    case Scenario::c4_random: return "c4-random";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  for (Scenario s : {Scenario::c2_deterministic, Scenario::c4_deterministic, Scenario::c2_random,
                     Scenario::c4_random})
    if (to_string(s) == name) return s;
  throw InvalidInput("unknown surface scenario '" + name +
                     "' (expected c2-deterministic, c4-deterministic, c2-random or c4-random)");
}

void SurfaceSpec::validate() const {
  if (resolution < 2) throw InvalidInput("surface resolution must be at least 2");
}

HermitianMatrix SurfaceSetup::omega(double x, double y) const {
  switch (scenario) {
    case Scenario::c2_deterministic:
    case Scenario::c2_random: {
      const double z = scenario == Scenario::c2_deterministic ? 1.0 / std::sqrt(2.0) : 0.2;
      const CMatrix m =
          0.5 * (pauli(0).matrix() + x * pauli(1).matrix() + y * pauli(2).matrix() + z * pauli(3).matrix());
      return HermitianMatrix::hermitian_part(m);
    }
    case Scenario::c4_deterministic:
    case Scenario::c4_random:
      return two_qubit({{0, 1, x}, {0, 2, y}, {1, 0, 0.1}, {1, 1, 0.1}, {1, 2, 0.1}, {2, 0, 0.3}, {2, 2, 0.2}});
  }
  throw InvalidInput("unknown surface scenario");
}

SurfaceSetup surface_setup(const SurfaceSpec& spec) {
  RngStream rng(spec.seed, 0);
  switch (spec.scenario) {
    case Scenario::c2_deterministic: {
      const double r = 1.0 / std::sqrt(2.0);
      return {from_bloch(BlochVector(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0), 0.0)),
              from_bloch(BlochVector(0.0, 1.0 / 3.0, 0.25)),
              build_cost(ObservableSet({pauli(1), pauli(3)})),
              -r, r, -r, r, spec.scenario};
    }
    case Scenario::c2_random: {
      const double r = std::sqrt(24.0 / 25.0);
      DensityMatrix rho = random_state(2, 2, rng);
      DensityMatrix tau = random_state(2, 2, rng);
      CostOperator c = build_cost(random_observables(2, 3, rng));
      return {std::move(rho), std::move(tau), std::move(c), -r, r, -r, r, spec.scenario};
    }
    case Scenario::c4_deterministic:
      return {DensityMatrix(two_qubit({{1, 1, 0.1}, {2, 0, 0.2}, {3, 0, 0.3}})),
              DensityMatrix(two_qubit({{0, 3, 0.3}, {1, 3, 0.2}, {3, 0, 0.1}})),
              build_cost(pauli_product_set(2)),
              -0.7, 0.7, -0.5, 0.9, spec.scenario};
    case Scenario::c4_random: {
      DensityMatrix rho = random_state(4, 4, rng);
      DensityMatrix tau = random_state(4, 4, rng);
      CostOperator c = build_cost(random_observables(4, 3, rng));
      return {std::move(rho), std::move(tau), std::move(c), -0.7, 0.7, -0.5, 0.9, spec.scenario};
    }
  }
  throw InvalidInput("unknown surface scenario");
}

SurfaceResult gap_surface(const SurfaceSpec& spec, const SolverConfig& cfg, int workers) {
  spec.validate();
  const SurfaceSetup setup = surface_setup(spec);
  SurfaceResult out;
  out.spec = spec;
  out.x_min = setup.x_min;
  out.x_max = setup.x_max;
  out.y_min = setup.y_min;
  out.y_max = setup.y_max;

  const int n = spec.resolution;
  out.points.resize(static_cast<std::size_t>(n) * n);
  SelfDistanceCache cache;
  const double d_rho_tau = divergence(setup.rho, setup.tau, setup.cost, cfg, &cache).value;
  parallel_for(out.points.size(), workers, [&](std::size_t idx) {
    const int iy = static_cast<int>(idx) / n;
    const int ix = static_cast<int>(idx) % n;
    SurfacePoint& p = out.points[idx];
    p.x = ix == n - 1 ? setup.x_max : setup.x_min + (setup.x_max - setup.x_min) * ix / (n - 1);
    p.y = iy == n - 1 ? setup.y_max : setup.y_min + (setup.y_max - setup.y_min) * iy / (n - 1);
    const HermitianMatrix w = setup.omega(p.x, p.y);
    if (w.min_eigenvalue() < -DensityMatrix::kEigenTolerance) return;
    try {
      const DensityMatrix omega(w);
      p.gap = gap_against(setup.rho, omega, setup.tau, d_rho_tau, setup.cost, cfg, cache).gap;
    } catch (...) {
      rethrow_with_context("surface point (" + format_double(p.x) + ", " + format_double(p.y) + ")");
    }
  });
  out.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : out.points)
    if (p.gap) {
      ++out.evaluated;
      out.min_gap = std::min(out.min_gap, *p.gap);
    }
  return out;
}

void write_lattice_csv(std::ostream& os, const std::vector<LatticeRecord>& records) {
  os << "j,k,l," << gap_csv_header() << '\n';
  for (const auto& r : records)
    os << r.point.j << ',' << r.point.k << ',' << r.point.l << ',' << gap_csv_row(r.gap) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "sample," << gap_csv_header() << '\n';
  for (const auto& r : records) os << r.sample << ',' << gap_csv_row(r.gap) << '\n';
}

void write_surface_csv(std::ostream& os, const SurfaceResult& s) {
  os << "x,y,gap\n";
  for (const auto& p : s.points) {
    os << format_double(p.x) << ',' << format_double(p.y) << ',';
    if (p.gap) os << format_double(*p.gap);
    os << '\n';
  }
}

void write_surface_svg(std::ostream& os, const SurfaceResult& s) {
  const int n = s.spec.resolution;
  const double plot = 480.0, left = 60.0, top = 40.0, bar = 20.0;
  const double cell = plot / n;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : s.points)
    if (p.gap) {
      lo = std::min(lo, *p.gap);
      hi = std::max(hi, *p.gap);
    }
  if (!(lo <= hi)) lo = hi = 0.0;
  const double span = hi > lo ? hi - lo : 1.0;
  // Linear ramp from dark blue to yellow.
  auto colour = [&](double v) {
    const double t = (v - lo) / span;
    const int r = static_cast<int>(std::lround(30 + t * (250 - 30)));
    const int g = static_cast<int>(std::lround(40 + t * (220 - 40)));
    const int b = static_cast<int>(std::lround(120 + t * (40 - 120)));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  const double width = left + plot + 100.0, height = top + plot + 60.0;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
     << fixed(height, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << fixed(left) << "\" y=\"24\">gap, " << to_string(s.spec.scenario) << "</text>\n";
  for (std::size_t idx = 0; idx < s.points.size(); ++idx) {
    const auto& p = s.points[idx];
    if (!p.gap) continue;
    const int ix = static_cast<int>(idx) % n;
    const int iy = static_cast<int>(idx) / n;
    // y grows upwards
    os << "<rect x=\"" << fixed(left + ix * cell) << "\" y=\"" << fixed(top + (n - 1 - iy) * cell)
       << "\" width=\"" << fixed(cell) << "\" height=\"" << fixed(cell) << "\" fill=\""
       << colour(*p.gap) << "\"/>\n";
  }
  os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(plot)
     << "\" height=\"" << fixed(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double base = top + plot;
  os << "<text x=\"" << fixed(left) << "\" y=\"" << fixed(base + 16) << "\">" << fixed(s.x_min) << "</text>\n";
  os << "<text x=\"" << fixed(left + plot) << "\" y=\"" << fixed(base + 16) << "\" text-anchor=\"end\">"
     << fixed(s.x_max) << "</text>\n";
  os << "<text x=\"" << fixed(left + plot / 2) << "\" y=\"" << fixed(base + 36)
     << "\" text-anchor=\"middle\">x</text>\n";
  os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(base) << "\" text-anchor=\"end\">"
     << fixed(s.y_min) << "</text>\n";
  os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(top + 12) << "\" text-anchor=\"end\">"
     << fixed(s.y_max) << "</text>\n";
  os << "<text x=\"" << fixed(left - 40) << "\" y=\"" << fixed(top + plot / 2)
     << "\" text-anchor=\"middle\">y</text>\n";
  // colour bar
  const double bx = left + plot + 20.0;
  const int steps = 32;
  for (int i = 0; i < steps; ++i) {
    const double v = lo + span * (i + 0.5) / steps;
    os << "<rect x=\"" << fixed(bx) << "\" y=\"" << fixed(top + plot - (i + 1) * plot / steps)
       << "\" width=\"" << fixed(bar) << "\" height=\"" << fixed(plot / steps) << "\" fill=\""
       << colour(v) << "\"/>\n";
  }
  os << "<text x=\"" << fixed(bx + bar + 4) << "\" y=\"" << fixed(top + plot) << "\">" << fixed(lo, 4)
     << "</text>\n";
  os << "<text x=\"" << fixed(bx + bar + 4) << "\" y=\"" << fixed(top + 10) << "\">" << fixed(hi, 4)
     << "</text>\n";
  os << "</svg>\n";
}

}  // namespace qwd
