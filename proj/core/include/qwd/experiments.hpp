#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwd/cost.hpp"
#include "qwd/divergence.hpp"
#include "qwd/hermitian.hpp"
#include "qwd/sdp.hpp"

namespace qwd {

/// Bloch-ball lattice {step·(j,k,l) : j² + k² + l² ≤ radius_bound}.
struct LatticeSpec {
  double step = 0.1;
  int radius_bound = 100;

  /// Throws InvalidInput unless step > 0, radius_bound ≥ 0 and every point
  /// lies in the closed unit ball.
  void validate() const;
};

struct LatticePoint {
  int j, k, l;
};

/// Integer enumeration, lexicographic in (j, k, l).
std::vector<LatticePoint> lattice_points(const LatticeSpec& spec);

struct LatticeRecord {
  LatticePoint point;
  GapRecord gap;
};

struct LatticeScan {
  double min_gap = 0.0;
  std::size_t argmin = 0;
  std::vector<LatticeRecord> records;
};

/// Triangle gap with ω over the lattice. Solver errors are rethrown with the
/// offending lattice point in the message.
LatticeScan lattice_scan(const DensityMatrix& rho, const DensityMatrix& tau, const CostOperator& c,
                         const LatticeSpec& spec = {}, const SolverConfig& cfg = {},
                         int workers = 1);
LatticeScan lattice_scan(const DensityMatrix& rho, const DensityMatrix& tau, const ObservableSet& a,
                         const LatticeSpec& spec = {}, const SolverConfig& cfg = {});

/// Seeded draws for the qubit table: state pair n and observable triple m.
struct LatticeDraw {
  DensityMatrix rho;
  DensityMatrix tau;
};
LatticeDraw lattice_state_pair(std::uint64_t seed, int n);
ObservableSet lattice_observables(std::uint64_t seed, int m);

struct LatticeTable {
  int size = 0;
  std::vector<double> min_gaps;  // row-major, (m, n)
  std::vector<LatticeRecord> records;  // all scans, tagged "m<m>n<n>"
};

/// size × size table of lattice min-gaps over pairs n and triples m.
LatticeTable lattice_table(std::uint64_t seed, int size = 4, const LatticeSpec& spec = {},
                           const SolverConfig& cfg = {}, int workers = 1);

struct SweepSpec {
  int dim = 3;
  int samples = 4000;
  int observables = 3;
  int rank = 0;  // 0 = dim
  std::uint64_t seed = 0;

  void validate() const;
  int effective_rank() const { return rank > 0 ? rank : dim; }
};

struct SweepRecord {
  std::uint64_t sample = 0;
  GapRecord gap;
};

struct SweepResult {
  double min_gap = 0.0;
  std::size_t argmin = 0;
  std::vector<SweepRecord> records;
};

/// Sample i draws ρ, ω, τ (Wishart of the given rank) and the observables from
/// RngStream(seed, i), so any sample can be reproduced on its own.
SweepResult min_gap_sweep(const SweepSpec& spec, const SolverConfig& cfg = {}, int workers = 1);

enum class Scenario { c2_deterministic, c4_deterministic, c2_random, c4_random };

std::string to_string(Scenario s);
/// Throws InvalidInput on an unknown name.
Scenario scenario_from_string(const std::string& name);

struct SurfaceSpec {
  Scenario scenario = Scenario::c2_deterministic;
  int resolution = 41;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> gap;  // empty outside the state space
};

struct SurfaceResult {
  SurfaceSpec spec;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  std::vector<SurfacePoint> points;  // row-major: y outer, x inner
  double min_gap = 0.0;
  std::size_t evaluated = 0;
};

/// The fixed part of a scenario: ρ, τ, the cost and the ω family.
struct SurfaceSetup {
  DensityMatrix rho;
  DensityMatrix tau;
  CostOperator cost;
  double x_min, x_max, y_min, y_max;
  /// ω(x, y) as a Hermitian matrix; it is a state only where PSD.
  HermitianMatrix omega(double x, double y) const;
  Scenario scenario;
};

SurfaceSetup surface_setup(const SurfaceSpec& spec);

SurfaceResult gap_surface(const SurfaceSpec& spec, const SolverConfig& cfg = {}, int workers = 1);

// CSV writers. Column order is fixed; numbers use format_double.
void write_lattice_csv(std::ostream& os, const std::vector<LatticeRecord>& records);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_surface_csv(std::ostream& os, const SurfaceResult& s);
/// Heatmap of the gap over the grid with a linear colour map; missing points
/// are left blank.
void write_surface_svg(std::ostream& os, const SurfaceResult& s);

}  // namespace qwd
