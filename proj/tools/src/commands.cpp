#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "qwd/complexity.hpp"
#include "qwd/cost.hpp"
#include "qwd/divergence.hpp"
#include "qwd/errors.hpp"
#include "qwd/experiments.hpp"
#include "qwd/io.hpp"
#include "qwd/transport.hpp"

namespace qwd::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory '" + dir + "': " + ec.message());
}

// Writes `contents` to dir/name and records it in the manifest.
void emit(RunManifest& m, const std::string& dir, const std::string& name, const std::string& contents) {
  write_file(join(dir, name), contents);
  m.outputs.push_back(name);
}

void finish(RunManifest& m, const std::string& dir, Clock::time_point start) {
  m.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  std::cout << "manifest: " << write_manifest(dir, m) << '\n';
}

void require_same_dim(const DensityMatrix& a, const char* an, const DensityMatrix& b, const char* bn) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "--" << an << " has dimension " << a.dim() << " but --" << bn << " has dimension " << b.dim();
    throw DimensionMismatch(msg.str());
  }
}

std::string cert_json(const DualCertificate& c) {
  return "{\"x\": " + matrix_to_json(c.x.matrix()) + ", \"y\": " + matrix_to_json(c.y.matrix()) + "}";
}

}  // namespace

int cmd_dist(const DistArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  const DensityMatrix rho = load_state(a.rho);
  const DensityMatrix omega = load_state(a.omega);
  require_same_dim(rho, "rho", omega, "omega");
  const CostOperator c = build_cost(observables_from_selector(a.cost, rho.dim(), a.seed));
  const SolverConfig cfg = a.solver.config();

  const TransportResult primal = solve_primal(rho, omega, c, cfg);
  std::cout << "D^2 = " << format_double(primal.squared_distance) << '\n'
            << "D = " << format_double(std::sqrt(primal.squared_distance)) << '\n'
            << "duality gap = " << format_double(primal.duality_gap) << '\n'
            << "status = " << to_string(primal.status) << '\n'
            << "iterations = " << primal.iterations << '\n';
  m.headline["squared_distance"] = primal.squared_distance;
  m.headline["duality_gap"] = primal.duality_gap;

  std::optional<TransportResult> dual;
  if (a.dual) {
    dual = solve_dual(rho, omega, c, cfg);
    if (dual->status != TransportStatus::optimal)
      throw SolverError("dual solve finished with status " + to_string(dual->status));
    std::cout << "dual value = " << format_double(dual->squared_distance) << '\n'
              << "certificates = " << cert_json(*dual->certificates) << '\n';
    m.headline["dual_value"] = dual->squared_distance;
  }

  prepare_dir(a.out);
  std::ostringstream csv;
  csv << "squared_distance,distance,duality_gap,iterations,dual_value\n"
      << format_double(primal.squared_distance) << ',' << format_double(std::sqrt(primal.squared_distance))
      << ',' << format_double(primal.duality_gap) << ',' << primal.iterations << ','
      << (dual ? format_double(dual->squared_distance) : "") << '\n';
  emit(m, a.out, "dist.csv", csv.str());
  emit(m, a.out, "coupling.json", matrix_to_json(primal.coupling->matrix()) + "\n");
  if (dual) emit(m, a.out, "certificates.json", cert_json(*dual->certificates) + "\n");
  finish(m, a.out, start);
  return 0;
}

int cmd_divergence(const DivergenceArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  const DensityMatrix rho = load_state(a.rho);
  const DensityMatrix omega = load_state(a.omega);
  require_same_dim(rho, "rho", omega, "omega");
  const CostOperator c = build_cost(observables_from_selector(a.cost, rho.dim(), a.seed));
  const DivergenceValue d = divergence(rho, omega, c, a.solver.config());

  std::cout << "d = " << format_double(d.value) << '\n'
            << "d^2 (raw) = " << format_double(d.raw_squared) << '\n'
            << "D^2(rho,omega) = " << format_double(d.d2_rho_omega) << '\n'
            << "D^2(rho,rho) = " << format_double(d.d2_rho_rho) << '\n'
            << "D^2(omega,omega) = " << format_double(d.d2_omega_omega) << '\n';
  m.headline["divergence"] = d.value;

  prepare_dir(a.out);
  std::ostringstream csv;
  csv << "d,raw_squared,d2_rho_omega,d2_rho_rho,d2_omega_omega\n"
      << format_double(d.value) << ',' << format_double(d.raw_squared) << ',' << format_double(d.d2_rho_omega)
      << ',' << format_double(d.d2_rho_rho) << ',' << format_double(d.d2_omega_omega) << '\n';
  emit(m, a.out, "divergence.csv", csv.str());
  finish(m, a.out, start);
  return 0;
}

int cmd_triangle(const TriangleArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  const DensityMatrix rho = load_state(a.rho);
  const DensityMatrix omega = load_state(a.omega);
  const DensityMatrix tau = load_state(a.tau);
  require_same_dim(rho, "rho", omega, "omega");
  require_same_dim(rho, "rho", tau, "tau");
  const CostOperator c = build_cost(observables_from_selector(a.cost, rho.dim(), a.seed));
  GapRecord r = triangle_gap(rho, omega, tau, c, a.solver.config());
  r.seed = a.seed;
  r.sampler_tag = "files";

  std::cout << "d(rho,omega) = " << format_double(r.d_rho_omega) << '\n'
            << "d(omega,tau) = " << format_double(r.d_omega_tau) << '\n'
            << "d(rho,tau) = " << format_double(r.d_rho_tau) << '\n'
            << "gap = " << format_double(r.gap) << '\n';
  m.headline["gap"] = r.gap;

  prepare_dir(a.out);
  emit(m, a.out, "triangle.csv", gap_csv_header() + "\n" + gap_csv_row(r) + "\n");
  finish(m, a.out, start);
  return 0;
}

int cmd_lattice(const LatticeArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  const LatticeSpec spec{a.step, a.radius_bound};
  const SolverConfig cfg = a.solver.config();
  prepare_dir(a.out);

  if (!a.rho.empty() || !a.tau.empty()) {
    if (a.rho.empty() || a.tau.empty()) throw InvalidInput("a single lattice scan needs both --rho and --tau");
    const DensityMatrix rho = load_state(a.rho);
    const DensityMatrix tau = load_state(a.tau);
    require_same_dim(rho, "rho", tau, "tau");
    const CostOperator c = build_cost(observables_from_selector(a.cost, rho.dim(), a.seed));
    LatticeScan scan = lattice_scan(rho, tau, c, spec, cfg, a.workers);
    for (auto& r : scan.records) r.gap.seed = a.seed;
    const auto& p = scan.records[scan.argmin].point;
    std::cout << "lattice points = " << scan.records.size() << '\n'
              << "min-gap = " << format_double(scan.min_gap) << " at (" << p.j << ", " << p.k << ", " << p.l
              << ")\n";
    m.headline["min_gap"] = scan.min_gap;
    std::ostringstream csv;
    write_lattice_csv(csv, scan.records);
    emit(m, a.out, "lattice.csv", csv.str());
    finish(m, a.out, start);
    return 0;
  }

  if (a.cost != "random:3")
    throw InvalidInput("the lattice table draws its own observable triples; --cost applies to --rho/--tau scans");
  const LatticeTable table = lattice_table(a.seed, a.table_size, spec, cfg, a.workers);
  std::ostringstream summary;
  summary << "m,n,min_gap\n";
  double overall = std::numeric_limits<double>::infinity();
  std::cout << "min-gap table (rows m = observable triple, columns n = state pair)\n";
  for (int i = 0; i < table.size; ++i) {
    for (int j = 0; j < table.size; ++j) {
      const double g = table.min_gaps[static_cast<std::size_t>(i * table.size + j)];
      overall = std::min(overall, g);
      summary << i + 1 << ',' << j + 1 << ',' << format_double(g) << '\n';
      std::cout << (j ? "  " : "") << format_double(g);
    }
    std::cout << '\n';
  }
  std::cout << "min-gap = " << format_double(overall) << '\n';
  m.headline["min_gap"] = overall;
  std::ostringstream csv;
  write_lattice_csv(csv, table.records);
  emit(m, a.out, "lattice.csv", csv.str());
  emit(m, a.out, "lattice_table.csv", summary.str());
  finish(m, a.out, start);
  return 0;
}

int cmd_sweep(const SweepArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  SweepSpec spec;
  spec.dim = a.dim;
  spec.samples = a.samples;
  spec.rank = a.rank;
  spec.seed = a.seed;
  const std::string prefix = "random:";
  if (a.cost.rfind(prefix, 0) != 0)
    throw InvalidInput("sweep draws fresh observables per sample; use --cost random:<k>");
  try {
    spec.observables = std::stoi(a.cost.substr(prefix.size()));
  } catch (const std::exception&) {
    throw InvalidInput("--cost " + a.cost + ": expected random:<k>");
  }
  prepare_dir(a.out);
  const SweepResult res = min_gap_sweep(spec, a.solver.config(), a.workers);
  std::cout << "samples = " << res.records.size() << '\n'
            << "min-gap = " << format_double(res.min_gap) << " (sample " << res.argmin << ")\n";
  m.headline["min_gap"] = res.min_gap;
  m.headline["argmin_sample"] = res.argmin;
  std::ostringstream csv;
  write_sweep_csv(csv, res.records);
  emit(m, a.out, "sweep.csv", csv.str());
  finish(m, a.out, start);
  return 0;
}

int cmd_surface(const SurfaceArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  SurfaceSpec spec;
  spec.scenario = scenario_from_string(a.scenario);
  spec.resolution = a.resolution;
  spec.seed = a.seed;
  prepare_dir(a.out);
  const SurfaceResult s = gap_surface(spec, a.solver.config(), a.workers);
  std::cout << "scenario = " << to_string(spec.scenario) << '\n'
            << "evaluated points = " << s.evaluated << " of " << s.points.size() << '\n'
            << "min-gap = " << format_double(s.min_gap) << '\n';
  m.headline["min_gap"] = s.min_gap;
  m.headline["evaluated"] = s.evaluated;
  std::ostringstream csv, svg;
  write_surface_csv(csv, s);
  write_surface_svg(svg, s);
  emit(m, a.out, "surface.csv", csv.str());
  emit(m, a.out, "surface.svg", svg.str());
  finish(m, a.out, start);
  return 0;
}

int cmd_complexity(const ComplexityArgs& a, RunManifest& m) {
  const auto start = Clock::now();
  const ChannelSpec phi1 = channel_from_selector(a.channel, a.dim);
  const CostOperator c = build_cost(observables_from_selector(a.cost, phi1.dim(), a.seed));
  ComplexityOptions opt;
  opt.restarts = a.restarts;
  opt.seed = a.seed;
  opt.max_evaluations = a.max_evals;
  opt.workers = a.workers;
  const SolverConfig cfg = a.solver.config();
  prepare_dir(a.out);

  std::ostringstream csv;
  csv << "channel,restart,initial_value,value,evaluations\n";
  auto run = [&](const std::string& label, const ChannelSpec& phi) {
    const ComplexityResult r = wasserstein_complexity(phi, c, opt, cfg);
    for (std::size_t i = 0; i < r.restarts.size(); ++i)
      csv << label << ',' << i << ',' << format_double(r.restarts[i].initial_value) << ','
          << format_double(r.restarts[i].value) << ',' << r.restarts[i].evaluations << '\n';
    std::cout << "C_W(" << label << ") >= " << format_double(r.value)
              << (r.converged ? "" : "  (best restarts disagree by more than 1e-4)") << '\n';
    return r;
  };

  const ComplexityResult first = run("first", phi1);
  m.headline["complexity_lower_bound"] = first.value;
  emit(m, a.out, "argmax_state.json", matrix_to_json(first.argmax_state.matrix()) + "\n");

  if (!a.channel2.empty()) {
    const ChannelSpec phi2 = channel_from_selector(a.channel2, phi1.dim());
    if (phi2.dim() != phi1.dim()) throw DimensionMismatch("--channel and --channel2 have different dimensions");
    const double c2 = run("second", phi2).value;
    const double cc = run("composite", compose(phi2, phi1)).value;
    const double slack = first.value + c2 - cc;
    const bool warn = slack < -kSubadditivityTolerance;
    std::cout << "subadditivity slack = " << format_double(slack)
              << (warn ? "  (negative beyond 5e-4: optimizer shortfall)" : "") << '\n';
    m.headline["subadditivity_slack"] = slack;
    emit(m, a.out, "subadditivity.csv",
         "c_first,c_second,c_composite,slack,warning\n" + format_double(first.value) + ',' + format_double(c2) +
             ',' + format_double(cc) + ',' + format_double(slack) + ',' + (warn ? "1" : "0") + "\n");
  }
  emit(m, a.out, "complexity.csv", csv.str());
  finish(m, a.out, start);
  return 0;
}

}  // namespace qwd::cli
