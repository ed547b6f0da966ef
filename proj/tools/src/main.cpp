#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "manifest.hpp"
#include "qwd/errors.hpp"
#include "qwd/io.hpp"

namespace {

using namespace qwd::cli;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;

void add_solver(CLI::App* sub, SolverArgs& s) {
  sub->add_option("--solver-gap-tol", s.gap_tol, "Relative duality-gap tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--solver-feas-tol", s.feas_tol, "Relative feasibility tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--solver-max-iter", s.max_iter, "Interior-point iteration cap")->check(CLI::PositiveNumber);
}

// Resolved value of every option of `sub`, defaults included.
void capture_parameters(CLI::App* sub, RunManifest& m) {
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->get_type_size() == 0) {
      m.parameters[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      m.parameters[name] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      m.parameters[name] = opt->get_default_str();
    }
  }
  if (m.parameters.contains("seed")) m.seed = std::stoull(m.parameters["seed"].get<std::string>());
}

int run(const std::vector<std::string>& args);

int dispatch(int argc, char** argv) {
  CLI::App app{"Quantum Wasserstein distances, divergences and the triangle-inequality experiments"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  DistArgs dist;
  auto* s_dist = app.add_subcommand("dist", "Quantum Wasserstein distance D^2 between two states");
  s_dist->add_option("--rho", dist.rho, "State file (matrix JSON)")->required();
  s_dist->add_option("--omega", dist.omega, "State file (matrix JSON)")->required();
  s_dist->add_option("--cost", dist.cost, "symmetric | pauli-products:<n> | random:<k> | file:<path>");
  s_dist->add_option("--seed", dist.seed, "Seed for random:<k> costs");
  s_dist->add_flag("--dual", dist.dual, "Also solve the dual and print its certificates");
  s_dist->add_option("--out", dist.out, "Output directory");
  add_solver(s_dist, dist.solver);

  DivergenceArgs div;
  auto* s_div = app.add_subcommand("divergence", "Wasserstein divergence d between two states");
  s_div->add_option("--rho", div.rho, "State file")->required();
  s_div->add_option("--omega", div.omega, "State file")->required();
  s_div->add_option("--cost", div.cost, "Cost selector");
  s_div->add_option("--seed", div.seed, "Seed for random:<k> costs");
  s_div->add_option("--out", div.out, "Output directory");
  add_solver(s_div, div.solver);

  TriangleArgs tri;
  auto* s_tri = app.add_subcommand("triangle", "Triangle-inequality gap d(rho,omega) + d(omega,tau) - d(rho,tau)");
  s_tri->add_option("--rho", tri.rho, "State file")->required();
  s_tri->add_option("--omega", tri.omega, "State file")->required();
  s_tri->add_option("--tau", tri.tau, "State file")->required();
  s_tri->add_option("--cost", tri.cost, "Cost selector");
  s_tri->add_option("--seed", tri.seed, "Seed for random:<k> costs");
  s_tri->add_option("--out", tri.out, "Output directory");
  add_solver(s_tri, tri.solver);

  LatticeArgs lat;
  auto* s_lat = app.add_subcommand("lattice", "Qubit lattice scan of the triangle gap");
  s_lat->add_option("--seed", lat.seed, "Seed for the state pairs and observable triples");
  s_lat->add_option("--table-size", lat.table_size, "Pairs and triples in the table")->check(CLI::PositiveNumber);
  s_lat->add_option("--step", lat.step, "Lattice spacing in Bloch coordinates");
  s_lat->add_option("--radius-bound", lat.radius_bound, "Keep j^2 + k^2 + l^2 <= bound");
  s_lat->add_option("--rho", lat.rho, "Scan a single pair: first state file");
  s_lat->add_option("--tau", lat.tau, "Scan a single pair: second state file");
  s_lat->add_option("--cost", lat.cost, "Cost selector for single-pair scans");
  s_lat->add_option("--workers", lat.workers, "Worker threads (0 = all cores)");
  s_lat->add_option("--out", lat.out, "Output directory");
  add_solver(s_lat, lat.solver);

  SweepArgs sw;
  auto* s_sw = app.add_subcommand("sweep", "Minimal triangle gap over random Wishart triplets");
  s_sw->add_option("--dim", sw.dim, "Hilbert-space dimension")->check(CLI::Range(1, 8));
  s_sw->add_option("--samples", sw.samples, "Number of triplets")->check(CLI::PositiveNumber);
  s_sw->add_option("--rank", sw.rank, "Wishart rank (0 = dim)")->check(CLI::NonNegativeNumber);
  s_sw->add_option("--cost", sw.cost, "random:<k>, fresh observables per sample");
  s_sw->add_option("--seed", sw.seed, "Seed");
  s_sw->add_option("--workers", sw.workers, "Worker threads (0 = all cores)");
  s_sw->add_option("--out", sw.out, "Output directory");
  add_solver(s_sw, sw.solver);

  SurfaceArgs sf;
  auto* s_sf = app.add_subcommand("surface", "Gap surface over a two-parameter family of middle states");
  s_sf->add_option("--scenario", sf.scenario, "c2-deterministic | c4-deterministic | c2-random | c4-random");
  s_sf->add_option("--resolution", sf.resolution, "Grid points per axis")->check(CLI::Range(2, 1000));
  s_sf->add_option("--seed", sf.seed, "Seed for the random scenarios");
  s_sf->add_option("--workers", sf.workers, "Worker threads (0 = all cores)");
  s_sf->add_option("--out", sf.out, "Output directory");
  add_solver(s_sf, sf.solver);

  ComplexityArgs cx;
  auto* s_cx = app.add_subcommand("complexity", "Wasserstein complexity of a channel (a lower bound)");
  s_cx->add_option("--channel", cx.channel,
                   "identity | unitary:<file> | depolarizing:<p> | dephasing:<p> | file:<kraus json>")
      ->required();
  s_cx->add_option("--channel2", cx.channel2, "Second channel: also report subadditivity");
  s_cx->add_option("--dim", cx.dim, "Dimension for the identity channel")->check(CLI::PositiveNumber);
  s_cx->add_option("--cost", cx.cost, "Cost selector");
  s_cx->add_option("--restarts", cx.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  s_cx->add_option("--max-evals", cx.max_evals, "Objective evaluations per restart")->check(CLI::PositiveNumber);
  s_cx->add_option("--seed", cx.seed, "Seed for restarts and random costs");
  s_cx->add_option("--workers", cx.workers, "Worker threads (0 = all cores)");
  s_cx->add_option("--out", cx.out, "Output directory");
  add_solver(s_cx, cx.solver);

  std::string manifest_path, replay_out;
  auto* s_rp = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
  s_rp->add_option("manifest", manifest_path, "Manifest JSON")->required();
  s_rp->add_option("--out", replay_out, "Override the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  RunManifest m;
  for (CLI::App* sub : {s_dist, s_div, s_tri, s_lat, s_sw, s_sf, s_cx})
    if (sub->parsed()) {
      m.command = sub->get_name();
      capture_parameters(sub, m);
    }
  if (s_dist->parsed()) return cmd_dist(dist, m);
  if (s_div->parsed()) return cmd_divergence(div, m);
  if (s_tri->parsed()) return cmd_triangle(tri, m);
  if (s_lat->parsed()) return cmd_lattice(lat, m);
  if (s_sw->parsed()) return cmd_sweep(sw, m);
  if (s_sf->parsed()) return cmd_surface(sf, m);
  if (s_cx->parsed()) return cmd_complexity(cx, m);

  const auto j = nlohmann::json::parse(qwd::read_file(manifest_path), nullptr, false);
  if (j.is_discarded()) throw qwd::InvalidInput(manifest_path + ": malformed JSON");
  RunManifest recorded = RunManifest::from_json(j);
  if (recorded.command == "replay") throw qwd::InvalidInput("a manifest cannot replay a replay");
  if (!replay_out.empty()) recorded.parameters["out"] = replay_out;
  return run(recorded.to_args());
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> owned{"qwd"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  return dispatch(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const qwd::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qwd::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
