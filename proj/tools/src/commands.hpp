#pragma once

#include <cstdint>
#include <string>

#include "manifest.hpp"
#include "qwd/sdp.hpp"

namespace qwd::cli {

struct SolverArgs {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  SolverConfig config() const { return {gap_tol, feas_tol, max_iter}; }
};

struct DistArgs {
  std::string rho, omega, cost = "symmetric";
  std::uint64_t seed = 0;
  bool dual = false;
  std::string out = "qwd-out";
  SolverArgs solver;
};

struct DivergenceArgs {
  std::string rho, omega, cost = "symmetric";
  std::uint64_t seed = 0;
  std::string out = "qwd-out";
  SolverArgs solver;
};

struct TriangleArgs {
  std::string rho, omega, tau, cost = "symmetric";
  std::uint64_t seed = 0;
  std::string out = "qwd-out";
  SolverArgs solver;
};

struct LatticeArgs {
  std::uint64_t seed = 1;
  int table_size = 4;
  double step = 0.1;
  int radius_bound = 100;
  std::string rho, tau, cost = "random:3";  // single scan when rho and tau are set
  int workers = 0;
  std::string out = "qwd-out";
  SolverArgs solver;
};

struct SweepArgs {
  int dim = 3;
  int samples = 4000;
  int rank = 0;
  std::string cost = "random:3";
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out = "qwd-out";
  SolverArgs solver;
};

struct SurfaceArgs {
  std::string scenario = "c2-deterministic";
  int resolution = 41;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out = "qwd-out";
  SolverArgs solver;
};

struct ComplexityArgs {
  std::string channel, channel2;
  int dim = 2;
  std::string cost = "symmetric";
  int restarts = 16;
  int max_evals = 600;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out = "qwd-out";
  SolverArgs solver;
};

int cmd_dist(const DistArgs& a, RunManifest& m);
int cmd_divergence(const DivergenceArgs& a, RunManifest& m);
int cmd_triangle(const TriangleArgs& a, RunManifest& m);
int cmd_lattice(const LatticeArgs& a, RunManifest& m);
int cmd_sweep(const SweepArgs& a, RunManifest& m);
int cmd_surface(const SurfaceArgs& a, RunManifest& m);
int cmd_complexity(const ComplexityArgs& a, RunManifest& m);

}  // namespace qwd::cli
