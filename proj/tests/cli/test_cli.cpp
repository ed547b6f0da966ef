#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return std::string(QWD_CLI_DATA) + "/" + name; }

// Runs qwd with `args` inside a fresh work directory named after the case.
class Workspace {
 public:
  explicit Workspace(const std::string& name) : dir_(fs::path(QWD_CLI_WORK) / name) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  const fs::path& dir() const { return dir_; }

  Run run(const std::string& args) const {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" + QWD_CLI_PATH + "' " + args +
                            " 2>'" + err.string() + "'";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }

 private:
  fs::path dir_;
};

double value_of(const std::string& text, const std::string& key) {
  const std::regex re("(^|\\n)" + key + " = ([-+0-9.eE]+|inf|nan)");
  std::smatch m;
  REQUIRE_MESSAGE(std::regex_search(text, m, re), "no '" << key << "' in: " << text);
  return std::stod(m[2].str());
}

}  // namespace

TEST_CASE("dist on the sharp qubit pair") {
  Workspace ws("dist_sharp");
  const Run r = ws.run("dist --rho " + data("rho_x.json") + " --omega " + data("omega_y.json") +
                       " --cost symmetric --dual");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(value_of(r.out, "D\\^2") == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(value_of(r.out, "dual value") == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(fs::exists(ws.dir() / "qwd-out" / "dist.csv"));
  CHECK(fs::exists(ws.dir() / "qwd-out" / "coupling.json"));
  CHECK(fs::exists(ws.dir() / "qwd-out" / "certificates.json"));
  CHECK(fs::exists(ws.dir() / "qwd-out" / "dist.manifest.json"));
}

TEST_CASE("dist of a state with itself under a commuting observable") {
  Workspace ws("dist_commuting");
  const Run r = ws.run("dist --rho " + data("rho_x.json") + " --omega " + data("rho_x.json") +
                       " --cost file:" + data("rho_x.json"));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(std::abs(value_of(r.out, "D\\^2")) < 1e-6);
}

TEST_CASE("mismatched dimensions exit with code 2") {
  Workspace ws("dist_dims");
  const Run r = ws.run("dist --rho " + data("rho_x.json") + " --omega " + data("qutrit.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("dimension") != std::string::npos);
}

TEST_CASE("invalid input exits with code 2") {
  Workspace ws("bad_input");
  CHECK(ws.run("dist --rho " + data("not_density.json") + " --omega " + data("rho_x.json")).code ==
        2);
  CHECK(ws.run("dist --rho " + data("absent.json") + " --omega " + data("rho_x.json")).code == 2);
  CHECK(ws.run("dist --rho " + data("rho_x.json") + " --omega " + data("rho_x.json") +
               " --cost random:x")
            .code == 2);
  CHECK(ws.run("sweep --bogus").code == 2);
  CHECK(ws.run("").code == 2);
  CHECK(ws.run("surface --scenario c3").code == 2);
}

TEST_CASE("solver failure exits with code 3") {
  Workspace ws("solver_fail");
  const Run r = ws.run("dist --rho " + data("mixed.json") + " --omega " + data("rho_x.json") +
                       " --solver-max-iter 1");
  CHECK(r.code == 3);
}

TEST_CASE("triangle with one state three times") {
  Workspace ws("triangle_same");
  const Run r = ws.run("triangle --rho " + data("mixed.json") + " --omega " + data("mixed.json") +
                       " --tau " + data("mixed.json"));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  std::istringstream csv(slurp(ws.dir() / "qwd-out" / "triangle.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK(std::abs(std::stod(row.substr(row.rfind(',') + 1))) <= 2e-6);
}

TEST_CASE("divergence writes its csv") {
  Workspace ws("divergence");
  const Run r = ws.run("divergence --rho " + data("rho_x.json") + " --omega " + data("mixed.json"));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(value_of(r.out, "d") > 0.0);
  CHECK(fs::exists(ws.dir() / "qwd-out" / "divergence.csv"));
}

TEST_CASE("sweep is byte-identical across runs and worker counts") {
  Workspace ws("sweep");
  for (const char* args : {"--out a", "--out b", "--workers 3 --out c"})
    REQUIRE(ws.run(std::string("sweep --dim 3 --samples 50 --seed 1 ") + args).code == 0);
  const std::string a = slurp(ws.dir() / "a" / "sweep.csv");
  CHECK(a.size() > 100);
  CHECK(a == slurp(ws.dir() / "b" / "sweep.csv"));
  CHECK(a == slurp(ws.dir() / "c" / "sweep.csv"));
}

TEST_CASE("replaying a manifest reproduces the outputs") {
  Workspace ws("replay");
  const Run r = ws.run("surface --scenario c2-deterministic --resolution 9 --out a");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const Run rp = ws.run("replay a/surface.manifest.json --out b");
  REQUIRE_MESSAGE(rp.code == 0, rp.err);
  CHECK(slurp(ws.dir() / "a" / "surface.csv") == slurp(ws.dir() / "b" / "surface.csv"));
  CHECK(slurp(ws.dir() / "a" / "surface.svg") == slurp(ws.dir() / "b" / "surface.svg"));
  // every point inside the disk has a positive gap
  std::istringstream csv(slurp(ws.dir() / "a" / "surface.csv"));
  std::string line;
  std::getline(csv, line);
  int filled = 0;
  while (std::getline(csv, line)) {
    const std::string gap = line.substr(line.rfind(',') + 1);
    if (gap.empty()) continue;
    ++filled;
    CHECK(std::stod(gap) > 0.0);
  }
  CHECK(filled > 0);
}

TEST_CASE("complexity of the identity channel") {
  Workspace ws("complexity");
  const Run r = ws.run("complexity --channel identity --dim 2 --restarts 2 --max-evals 60");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(fs::exists(ws.dir() / "qwd-out" / "complexity.csv"));
  CHECK(fs::exists(ws.dir() / "qwd-out" / "argmax_state.json"));
}
