#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("vrm_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(VRM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("regret-sim: identical invocations produce byte-identical CSVs") {
  TempDir a("det_a"), b("det_b");
  CHECK(run("regret-sim --adversary constant --T 1000 --seed 7 --out " + a.str()) == 0);
  CHECK(run("regret-sim --adversary constant --T 1000 --seed 7 --out " + b.str()) == 0);
  const auto csv_a = slurp(a.path / "ledger_T1000_seed7.csv");
  const auto csv_b = slurp(b.path / "ledger_T1000_seed7.csv");
  CHECK(!csv_a.empty());
  CHECK(csv_a == csv_b);
}

TEST_CASE("regret-sim: multi-T run reports a sublinear slope on the delta instance") {
  TempDir out("slope");
  CHECK(run("regret-sim --learner vrm --T 500,2000,8000 --seeds 1,2,3 --jobs 3 --out " +
            out.str()) == 0);
  const std::string summary = slurp(out.path / "summary.json");
  CHECK(summary.find("\"slope\"") != std::string::npos);
  // crude but dependency-free: parse the slope value
  const auto pos = summary.find("\"slope\"");
  const double slope = std::stod(summary.substr(summary.find(':', pos) + 1));
  CHECK(slope < 1.0);
}

TEST_CASE("cli: usage errors exit with code 2 and write nothing") {
  TempDir out("usage");
  CHECK(run("regret-sim --adversary nonsense --out " + out.str()) == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("") == 2);
  CHECK(fs::is_empty(out.path));
}

TEST_CASE("cli: help exits zero") { CHECK(run("--help") == 0); }

TEST_CASE("regret-sim: every adversary and learner combination completes") {
  TempDir out("combos");
  int idx = 0;
  for (const std::string adv : {"constant", "piecewise", "sgd"}) {
    for (const std::string learner : {"vrm", "ons", "ogd"}) {
      const std::string dir = out.str() + "/" + std::to_string(idx++);
      CHECK(run("regret-sim --adversary " + adv + " --learner " + learner +
                " --instance random --n 6 --k 3 --T 300 --seed 2 --out " + dir) == 0);
      CHECK(fs::exists(fs::path(dir) / "ledger_T300_seed2.csv"));
    }
  }
}

TEST_CASE("regret-sim: components load from a CSV instance") {
  TempDir out("comp");
  const fs::path comp = out.path / "components.csv";
  {
    std::ofstream f(comp);
    f << "component,atom,prob\n0,0,0.9\n0,1,0.1\n1,1,0.8\n1,2,0.2\n";
  }
  const std::string dir = out.str() + "/art";
  CHECK(run("regret-sim --components-csv " + comp.string() +
            " --losses-sq 1,2,3 --T 200 --seed 1 --out " + dir) == 0);
  const std::string ledger = slurp(fs::path(dir) / "ledger_T200_seed1.csv");
  CHECK(ledger.find("w_3") != std::string::npos);  // two raw components + uniform
}

TEST_CASE("svm-blobs: per-seed artifacts plus a summary with final weights") {
  TempDir out("svm");
  CHECK(run("svm-blobs --n 300 --epochs 1 --seeds 1..3 --out " + out.str()) == 0);
  for (int s = 1; s <= 3; ++s) {
    CHECK(fs::exists(out.path / ("result_" + std::to_string(s) + ".csv")));
  }
  const std::string summary = slurp(out.path / "summary.json");
  CHECK(summary.find("final_weights") != std::string::npos);
  CHECK(summary.find("\"seeds\": \"1..3\"") != std::string::npos);
}

TEST_CASE("config file: flags override INI values") {
  TempDir out("ini");
  const fs::path ini = out.path / "run.ini";
  {
    std::ofstream f(ini);
    f << "[regret-sim]\nT=250\nseed=3\nadversary=constant\n";
  }
  const std::string sub = out.str() + "/art";
  CHECK(run("regret-sim --config " + ini.string() + " --T 400 --out " + sub) == 0);
  CHECK(fs::exists(fs::path(sub) / "ledger_T400_seed3.csv"));  // T overridden, seed from file
}

TEST_CASE("project-test subcommand reports success") { CHECK(run("project-test") == 0); }

TEST_CASE("kmeans and linreg-dpp accept CSV datasets") {
  TempDir out("csv");
  const fs::path pts = out.path / "points.csv";
  {
    std::ofstream f(pts);
    for (int i = 0; i < 120; ++i) {
      const double cx = (i % 3) * 20.0;
      f << cx + 0.1 * ((i * 37) % 11 - 5) << "," << 0.1 * ((i * 53) % 13 - 6) << "\n";
    }
  }
  const std::string kdir = out.str() + "/k";
  CHECK(run("kmeans --data-csv " + pts.string() +
            " --clusters 3 --batch 10 --iters 20 --components 2 --seeds 1 --out " + kdir) == 0);
  CHECK(fs::exists(fs::path(kdir) / "result_1.csv"));

  const fs::path reg = out.path / "reg.csv";
  {
    std::ofstream f(reg);
    for (int i = 0; i < 60; ++i) {
      const double x0 = 0.1 * ((i * 29) % 17 - 8), x1 = 0.1 * ((i * 41) % 19 - 9);
      f << x0 << "," << x1 << "," << 2.0 * x0 - x1 << "\n";
    }
  }
  const std::string ldir = out.str() + "/l";
  CHECK(run("linreg-dpp --data-csv " + reg.string() +
            " --epochs 3 --batch 3 --lambdas 1,10 --seeds 1 --out " + ldir) == 0);
  CHECK(fs::exists(fs::path(ldir) / "result_1.csv"));
  CHECK(slurp(fs::path(ldir) / "summary.json").find("reg.csv") != std::string::npos);
}

TEST_CASE("seed failures are recorded in the summary and the exit code is nonzero") {
  TempDir out("fail");
  const fs::path pts = out.path / "tiny.csv";
  {
    std::ofstream f(pts);
    for (int i = 0; i < 30; ++i) f << i << "," << 2 * i << "\n";
  }
  const std::string dir = out.str() + "/art";
  // more clusters than points: every seed fails, errors land in the summary
  CHECK(run("kmeans --data-csv " + pts.string() +
            " --clusters 100 --batch 5 --iters 10 --seeds 1,2 --out " + dir) == 1);
  const std::string summary = slurp(fs::path(dir) / "summary.json");
  CHECK(summary.find("\"errors\"") != std::string::npos);
  CHECK(summary.find("fewer points than clusters") != std::string::npos);
}

TEST_CASE("VRM_OUT_DIR provides the default output directory") {
  TempDir out("env");
  ::setenv("VRM_OUT_DIR", out.str().c_str(), 1);
  CHECK(run("regret-sim --T 200 --seed 1") == 0);
  ::unsetenv("VRM_OUT_DIR");
  CHECK(fs::exists(out.path / "ledger_T200_seed1.csv"));
}
