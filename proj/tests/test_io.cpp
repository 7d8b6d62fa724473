#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>

#include "vrm/io.hpp"

using namespace vrm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("vrm_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("load_points_csv: plain rectangular data") {
  TempDir tmp;
  write(tmp.file("a.csv"), "1,2\n3,4\n");
  const Eigen::MatrixXd m = load_points_csv(tmp.file("a.csv"));
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 1) == 4.0);
}

TEST_CASE("load_points_csv: non-numeric first row is treated as a header") {
  TempDir tmp;
  write(tmp.file("h.csv"), "x,y\n1,2\n3,4\n");
  const Eigen::MatrixXd m = load_points_csv(tmp.file("h.csv"));
  CHECK(m.rows() == 2);
  CHECK(m(0, 1) == 2.0);
}

TEST_CASE("load_points_csv: ragged rows and bad cells carry their location") {
  TempDir tmp;
  write(tmp.file("r.csv"), "1,2\n3,4,5\n");
  CHECK_THROWS_WITH_AS(load_points_csv(tmp.file("r.csv")),
                       doctest::Contains("ragged row 2"), std::runtime_error);

  write(tmp.file("b.csv"), "1,2\n3,oops\n");
  try {
    load_points_csv(tmp.file("b.csv"));
    CHECK(false);
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }

  write(tmp.file("e.csv"), "");
  CHECK_THROWS_AS(load_points_csv(tmp.file("e.csv")), std::runtime_error);
  CHECK_THROWS_AS(load_points_csv(tmp.file("missing.csv")), std::runtime_error);
}

TEST_CASE("load_components_csv: sparse triplets with the fixed header") {
  TempDir tmp;
  write(tmp.file("c.csv"), "component,atom,prob\n0,0,0.7\n0,2,0.3\n1,1,1.0\n");
  const Eigen::MatrixXd raw = load_components_csv(tmp.file("c.csv"));
  CHECK(raw.rows() == 2);
  CHECK(raw.cols() == 3);
  CHECK(raw(0, 0) == 0.7);
  CHECK(raw(0, 1) == 0.0);
  CHECK(raw(1, 1) == 1.0);

  write(tmp.file("bad.csv"), "a,b,c\n0,0,1\n");
  CHECK_THROWS_AS(load_components_csv(tmp.file("bad.csv")), std::runtime_error);
}

TEST_CASE("write_ledger_csv: schema and optional true costs") {
  TempDir tmp;
  RegretLedger ledger;
  Eigen::VectorXd w(2);
  w << 0.25, 0.75;
  ledger.append(1.5, std::numeric_limits<double>::quiet_NaN(), w);
  ledger.append(2.5, 3.5, w);
  write_ledger_csv(tmp.file("l.csv"), ledger);

  std::ifstream in(tmp.file("l.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,cost_est,cost_true,w_1,w_2");
  std::getline(in, line);
  CHECK(line == "1,1.5,,0.25,0.75");
  std::getline(in, line);
  CHECK(line == "2,2.5,3.5,0.25,0.75");
}

TEST_CASE("write_run_csv: schema") {
  TempDir tmp;
  RunResult res;
  res.iters = {10, 20};
  res.metric = {0.5, 0.25};
  res.sampler = "vrm";
  res.seed = 7;
  write_run_csv(tmp.file("r.csv"), res);

  std::ifstream in(tmp.file("r.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,metric,sampler,seed");
  std::getline(in, line);
  CHECK(line == "10,0.5,vrm,7");
}

TEST_CASE("format_double: shortest round-trip representation") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e22) == "1e+22");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("resolve_output_dir: flag wins over the environment variable") {
  TempDir tmp;
  const std::string flagged = tmp.file("flagged");
  ::setenv("VRM_OUT_DIR", tmp.file("from_env").c_str(), 1);
  CHECK(resolve_output_dir(flagged) == flagged);
  CHECK(fs::exists(flagged));
  CHECK(resolve_output_dir("") == tmp.file("from_env"));
  CHECK(fs::exists(tmp.file("from_env")));
  ::unsetenv("VRM_OUT_DIR");
  CHECK(resolve_output_dir("") == ".");
}
