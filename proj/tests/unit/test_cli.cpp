#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <sstream>
#include <string>

#include "subalg/keyvalue.hpp"
#include "subalg/model.hpp"
#include "subalg/series_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(SUBALG_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("subalg_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) { return std::string(SUBALG_FIXTURE_DIR) + "/" + name; }

  // linear fixture, held-out set from another seed
  void linear_model() {
    ASSERT_EQ(run("gen --spec " + fixture("linear.spec") + " --seed 1 --out " + path("train.csv")).status, 0);
    ASSERT_EQ(run("gen --spec " + fixture("linear.spec") + " --seed 2 --out " + path("test.csv")).status, 0);
    const Result id = run("identify --data " + path("train.csv") + " --config " + fixture("linear.cfg") +
                       " --out-model " + path("m.json") + " --report " + path("report.txt"));
    ASSERT_EQ(id.status, 0) << id.out;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenIdentifyEvaluate) {
  linear_model();
  const std::string report = subalg::read_text_file(path("report.txt"));
  for (const char* section : {"HORIZONS", "TABLE1", "TABLE2", "GENERATORS", "RESIDUALS"})
    EXPECT_NE(report.find(section), std::string::npos) << section;
  const auto pos = report.find("training_relative_rmse y ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stod(report.substr(pos + 25)), 1e-6);

  const Result ev = run("evaluate --model " + path("m.json") + " --data " + path("test.csv"));
  ASSERT_EQ(ev.status, 0) << ev.out;
  std::istringstream in(ev.out);
  std::string header, name;
  double rmse = 0, rel = 1;
  std::getline(in, header);
  in >> name >> rmse >> rel;
  EXPECT_EQ(name, "y");
  EXPECT_LE(rel, 1e-4);
}

TEST_F(Cli, EvaluateAgreesWithPredictFile) {
  linear_model();
  const Result pr = run("predict --model " + path("m.json") + " --data " + path("test.csv") + " --out " + path("p.csv"));
  ASSERT_EQ(pr.status, 0) << pr.out;
  const Result ev = run("evaluate --model " + path("m.json") + " --data " + path("test.csv"));
  ASSERT_EQ(ev.status, 0);

  // series,t,y1,res1
  std::istringstream csv(subalg::read_text_file(path("p.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "series,t,y1,res1");
  double sq = 0;
  int count = 0;
  while (std::getline(csv, line)) {
    const double res = std::stod(line.substr(line.rfind(',') + 1));
    sq += res * res;
    ++count;
  }
  ASSERT_GT(count, 0);
  std::istringstream in(ev.out);
  std::string header, name;
  double rmse = 0;
  std::getline(in, header);
  in >> name >> rmse;
  EXPECT_NEAR(rmse, std::sqrt(sq / count), 1e-12 + 1e-9 * rmse);
}

TEST_F(Cli, ReproducibleModelBytes) {
  linear_model();
  const Result id = run("identify --data " + path("train.csv") + " --config " + fixture("linear.cfg") +
                     " --out-model " + path("m2.json") + " --report " + path("r2.txt"));
  ASSERT_EQ(id.status, 0);
  EXPECT_EQ(subalg::read_text_file(path("m.json")), subalg::read_text_file(path("m2.json")));
}

TEST_F(Cli, DimensionMismatch) {
  subalg::write_text_file(path("two.csv"), "series,t,y1,y2\n1,1,0,0\n1,2,0,0\n1,3,0,0\n");
  const Result r = run("predict --model " + fixture("reference_observer.json") + " --data " + path("two.csv") +
                    " --out " + path("p.csv") + " --replay");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("DIM_MISMATCH"), std::string::npos) << r.out;
}

TEST_F(Cli, InspectReferenceObserver) {
  const Result r = run("inspect --model " + fixture("reference_observer.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("x1*x2*y, x1*x2, x1*y, x1, x2*y, x2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("(-0.0225, 0.0336)"), std::string::npos) << r.out;
}

TEST_F(Cli, ErrorsAreOneLine) {
  const Result missing = run("inspect --model " + path("nope.json"));
  EXPECT_NE(missing.status, 0);
  EXPECT_EQ(missing.out.rfind("error: IO", 0), 0u) << missing.out;
  const Result gap = run("evaluate --model " + fixture("reference_observer.json") + " --data " + fixture("bad_gap.csv"));
  EXPECT_NE(gap.status, 0);
  EXPECT_NE(gap.out.find("FORMAT"), std::string::npos) << gap.out;
  EXPECT_NE(run("bogus").status, 0);
}
