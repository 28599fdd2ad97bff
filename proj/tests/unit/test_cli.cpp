#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gciverify_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  int run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " " + GCIVERIFY_PATH + " " + args + " > " + path("stdout.txt") + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

const char* kSquareDisk = R"({
  "A": {"type": "box", "lo": [-1, -1], "hi": [1, 1]},
  "measure": {"type": "gaussian", "dim": 2},
  "ball_radius": 1.0
})";

const char* kBump2d = R"({
  "field": {"type": "gaussian_bump", "rate": 0.5},
  "measure": {"type": "gaussian", "dim": 2}
})";

}  // namespace

TEST_F(Cli, VerifySquareAgainstDisk) {
  const auto cfg = write("square.json", kSquareDisk);
  ASSERT_EQ(run("verify --theorem 1.1 --config " + cfg + " --samples 200000 --seed 1 --out " + path("r.json")), 0);
  const auto j = nlohmann::json::parse(read(path("r.json")));
  EXPECT_EQ(j["verdict"], "confirmed");
  EXPECT_NEAR(j["gap"]["value"].get<double>(), 0.2101, 4 * j["gap"]["se"].get<double>() + 1e-4);
  EXPECT_EQ(j["provenance"]["seed"], 1);
  EXPECT_EQ(j["provenance"]["config_hash"].get<std::string>().size(), 16u);
  EXPECT_NE(read(path("stdout.txt")).find("confirmed"), std::string::npos);
}

TEST_F(Cli, OriginOutsideAExitsTwo) {
  const auto cfg = write("shifted.json", R"({
    "A": {"type": "box", "lo": [2], "hi": [3]},
    "measure": {"type": "gaussian", "dim": 1},
    "ball_radius": 1.0
  })");
  EXPECT_EQ(run("verify --theorem 1.1 --config " + cfg + " --samples 20000 --out " + path("r.json")), 2);
  EXPECT_NE(read(path("stderr.txt")).find("origin_in_A"), std::string::npos);
}

TEST_F(Cli, GarbageConfigExitsThree) {
  const auto cfg = write("bad.json", "{ this is not json");
  EXPECT_EQ(run("verify --theorem 1.1 --config " + cfg), 3);
  const auto missing = write("missing.json", R"({"measure": {"type": "gaussian", "dim": 2}})");
  EXPECT_EQ(run("verify --theorem 1.1 --config " + missing), 3);
  EXPECT_EQ(run("verify --theorem 7.7 --config " + missing), 3);
}

TEST_F(Cli, ProfileReportsTurningPoint) {
  const auto cfg = write("bump.json", kBump2d);
  ASSERT_EQ(run("profile --config " + cfg + " --t-min 0 --t-max 4 --t-steps 41 --out " + path("p.csv")), 0);
  std::istringstream csv(read(path("p.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,phi,phi_se,dphi");
  std::string last;
  int rows = 0;
  while (std::getline(csv, line)) {
    last = line;
    ++rows;
  }
  EXPECT_EQ(rows, 42);
  ASSERT_EQ(last.rfind("t1_estimate,", 0), 0u);
  EXPECT_NEAR(std::stod(last.substr(12)), std::sqrt(2 * std::log(2.0)), 1e-3);
}

TEST_F(Cli, ProfileOfConstantIsZero) {
  const auto cfg = write("const.json", R"({"field": {"type": "constant", "value": 2}, "measure": {"type": "gaussian", "dim": 2}})");
  ASSERT_EQ(run("profile --config " + cfg + " --t-min 0 --t-max 3 --t-steps 7 --out " + path("p.csv")), 0);
  std::istringstream csv(read(path("p.csv")));
  std::string line;
  std::getline(csv, line);
  for (int i = 0; i < 7; ++i) {
    std::getline(csv, line);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    EXPECT_NEAR(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), 0.0, 1e-12) << line;
  }
}

TEST_F(Cli, ProfileRejectsEmptyGrid) {
  const auto cfg = write("bump.json", kBump2d);
  EXPECT_EQ(run("profile --config " + cfg + " --t-min 1 --t-max 1 --t-steps 0 --out " + path("p.csv")), 3);
}

TEST_F(Cli, ScanFindsNegativeGapAndRejectsUnknownTags) {
  ASSERT_EQ(run("scan --break origin-not-in-A --instances 20 --seed 3 --out " + path("s.csv")), 0);
  std::istringstream csv(read(path("s.csv")));
  std::string header;
  std::string first;
  std::getline(csv, header);
  std::getline(csv, first);
  EXPECT_EQ(header, "instance_id,theorem,d,body_descriptor_hash,gap,se,verdict,seed");
  // Most negative gap / SE comes first.
  std::vector<std::string> cols;
  std::stringstream ss(first);
  for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
  ASSERT_EQ(cols.size(), 8u);
  EXPECT_LT(std::stod(cols[4]), -5 * std::stod(cols[5]));
  EXPECT_EQ(run("scan --break no-such-hypothesis --instances 2 --out " + path("s.csv")), 3);
}

TEST_F(Cli, IdentityTransport) {
  const auto src = write("src.json", R"({"type": "normal", "sigma": 1})");
  ASSERT_EQ(run("transport --source " + src + " --target " + src + " --points 101 --out " + path("t.csv")), 0);
  std::istringstream csv(read(path("t.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "x,T");
  int rows = 0;
  while (std::getline(csv, line)) {
    const auto c = line.find(',');
    EXPECT_NEAR(std::stod(line.substr(0, c)), std::stod(line.substr(c + 1)), 1e-7);
    ++rows;
  }
  EXPECT_EQ(rows, 101);
}

TEST_F(Cli, ReportsAreByteIdenticalAcrossThreadCounts) {
  const auto cfg = write("square.json", kSquareDisk);
  ASSERT_EQ(run("verify --theorem 1.1 --config " + cfg + " --samples 100000 --seed 9 --out " + path("a.json"),
                "GCI_NUM_THREADS=1"),
            0);
  ASSERT_EQ(run("verify --theorem 1.1 --config " + cfg + " --samples 100000 --seed 9 --out " + path("b.json"),
                "GCI_NUM_THREADS=4"),
            0);
  EXPECT_EQ(read(path("a.json")), read(path("b.json")));
}
