#include "tpc/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tpc::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class cli_files : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "tpc_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(cli_files, generate_twice_is_identical) {
  const auto a = dir_ / "a.soc";
  const auto b = dir_ / "b.soc";
  ASSERT_EQ(cli({"generate", "--n", "100", "--m", "10", "--seed", "7", "--output", a.string()}).code, 0);
  ASSERT_EQ(cli({"generate", "--n", "100", "--m", "10", "--seed", "7", "--output", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  const auto stdout_run = cli({"generate", "--n", "100", "--m", "10", "--seed", "7"});
  EXPECT_EQ(stdout_run.out, slurp(a));
}

TEST_F(cli_files, neighbors_and_complete_on_generated_data) {
  const auto data = dir_ / "d.soc";
  const auto trust = dir_ / "t.csv";
  ASSERT_EQ(cli({"generate", "--n", "20", "--m", "5", "--seed", "3", "--output", data.string(), "--trust-output",
                 trust.string()})
                .code,
            0);
  const auto nb = cli({"neighbors", "--data", data.string(), "--trust", trust.string(), "--method", "trust-anchor",
                       "--k", "3", "--target", "0"});
  ASSERT_EQ(nb.code, 0) << nb.err;
  EXPECT_EQ(nb.out.substr(0, 20), "rank,agent,distance\n");
  EXPECT_EQ(std::count(nb.out.begin(), nb.out.end(), '\n'), 4);

  const auto cp = cli({"complete", "--data", data.string(), "--target", "0", "--k", "5", "--method", "certainty"});
  ASSERT_EQ(cp.code, 0) << cp.err;
  EXPECT_EQ(std::count(cp.out.begin(), cp.out.end(), ','), 4);
}

TEST_F(cli_files, experiment_with_config_file) {
  const auto cfg = dir_ / "run.cfg";
  std::ofstream(cfg) << "n=12\nm=5\nk_grid=2,4\nmethods=anchor+baseline\noutput_dir=" << (dir_ / "out").string()
                     << "\n";
  const auto r = cli({"experiment", "--config", cfg.string(), "--master-seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "out" / "combined.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "fig3_rmse.csv"));
}

TEST(cli, certainty_prints_triple) {
  const auto r = cli({"certainty", "--counts", "3,1,0", "--resolution", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 50), "certainty,conflict,p_plus,p_minus,c_minus,decision");
  EXPECT_NE(r.out.find(",0.25,"), std::string::npos);
}

TEST(cli, evaluate_identity) {
  const auto r = cli({"evaluate", "--predicted", "3,1,2", "--truth", "3,1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.out.substr(0, 20), "bias,precision5,pre\n");
  std::istringstream row(r.out.substr(20));
  double b, p5, pre;
  char comma;
  row >> b >> comma >> p5 >> comma >> pre;
  EXPECT_NEAR(b, 1.0, 1e-12);
  EXPECT_EQ(p5, 1.0);
  EXPECT_NEAR(pre, 1.0, 1e-12);
}

TEST(cli, usage_errors_exit_nonzero) {
  const auto missing = cli({"generate", "--m", "10", "--seed", "1"});
  EXPECT_NE(missing.code, 0);
  EXPECT_NE(missing.err.find("--n"), std::string::npos);
  EXPECT_NE(cli({}).code, 0);
  EXPECT_NE(cli({"generate", "--n", "5", "--m", "3", "--seed", "1", "--bogus"}).code, 0);
  EXPECT_NE(cli({"frobnicate"}).code, 0);
}

TEST(cli, runtime_errors_exit_one) {
  const auto r = cli({"certainty", "--counts", "0,0,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(cli({"neighbors", "--data", "/nonexistent.soc", "--k", "1", "--target", "0"}).code, 1);
}

}  // namespace
