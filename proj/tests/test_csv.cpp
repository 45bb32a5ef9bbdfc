#include "tpc/csv.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "tpc/errors.hpp"

namespace {

namespace fs = std::filesystem;

TEST(csv, one_row) {
  tpc::CsvTable t({"k", "rmse"});
  t.add_row({std::int64_t{10}, 0.5});
  EXPECT_EQ(tpc::to_csv_string(t), "k,rmse\n10,0.5\n");
}

TEST(csv, zero_rows_is_header_only) {
  tpc::CsvTable t({"k", "rmse"});
  EXPECT_EQ(tpc::to_csv_string(t), "k,rmse\n");
}

TEST(csv, non_finite_is_rejected) {
  tpc::CsvTable t({"x"});
  t.add_row({std::numeric_limits<double>::quiet_NaN()});
  EXPECT_THROW(tpc::to_csv_string(t), tpc::SerializationError);
  EXPECT_THROW(tpc::format_real(INFINITY), tpc::SerializationError);
}

TEST(csv, format_real_round_trips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-7, 12345.678, 0.0, -2.5}) {
    EXPECT_EQ(std::stod(tpc::format_real(v)), v);
  }
  EXPECT_EQ(tpc::format_real(10.0), "10");
}

TEST(csv, row_shape_is_checked) {
  tpc::CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), tpc::ArgumentError);
  EXPECT_THROW(t.add_record({{"b", 1.0}, {"a", 2.0}}), tpc::ArgumentError);
  EXPECT_NO_THROW(t.add_record({{"a", 1.0}, {"b", std::string("x")}}));
}

TEST(csv, write_and_read_back) {
  const fs::path dir = fs::temp_directory_path() / "tpc_csv_test";
  fs::create_directories(dir);
  tpc::CsvTable t({"k", "method", "pre"});
  t.add_row({std::int64_t{10}, std::string("anchor+baseline"), 0.75});
  tpc::write_csv(t, dir / "out.csv");
  const auto back = tpc::read_csv(dir / "out.csv");
  EXPECT_EQ(back.columns(), t.columns());
  ASSERT_EQ(back.rows().size(), 1u);
  fs::remove_all(dir);
}

TEST(csv, io_error_names_the_path) {
  tpc::CsvTable t({"k"});
  const fs::path bad = "/nonexistent_dir_tpc/sub/out.csv";
  try {
    tpc::write_csv(t, bad);
    FAIL() << "expected IoError";
  } catch (const tpc::IoError& e) {
    EXPECT_NE(std::string(e.what()).find("out.csv"), std::string::npos);
  }
}

}  // namespace
