#include "tpc/preflib.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "tpc/errors.hpp"

#ifndef TPC_FIXTURE_DIR
#define TPC_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

using tpc::Ranking;

std::string header3(std::size_t votes, std::size_t unique) {
  return "3\n1,a\n2,b\n3,c\n" + std::to_string(votes) + "," + std::to_string(votes) + "," +
         std::to_string(unique) + "\n";
}

tpc::PreflibFile parse(const std::string& text) {
  std::istringstream in(text);
  return tpc::read_preflib(in);
}

std::vector<std::vector<tpc::AlternativeId>> ballots(const tpc::Dataset& ds) {
  std::vector<std::vector<tpc::AlternativeId>> out;
  for (const auto& r : ds.rankings) out.push_back(r.order);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(preflib, multiplicity_expands_with_index_shift) {
  const auto f = parse(header3(2, 1) + "2,1,3,2\n");
  ASSERT_EQ(f.dataset.rankings.size(), 2u);
  EXPECT_EQ(f.dataset.m, 3u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(f.dataset.rankings[i].order, (std::vector<tpc::AlternativeId>{0, 2, 1}));
    EXPECT_EQ(f.dataset.rankings[i].agent, i);
  }
  EXPECT_EQ(f.header.names[1], "b");
  EXPECT_TRUE(f.warnings.empty());
}

TEST(preflib, incomplete_order) {
  const auto f = parse(header3(1, 1) + "1,2\n");
  ASSERT_EQ(f.dataset.rankings.size(), 1u);
  EXPECT_EQ(f.dataset.rankings[0].order, (std::vector<tpc::AlternativeId>{1}));
}

TEST(preflib, tie_group_is_rejected) {
  EXPECT_THROW(parse(header3(1, 1) + "1,{1,2},3\n"), tpc::UnsupportedTiesError);
}

TEST(preflib, errors_carry_line_numbers) {
  try {
    parse(header3(1, 1) + "1,1,1\n");
    FAIL() << "expected ParseError";
  } catch (const tpc::ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
  try {
    parse(header3(1, 1) + "1,4\n");
    FAIL() << "expected ParseError";
  } catch (const tpc::ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
  EXPECT_THROW(parse(header3(1, 1) + "x,1\n"), tpc::ParseError);
  EXPECT_THROW(parse(header3(1, 1) + "0,1\n"), tpc::ParseError);
  EXPECT_THROW(parse("3\n1,a\n2,b\n"), tpc::ParseError);
  EXPECT_THROW(parse(""), tpc::ParseError);
}

TEST(preflib, vote_count_mismatch_is_a_warning) {
  const auto f = parse(header3(5, 1) + "2,1,2,3\n");
  EXPECT_EQ(f.dataset.rankings.size(), 2u);
  EXPECT_EQ(f.warnings.size(), 1u);
}

TEST(preflib, collapse_orders_by_count) {
  tpc::Dataset ds;
  ds.m = 3;
  ds.rankings = {Ranking{0, {0, 1}}, Ranking{1, {2}}, Ranking{2, {2}}, Ranking{3, {0, 1}}, Ranking{4, {1}},
                 Ranking{5, {2}}};
  const auto lines = tpc::collapse_rankings(ds);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].multiplicity, 3u);
  EXPECT_EQ(lines[0].order, (std::vector<tpc::AlternativeId>{2}));
  EXPECT_EQ(lines[1].multiplicity, 2u);
  EXPECT_EQ(lines[2].multiplicity, 1u);
}

TEST(preflib, fixture_round_trip_preserves_ballots) {
  const auto f = tpc::read_preflib_file(std::filesystem::path(TPC_FIXTURE_DIR) / "west_like.soi");
  EXPECT_EQ(f.dataset.m, 9u);
  EXPECT_EQ(f.dataset.rankings.size(), f.header.vote_count);
  EXPECT_TRUE(f.warnings.empty());
  for (bool collapse : {true, false}) {
    std::ostringstream out;
    tpc::write_preflib(out, f.dataset, f.header.names, collapse);
    std::istringstream in(out.str());
    const auto again = tpc::read_preflib(in);
    EXPECT_EQ(ballots(again.dataset), ballots(f.dataset));
    EXPECT_EQ(again.header.names, f.header.names);
    if (!collapse) EXPECT_EQ(again.dataset.rankings, f.dataset.rankings);
  }
}

TEST(preflib, subsample_examples) {
  const auto f = tpc::read_preflib_file(std::filesystem::path(TPC_FIXTURE_DIR) / "west_like.soi");
  const auto& ds = f.dataset;
  const auto all = tpc::subsample(ds, ds.rankings.size(), 3);
  EXPECT_EQ(ballots(all), ballots(ds));

  const auto none = tpc::subsample(ds, 0, 3);
  EXPECT_TRUE(none.rankings.empty());
  EXPECT_EQ(none.m, ds.m);

  const auto a = tpc::subsample(ds, 100, 42);
  const auto b = tpc::subsample(ds, 100, 42);
  EXPECT_EQ(a.rankings, b.rankings);
  ASSERT_EQ(a.rankings.size(), 100u);
  for (std::size_t i = 0; i < a.rankings.size(); ++i) EXPECT_EQ(a.rankings[i].agent, i);
  EXPECT_NE(tpc::subsample(ds, 100, 43).rankings, a.rankings);

  EXPECT_THROW(tpc::subsample(ds, ds.rankings.size() + 1, 0), tpc::ArgumentError);
}

TEST(preflib, missing_file_is_io_error) {
  EXPECT_THROW(tpc::read_preflib_file("/nonexistent/file.soi"), tpc::IoError);
}

}  // namespace
