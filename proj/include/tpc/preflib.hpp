#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tpc/core.hpp"

namespace tpc {

struct PreflibHeader {
  std::size_t alternative_count = 0;
  std::vector<std::string> names;
  std::size_t vote_count = 0;
  std::size_t sum_count = 0;
  std::size_t unique_count = 0;
};

struct WeightedOrderLine {
  std::size_t multiplicity = 1;
  std::vector<AlternativeId> order;
};

struct PreflibFile {
  PreflibHeader header;
  std::vector<WeightedOrderLine> lines;
  Dataset dataset;
  // Non-fatal findings, e.g. multiplicities not summing to the declared vote count.
  std::vector<std::string> warnings;
};

// Strict-order (complete or incomplete) PrefLib text. Throws ParseError with
// the 1-based line number on malformed input, UnsupportedTiesError on a
// brace-delimited tie group. Multiplicity-c lines expand to c agents.
PreflibFile read_preflib(std::istream& in);
PreflibFile read_preflib_file(const std::filesystem::path& path);

inline Dataset parse_preflib(std::istream& in) { return read_preflib(in).dataset; }

// Collapses identical rankings into multiplicity lines (count descending,
// first appearance breaks ties).
std::vector<WeightedOrderLine> collapse_rankings(const Dataset& ds);

// Writes PrefLib text. With collapse=false every agent gets its own line in
// agent order, so parsing the output reproduces agent indices exactly.
// `names` may be empty, in which case placeholder names are written.
void write_preflib(std::ostream& out, const Dataset& ds, const std::vector<std::string>& names = {},
                   bool collapse = true);
void write_preflib_file(const std::filesystem::path& path, const Dataset& ds,
                        const std::vector<std::string>& names = {}, bool collapse = true);

// Seeded uniform sample of `count` rankings without replacement; the kept
// rankings stay in their original relative order and are re-indexed 0..count-1.
Dataset subsample(const Dataset& ds, std::size_t count, std::uint64_t seed);

}  // namespace tpc
