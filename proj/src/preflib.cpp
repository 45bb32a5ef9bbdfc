#include "tpc/preflib.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string_view>

#include "tpc/errors.hpp"
#include "tpc/rng.hpp"

namespace tpc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

std::size_t parse_count(std::string_view field, std::size_t lineno, const char* what) {
  std::size_t v = 0;
  const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || r.ec != std::errc{} || r.ptr != field.data() + field.size()) {
    throw ParseError(lineno, std::string("expected ") + what + ", got '" + std::string(field) + "'");
  }
  return v;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!trim(line).empty()) return true;
    }
    return false;
  }
  std::size_t lineno() const { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

}  // namespace

PreflibFile read_preflib(std::istream& in) {
  PreflibFile file;
  LineReader reader(in);
  std::string line;

  if (!reader.next(line)) throw ParseError(reader.lineno(), "missing alternative count");
  const std::size_t m = parse_count(trim(line), reader.lineno(), "alternative count");
  if (m == 0) throw ParseError(reader.lineno(), "alternative count must be positive");
  file.header.alternative_count = m;
  file.header.names.assign(m, std::string{});
  std::vector<std::uint8_t> named(m, 0);

  for (std::size_t i = 0; i < m; ++i) {
    if (!reader.next(line)) throw ParseError(reader.lineno(), "missing alternative name line");
    const std::string_view sv = line;
    const std::size_t comma = sv.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(reader.lineno(), "expected 'index,name'");
    }
    const std::size_t idx = parse_count(trim(sv.substr(0, comma)), reader.lineno(), "alternative index");
    if (idx < 1 || idx > m) throw ParseError(reader.lineno(), "alternative index out of range");
    if (named[idx - 1]) throw ParseError(reader.lineno(), "alternative index listed twice");
    named[idx - 1] = 1;
    file.header.names[idx - 1] = std::string(trim(sv.substr(comma + 1)));
  }

  if (!reader.next(line)) throw ParseError(reader.lineno(), "missing 'voters,sum,unique' line");
  {
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw ParseError(reader.lineno(), "expected 'voters,sum,unique'");
    file.header.vote_count = parse_count(parts[0], reader.lineno(), "voter count");
    file.header.sum_count = parse_count(parts[1], reader.lineno(), "vote sum");
    file.header.unique_count = parse_count(parts[2], reader.lineno(), "unique order count");
  }

  std::vector<std::uint8_t> seen(m);
  std::size_t multiplicity_total = 0;
  while (reader.next(line)) {
    if (line.find('{') != std::string::npos || line.find('}') != std::string::npos) {
      throw UnsupportedTiesError(reader.lineno(), "tie groups are not supported");
    }
    const auto parts = split(line, ',');
    WeightedOrderLine wol;
    wol.multiplicity = parse_count(parts[0], reader.lineno(), "ballot multiplicity");
    if (wol.multiplicity == 0) throw ParseError(reader.lineno(), "ballot multiplicity must be positive");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t p = 1; p < parts.size(); ++p) {
      if (parts[p].empty() && p + 1 == parts.size()) break;  // trailing comma
      const std::size_t a = parse_count(parts[p], reader.lineno(), "alternative index");
      if (a < 1 || a > m) throw ParseError(reader.lineno(), "alternative index out of range");
      if (seen[a - 1]) throw ParseError(reader.lineno(), "duplicate alternative in ballot");
      seen[a - 1] = 1;
      wol.order.push_back(static_cast<AlternativeId>(a - 1));
    }
    multiplicity_total += wol.multiplicity;
    file.lines.push_back(std::move(wol));
  }

  if (multiplicity_total != file.header.vote_count) {
    file.warnings.push_back("ballot multiplicities sum to " + std::to_string(multiplicity_total) +
                            " but header declares " + std::to_string(file.header.vote_count) +
                            " voters");
  }

  file.dataset.m = m;
  file.dataset.rankings.reserve(multiplicity_total);
  for (const auto& wol : file.lines) {
    for (std::size_t c = 0; c < wol.multiplicity; ++c) {
      file.dataset.rankings.push_back(Ranking{file.dataset.rankings.size(), wol.order});
    }
  }
  return file;
}

PreflibFile read_preflib_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_preflib(in);
  } catch (const UnsupportedTiesError& e) {
    throw UnsupportedTiesError(e.line(), path.string() + ": tie groups are not supported");
  }
}

std::vector<WeightedOrderLine> collapse_rankings(const Dataset& ds) {
  std::map<std::vector<AlternativeId>, std::size_t> slot;
  std::vector<WeightedOrderLine> lines;
  for (const auto& r : ds.rankings) {
    auto [it, inserted] = slot.try_emplace(r.order, lines.size());
    if (inserted) lines.push_back(WeightedOrderLine{0, r.order});
    ++lines[it->second].multiplicity;
  }
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    return a.multiplicity > b.multiplicity;
  });
  return lines;
}

void write_preflib(std::ostream& out, const Dataset& ds, const std::vector<std::string>& names,
                   bool collapse) {
  if (!names.empty() && names.size() != ds.m) {
    throw ArgumentError("alternative name count does not match m");
  }
  std::vector<WeightedOrderLine> lines;
  if (collapse) {
    lines = collapse_rankings(ds);
  } else {
    lines.reserve(ds.rankings.size());
    for (const auto& r : ds.rankings) lines.push_back(WeightedOrderLine{1, r.order});
  }
  const std::size_t unique = collapse ? lines.size() : collapse_rankings(ds).size();

  out << ds.m << '\n';
  for (std::size_t j = 0; j < ds.m; ++j) {
    out << (j + 1) << ',' << (names.empty() ? "Alternative " + std::to_string(j + 1) : names[j])
        << '\n';
  }
  out << ds.rankings.size() << ',' << ds.rankings.size() << ',' << unique << '\n';
  for (const auto& wol : lines) {
    out << wol.multiplicity;
    for (AlternativeId a : wol.order) out << ',' << (a + 1);
    out << '\n';
  }
}

void write_preflib_file(const std::filesystem::path& path, const Dataset& ds,
                        const std::vector<std::string>& names, bool collapse) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_preflib(out, ds, names, collapse);
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

Dataset subsample(const Dataset& ds, std::size_t count, std::uint64_t seed) {
  const std::size_t n = ds.rankings.size();
  if (count > n) {
    throw ArgumentError("cannot subsample " + std::to_string(count) + " of " + std::to_string(n) +
                        " rankings");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng = make_rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());

  Dataset out;
  out.m = ds.m;
  out.latent_alternatives = ds.latent_alternatives;
  out.rankings.reserve(count);
  if (ds.latent_agents) {
    LatentFeatures lf;
    lf.count = count;
    lf.dim = ds.latent_agents->dim;
    lf.values.reserve(count * lf.dim);
    for (std::size_t i : idx) {
      const auto row = ds.latent_agents->row(i);
      lf.values.insert(lf.values.end(), row.begin(), row.end());
    }
    out.latent_agents = std::move(lf);
  }
  for (std::size_t i : idx) out.rankings.push_back(Ranking{out.rankings.size(), ds.rankings[i].order});
  return out;
}

}  // namespace tpc
