#include "tpc/rank_distance.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tpc/errors.hpp"

namespace tpc {

double normalized_kendall_tau(std::span<const std::uint32_t> pos1, std::span<const std::uint32_t> pos2) {
  const std::size_t m = std::min(pos1.size(), pos2.size());
  std::uint64_t shared = 0;
  std::uint64_t discordant = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (!pos1[a] || !pos2[a]) continue;
    ++shared;
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!pos1[b] || !pos2[b]) continue;
      const bool first_a = pos1[a] < pos1[b];
      const bool second_a = pos2[a] < pos2[b];
      discordant += first_a != second_a;
    }
  }
  if (shared < 2) return kNeutralDistance;
  return static_cast<double>(discordant) / static_cast<double>(shared * (shared - 1) / 2);
}

double normalized_kendall_tau(const Ranking& r1, const Ranking& r2) {
  std::size_t m = 0;
  for (AlternativeId a : r1.order) m = std::max<std::size_t>(m, a + 1);
  for (AlternativeId a : r2.order) m = std::max<std::size_t>(m, a + 1);
  const auto p1 = position_table(r1, m);
  const auto p2 = position_table(r2, m);
  return normalized_kendall_tau(p1, p2);
}

FeatureMatrix::FeatureMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n) throw ArgumentError("feature matrix storage has the wrong size");
}

FeatureMatrix feature_matrix(const Dataset& ds) {
  const std::size_t n = ds.agent_count();
  std::vector<std::vector<std::uint32_t>> pos;
  pos.reserve(n);
  for (const auto& r : ds.rankings) pos.push_back(position_table(r, ds.m));

  FeatureMatrix f(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = normalized_kendall_tau(pos[i], pos[j]);
      f(i, j) = v;
      f(j, i) = v;
    }
  }
  return f;
}

std::uint64_t dataset_hash(const Dataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(ds.m);
  mix(ds.rankings.size());
  for (const auto& r : ds.rankings) {
    mix(r.order.size());
    for (AlternativeId a : r.order) mix(a);
  }
  return h;
}

namespace {

constexpr std::array<char, 8> kMagic = {'T', 'P', 'C', 'F', 'M', 'A', 'T', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xffU);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
  return v;
}

}  // namespace

void save_feature_matrix(const FeatureMatrix& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, f.size());
  for (double v : f.values()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError(path.string() + ": not a feature matrix file");
  const std::uint64_t n = get_u64(in);
  if (!in || n > (std::uint64_t{1} << 20)) throw IoError(path.string() + ": bad matrix size");
  std::vector<double> values(n * n);
  for (double& v : values) v = std::bit_cast<double>(get_u64(in));
  if (!in) throw IoError(path.string() + ": truncated matrix data");
  return FeatureMatrix(n, std::move(values));
}

FeatureMatrix cached_feature_matrix(const Dataset& ds, const std::filesystem::path& cache_dir) {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << dataset_hash(ds) << ".fmat";
  const auto path = cache_dir / name.str();
  if (std::filesystem::exists(path)) {
    try {
      FeatureMatrix f = load_feature_matrix(path);
      if (f.size() == ds.agent_count()) return f;
    } catch (const IoError&) {
      // stale or corrupt entry, recompute below
    }
  }
  FeatureMatrix f = feature_matrix(ds);
  std::filesystem::create_directories(cache_dir);
  save_feature_matrix(f, path);
  return f;
}

}  // namespace tpc
