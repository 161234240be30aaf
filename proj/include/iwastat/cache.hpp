#pragma once

// Read-through cache of #E(F_p) keyed by (A mod p, B mod p, p). The reduction
// only depends on residues, so a prime never holds more than p^2 entries.

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>

#include "iwastat/arith.hpp"

namespace iwastat {

class PointCountCache {
 public:
  static constexpr int kFormatVersion = 1;
  // Dense per-prime tables are allocated eagerly; keep them small.
  static constexpr u64 kMaxPrime = 1u << 11;

  // N_p for the reduction of (a, b); computes and stores on a miss.
  // Throws kBadReduction like count_points.
  i64 get(i64 a, i64 b, u64 p);
  std::optional<i64> peek(i64 a, i64 b, u64 p) const;
  void put(i64 a, i64 b, u64 p, i64 n_points);

  std::size_t size(u64 p) const;

  // Snapshot of one prime's table as JSON ({"format_version", "p", "entries"}).
  void save(const std::filesystem::path& path, u64 p) const;
  // Returns false when the snapshot's version or prime does not match.
  bool load(const std::filesystem::path& path, u64 p);

 private:
  struct Table {
    explicit Table(u64 p);
    u64 p;
    std::unique_ptr<std::atomic<std::int32_t>[]> slots;  // -1 marks empty
    std::atomic<std::size_t> filled{0};
  };

  Table& table(u64 p);
  const Table* find(u64 p) const;

  mutable std::shared_mutex mutex_;
  std::map<u64, std::unique_ptr<Table>> tables_;
};

}  // namespace iwastat
