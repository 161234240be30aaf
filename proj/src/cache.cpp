#include "iwastat/cache.hpp"

#include <fstream>
#include <mutex>

#include "json.hpp"

namespace iwastat {

PointCountCache::Table::Table(u64 prime) : p(prime), slots(new std::atomic<std::int32_t>[prime * prime]) {
  for (u64 i = 0; i < prime * prime; ++i) slots[i].store(-1, std::memory_order_relaxed);
}

PointCountCache::Table& PointCountCache::table(u64 p) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = tables_.find(p); it != tables_.end()) return *it->second;
  }
  if (p < 5 || p > kMaxPrime || !is_prime(p)) {
    throw Error(ErrorCode::kInvalidPrime, "cache supports primes 5 <= p <= 2048");
  }
  std::unique_lock lock(mutex_);
  auto& slot = tables_[p];
  if (!slot) slot = std::make_unique<Table>(p);
  return *slot;
}

const PointCountCache::Table* PointCountCache::find(u64 p) const {
  std::shared_lock lock(mutex_);
  auto it = tables_.find(p);
  return it == tables_.end() ? nullptr : it->second.get();
}

i64 PointCountCache::get(i64 a, i64 b, u64 p) {
  Table& t = table(p);
  const u64 ra = mod(a, p), rb = mod(b, p);
  auto& slot = t.slots[ra * p + rb];
  const std::int32_t cached = slot.load(std::memory_order_acquire);
  if (cached >= 0) return cached;
  const i64 n = count_points(static_cast<i64>(ra), static_cast<i64>(rb), p);
  std::int32_t expected = -1;
  if (slot.compare_exchange_strong(expected, static_cast<std::int32_t>(n),
                                   std::memory_order_acq_rel)) {
    t.filled.fetch_add(1, std::memory_order_relaxed);
  }
  return n;
}

std::optional<i64> PointCountCache::peek(i64 a, i64 b, u64 p) const {
  const Table* t = find(p);
  if (!t) return std::nullopt;
  const std::int32_t v = t->slots[mod(a, p) * p + mod(b, p)].load(std::memory_order_acquire);
  return v >= 0 ? std::optional<i64>(v) : std::nullopt;
}

void PointCountCache::put(i64 a, i64 b, u64 p, i64 n_points) {
  Table& t = table(p);
  std::int32_t expected = -1;
  if (t.slots[mod(a, p) * p + mod(b, p)].compare_exchange_strong(
          expected, static_cast<std::int32_t>(n_points), std::memory_order_acq_rel)) {
    t.filled.fetch_add(1, std::memory_order_relaxed);
  }
}

std::size_t PointCountCache::size(u64 p) const {
  const Table* t = find(p);
  return t ? t->filled.load(std::memory_order_relaxed) : 0;
}

void PointCountCache::save(const std::filesystem::path& path, u64 p) const {
  nlohmann::json entries = nlohmann::json::array();
  if (const Table* t = find(p)) {
    for (u64 i = 0; i < p * p; ++i) {
      const std::int32_t v = t->slots[i].load(std::memory_order_acquire);
      if (v >= 0) entries.push_back({i / p, i % p, v});
    }
  }
  const nlohmann::json doc{{"format_version", kFormatVersion}, {"p", p}, {"entries", entries}};
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
  out << doc.dump() << '\n';
}

bool PointCountCache::load(const std::filesystem::path& path, u64 p) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot read " + path.string());
  const auto doc = nlohmann::json::parse(in);
  if (doc.value("format_version", -1) != kFormatVersion || doc.value("p", u64{0}) != p) {
    return false;
  }
  for (const auto& e : doc.at("entries")) {
    put(e.at(0).get<i64>(), e.at(1).get<i64>(), p, e.at(2).get<i64>());
  }
  return true;
}

}  // namespace iwastat
