#pragma once

// Modular arithmetic over prime fields, the short Weierstrass curve type, and
// point counting by character sums.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "iwastat/error.hpp"

namespace iwastat {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
// Least nonnegative residue of a modulo m (m > 0).
u64 mod(i128 a, u64 m);
u64 invmod(u64 a, u64 m);

// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

// v_p(n) for n != 0.
int valuation(i128 n, u64 p);

std::string to_string(i128 v);

// Legendre symbol via Euler's criterion. Throws kInvalidPrime unless p is an
// odd prime.
int legendre(i64 a, u64 p);

// Quadratic character table for one prime: chi(r) for 0 <= r < p.
class ResidueTable {
 public:
  explicit ResidueTable(u32 p);

  u32 prime() const noexcept { return p_; }
  int chi(u32 r) const noexcept { return table_[r]; }

 private:
  u32 p_;
  std::unique_ptr<std::int8_t[]> table_;
};

// Shared immutable table, built on first request for p.
std::shared_ptr<const ResidueTable> residue_table(u32 p);

// y^2 = x^3 + A x + B with A, B integral, nonsingular and minimal
// (no prime q with q^4 | A and q^6 | B).
class CurveQ {
 public:
  static constexpr i64 kMaxA = i64{1} << 40;
  static constexpr i64 kMaxB = i64{1} << 60;

  // Throws kInvalidCurve on singular, non-minimal or out-of-range input.
  CurveQ(i64 a, i64 b);

  i64 a() const noexcept { return a_; }
  i64 b() const noexcept { return b_; }
  // 4A^3 + 27B^2
  i128 disc0() const noexcept { return disc0_; }
  // max(|A|^3, B^2)
  u128 height() const noexcept;

  friend bool operator==(const CurveQ&, const CurveQ&) = default;

 private:
  i64 a_;
  i64 b_;
  i128 disc0_;
};

i128 disc0(i64 a, i64 b);
bool is_minimal(i64 a, i64 b);

enum class ReductionClass { kGoodOrdinary, kGoodSupersingular, kBad };

std::string_view to_string(ReductionClass c);

struct LocalReduction {
  u64 prime = 0;
  ReductionClass cls = ReductionClass::kBad;
  std::optional<i64> n_points;
  std::optional<i64> a_p;
  bool anomalous = false;
};

struct ReductionOptions {
  // Permit p = 3 with the divisibility definitions (p | a_p, p | N_p).
  bool allow_p3 = false;
};

// #E(F_p) including the point at infinity. Throws kBadReduction when
// p | 4A^3 + 27B^2 and kInvalidPrime when p < 5 (p = 3 with allow_p3).
i64 count_points(i64 a, i64 b, u64 p, ReductionOptions opts = {});
i64 trace_frobenius(i64 a, i64 b, u64 p, ReductionOptions opts = {});
LocalReduction classify_reduction(i64 a, i64 b, u64 p, ReductionOptions opts = {});

// Counting point sets over F_p with p | N_p.
enum class DMode { kLiteralPairs, kTraceOnePairs, kTraceOneClasses };

std::string_view to_string(DMode m);
std::optional<DMode> parse_dmode(std::string_view s);

struct DCensus {
  u64 p = 0;
  i64 literal_pairs = 0;
  i64 trace_one_pairs = 0;
  i64 trace_one_classes = 0;

  i64 get(DMode m) const noexcept;
};

// All three counts from a single pass over F_p x F_p.
DCensus d_census(u64 p, unsigned workers = 1);
i64 d_of_p(u64 p, DMode mode, unsigned workers = 1);

}  // namespace iwastat
