#pragma once

// Kodaira symbols and Tamagawa numbers at bad primes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwastat/arith.hpp"
#include "iwastat/record.hpp"

namespace iwastat {

enum class KodairaType { kI0, kIn, kII, kIII, kIV, kI0Star, kInStar, kIVStar, kIIIStar, kIIStar };

struct KodairaSymbol {
  KodairaType type = KodairaType::kI0;
  int n = 0;  // subscript for I_n and I_n^*

  std::string str() const;
  friend bool operator==(const KodairaSymbol&, const KodairaSymbol&) = default;
};

struct KodairaData {
  u64 prime = 0;
  KodairaSymbol symbol;
  i64 tamagawa = 1;
  std::optional<bool> split;  // multiplicative reduction only
};

struct LocalDataOptions {
  // At l in {2, 3}, refuse to run the local algorithm; callers then need an
  // ingested override.
  bool strict = false;
};

// Primes dividing Delta = -16 (4A^3 + 27B^2). Throws kTooLarge when
// |4A^3 + 27B^2| does not fit in 64 bits.
std::vector<u64> bad_primes(const CurveQ& curve);

// Valuation table in (v(c4), v(Delta)) for l >= 5; the I_n^* component count
// is taken from the local algorithm.
KodairaData kodaira_from_table(const CurveQ& curve, u64 l);

// General local algorithm on a1..a6 with minimalization, any prime l.
// Returns I0 with c = 1 when the model has good reduction after
// minimalization (possible at 2 and 3).
KodairaData tate_algorithm(i128 a1, i128 a2, i128 a3, i128 a4, i128 a6, u64 l);

// Distinct roots of x^3 + b x^2 + c x + d in F_l.
int cubic_root_count(i128 b, i128 c, i128 d, u64 l);

// Throws kGoodReduction when l is not in bad_primes(curve) and
// kUnknownLocalData for l in {2, 3} under strict options.
KodairaData kodaira_tamagawa(const CurveQ& curve, u64 l, LocalDataOptions opts = {});

// p^{v_p(c)}
i64 p_part(i64 c, u64 p);

// Tamagawa numbers at every bad prime: overrides first, then computed.
// Throws kUnknownLocalData where neither is available.
std::map<u64, i64> tamagawa_numbers(const CurveRecord& record, LocalDataOptions opts = {});

// tau_p = prod_l p^{v_p(c_l)}. Under strict options, a bad prime l in {2, 3}
// without an override is still certified when v_l(Delta) < p (then
// p cannot divide c_l); otherwise kUnknownLocalData.
i64 tamagawa_p_part(const CurveRecord& record, u64 p, LocalDataOptions opts = {});

}  // namespace iwastat
