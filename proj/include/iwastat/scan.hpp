#pragma once

// Per-prime classification for one curve record and the strongest conclusion
// about the cyclotomic Selmer group (or its signed variants) that the known
// local and global data license.

#include <optional>
#include <string_view>
#include <vector>

#include "iwastat/arith.hpp"
#include "iwastat/iwasawa.hpp"
#include "iwastat/local.hpp"
#include "iwastat/record.hpp"

namespace iwastat {

enum class Conclusion {
  kSelmerTrivial,        // rank 0, ordinary: Sel = 0, mu = lambda = 0
  kSignedSelmerTrivial,  // rank 0, supersingular: Sel^+ = Sel^- = 0
  kCharElementIsTr,      // rank r >= 1: f(T) = T^r
  kInconclusive,
  kBadPrime,
};

enum class ScanReason {
  kNone,
  kBadReduction,
  kAnomalous,
  kTamagawaOrSha,
  kMissingSha,
  kUnknownLocalData,
  kMissingRegulator,
  kRegulatorDivisible,
};

std::string_view to_string(Conclusion c);
std::string_view to_string(ScanReason r);

struct PrimeScanResult {
  u64 p = 0;
  ReductionClass cls = ReductionClass::kBad;
  std::optional<i64> a_p;
  std::optional<i64> n_points;
  bool in_sigma = false;        // anomalous: p | #E~(F_p)
  bool in_sigma_prime = false;  // ordinary and (p = 2, p | Sha or p | prod c_l)
  bool in_upsilon = false;      // supersingular and the same divisibility list
  std::optional<bool> in_pi;    // p | R_p / p^r; unknown without regulator data
  Conclusion conclusion = Conclusion::kInconclusive;
  ScanReason reason = ScanReason::kNone;
  // Supersingular rank >= 1 conclusions assume the signed p-adic BSD formula.
  bool conditional = false;
  // Valuation of the (truncated) Euler characteristic when every input is known.
  std::optional<int> chi_valuation;
  // (mu, lambda) implied by a trivial-shape conclusion.
  std::optional<IwasawaInvariants> invariants;
};

struct ScanOptions {
  LocalDataOptions local;
  unsigned workers = 1;
};

// p = 2, or p | sha_order, or p | prod c_l. Throws kMissingSha without a Sha
// order and kUnknownLocalData when the Tamagawa product is not certified.
bool sigma_prime_membership(const CurveRecord& record, u64 p, LocalDataOptions opts = {});

// Every prime 5 <= p <= p_max, in ascending order.
std::vector<PrimeScanResult> scan_primes(const CurveRecord& record, u64 p_max,
                                         const ScanOptions& opts = {});

}  // namespace iwastat
