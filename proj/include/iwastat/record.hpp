#pragma once

#include <map>
#include <optional>
#include <string>

#include "iwastat/arith.hpp"

namespace iwastat {

// A curve together with ingested global data (rank, Sha, torsion, and
// per-prime overrides that cannot be computed locally).
struct CurveRecord {
  std::string label;
  CurveQ curve{-1, 0};
  int rank = 0;
  std::optional<i64> sha_order;
  i64 torsion_order = 1;
  // Tamagawa numbers supplied by the data source, keyed by prime.
  std::map<u64, i64> tamagawa_overrides;
  // v_p(R_p) - rank, keyed by p.
  std::optional<std::map<u64, i64>> regulator_valuations;

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

}  // namespace iwastat
