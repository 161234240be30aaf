#pragma once

// p-adic valuations of the Euler characteristic formulas. All results are
// valuations: the formulas only hold up to p-adic units.

#include <optional>

#include "iwastat/arith.hpp"

namespace iwastat {

struct ChiInputs {
  int v_sha = 0;   // v_p(#Sha[p^inf])
  int v_tam = 0;   // v_p(prod c_l)
  int v_red = 0;   // v_p(#E~(F_p))
  int v_tors = 0;  // v_p(#E(Q)[p^inf])
  // v_p(R_p) - rank; must be >= 0 for the leading-term formula to be integral.
  std::optional<int> v_reg_excess;
};

// v_sha + v_tam + 2 v_red - 2 v_tors. Throws kNegativeResult when negative.
int chi_ordinary_valuation(const ChiInputs& in);

// v_sha + v_tam.
int chi_supersingular_valuation(const ChiInputs& in);

enum class G0Variant { kOrdinary, kSignedPlus, kSignedMinus };

// Valuation of g(0) where f = T^r g. Throws kMissingRegulator when
// v_reg_excess is absent and kNegativeResult when it (or the total) is < 0.
int g0_valuation(const ChiInputs& in, G0Variant variant);

// E(Q) has no p-torsion for p >= 11; forces v_tors = 0 there. Returns true
// when a nonzero supplied value was overridden.
bool apply_torsion_bound(ChiInputs& in, u64 p);

}  // namespace iwastat
