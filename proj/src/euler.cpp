#include "iwastat/euler.hpp"

#include <string>

namespace iwastat {
namespace {

void require_nonnegative(const ChiInputs& in) {
  if (in.v_sha < 0 || in.v_tam < 0 || in.v_red < 0 || in.v_tors < 0) {
    throw Error(ErrorCode::kInvalidArgument, "valuations must be nonnegative");
  }
}

}  // namespace

int chi_ordinary_valuation(const ChiInputs& in) {
  require_nonnegative(in);
  const int v = in.v_sha + in.v_tam + 2 * in.v_red - 2 * in.v_tors;
  if (v < 0) {
    throw Error(ErrorCode::kNegativeResult,
                "Euler characteristic valuation " + std::to_string(v) + " (inconsistent inputs)");
  }
  return v;
}

int chi_supersingular_valuation(const ChiInputs& in) {
  require_nonnegative(in);
  return in.v_sha + in.v_tam;
}

int g0_valuation(const ChiInputs& in, G0Variant variant) {
  if (!in.v_reg_excess) throw Error(ErrorCode::kMissingRegulator, "no regulator valuation");
  if (*in.v_reg_excess < 0) {
    throw Error(ErrorCode::kNegativeResult,
                "v_p(R_p) - r = " + std::to_string(*in.v_reg_excess) + " violates integrality");
  }
  require_nonnegative(in);
  int v = *in.v_reg_excess + in.v_sha + in.v_tam;
  if (variant == G0Variant::kOrdinary) v += 2 * in.v_red - 2 * in.v_tors;
  if (v < 0) {
    throw Error(ErrorCode::kNegativeResult,
                "leading-term valuation " + std::to_string(v) + " (inconsistent inputs)");
  }
  return v;
}

bool apply_torsion_bound(ChiInputs& in, u64 p) {
  if (p < 11 || in.v_tors == 0) return false;
  in.v_tors = 0;
  return true;
}

}  // namespace iwastat
