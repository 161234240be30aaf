#pragma once

#include <utility>
#include <vector>

#include "iwastat/arith.hpp"

namespace iwastat {

// Prime factorization with exponents, ascending. Trial division to 10^6,
// then Pollard rho (Brent) on the cofactor.
std::vector<std::pair<u64, int>> factorize(u64 n);

}  // namespace iwastat
