#pragma once

// Deliberately naive reference implementations. Nothing here calls into the
// library, so agreement with it is evidence rather than tautology.

#include <cstdint>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;

bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);

// #E(F_p) by listing every (x, y).
i64 count_points(i64 a, i64 b, i64 p);

// Does E(F_p) contain a point of exact order p? Checked with the affine group
// law, independent of the point count.
bool has_p_torsion(i64 a, i64 b, i64 p);

bool is_minimal(i64 a, i64 b);

// Curves with |A|^3 <= X, B^2 <= X, nonsingular and minimal, by a double loop
// over the naive predicates.
u64 count_curves(u64 x);

// Number of SL2(Z) classes of binary quadratic forms (primitive or not) of
// discriminant d < 0, counted without weights.
i64 form_class_count(i64 d);

// (literal, trace-one) pair counts over F_p by brute force.
struct DPairs {
  i64 literal = 0;
  i64 trace_one = 0;
};
DPairs d_pairs(i64 p);

// Pairs mod l^(p+1) with l not dividing A or B and v_l(disc) = p, double loop.
u64 lifting_count(u64 l, u64 p);

// sum over primes l != p, l <= limit of (l-1)^2 / l^(p+2)
double dp2_partial(u64 p, u64 limit);

}  // namespace oracle
