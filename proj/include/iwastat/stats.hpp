#pragma once

// Height-ordered enumeration of minimal short Weierstrass models and the
// counting built on top of it.

#include <atomic>
#include <functional>
#include <map>
#include <thread>
#include <vector>

#include "iwastat/arith.hpp"
#include "iwastat/cache.hpp"

namespace iwastat {

// Heights beyond this overflow 64-bit discriminants in the sweep.
inline constexpr u64 kMaxHeight = 100'000'000'000'000'000ull;

struct HeightBox {
  i64 a_max = 0;  // floor(X^(1/3))
  i64 b_max = 0;  // floor(X^(1/2))
};

HeightBox height_box(u64 x);

struct CurveView {
  i64 a;
  i64 b;
  i64 disc0;  // 4A^3 + 27B^2
};

// IWASTAT_THREADS if set and positive, else the hardware concurrency.
unsigned default_workers();

namespace detail {

// Row-level minimality data: the primes q with q^4 | A. For A = 0 every prime
// qualifies, which is handled by testing B for sixth powers directly.
class MinimalityRow {
 public:
  MinimalityRow(i64 a, i64 b_max);
  bool minimal(i64 b) const;

 private:
  std::vector<i64> sixth_;  // q^6 for the relevant q
};

template <class Acc>
void sweep_row(i64 a, i64 b_max, Acc& acc) {
  MinimalityRow row(a, b_max);
  const i64 a_term = 4 * a * a * a;
  for (i64 b = -b_max; b <= b_max; ++b) {
    const i64 d = a_term + 27 * b * b;
    if (d == 0 || !row.minimal(b)) continue;
    acc.visit(CurveView{a, b, d});
  }
}

}  // namespace detail

// Runs a commutative accumulation over every curve of height <= x. Each
// worker builds its own accumulator with make(); partial results are merged
// in worker order once all rows are done. Acc needs visit(const CurveView&)
// and merge(const Acc&).
template <class Acc, class Make>
Acc sweep_curves(u64 x, unsigned workers, Make make) {
  const HeightBox box = height_box(x);
  if (workers == 0) workers = 1;
  const i64 rows = 2 * box.a_max + 1;
  if (static_cast<i64>(workers) > rows) workers = static_cast<unsigned>(rows);

  std::vector<Acc> parts;
  parts.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) parts.push_back(make());

  std::atomic<i64> next{0};
  auto work = [&](unsigned w) {
    for (i64 r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) {
      detail::sweep_row(r - box.a_max, box.b_max, parts[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (unsigned w = 1; w < workers; ++w) parts[0].merge(parts[w]);
  return std::move(parts[0]);
}

// Visits curves in order (A ascending, then B) on the calling thread.
u64 enumerate_curves(u64 x, const std::function<void(const CurveView&)>& visitor);
u64 count_curves(u64 x, unsigned workers = default_workers());
// All integer pairs in the box, no discriminant or minimality condition.
u64 count_weierstrass(u64 x);

double zeta10();
double brumer_estimate(u64 x);

// Curves of height <= x with l not dividing A or B and v_l(4A^3+27B^2) = p.
u64 count_Ip(u64 l, u64 p, u64 x, unsigned workers = default_workers());

struct SadekBounds {
  double lower = 0;
  double upper = 0;
  int k = 0;
  u64 primorial = 1;    // L_k
  u64 last_prime = 1;   // l_k
};

SadekBounds sadek_bounds(u64 l, u64 p, u64 x);

// Pairs (A, B) mod l^(p+1) with l not dividing A or B and
// v_l(4A^3+27B^2) = p exactly, counted by enumeration.
u64 lifting_count_bruteforce(u64 l, u64 p);
u64 lifting_count_formula(u64 l, u64 p);

struct SeriesBound {
  double value = 0;
  double tail_bound = 0;  // upper bound on the omitted terms
  u64 cutoff = 0;         // last l included
};

SeriesBound bound_dp2(u64 p, double tol = 1e-10);
double bound_dp3(u64 p, i64 d_value);

u64 lattice_count(i64 ka, i64 kb, u64 p, u64 x);
double lattice_density(i64 ka, i64 kb, u64 p, u64 x);

struct DensityReport {
  u64 p = 0;
  u64 X = 0;
  u64 total = 0;
  u64 total_weq = 0;
  u64 good_at_p = 0;
  u64 e2 = 0;
  u64 e3 = 0;
  std::map<u64, u64> ip_counts;
  double brumer_estimate = 0;
  double bound_dp2 = 0;
  double bound_dp3 = 0;
  i64 d_literal = 0;
  // Curves left out of e2 because strict mode could not certify c_2 or c_3.
  u64 e2_skipped = 0;

  friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

struct DensityOptions {
  unsigned workers = default_workers();
  // Skip curves whose p-part of c_2 c_3 cannot be certified from v_l(Delta).
  bool strict = false;
  // Run Tate's algorithm at 2 and 3 instead of ignoring those primes.
  bool small_prime_tate = false;
  // Primes l for ip_counts; empty means default_ip_primes(p, X).
  std::vector<u64> ip_primes;
  PointCountCache* cache = nullptr;
};

// Primes l != p with l^p <= 31 X, the only ones that can have nonzero counts.
std::vector<u64> default_ip_primes(u64 p, u64 x);

DensityReport empirical_densities(u64 p, u64 x, const DensityOptions& opts = {});

}  // namespace iwastat
