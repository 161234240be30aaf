#include "iwastat/stats.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "iwastat/local.hpp"

namespace iwastat {

namespace {

u64 icbrt(u64 x) {
  u64 r = static_cast<u64>(std::cbrt(static_cast<long double>(x)));
  while (static_cast<u128>(r) * r * r > x) --r;
  while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) <= x) ++r;
  return r;
}

u64 isqrt(u64 x) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(x)));
  while (static_cast<u128>(r) * r > x) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Saturating power: returns cap + 1 once the value exceeds cap.
u128 bounded_pow(u64 base, u64 exp, u128 cap) {
  u128 r = 1;
  for (u64 i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integers in [lo, hi] congruent to r mod m.
u64 count_congruent(i64 lo, i64 hi, i64 r, i64 m) {
  if (hi < lo) return 0;
  return static_cast<u64>(floor_div(hi - r, m) - floor_div(lo - 1 - r, m));
}

void check_height(u64 x) {
  if (x < 1) throw Error(ErrorCode::kInvalidArgument, "height bound must be >= 1");
  if (x > kMaxHeight) throw Error(ErrorCode::kTooLarge, "height bound exceeds 1e17");
}

void check_prime(u64 p, const char* what) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidPrime, std::string(what) + " must be prime");
}

}  // namespace

HeightBox height_box(u64 x) {
  check_height(x);
  return {static_cast<i64>(icbrt(x)), static_cast<i64>(isqrt(x))};
}

unsigned default_workers() {
  if (const char* env = std::getenv("IWASTAT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

MinimalityRow::MinimalityRow(i64 a, i64 b_max) {
  if (a == 0) {
    // q^4 | 0 for every q, so B itself has to be sixth-power free.
    for (i64 q = 2; q * q * q * q * q * q <= b_max; ++q) {
      if (is_prime(static_cast<u64>(q))) sixth_.push_back(q * q * q * q * q * q);
    }
    return;
  }
  const i64 abs_a = a < 0 ? -a : a;
  for (i64 q = 2; q * q * q * q <= abs_a; ++q) {
    const i64 q4 = q * q * q * q;
    if (abs_a % q4 == 0 && is_prime(static_cast<u64>(q))) sixth_.push_back(q4 * q * q);
  }
}

bool MinimalityRow::minimal(i64 b) const {
  for (i64 s : sixth_) {
    if (b % s == 0) return false;
  }
  return true;
}

}  // namespace detail

u64 enumerate_curves(u64 x, const std::function<void(const CurveView&)>& visitor) {
  struct Visit {
    const std::function<void(const CurveView&)>* f;
    u64 n = 0;
    void visit(const CurveView& c) {
      ++n;
      (*f)(c);
    }
  };
  const HeightBox box = height_box(x);
  Visit v{&visitor};
  for (i64 a = -box.a_max; a <= box.a_max; ++a) detail::sweep_row(a, box.b_max, v);
  return v.n;
}

namespace {

struct Counter {
  u64 n = 0;
  void visit(const CurveView&) { ++n; }
  void merge(const Counter& o) { n += o.n; }
};

}  // namespace

u64 count_curves(u64 x, unsigned workers) {
  return sweep_curves<Counter>(x, workers, [] { return Counter{}; }).n;
}

u64 count_weierstrass(u64 x) {
  const HeightBox box = height_box(x);
  return static_cast<u64>(2 * box.a_max + 1) * static_cast<u64>(2 * box.b_max + 1);
}

double zeta10() {
  const long double pi = boost::math::constants::pi<long double>();
  const long double pi2 = pi * pi;
  const long double pi10 = pi2 * pi2 * pi2 * pi2 * pi2;
  return static_cast<double>(pi10 / 93555.0L);
}

double brumer_estimate(u64 x) {
  return 4.0 * std::pow(static_cast<double>(x), 5.0 / 6.0) / zeta10();
}

namespace {

// Counts membership in the I_p locus for one prime l.
struct IpTest {
  i64 l;
  i64 lp;   // l^p
  i64 lp1;  // l^(p+1), or 0 when it does not fit (then never divides)

  bool operator()(const CurveView& c) const {
    if (c.a % l == 0 || c.b % l == 0) return false;
    if (c.disc0 % lp != 0) return false;
    return lp1 == 0 || c.disc0 % lp1 != 0;
  }
};

// Returns nullopt when l^p already exceeds every discriminant in the box.
std::optional<IpTest> make_ip_test(u64 l, u64 p, u64 x) {
  const u128 cap = static_cast<u128>(31) * x;
  const u128 lp = bounded_pow(l, p, cap);
  if (lp > cap) return std::nullopt;
  const u128 lp1 = lp * l;
  return IpTest{static_cast<i64>(l), static_cast<i64>(lp),
                lp1 > static_cast<u128>(INT64_MAX) ? 0 : static_cast<i64>(lp1)};
}

}  // namespace

u64 count_Ip(u64 l, u64 p, u64 x, unsigned workers) {
  check_prime(l, "l");
  check_prime(p, "p");
  if (l == p) throw Error(ErrorCode::kEqualPrimes, "count_Ip needs l != p");
  check_height(x);
  const auto test = make_ip_test(l, p, x);
  if (!test) return 0;

  struct Acc {
    IpTest t;
    u64 n = 0;
    void visit(const CurveView& c) { n += t(c) ? 1 : 0; }
    void merge(const Acc& o) { n += o.n; }
  };
  return sweep_curves<Acc>(x, workers, [&] { return Acc{*test}; }).n;
}

SadekBounds sadek_bounds(u64 l, u64 p, u64 x) {
  check_prime(l, "l");
  check_prime(p, "p");
  if (l == p) throw Error(ErrorCode::kEqualPrimes, "sadek_bounds needs l != p");
  if (x < 4096) throw Error(ErrorCode::kInvalidArgument, "sadek_bounds needs X >= 2^12");
  check_height(x);

  SadekBounds out;
  long double prod = 1;
  for (u64 q = 2;; ++q) {
    if (!is_prime(q)) continue;
    const u128 next = static_cast<u128>(out.primorial) * q;
    if (bounded_pow(static_cast<u64>(next), 12, x) > x) break;
    out.primorial = static_cast<u64>(next);
    out.last_prime = q;
    ++out.k;
    const long double q10 = std::pow(static_cast<long double>(q), 10);
    prod *= q10 - 1;
  }

  const HeightBox box = height_box(x);
  const long double L = out.primorial;
  const long double lk = out.last_prime;
  const long double lp1 = std::pow(static_cast<long double>(l), static_cast<long double>(p + 1));
  const long double base = 4.0L * std::pow(static_cast<long double>(l), static_cast<long double>(p)) *
                           (l - 1.0L) * (l - 1.0L) * prod;

  // floor(floor(y) / D) = floor(y / D) for integer D, so the floors are exact
  // integer divisions of the box bounds.
  auto floor_term = [&](i64 top, int e) -> long double {
    const u128 cap = static_cast<u128>(top);
    u128 d = bounded_pow(l, p + 1, cap);
    for (int i = 0; i < e && d <= cap; ++i) d *= out.primorial;
    if (d > cap) return 0;
    return static_cast<long double>(static_cast<u128>(top) / d);
  };
  const long double main = floor_term(box.a_max, 4) * floor_term(box.b_max, 6);

  const long double xl = x;
  const long double L4 = std::pow(L, 4), L6 = std::pow(L, 6), L10 = std::pow(L, 10);
  const long double lower_corr = std::pow(xl, 5.0L / 6.0L) / (9.0L * lp1 * lp1 * L10 * std::pow(lk, 9));
  const long double upper_corr = std::cbrt(xl) / (3.0L * lp1 * L4 * std::pow(lk, 3)) +
                                 std::sqrt(xl) / (5.0L * lp1 * L6 * std::pow(lk, 5));
  out.lower = static_cast<double>(base * (main - lower_corr));
  out.upper = static_cast<double>(base * (main + upper_corr));
  return out;
}

u64 lifting_count_bruteforce(u64 l, u64 p) {
  check_prime(l, "l");
  check_prime(p, "p");
  const u128 guard = u128{1} << 32;
  const u128 m2 = bounded_pow(l, 2 * (p + 1), guard);
  if (m2 > guard) throw Error(ErrorCode::kTooLarge, "l^(2(p+1)) exceeds 2^32");
  const u64 m = static_cast<u64>(bounded_pow(l, p + 1, guard));
  const u64 lp = m / l;

  // Histogram 4A^3 and 27B^2 over units, then pair residues whose sum has
  // valuation exactly p. This visits the same pairs as a double loop.
  std::vector<u64> ha(m, 0), hb(m, 0);
  for (u64 t = 0; t < m; ++t) {
    if (t % l == 0) continue;
    ++ha[static_cast<u64>(static_cast<u128>(4) * t % m * t % m * t % m)];
    ++hb[static_cast<u64>(static_cast<u128>(27) * t % m * t % m)];
  }
  u64 count = 0;
  for (u64 r = 0; r < m; ++r) {
    if (ha[r] == 0) continue;
    const u64 base = (lp - r % lp) % lp;  // s with r + s = 0 mod l^p
    for (u64 s = base; s < m; s += lp) {
      if ((r + s) % m == 0) continue;
      count += ha[r] * hb[s];
    }
  }
  return count;
}

u64 lifting_count_formula(u64 l, u64 p) {
  const u128 v = bounded_pow(l, p, u128{1} << 100) * (l - 1) * (l - 1);
  if (v > UINT64_MAX) throw Error(ErrorCode::kTooLarge, "l^p (l-1)^2 exceeds 64 bits");
  return static_cast<u64>(v);
}

SeriesBound bound_dp2(u64 p, double tol) {
  check_prime(p, "p");
  if (p < 5) throw Error(ErrorCode::kInvalidPrime, "bound_dp2 needs p >= 5");
  if (!(tol > 0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");

  // Omitted terms are below sum_{n > L} n^(-p) <= L^(1-p) / (p-1).
  const double pm1 = static_cast<double>(p - 1);
  u64 cutoff = static_cast<u64>(std::ceil(std::pow(tol * pm1, -1.0 / pm1))) + 1;
  if (cutoff < 2) cutoff = 2;
  const auto tail = [&](u64 n) { return std::pow(static_cast<double>(n), -pm1) / pm1; };
  while (tail(cutoff) >= tol) ++cutoff;

  std::vector<u64> primes;
  for (u64 l = 2; l <= cutoff; ++l) {
    if (l != p && is_prime(l)) primes.push_back(l);
  }
  long double sum = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const long double lf = static_cast<long double>(*it);
    const long double r = (lf - 1) / lf;
    sum += r * r * std::pow(lf, -static_cast<long double>(p));
  }
  return {static_cast<double>(sum), tail(cutoff), cutoff};
}

double bound_dp3(u64 p, i64 d_value) {
  check_prime(p, "p");
  if (d_value < 0) throw Error(ErrorCode::kInvalidArgument, "d(p) must be >= 0");
  const double pd = static_cast<double>(p);
  return zeta10() * static_cast<double>(d_value) / (pd * pd);
}

u64 lattice_count(i64 ka, i64 kb, u64 p, u64 x) {
  if (p < 2) throw Error(ErrorCode::kInvalidArgument, "modulus must be >= 2");
  const HeightBox box = height_box(x);
  const i64 m = static_cast<i64>(p);
  const i64 ra = static_cast<i64>(mod(ka, p)), rb = static_cast<i64>(mod(kb, p));
  return count_congruent(-box.a_max, box.a_max, ra, m) * count_congruent(-box.b_max, box.b_max, rb, m);
}

double lattice_density(i64 ka, i64 kb, u64 p, u64 x) {
  return static_cast<double>(lattice_count(ka, kb, p, x)) / static_cast<double>(count_weierstrass(x));
}

std::vector<u64> default_ip_primes(u64 p, u64 x) {
  std::vector<u64> out;
  const u128 cap = static_cast<u128>(31) * x;
  for (u64 l = 2; bounded_pow(l, p, cap) <= cap; ++l) {
    if (l != p && is_prime(l)) out.push_back(l);
  }
  return out;
}

namespace {

struct ESmall {
  i64 l;
  i64 lp;  // l^p
};

struct DensityAcc {
  u64 p;
  const std::vector<ESmall>* e2_primes;
  const std::vector<std::pair<u64, IpTest>>* ip_tests;
  const DensityOptions* opts;
  PointCountCache* cache;

  u64 total = 0;
  u64 good = 0;
  u64 e2 = 0;
  u64 e3 = 0;
  u64 skipped = 0;
  std::vector<u64> ip;

  // p | c_l for some l >= 5, which only happens for split I_n with p | n.
  bool large_prime_hit(const CurveView& c) const {
    const i64 ad = c.disc0 < 0 ? -c.disc0 : c.disc0;
    for (const ESmall& e : *e2_primes) {
      if (e.lp > ad) break;
      if (c.disc0 % e.lp != 0 || c.a % e.l == 0) continue;
      const int n = valuation(c.disc0, static_cast<u64>(e.l));
      if (n % static_cast<int>(p) != 0) continue;
      if (legendre(864 * c.b, static_cast<u64>(e.l)) == 1) return true;
    }
    return false;
  }

  void visit(const CurveView& c) {
    ++total;
    if (c.disc0 % static_cast<i64>(p) != 0) {
      ++good;
      const i64 n = p <= PointCountCache::kMaxPrime ? cache->get(c.a, c.b, p) : count_points(c.a, c.b, p);
      if (n % static_cast<i64>(p) == 0) ++e3;
    }
    for (std::size_t i = 0; i < ip_tests->size(); ++i) {
      if ((*ip_tests)[i].second(c)) ++ip[i];
    }

    if (large_prime_hit(c)) {
      ++e2;
      return;
    }
    if (opts->small_prime_tate) {
      for (u64 l : {u64{2}, u64{3}}) {
        const KodairaData k = tate_algorithm(0, 0, 0, c.a, c.b, l);
        if (k.tamagawa % static_cast<i64>(p) == 0) {
          ++e2;
          return;
        }
      }
    } else if (opts->strict) {
      // v_2(Delta) = 4 + v_2(disc0); v_3(Delta) = v_3(disc0).
      const int v2 = 4 + valuation(c.disc0, 2);
      const int v3 = c.disc0 % 3 == 0 ? valuation(c.disc0, 3) : 0;
      if (v2 >= static_cast<int>(p) || v3 >= static_cast<int>(p)) ++skipped;
    }
  }

  void merge(const DensityAcc& o) {
    total += o.total;
    good += o.good;
    e2 += o.e2;
    e3 += o.e3;
    skipped += o.skipped;
    for (std::size_t i = 0; i < ip.size(); ++i) ip[i] += o.ip[i];
  }
};

}  // namespace

DensityReport empirical_densities(u64 p, u64 x, const DensityOptions& opts) {
  check_prime(p, "p");
  if (p < 5) throw Error(ErrorCode::kInvalidPrime, "empirical_densities needs p >= 5");
  const HeightBox box = height_box(x);

  const i64 max_disc = 4 * box.a_max * box.a_max * box.a_max + 27 * box.b_max * box.b_max;
  std::vector<ESmall> e2_primes;
  for (u64 l = 5;; ++l) {
    const u128 lp = bounded_pow(l, p, static_cast<u128>(max_disc));
    if (lp > static_cast<u128>(max_disc)) break;
    if (is_prime(l)) e2_primes.push_back({static_cast<i64>(l), static_cast<i64>(lp)});
  }

  const std::vector<u64> ip_primes = opts.ip_primes.empty() ? default_ip_primes(p, x) : opts.ip_primes;
  std::vector<std::pair<u64, IpTest>> ip_tests;
  DensityReport report;
  for (u64 l : ip_primes) {
    check_prime(l, "l");
    if (l == p) throw Error(ErrorCode::kEqualPrimes, "ip prime equals p");
    report.ip_counts[l] = 0;
    if (auto t = make_ip_test(l, p, x)) ip_tests.emplace_back(l, *t);
  }

  PointCountCache local_cache;
  PointCountCache* cache = opts.cache ? opts.cache : &local_cache;
  const DensityAcc acc = sweep_curves<DensityAcc>(x, opts.workers, [&] {
    DensityAcc a{p, &e2_primes, &ip_tests, &opts, cache, 0, 0, 0, 0, 0, std::vector<u64>(ip_tests.size(), 0)};
    return a;
  });

  report.p = p;
  report.X = x;
  report.total = acc.total;
  report.total_weq = count_weierstrass(x);
  report.good_at_p = acc.good;
  report.e2 = acc.e2;
  report.e3 = acc.e3;
  for (std::size_t i = 0; i < ip_tests.size(); ++i) report.ip_counts[ip_tests[i].first] = acc.ip[i];
  report.brumer_estimate = brumer_estimate(x);
  report.bound_dp2 = bound_dp2(p).value;
  report.d_literal = d_of_p(p, DMode::kLiteralPairs, opts.workers);
  report.bound_dp3 = bound_dp3(p, report.d_literal);
  report.e2_skipped = acc.skipped;
  return report;
}

}  // namespace iwastat
