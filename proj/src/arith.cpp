#include "iwastat/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

namespace iwastat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPrime: return "InvalidPrime";
    case ErrorCode::kInvalidCurve: return "InvalidCurve";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBadReduction: return "BadReduction";
    case ErrorCode::kGoodReduction: return "GoodReductionAt";
    case ErrorCode::kUnknownLocalData: return "UnknownLocalData";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kNegativeResult: return "NegativeResult";
    case ErrorCode::kMissingRegulator: return "MissingRegulator";
    case ErrorCode::kMissingSha: return "MissingSha";
    case ErrorCode::kEqualPrimes: return "EqualPrimes";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kHeaderMismatch: return "HeaderMismatch";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 mod(i128 a, u64 m) {
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 invmod(u64 a, u64 m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorCode::kInvalidArgument, "value is not invertible");
  return mod(t, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kBases) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int valuation(i128 n, u64 p) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "valuation of zero");
  int v = 0;
  const i128 q = static_cast<i128>(p);
  while (n % q == 0) {
    n /= q;
    ++v;
  }
  return v;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  u128 u = negative ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

void require_odd_prime(u64 p) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::kInvalidPrime, std::to_string(p) + " is not an odd prime");
  }
}

// Point counting is O(p); larger primes are outside desk scale.
constexpr u64 kMaxCountingPrime = u64{1} << 28;

void require_counting_prime(u64 p, ReductionOptions opts) {
  const u64 lowest = opts.allow_p3 ? 3 : 5;
  if (p < lowest || !is_prime(p)) {
    throw Error(ErrorCode::kInvalidPrime,
                std::to_string(p) + " is not a prime >= " + std::to_string(lowest));
  }
  if (p > kMaxCountingPrime) {
    throw Error(ErrorCode::kTooLarge, "prime " + std::to_string(p) + " exceeds counting range");
  }
}

}  // namespace

int legendre(i64 a, u64 p) {
  require_odd_prime(p);
  const u64 r = mod(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

ResidueTable::ResidueTable(u32 p) : p_(p), table_(new std::int8_t[p]) {
  require_odd_prime(p);
  std::fill_n(table_.get(), p, std::int8_t{-1});
  table_[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) table_[y * y % p] = 1;
}

std::shared_ptr<const ResidueTable> residue_table(u32 p) {
  static std::mutex mutex;
  static std::map<u32, std::shared_ptr<const ResidueTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) slot = std::make_shared<const ResidueTable>(p);
  return slot;
}

i128 disc0(i64 a, i64 b) {
  const i128 a128 = a, b128 = b;
  return 4 * a128 * a128 * a128 + 27 * b128 * b128;
}

namespace {

// Primes below 1100; enough to test minimality inside the CurveQ range.
const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    for (u64 n = 2; n < 1100; ++n) {
      if (is_prime(n)) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

}  // namespace

bool is_minimal(i64 a, i64 b) {
  const u64 ua = a < 0 ? static_cast<u64>(-a) : static_cast<u64>(a);
  const u64 ub = b < 0 ? static_cast<u64>(-b) : static_cast<u64>(b);
  if (ua == 0 && ub == 0) return false;
  const u64 g = std::gcd(ua, ub);
  for (u64 q : small_primes()) {
    const u128 q4 = static_cast<u128>(q) * q * q * q;
    const u128 q6 = q4 * q * q;
    if ((ua != 0 && q4 > ua) || (ub != 0 && q6 > ub)) break;
    if (g % q != 0) continue;
    if (ua % q4 == 0 && ub % q6 == 0) return false;
  }
  return true;
}

CurveQ::CurveQ(i64 a, i64 b) : a_(a), b_(b), disc0_(iwastat::disc0(a, b)) {
  if (a > kMaxA || a < -kMaxA || b > kMaxB || b < -kMaxB) {
    throw Error(ErrorCode::kInvalidCurve, "coefficients outside supported range");
  }
  if (disc0_ == 0) {
    throw Error(ErrorCode::kInvalidCurve,
                "singular curve (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  if (!is_minimal(a, b)) {
    throw Error(ErrorCode::kInvalidCurve,
                "non-minimal model (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
}

u128 CurveQ::height() const noexcept {
  const u128 ua = a_ < 0 ? static_cast<u128>(-a_) : static_cast<u128>(a_);
  const u128 ub = b_ < 0 ? static_cast<u128>(-b_) : static_cast<u128>(b_);
  return std::max(ua * ua * ua, ub * ub);
}

std::string_view to_string(ReductionClass c) {
  switch (c) {
    case ReductionClass::kGoodOrdinary: return "GoodOrdinary";
    case ReductionClass::kGoodSupersingular: return "GoodSupersingular";
    case ReductionClass::kBad: return "Bad";
  }
  return "Bad";
}

i64 count_points(i64 a, i64 b, u64 p, ReductionOptions opts) {
  require_counting_prime(p, opts);
  if (mod(disc0(a, b), p) == 0) {
    throw Error(ErrorCode::kBadReduction, "bad reduction at " + std::to_string(p));
  }
  const auto table = residue_table(static_cast<u32>(p));
  const u64 ra = mod(a, p), rb = mod(b, p);
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 f = (x * x % p * x + ra * x + rb) % p;
    sum += table->chi(static_cast<u32>(f));
  }
  return static_cast<i64>(p) + 1 + sum;
}

i64 trace_frobenius(i64 a, i64 b, u64 p, ReductionOptions opts) {
  return static_cast<i64>(p) + 1 - count_points(a, b, p, opts);
}

LocalReduction classify_reduction(i64 a, i64 b, u64 p, ReductionOptions opts) {
  require_counting_prime(p, opts);
  LocalReduction out;
  out.prime = p;
  if (mod(disc0(a, b), p) == 0) return out;
  const i64 n = count_points(a, b, p, opts);
  const i64 ap = static_cast<i64>(p) + 1 - n;
  out.n_points = n;
  out.a_p = ap;
  out.cls = ap % static_cast<i64>(p) == 0 ? ReductionClass::kGoodSupersingular
                                          : ReductionClass::kGoodOrdinary;
  out.anomalous = n % static_cast<i64>(p) == 0;
  if (p >= 5 && out.cls == ReductionClass::kGoodSupersingular && ap != 0) {
    throw std::logic_error("supersingular trace must vanish for p >= 5");
  }
  return out;
}

std::string_view to_string(DMode m) {
  switch (m) {
    case DMode::kLiteralPairs: return "literal";
    case DMode::kTraceOnePairs: return "trace-one";
    case DMode::kTraceOneClasses: return "classes";
  }
  return "literal";
}

std::optional<DMode> parse_dmode(std::string_view s) {
  if (s == "literal" || s == "LiteralPairs") return DMode::kLiteralPairs;
  if (s == "trace-one" || s == "TraceOnePairs") return DMode::kTraceOnePairs;
  if (s == "classes" || s == "TraceOneClasses") return DMode::kTraceOneClasses;
  return std::nullopt;
}

i64 DCensus::get(DMode m) const noexcept {
  switch (m) {
    case DMode::kLiteralPairs: return literal_pairs;
    case DMode::kTraceOnePairs: return trace_one_pairs;
    case DMode::kTraceOneClasses: return trace_one_classes;
  }
  return 0;
}

namespace {

struct CensusPartial {
  i64 literal = 0;
  i64 trace_one = 0;
  // Sum of stabilizer sizes over trace-one pairs; orbits have size
  // (p - 1) / |stab| under (a, b) -> (u^4 a, u^6 b).
  i64 stabilizer_sum = 0;
};

CensusPartial census_rows(u64 p, u64 a_begin, u64 a_end, const ResidueTable& table) {
  CensusPartial acc;
  std::vector<u32> g(p);
  const i64 stab_a0 = static_cast<i64>(std::gcd<u64>(6, p - 1));
  const i64 stab_b0 = static_cast<i64>(std::gcd<u64>(4, p - 1));
  const u64 c27 = 27 % p;
  for (u64 a = a_begin; a < a_end; ++a) {
    for (u64 x = 0; x < p; ++x) g[x] = static_cast<u32>((x * x % p * x + a * x) % p);
    const u64 four_a3 = 4 * (a * a % p * a % p) % p;
    for (u64 b = 0; b < p; ++b) {
      if ((four_a3 + c27 * (b * b % p)) % p == 0) continue;
      i64 sum = 0;
      for (u64 x = 0; x < p; ++x) {
        u64 idx = g[x] + b;
        if (idx >= p) idx -= p;
        sum += table.chi(static_cast<u32>(idx));
      }
      const i64 n = static_cast<i64>(p) + 1 + sum;
      if (n % static_cast<i64>(p) == 0) ++acc.literal;
      if (n == static_cast<i64>(p)) {
        ++acc.trace_one;
        acc.stabilizer_sum += a == 0 ? stab_a0 : (b == 0 ? stab_b0 : 2);
      }
    }
  }
  return acc;
}

}  // namespace

DCensus d_census(u64 p, unsigned workers) {
  require_counting_prime(p, {});
  const auto table = residue_table(static_cast<u32>(p));
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(p)));
  std::vector<CensusPartial> partials(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const u64 begin = p * w / workers, end = p * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] { partials[w] = census_rows(p, begin, end, *table); });
  }
  for (auto& t : threads) t.join();

  CensusPartial total;
  for (const auto& part : partials) {
    total.literal += part.literal;
    total.trace_one += part.trace_one;
    total.stabilizer_sum += part.stabilizer_sum;
  }
  if (total.stabilizer_sum % static_cast<i64>(p - 1) != 0) {
    throw std::logic_error("orbit count is not integral");
  }
  DCensus out;
  out.p = p;
  out.literal_pairs = total.literal;
  out.trace_one_pairs = total.trace_one;
  out.trace_one_classes = total.stabilizer_sum / static_cast<i64>(p - 1);
  return out;
}

i64 d_of_p(u64 p, DMode mode, unsigned workers) { return d_census(p, workers).get(mode); }

}  // namespace iwastat
