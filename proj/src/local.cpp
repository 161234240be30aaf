#include "iwastat/local.hpp"

#include <limits>

#include "iwastat/factor.hpp"

namespace iwastat {

std::string KodairaSymbol::str() const {
  switch (type) {
    case KodairaType::kI0: return "I0";
    case KodairaType::kIn: return "I" + std::to_string(n);
    case KodairaType::kII: return "II";
    case KodairaType::kIII: return "III";
    case KodairaType::kIV: return "IV";
    case KodairaType::kI0Star: return "I0*";
    case KodairaType::kInStar: return "I" + std::to_string(n) + "*";
    case KodairaType::kIVStar: return "IV*";
    case KodairaType::kIIIStar: return "III*";
    case KodairaType::kIIStar: return "II*";
  }
  return "?";
}

namespace {

u64 abs_disc0(const CurveQ& curve) {
  const i128 d = curve.disc0();
  const u128 mag = d < 0 ? static_cast<u128>(-d) : static_cast<u128>(d);
  if (mag > std::numeric_limits<u64>::max()) {
    throw Error(ErrorCode::kTooLarge, "discriminant exceeds 64 bits");
  }
  return static_cast<u64>(mag);
}

bool is_bad(const CurveQ& curve, u64 l) { return l == 2 || curve.disc0() % l == 0; }

int val_or_inf(i64 x, u64 l) { return x == 0 ? std::numeric_limits<int>::max() : valuation(x, l); }

// v_l(Delta) for Delta = -16 disc0.
int delta_valuation(const CurveQ& curve, u64 l) {
  return valuation(curve.disc0(), l) + (l == 2 ? 4 : 0);
}

KodairaData local_algorithm(const CurveQ& curve, u64 l) {
  return tate_algorithm(0, 0, 0, curve.a(), curve.b(), l);
}

}  // namespace

std::vector<u64> bad_primes(const CurveQ& curve) {
  std::vector<u64> out{2};
  for (auto [q, e] : factorize(abs_disc0(curve))) {
    if (q != 2) out.push_back(q);
  }
  return out;
}

KodairaData kodaira_from_table(const CurveQ& curve, u64 l) {
  if (l < 5 || !is_prime(l)) {
    throw Error(ErrorCode::kInvalidPrime, "valuation table needs a prime >= 5");
  }
  const int vd = valuation(curve.disc0(), l);
  if (vd == 0) throw Error(ErrorCode::kGoodReduction, "good reduction at " + std::to_string(l));
  const int va = val_or_inf(curve.a(), l);
  const int vb = val_or_inf(curve.b(), l);
  const i128 pl = l;

  KodairaData out;
  out.prime = l;
  if (va == 0) {
    // -c6 = 864 B; l does not divide B here since l | disc0 and l does not divide A.
    const bool split = legendre(static_cast<i64>(mod(static_cast<i128>(864) * curve.b(), l)), l) == 1;
    out.symbol = {KodairaType::kIn, vd};
    out.split = split;
    out.tamagawa = split ? vd : (vd % 2 == 0 ? 2 : 1);
    return out;
  }
  if (va == 2 && vb == 3 && vd > 6) {
    out.symbol = {KodairaType::kInStar, vd - 6};
    out.tamagawa = local_algorithm(curve, l).tamagawa;
    return out;
  }
  switch (vd) {
    case 2:
      out.symbol = {KodairaType::kII, 0};
      out.tamagawa = 1;
      break;
    case 3:
      out.symbol = {KodairaType::kIII, 0};
      out.tamagawa = 2;
      break;
    case 4:
      out.symbol = {KodairaType::kIV, 0};
      out.tamagawa = legendre(static_cast<i64>(mod(curve.b() / (pl * pl), l)), l) == 1 ? 3 : 1;
      break;
    case 6:
      out.symbol = {KodairaType::kI0Star, 0};
      out.tamagawa = 1 + cubic_root_count(0, curve.a() / (pl * pl), curve.b() / (pl * pl * pl), l);
      break;
    case 8:
      out.symbol = {KodairaType::kIVStar, 0};
      out.tamagawa =
          legendre(static_cast<i64>(mod(curve.b() / (pl * pl * pl * pl), l)), l) == 1 ? 3 : 1;
      break;
    case 9:
      out.symbol = {KodairaType::kIIIStar, 0};
      out.tamagawa = 2;
      break;
    case 10:
      out.symbol = {KodairaType::kIIStar, 0};
      out.tamagawa = 1;
      break;
    default:
      throw std::logic_error("valuation pattern of a non-minimal model at " + std::to_string(l));
  }
  return out;
}

KodairaData kodaira_tamagawa(const CurveQ& curve, u64 l, LocalDataOptions opts) {
  if (!is_prime(l)) throw Error(ErrorCode::kInvalidPrime, std::to_string(l) + " is not prime");
  if (!is_bad(curve, l)) {
    throw Error(ErrorCode::kGoodReduction, "good reduction at " + std::to_string(l));
  }
  if (l >= 5) return kodaira_from_table(curve, l);
  if (opts.strict) {
    throw Error(ErrorCode::kUnknownLocalData,
                "local data at " + std::to_string(l) + " requires an override in strict mode");
  }
  return local_algorithm(curve, l);
}

i64 p_part(i64 c, u64 p) {
  if (c <= 0) throw Error(ErrorCode::kInvalidArgument, "Tamagawa numbers are positive");
  i64 out = 1;
  while (c % static_cast<i64>(p) == 0) {
    c /= static_cast<i64>(p);
    out *= static_cast<i64>(p);
  }
  return out;
}

std::map<u64, i64> tamagawa_numbers(const CurveRecord& record, LocalDataOptions opts) {
  std::map<u64, i64> out;
  for (u64 l : bad_primes(record.curve)) {
    if (auto it = record.tamagawa_overrides.find(l); it != record.tamagawa_overrides.end()) {
      out[l] = it->second;
    } else {
      out[l] = kodaira_tamagawa(record.curve, l, opts).tamagawa;
    }
  }
  return out;
}

i64 tamagawa_p_part(const CurveRecord& record, u64 p, LocalDataOptions opts) {
  if (p < 5 || !is_prime(p)) throw Error(ErrorCode::kInvalidPrime, "tau_p needs a prime >= 5");
  i64 tau = 1;
  for (u64 l : bad_primes(record.curve)) {
    i64 c = 1;
    if (auto it = record.tamagawa_overrides.find(l); it != record.tamagawa_overrides.end()) {
      c = it->second;
    } else if (l >= 5 || !opts.strict) {
      c = kodaira_tamagawa(record.curve, l, opts).tamagawa;
    } else if (delta_valuation(record.curve, l) >= static_cast<int>(p)) {
      // Only a split I_n with p | n could contribute, and n <= v_l(Delta).
      throw Error(ErrorCode::kUnknownLocalData,
                  "cannot certify the " + std::to_string(p) + "-part of c_" + std::to_string(l));
    }
    tau *= p_part(c, p);
  }
  return tau;
}

}  // namespace iwastat
