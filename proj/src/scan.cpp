#include "iwastat/scan.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "iwastat/euler.hpp"

namespace iwastat {

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::kSelmerTrivial: return "SelmerTrivial";
    case Conclusion::kSignedSelmerTrivial: return "SignedSelmerTrivial";
    case Conclusion::kCharElementIsTr: return "CharElementIsTr";
    case Conclusion::kInconclusive: return "Inconclusive";
    case Conclusion::kBadPrime: return "BadPrime";
  }
  return "Inconclusive";
}

std::string_view to_string(ScanReason r) {
  switch (r) {
    case ScanReason::kNone: return "";
    case ScanReason::kBadReduction: return "BadReduction";
    case ScanReason::kAnomalous: return "Anomalous";
    case ScanReason::kTamagawaOrSha: return "TamagawaOrSha";
    case ScanReason::kMissingSha: return "MissingSha";
    case ScanReason::kUnknownLocalData: return "UnknownLocalData";
    case ScanReason::kMissingRegulator: return "MissingRegulator";
    case ScanReason::kRegulatorDivisible: return "RegulatorDivisible";
  }
  return "";
}

namespace {

bool tamagawa_divisible(const CurveRecord& record, u64 p, LocalDataOptions opts) {
  if (p >= 5) return tamagawa_p_part(record, p, opts) > 1;
  i64 product_part = 1;
  for (auto [l, c] : tamagawa_numbers(record, opts)) product_part *= p_part(c, p);
  return product_part > 1;
}

int log_p(i64 n, u64 p) { return n == 0 ? 0 : valuation(static_cast<i128>(n), p); }

PrimeScanResult scan_one(const CurveRecord& record, u64 p, LocalDataOptions opts) {
  PrimeScanResult out;
  out.p = p;
  const auto local = classify_reduction(record.curve.a(), record.curve.b(), p);
  out.cls = local.cls;
  out.a_p = local.a_p;
  out.n_points = local.n_points;
  if (local.cls == ReductionClass::kBad) {
    out.conclusion = Conclusion::kBadPrime;
    out.reason = ScanReason::kBadReduction;
    return out;
  }
  const bool ordinary = local.cls == ReductionClass::kGoodOrdinary;
  out.in_sigma = local.anomalous;

  // Divisibility list shared by Sigma' (ordinary) and Upsilon (supersingular).
  std::optional<bool> tam_div;
  try {
    tam_div = tamagawa_divisible(record, p, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnknownLocalData) throw;
  }
  const std::optional<bool> sha_div =
      record.sha_order ? std::optional<bool>(*record.sha_order % static_cast<i64>(p) == 0)
                       : std::nullopt;
  std::optional<bool> member;
  if ((tam_div && *tam_div) || (sha_div && *sha_div)) {
    member = true;
  } else if (tam_div && sha_div) {
    member = false;
  }
  if (member && *member) (ordinary ? out.in_sigma_prime : out.in_upsilon) = true;

  std::optional<i64> reg;
  if (record.regulator_valuations) {
    if (auto it = record.regulator_valuations->find(p); it != record.regulator_valuations->end()) {
      reg = it->second;
      if (*reg < 0) {
        throw Error(ErrorCode::kNegativeResult, "regulator valuation below rank at p = " +
                                                    std::to_string(p) + " for " + record.label);
      }
      out.in_pi = *reg >= 1;
    }
  }

  if (tam_div && sha_div) {
    ChiInputs in;
    in.v_sha = log_p(p_part(*record.sha_order, p), p);
    in.v_tam = log_p(tamagawa_p_part(record, p, opts), p);
    in.v_red = log_p(p_part(*local.n_points, p), p);
    in.v_tors = ordinary ? log_p(p_part(record.torsion_order, p), p) : 0;
    apply_torsion_bound(in, p);
    if (reg) in.v_reg_excess = static_cast<int>(*reg);
    if (record.rank == 0) {
      out.chi_valuation = ordinary ? chi_ordinary_valuation(in) : chi_supersingular_valuation(in);
    } else if (reg) {
      out.chi_valuation =
          g0_valuation(in, ordinary ? G0Variant::kOrdinary : G0Variant::kSignedPlus);
    }
  }

  auto inconclusive = [&](ScanReason why) {
    out.conclusion = Conclusion::kInconclusive;
    out.reason = why;
    return out;
  };
  if (out.in_sigma) return inconclusive(ScanReason::kAnomalous);
  if (member && *member) return inconclusive(ScanReason::kTamagawaOrSha);
  if (!tam_div) return inconclusive(ScanReason::kUnknownLocalData);
  if (!sha_div) return inconclusive(ScanReason::kMissingSha);

  if (record.rank == 0) {
    out.conclusion = ordinary ? Conclusion::kSelmerTrivial : Conclusion::kSignedSelmerTrivial;
    out.invariants = IwasawaInvariants{0, 0};
  } else {
    if (!reg) return inconclusive(ScanReason::kMissingRegulator);
    if (*out.in_pi) return inconclusive(ScanReason::kRegulatorDivisible);
    out.conclusion = Conclusion::kCharElementIsTr;
    out.conditional = !ordinary;
    out.invariants = IwasawaInvariants{0, record.rank};
  }
  if (out.chi_valuation != 0) {
    throw std::logic_error("trivial-shape conclusion with nonzero Euler characteristic valuation");
  }
  if (out.invariants->lambda < record.rank) {
    throw std::logic_error("lambda below Mordell-Weil rank");
  }
  return out;
}

}  // namespace

bool sigma_prime_membership(const CurveRecord& record, u64 p, LocalDataOptions opts) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidPrime, std::to_string(p) + " is not prime");
  if (p == 2) return true;
  if (!record.sha_order) throw Error(ErrorCode::kMissingSha, "no Sha order for " + record.label);
  if (*record.sha_order % static_cast<i64>(p) == 0) return true;
  return tamagawa_divisible(record, p, opts);
}

std::vector<PrimeScanResult> scan_primes(const CurveRecord& record, u64 p_max,
                                         const ScanOptions& opts) {
  std::vector<u64> primes;
  for (u64 p = 5; p <= p_max; ++p) {
    if (is_prime(p)) primes.push_back(p);
  }
  if (record.rank == 0 && record.torsion_order > 1) {
    ChiInputs probe;
    for (u64 p : primes) {
      probe.v_tors = log_p(p_part(record.torsion_order, p), p);
      if (apply_torsion_bound(probe, p)) {
        std::cerr << "warning: " << record.label << ": torsion order " << record.torsion_order
                  << " has a " << p << "-part; forced to 1 for p >= 11\n";
      }
    }
  }

  std::vector<PrimeScanResult> results(primes.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(primes.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      try {
        results[i] = scan_one(record, primes[i], opts.local);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace iwastat
