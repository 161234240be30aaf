// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria (capped at 1), so ctest reports red when any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "generators.hpp"
#include "iwastat/arith.hpp"
#include "iwastat/iwasawa.hpp"
#include "iwastat/scan.hpp"
#include "iwastat/stats.hpp"
#include "oracles.hpp"

using namespace iwastat;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

void note(const std::string& text) {
  std::printf("       %s\n", text.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void criterion_dp_table(const std::string& report_path, unsigned workers) {
  const std::map<u64, i64> claimed{{5, 1}, {7, 1}, {61, 1}};
  const DMode modes[] = {DMode::kLiteralPairs, DMode::kTraceOnePairs, DMode::kTraceOneClasses};
  bool matches[3] = {true, true, true};
  bool oracles_agree = true;
  double t200 = 0;

  std::ofstream report(report_path);
  report << "# d(p) for 5 <= p < 500 in each counting mode; the claimed table is 1 at 5, 7, 61 and 0 elsewhere\n";
  report << "p,literal,trace-one,classes,claimed\n";
  const auto t0 = std::chrono::steady_clock::now();
  for (u64 p = 5; p < 500; ++p) {
    if (!is_prime(p)) continue;
    if (p > 200 && t200 == 0) t200 = seconds_since(t0);
    const DCensus c = d_census(p, workers);
    const i64 want = claimed.count(p) ? claimed.at(p) : 0;
    for (int m = 0; m < 3; ++m) matches[m] = matches[m] && c.get(modes[m]) == want;
    // Independent checks of the reported numbers.
    if (c.trace_one_classes != oracle::form_class_count(1 - 4 * static_cast<i64>(p))) oracles_agree = false;
    if (p < 100) {
      const auto o = oracle::d_pairs(static_cast<i64>(p));
      if (o.literal != c.literal_pairs || o.trace_one != c.trace_one_pairs) oracles_agree = false;
    }
    report << p << ',' << c.literal_pairs << ',' << c.trace_one_pairs << ',' << c.trace_one_classes << ',' << want
           << '\n';
  }
  const double total = seconds_since(t0);
  report.close();

  const bool any = matches[0] || matches[1] || matches[2];
  std::string detail;
  if (any) {
    for (int m = 0; m < 3; ++m) {
      if (matches[m]) detail += std::string("mode ") + std::string(to_string(modes[m])) + " matches; ";
    }
  } else {
    detail = "no mode reproduces {5:1, 7:1, 61:1}; discrepancy report delivered at " + report_path + "; ";
  }
  detail += std::string("oracle cross-check ") + (oracles_agree ? "agrees" : "DISAGREES");
  detail += fmt("; p<200 in %.2fs", t200) + fmt(", p<500 in %.2fs", total);
  const bool ok = oracles_agree && t200 < 60 && total < 900 && (any || static_cast<bool>(std::ifstream(report_path)));
  verdict(1, ok, "d(p) table reproduction (or discrepancy report)", detail);
  const DCensus c5 = d_census(5), c7 = d_census(7), c61 = d_census(61);
  note("d(5) = " + std::to_string(c5.literal_pairs) + "/" + std::to_string(c5.trace_one_pairs) + "/" +
       std::to_string(c5.trace_one_classes) + ", d(7) = " + std::to_string(c7.literal_pairs) + "/" +
       std::to_string(c7.trace_one_pairs) + "/" + std::to_string(c7.trace_one_classes) +
       ", d(61) = " + std::to_string(c61.literal_pairs) + "/" + std::to_string(c61.trace_one_pairs) + "/" +
       std::to_string(c61.trace_one_classes) + " (literal/trace-one/classes)");
}

void criterion_lifting() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (auto [l, p] : {std::pair{2ull, 5ull}, {3ull, 5ull}, {2ull, 7ull}}) {
    const u64 brute = lifting_count_bruteforce(l, p);
    const u64 independent = oracle::lifting_count(l, p);
    const u64 formula = lifting_count_formula(l, p);
    ok = ok && brute == formula && brute == independent;
    detail += "(" + std::to_string(l) + "," + std::to_string(p) + "): brute " + std::to_string(brute) +
              " oracle " + std::to_string(independent) + " formula " + std::to_string(formula) + "; ";
  }
  const double t = seconds_since(t0);
  detail += fmt("%.2fs", t);
  verdict(2, ok && t < 10, "lifting counts equal l^p (l-1)^2", detail);
  // Supplementary: the closed form at primes where 4A^3 + 27B^2 can vanish mod l.
  std::string extra;
  for (auto [l, p] : {std::pair{5ull, 2ull}, {7ull, 2ull}, {11ull, 2ull}, {5ull, 3ull}, {7ull, 3ull}}) {
    const u64 b = lifting_count_bruteforce(l, p), f = lifting_count_formula(l, p);
    extra += "(" + std::to_string(l) + "," + std::to_string(p) + ") " + std::to_string(b) + (b == f ? "=" : "!=") +
             std::to_string(f) + " ";
  }
  note("supplementary, l >= 5: " + extra);
}

void criterion_brumer(unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const u64 x = 100'000'000;
  const u64 n = count_curves(x, workers);
  const double t = seconds_since(t0);
  const double ratio = static_cast<double>(n) * zeta10() / (4.0 * std::pow(1e8, 5.0 / 6.0));
  const u64 n100 = count_curves(100, workers), n1 = count_curves(1, workers);
  const u64 o100 = oracle::count_curves(100), o1 = oracle::count_curves(1);
  const bool ok = std::abs(ratio - 1) < 0.02 && n100 == 186 && n1 == 8 && o100 == 186 && o1 == 8 && t < 300;
  verdict(3, ok, "Brumer asymptotic at 1e8 and small exact counts",
          "#E(1e8) = " + std::to_string(n) + fmt(", ratio %.5f", ratio) + ", #E(100) = " + std::to_string(n100) +
              " (oracle " + std::to_string(o100) + "), #E(1) = " + std::to_string(n1) + " (oracle " +
              std::to_string(o1) + ")" + fmt(", sweep %.1fs", t));
}

void criterion_dp2() {
  const SeriesBound b = bound_dp2(5, 1e-10);
  const double independent = oracle::dp2_partial(5, 200000);
  bool decreasing = true;
  double last = 1;
  for (u64 p : {5, 7, 11, 13}) {
    const double v = bound_dp2(p).value;
    decreasing = decreasing && v < last;
    last = v;
  }
  const bool ok = std::abs(b.value - independent) < 1e-5 && std::abs(b.value - 0.0096937) < 1e-5 &&
                  b.tail_bound < 1e-8 && decreasing;
  verdict(4, ok, "Tamagawa density series at p = 5",
          fmt("bound_dp2(5) = %.9f", b.value) + fmt(", independent sum %.9f", independent) +
              fmt(", certified tail %.2e", b.tail_bound) + (decreasing ? ", decreasing in p" : ", NOT decreasing"));
}

void criterion_sadek(unsigned workers) {
  bool ok = true;
  std::string detail;
  for (auto [l, p] : {std::pair{2ull, 5ull}, {3ull, 5ull}}) {
    for (u64 x : {1'000'000ull, 100'000'000ull}) {
      const auto s = sadek_bounds(l, p, x);
      const u64 n = count_Ip(l, p, x, workers);
      const bool in = s.lower <= static_cast<double>(n) && static_cast<double>(n) <= s.upper;
      ok = ok && in;
      detail += "(" + std::to_string(l) + "," + std::to_string(p) + ",1e" +
                std::to_string(static_cast<int>(std::lround(std::log10(static_cast<double>(x))))) + ") " +
                fmt("%.4g", s.lower) + " <= " + std::to_string(n) + " <= " + fmt("%.4g", s.upper) + "; ";
    }
  }
  verdict(5, ok, "Sadek sandwich", detail);
}

void criterion_weierstrass() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto w = gen::weierstrass_product(rng);
    const auto inv = iwasawa_invariants(w.f);
    bad += inv.mu != w.mu || inv.lambda != w.lambda;
  }
  int bad_add = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto f = gen::weierstrass_product(rng);
    auto g = gen::weierstrass_product(rng);
    while (g.f.prime() != f.f.prime()) g = gen::weierstrass_product(rng);
    const auto a = iwasawa_invariants(f.f), b = iwasawa_invariants(g.f), ab = iwasawa_invariants(f.f * g.f);
    bad_add += ab.mu != a.mu + b.mu || ab.lambda != a.lambda + b.lambda;
  }
  const double t = seconds_since(t0);
  verdict(6, bad == 0 && bad_add == 0 && t < 5, "Weierstrass preparation properties",
          std::to_string(1000 - bad) + "/1000 products recovered, " + std::to_string(1000 - bad_add) +
              "/1000 pairs additive" + fmt(", %.2fs", t));
}

void criterion_trivial_shape() {
  std::mt19937_64 rng(7);
  int bad = 0, trivial = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen::vanishing_shape(rng);
    const bool lhs = is_trivial_shape(s.f, s.r);
    const bool rhs = vanishing_order(s.f) == s.r && truncated_chi_valuation(s.f) == 0;
    bad += lhs != rhs;
    trivial += lhs;
  }
  verdict(7, bad == 0, "trivial shape equivalence",
          std::to_string(1000 - bad) + "/1000 agree (" + std::to_string(trivial) + " trivial, r drawn as the order of vanishing)");
}

void criterion_scan() {
  CurveRecord r;
  r.label = "32a2";
  r.curve = CurveQ(-1, 0);
  r.rank = 0;
  r.sha_order = 1;
  int good = 0, concluded = 0, anomalous = 0;
  for (const auto& row : scan_primes(r, 100)) {
    if (row.cls == ReductionClass::kBad) continue;
    ++good;
    anomalous += row.in_sigma;
    concluded += row.conclusion == Conclusion::kSelmerTrivial || row.conclusion == Conclusion::kSignedSelmerTrivial;
  }
  verdict(8, good > 0 && concluded == good && anomalous == 0, "prime scan of y^2 = x^3 - x",
          std::to_string(concluded) + "/" + std::to_string(good) + " good primes concluded, " +
              std::to_string(anomalous) + " anomalous");
}

void criteria_densities(unsigned workers) {
  bool ok9 = true;
  std::string detail9;
  DensityReport at5;
  for (u64 p : {5, 7, 11}) {
    DensityOptions opts;
    opts.workers = workers;
    const auto t0 = std::chrono::steady_clock::now();
    const DensityReport r = empirical_densities(p, 100'000'000, opts);
    const double frac = static_cast<double>(r.good_at_p) / static_cast<double>(r.total);
    const double want = 1.0 - 1.0 / static_cast<double>(p);
    ok9 = ok9 && std::abs(frac - want) < 0.01;
    detail9 += "p=" + std::to_string(p) + fmt(" %.5f", frac) + fmt(" vs %.5f", want) +
               fmt(" (%.1fs); ", seconds_since(t0));
    if (p == 5) at5 = r;
  }
  verdict(9, ok9, "good reduction proportion at 1e8", detail9);

  const double frac = static_cast<double>(at5.e3) / static_cast<double>(at5.total);
  const double bound = zeta10() * static_cast<double>(d_of_p(5, DMode::kLiteralPairs)) / 25.0 + 0.02;
  verdict(10, frac <= bound, "anomalous density bound at p = 5, X = 1e8",
          fmt("e3/total = %.5f", frac) + fmt(" <= %.5f", bound) + " (d literal = " + std::to_string(at5.d_literal) +
              fmt("; e3/good_at_p = %.5f)", static_cast<double>(at5.e3) / static_cast<double>(at5.good_at_p)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string report = "dp_discrepancy_report.txt";
  unsigned workers = default_workers();
  app.add_option("--report", report, "Where to write the d(p) discrepancy report");
  app.add_option("--workers", workers);
  CLI11_PARSE(app, argc, argv);

  std::printf("acceptance run with %u worker(s)\n", workers);
  criterion_dp_table(report, workers);
  criterion_lifting();
  criterion_brumer(workers);
  criterion_dp2();
  criterion_sadek(workers);
  criterion_weierstrass();
  criterion_trivial_shape();
  criterion_scan();
  criteria_densities(workers);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
