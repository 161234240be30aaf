#include "iwastat/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "iwastat/io.hpp"
#include "iwastat/iwasawa.hpp"
#include "iwastat/local.hpp"
#include "iwastat/scan.hpp"
#include "iwastat/stats.hpp"

namespace iwastat {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInternalError = 2;

// Writes to --out when given, otherwise to the command's stdout stream.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kFileNotFound, "cannot write " + path);
  f << text;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw Error(ErrorCode::kInvalidArgument, "format must be json or csv");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic curve local data, prime scans and height-box statistics"};
  app.require_subcommand(1);

  unsigned workers = default_workers();
  app.add_option("--workers", workers, "Worker threads (default: IWASTAT_THREADS or hardware)");

  // scan
  std::string records_path;
  u64 max_prime = 100;
  bool strict = false;
  std::string format = "json";
  std::string out_path;
  auto* scan = app.add_subcommand("scan", "Classify primes 5 <= p <= max for every curve record");
  scan->add_option("records", records_path, "CSV with label,a,b,rank,...")->required();
  scan->add_option("--max-prime", max_prime)->check(CLI::Range(u64{5}, u64{1} << 28));
  scan->add_flag("--strict", strict, "Do not run the local algorithm at 2 and 3");
  scan->add_option("--format", format);
  scan->add_option("--out", out_path);

  // enumerate
  u64 height = 0;
  u64 prime = 0;
  bool small_tate = false;
  std::string cache_path;
  auto* en = app.add_subcommand("enumerate", "Density report for all curves of height <= X");
  en->add_option("--height", height)->required();
  en->add_option("--prime", prime)->required();
  en->add_option("--out", out_path);
  en->add_option("--format", format);
  en->add_flag("--strict", strict, "Skip curves whose c_2, c_3 p-part is uncertified");
  en->add_flag("--small-prime-tate", small_tate, "Include c_2 and c_3 from the local algorithm");
  en->add_option("--cache", cache_path, "Point-count snapshot to load and update");

  // bounds
  double tol = 1e-10;
  auto* bounds = app.add_subcommand("bounds", "Theoretical density bounds at p");
  bounds->add_option("--prime", prime)->required();
  bounds->add_option("--tol", tol);

  // dp
  std::string mode = "all";
  auto* dp = app.add_subcommand("dp", "Count pairs over F_p whose curve order is divisible by p");
  dp->add_option("--prime", prime)->required();
  dp->add_option("--mode", mode, "literal, trace-one, classes or all");

  // invariants
  std::string poly;
  auto* inv = app.add_subcommand("invariants", "mu and lambda of a power series truncation");
  inv->add_option("--poly", poly, "Coefficients, constant term first")->required();
  inv->add_option("--prime", prime)->required();

  // ip-count
  u64 l = 0;
  auto* ip = app.add_subcommand("ip-count", "Curves with l not dividing AB and v_l(disc) = p");
  ip->add_option("--l", l)->required();
  ip->add_option("--p", prime)->required();
  ip->add_option("--height", height)->required();

  // local
  i64 a = 0, b = 0;
  auto* local = app.add_subcommand("local", "Kodaira symbol and Tamagawa number at one prime");
  local->add_option("--a", a)->required();
  local->add_option("--b", b)->required();
  local->add_option("--prime", prime)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*scan) {
      check_format(format);
      const ParseResult parsed = parse_records(std::filesystem::path(records_path));
      for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
      for (const auto& e : parsed.errors) err << records_path << ':' << e.line << ": " << e.message << '\n';
      ScanOptions opts;
      opts.local.strict = strict;
      opts.workers = workers;
      std::ostringstream text;
      if (format == "json") {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& rec : parsed.records) doc.push_back(to_json(rec.label, scan_primes(rec, max_prime, opts)));
        text << doc.dump(2) << '\n';
      } else {
        text << scan_csv_header() << '\n';
        for (const auto& rec : parsed.records) {
          for (const auto& row : scan_primes(rec, max_prime, opts)) text << scan_csv_row(rec.label, row) << '\n';
        }
      }
      emit(out, out_path, text.str());
      return parsed.errors.empty() ? kOk : kInputError;
    }

    if (*en) {
      check_format(format);
      PointCountCache cache;
      if (!cache_path.empty() && std::filesystem::exists(cache_path) && !cache.load(cache_path, prime)) {
        err << "warning: cache snapshot " << cache_path << " does not match p=" << prime << ", ignored\n";
      }
      DensityOptions opts;
      opts.workers = workers;
      opts.strict = strict;
      opts.small_prime_tate = small_tate;
      opts.cache = &cache;
      const DensityReport rep = empirical_densities(prime, height, opts);
      if (!cache_path.empty() && prime <= PointCountCache::kMaxPrime) cache.save(cache_path, prime);
      emit(out, out_path,
           format == "json" ? to_json(rep).dump(2) + "\n" : density_csv_header() + "\n" + density_csv_row(rep) + "\n");
      return kOk;
    }

    if (*bounds) {
      const SeriesBound s = bound_dp2(prime, tol);
      out.precision(10);
      out << "bound_dp2 " << s.value << " (tail < " << s.tail_bound << ", primes up to " << s.cutoff << ")\n";
      const DCensus c = d_census(prime, workers);
      for (DMode m : {DMode::kLiteralPairs, DMode::kTraceOnePairs, DMode::kTraceOneClasses}) {
        out << "bound_dp3[" << to_string(m) << "] d=" << c.get(m) << ' ' << bound_dp3(prime, c.get(m)) << '\n';
      }
      return kOk;
    }

    if (*dp) {
      if (mode == "all") {
        const DCensus c = d_census(prime, workers);
        out << "p=" << prime << " literal=" << c.literal_pairs << " trace-one=" << c.trace_one_pairs
            << " classes=" << c.trace_one_classes << '\n';
        return kOk;
      }
      const auto m = parse_dmode(mode);
      if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + mode + "'");
      out << d_of_p(prime, *m, workers) << '\n';
      return kOk;
    }

    if (*inv) {
      const IwasawaInvariants r = iwasawa_invariants(CharPoly::parse(prime, poly));
      out << "mu=" << r.mu << " lambda=" << r.lambda << '\n';
      return kOk;
    }

    if (*ip) {
      out << "count " << count_Ip(l, prime, height, workers) << '\n';
      if (height >= 4096) {
        const SadekBounds s = sadek_bounds(l, prime, height);
        out.precision(10);
        out << "sadek_lower " << s.lower << "\nsadek_upper " << s.upper << "\nk " << s.k << '\n';
      }
      return kOk;
    }

    if (*local) {
      const KodairaData k = kodaira_tamagawa(CurveQ(a, b), prime, LocalDataOptions{});
      out << k.symbol.str() << " c=" << k.tamagawa;
      if (k.split) out << (*k.split ? " split" : " nonsplit");
      out << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace iwastat
