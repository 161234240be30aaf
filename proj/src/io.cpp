#include "iwastat/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace iwastat {

const std::vector<std::string> kRecordColumns = {
    "label", "a", "b", "rank", "sha_order", "torsion_order", "tamagawa_2", "tamagawa_3", "reg_excess",
};

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV line, honouring double-quoted fields with "" escapes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quote");
  out.push_back(cur);
  return out;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

i64 parse_int(const std::string& field, const char* column) {
  const std::string t = trim(field);
  i64 v = 0;
  const char* begin = t.data();
  const char* end = begin + t.size();
  // from_chars rejects a leading '+', which curve exports sometimes carry.
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError, std::string("column ") + column + ": not an integer: '" + t + "'");
  }
  return v;
}

std::map<u64, i64> parse_reg_excess(const std::string& field) {
  std::map<u64, i64> out;
  std::stringstream ss(field);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (trim(item).empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kParseError, "reg_excess entry without ':': '" + item + "'");
    }
    const i64 p = parse_int(item.substr(0, colon), "reg_excess");
    const i64 v = parse_int(item.substr(colon + 1), "reg_excess");
    if (p < 2 || !is_prime(static_cast<u64>(p))) {
      throw Error(ErrorCode::kParseError, "reg_excess key is not prime: " + std::to_string(p));
    }
    if (!out.emplace(static_cast<u64>(p), v).second) {
      throw Error(ErrorCode::kParseError, "reg_excess repeats prime " + std::to_string(p));
    }
  }
  return out;
}

}  // namespace

ParseResult parse_records(std::istream& in) {
  ParseResult result;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kHeaderMismatch, "empty input, no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  std::map<std::string, std::size_t> col;
  const auto header = split_csv(line);
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trim(header[i]);
    if (!col.emplace(name, i).second) throw Error(ErrorCode::kHeaderMismatch, "repeated column '" + name + "'");
    if (std::find(kRecordColumns.begin(), kRecordColumns.end(), name) == kRecordColumns.end()) {
      result.warnings.push_back("ignoring unknown column '" + name + "'");
    }
  }
  for (const char* required : {"label", "a", "b", "rank"}) {
    if (!col.count(required)) throw Error(ErrorCode::kHeaderMismatch, std::string("missing column '") + required + "'");
  }

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const auto fields = split_csv(line);
      if (fields.size() != header.size()) {
        throw Error(ErrorCode::kParseError, "expected " + std::to_string(header.size()) + " fields, got " +
                                                std::to_string(fields.size()));
      }
      auto get = [&](const char* name) -> std::optional<std::string> {
        auto it = col.find(name);
        if (it == col.end()) return std::nullopt;
        std::string v = trim(fields[it->second]);
        if (v.empty()) return std::nullopt;
        return v;
      };

      CurveRecord rec;
      rec.label = trim(fields[col.at("label")]);
      const i64 a = parse_int(fields[col.at("a")], "a");
      const i64 b = parse_int(fields[col.at("b")], "b");
      rec.curve = CurveQ(a, b);
      rec.rank = static_cast<int>(parse_int(fields[col.at("rank")], "rank"));
      if (rec.rank < 0) throw Error(ErrorCode::kParseError, "rank must be >= 0");
      if (auto s = get("sha_order")) {
        rec.sha_order = parse_int(*s, "sha_order");
        if (*rec.sha_order < 1) throw Error(ErrorCode::kParseError, "sha_order must be >= 1");
      }
      if (auto t = get("torsion_order")) {
        rec.torsion_order = parse_int(*t, "torsion_order");
        if (rec.torsion_order < 1) throw Error(ErrorCode::kParseError, "torsion_order must be >= 1");
      }
      for (auto [name, l] : {std::pair{"tamagawa_2", u64{2}}, std::pair{"tamagawa_3", u64{3}}}) {
        if (auto c = get(name)) {
          const i64 v = parse_int(*c, name);
          if (v < 1) throw Error(ErrorCode::kParseError, std::string(name) + " must be >= 1");
          rec.tamagawa_overrides[l] = v;
        }
      }
      if (auto r = get("reg_excess")) rec.regulator_valuations = parse_reg_excess(*r);
      result.records.push_back(std::move(rec));
    } catch (const Error& e) {
      result.errors.push_back({lineno, e.code(), e.what()});
    }
  }
  return result;
}

ParseResult parse_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  return parse_records(in);
}

void write_records_csv(std::ostream& out, const std::vector<CurveRecord>& records) {
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) out << (i ? "," : "") << kRecordColumns[i];
  out << '\n';
  for (const CurveRecord& r : records) {
    for (const auto& [l, c] : r.tamagawa_overrides) {
      if (l != 2 && l != 3) {
        throw Error(ErrorCode::kInvalidArgument, "override at " + std::to_string(l) + " has no CSV column");
      }
    }
    auto opt = [](std::optional<i64> v) { return v ? std::to_string(*v) : std::string(); };
    auto tam = [&](u64 l) {
      auto it = r.tamagawa_overrides.find(l);
      return it == r.tamagawa_overrides.end() ? std::string() : std::to_string(it->second);
    };
    std::string reg;
    if (r.regulator_valuations) {
      for (const auto& [p, v] : *r.regulator_valuations) {
        if (!reg.empty()) reg += ';';
        reg += std::to_string(p) + ':' + std::to_string(v);
      }
    }
    out << quote_csv(r.label) << ',' << r.curve.a() << ',' << r.curve.b() << ',' << r.rank << ','
        << opt(r.sha_order) << ',' << r.torsion_order << ',' << tam(2) << ',' << tam(3) << ',' << reg << '\n';
  }
}

nlohmann::json to_json(const DensityReport& r) {
  nlohmann::json ip = nlohmann::json::object();
  for (const auto& [l, n] : r.ip_counts) ip[std::to_string(l)] = n;
  return {
      {"p", r.p},
      {"X", r.X},
      {"total", r.total},
      {"total_weq", r.total_weq},
      {"good_at_p", r.good_at_p},
      {"e2", r.e2},
      {"e3", r.e3},
      {"ip_counts", ip},
      {"brumer_estimate", r.brumer_estimate},
      {"bound_dp2", r.bound_dp2},
      {"bound_dp3", r.bound_dp3},
      {"d_literal", r.d_literal},
      {"e2_skipped", r.e2_skipped},
  };
}

std::string density_csv_header() {
  return "p,X,total,total_weq,good_at_p,e2,e3,ip_counts,brumer_estimate,bound_dp2,bound_dp3,d_literal,e2_skipped";
}

std::string density_csv_row(const DensityReport& r) {
  std::string ip;
  for (const auto& [l, n] : r.ip_counts) {
    if (!ip.empty()) ip += ';';
    ip += std::to_string(l) + ':' + std::to_string(n);
  }
  std::ostringstream out;
  out.precision(17);
  out << r.p << ',' << r.X << ',' << r.total << ',' << r.total_weq << ',' << r.good_at_p << ',' << r.e2 << ','
      << r.e3 << ',' << ip << ',' << r.brumer_estimate << ',' << r.bound_dp2 << ',' << r.bound_dp3 << ','
      << r.d_literal << ',' << r.e2_skipped;
  return out.str();
}

namespace {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string opt_csv(const std::optional<i64>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

nlohmann::json to_json(const PrimeScanResult& r) {
  nlohmann::json inv = nullptr;
  if (r.invariants) inv = {{"mu", r.invariants->mu}, {"lambda", r.invariants->lambda}};
  return {
      {"p", r.p},
      {"cls", std::string(to_string(r.cls))},
      {"a_p", opt_json(r.a_p)},
      {"n_points", opt_json(r.n_points)},
      {"in_sigma", r.in_sigma},
      {"in_sigma_prime", r.in_sigma_prime},
      {"in_upsilon", r.in_upsilon},
      {"in_pi", opt_json(r.in_pi)},
      {"conclusion", std::string(to_string(r.conclusion))},
      {"reason", std::string(to_string(r.reason))},
      {"conditional", r.conditional},
      {"chi_valuation", opt_json(r.chi_valuation)},
      {"invariants", inv},
  };
}

nlohmann::json to_json(const std::string& label, const std::vector<PrimeScanResult>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return {{"label", label}, {"primes", arr}};
}

std::string scan_csv_header() {
  return "label,p,cls,a_p,n_points,in_sigma,in_sigma_prime,in_upsilon,in_pi,conclusion,reason,conditional,"
         "chi_valuation,mu,lambda";
}

std::string scan_csv_row(const std::string& label, const PrimeScanResult& r) {
  auto flag = [](bool b) { return b ? "1" : "0"; };
  std::ostringstream out;
  out << quote_csv(label) << ',' << r.p << ',' << to_string(r.cls) << ',' << opt_csv(r.a_p) << ','
      << opt_csv(r.n_points) << ',' << flag(r.in_sigma) << ',' << flag(r.in_sigma_prime) << ','
      << flag(r.in_upsilon) << ',' << (r.in_pi ? flag(*r.in_pi) : "") << ',' << to_string(r.conclusion) << ','
      << to_string(r.reason) << ',' << flag(r.conditional) << ','
      << (r.chi_valuation ? std::to_string(*r.chi_valuation) : "") << ','
      << (r.invariants ? std::to_string(r.invariants->mu) : "") << ','
      << (r.invariants ? std::to_string(r.invariants->lambda) : "");
  return out.str();
}

}  // namespace iwastat
