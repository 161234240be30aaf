#pragma once

// Curve record ingest (CSV) and report emitters (JSON, CSV).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "iwastat/record.hpp"
#include "iwastat/scan.hpp"
#include "iwastat/stats.hpp"

namespace iwastat {

// Header names accepted by the ingest format, in canonical order.
extern const std::vector<std::string> kRecordColumns;

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  ErrorCode code = ErrorCode::kParseError;
  std::string message;
};

struct ParseResult {
  std::vector<CurveRecord> records;
  std::vector<RowError> errors;
  std::vector<std::string> warnings;
};

// Throws kHeaderMismatch when label, a, b or rank is missing or a column is
// repeated. Bad rows are reported in errors and skipped.
ParseResult parse_records(std::istream& in);
// Throws kFileNotFound when the path cannot be opened.
ParseResult parse_records(const std::filesystem::path& path);

// Emits the full header. Only overrides at 2 and 3 are representable;
// anything else throws kInvalidArgument.
void write_records_csv(std::ostream& out, const std::vector<CurveRecord>& records);

nlohmann::json to_json(const DensityReport& r);
std::string density_csv_header();
std::string density_csv_row(const DensityReport& r);

nlohmann::json to_json(const PrimeScanResult& r);
nlohmann::json to_json(const std::string& label, const std::vector<PrimeScanResult>& rows);
std::string scan_csv_header();
std::string scan_csv_row(const std::string& label, const PrimeScanResult& r);

}  // namespace iwastat
