#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "acemd/decomposition.hpp"
#include "acemd/series.hpp"

namespace acemd::app {

struct IngestOptions {
    std::string column = "close";
    std::string date_column = "date";
    bool log = true;
};

/// One ingested input file, sorted by date.
struct Dataset {
    std::filesystem::path path;
    std::string label;
    std::string sha256;
    std::vector<Timestamp> dates;  ///< days since 1970-01-01, one per sample
    TimeSeries series;             ///< log prices when `log` was set
    bool log_applied = false;
    std::string column;
    std::string date_column;
};

/// Reads a header CSV with an ISO-8601 date column and a numeric column.
/// Errors: IoError, ParseError (with line number), DuplicateDate,
/// NonFiniteValue, NonPositivePrice under log.
Dataset ingest(const std::filesystem::path& path, const IngestOptions& opts);

/// Restricts a dataset to the given ascending set of dates.
Dataset restrict_to(const Dataset& d, const std::vector<Timestamp>& dates);

/// YYYY-MM-DD, optionally followed by a 'T' or ' ' time part that is
/// ignored. Throws ParseError.
Timestamp parse_iso_date(std::string_view s);
std::string format_date(Timestamp days);

/// 17 significant digits (%.17g), enough to round-trip any double.
std::string format_double(double v);

/// Decomposition stored as imfs.csv (date, x, c_1..c_n, residual).
struct StoredDecomposition {
    std::vector<Timestamp> dates;
    Decomposition decomposition;
};

void write_imfs_csv(const std::filesystem::path& path, const std::vector<Timestamp>& dates, const Decomposition& d);
StoredDecomposition read_imfs_csv(const std::filesystem::path& path);

/// Minimal CSV writer; values are written verbatim, so callers pass
/// strings free of separators.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t width_;
};

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace acemd::app
