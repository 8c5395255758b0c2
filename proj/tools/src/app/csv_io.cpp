#include "app/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include <boost/tokenizer.hpp>

#include "acemd/error.hpp"

namespace acemd::app {
namespace {

using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line, const std::filesystem::path& path, std::size_t lineno) {
    try {
        Tokenizer tok(line, boost::escaped_list_separator<char>('\\', ',', '"'));
        std::vector<std::string> cells;
        for (const auto& cell : tok) cells.emplace_back(trim(cell));
        return cells;
    } catch (const boost::escaped_list_error& e) {
        throw Error(Errc::ParseError, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t lineno, const std::string& what) {
    throw Error(Errc::ParseError, path.string() + ":" + std::to_string(lineno) + ": " + what);
}

bool parse_number(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::filesystem::path& path) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) parse_fail(path, 1, "no column named '" + name + "'");
    return std::size_t(it - header.begin());
}

// Reads every line, stripping a UTF-8 byte-order mark and CR line endings.
std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lines.empty() && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        lines.push_back(std::move(line));
    }
    if (in.bad()) throw Error(Errc::IoError, "read failed: " + path.string());
    return lines;
}

}  // namespace

Timestamp parse_iso_date(std::string_view s) {
    s = trim(s);
    const auto cut = s.find_first_of("T ");
    if (cut != std::string_view::npos) s = s.substr(0, cut);
    int y = 0;
    unsigned m = 0, d = 0;
    const auto field = [&](std::string_view part, auto& out) {
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc() && ptr == part.data() + part.size();
    };
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !field(s.substr(0, 4), y) || !field(s.substr(5, 2), m) ||
        !field(s.substr(8, 2), d)) {
        throw Error(Errc::ParseError, "not an ISO-8601 date: '" + std::string(s) + "'");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) throw Error(Errc::ParseError, "invalid calendar date: '" + std::string(s) + "'");
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

std::string format_date(Timestamp days) {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

Dataset ingest(const std::filesystem::path& path, const IngestOptions& opts) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw Error(Errc::ParseError, path.string() + ": empty file");
    const auto header = split_row(lines[0], path, 1);
    const auto di = column_index(header, opts.date_column, path);
    const auto vi = column_index(header, opts.column, path);

    struct Row {
        Timestamp date;
        double value;
        std::size_t line;
    };
    std::vector<Row> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (trim(lines[k]).empty()) continue;
        const auto cells = split_row(lines[k], path, k + 1);
        if (cells.size() != header.size()) {
            parse_fail(path, k + 1, "expected " + std::to_string(header.size()) + " fields, found " +
                                        std::to_string(cells.size()));
        }
        Row r{0, 0.0, k + 1};
        try {
            r.date = parse_iso_date(cells[di]);
        } catch (const Error& e) {
            parse_fail(path, k + 1, e.what());
        }
        if (!parse_number(cells[vi], r.value)) parse_fail(path, k + 1, "not a number: '" + cells[vi] + "'");
        rows.push_back(r);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k].date == rows[k - 1].date) {
            throw Error(Errc::DuplicateDate, path.string() + ": date " + format_date(rows[k].date) +
                                                 " appears on lines " + std::to_string(rows[k - 1].line) +
                                                 " and " + std::to_string(rows[k].line));
        }
    }

    if (rows.empty()) throw Error(Errc::ParseError, path.string() + ": no data rows");

    // Rows are indexed by observation (trading time). The minimum length is
    // left to decomposition entry, so short files still ingest.
    Dataset out;
    out.path = path;
    out.label = path.stem().string();
    out.column = opts.column;
    out.date_column = opts.date_column;
    std::vector<double> values;
    for (const auto& r : rows) {
        out.dates.push_back(r.date);
        values.push_back(r.value);
    }
    out.series = TimeSeries(std::move(values), rows.front().date, 1.0, out.label);
    if (opts.log) {
        out.series = log_transform(out.series);
        out.log_applied = true;
    }
    return out;
}

Dataset restrict_to(const Dataset& d, const std::vector<Timestamp>& dates) {
    Dataset out = d;
    std::vector<double> values;
    out.dates.clear();
    std::size_t j = 0;
    for (std::size_t i = 0; i < d.dates.size() && j < dates.size(); ++i) {
        while (j < dates.size() && dates[j] < d.dates[i]) ++j;
        if (j < dates.size() && dates[j] == d.dates[i]) {
            out.dates.push_back(d.dates[i]);
            values.push_back(d.series[i]);
        }
    }
    out.series = TimeSeries(std::move(values), out.dates.empty() ? 0 : out.dates.front(), 1.0, d.label);
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), width_(header.size()) {
    if (!out_) throw Error(Errc::IoError, "cannot write " + path.string());
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw Error(Errc::InvalidArgument, "CSV row width mismatch in " + path_.string());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out_ << ',';
        out_ << cells[k];
    }
    out_ << '\n';
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw Error(Errc::IoError, "write failed: " + path_.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
}

void write_imfs_csv(const std::filesystem::path& path, const std::vector<Timestamp>& dates, const Decomposition& d) {
    std::vector<std::string> header{"date", "x"};
    for (std::size_t j = 0; j < d.mode_count(); ++j) header.push_back("c_" + std::to_string(j + 1));
    header.emplace_back("residual");
    CsvWriter w(path, header);
    const auto x = d.source.values();
    for (std::size_t t = 0; t < x.size(); ++t) {
        std::vector<std::string> cells{format_date(dates[t]), format_double(x[t])};
        for (const auto& c : d.imfs) cells.push_back(format_double(c[t]));
        cells.push_back(format_double(d.residual[t]));
        w.row(cells);
    }
    w.close();
}

StoredDecomposition read_imfs_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw Error(Errc::ParseError, path.string() + ": empty file");
    const auto header = split_row(lines[0], path, 1);
    if (header.size() < 3 || header[0] != "date" || header[1] != "x" || header.back() != "residual") {
        parse_fail(path, 1, "expected header date,x,c_1..c_n,residual");
    }
    const std::size_t n = header.size() - 3;
    for (std::size_t j = 0; j < n; ++j) {
        if (header[2 + j] != "c_" + std::to_string(j + 1)) parse_fail(path, 1, "unexpected column " + header[2 + j]);
    }
    StoredDecomposition out;
    std::vector<double> x;
    auto& d = out.decomposition;
    d.imfs.assign(n, {});
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (trim(lines[k]).empty()) continue;
        const auto cells = split_row(lines[k], path, k + 1);
        if (cells.size() != header.size()) parse_fail(path, k + 1, "wrong field count");
        try {
            out.dates.push_back(parse_iso_date(cells[0]));
        } catch (const Error& e) {
            parse_fail(path, k + 1, e.what());
        }
        std::vector<double> v(cells.size() - 1);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (!parse_number(cells[c], v[c - 1])) parse_fail(path, k + 1, "not a number: '" + cells[c] + "'");
        }
        x.push_back(v[0]);
        for (std::size_t j = 0; j < n; ++j) d.imfs[j].push_back(v[1 + j]);
        d.residual.push_back(v.back());
    }
    if (!std::is_sorted(out.dates.begin(), out.dates.end()) ||
        std::adjacent_find(out.dates.begin(), out.dates.end()) != out.dates.end()) {
        throw Error(Errc::ParseError, path.string() + ": dates must be strictly increasing");
    }
    d.source = TimeSeries(std::move(x), out.dates.empty() ? 0 : out.dates.front(), 1.0, path.stem().string());
    return out;
}

}  // namespace acemd::app
