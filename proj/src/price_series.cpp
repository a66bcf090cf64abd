#include "trendsym/price_series.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "trendsym/errors.hpp"

namespace trendsym {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

// Lowercases and strips whitespace, quotes, underscores and a UTF-8 BOM so
// "Adj Close", "adj_close" and "AdjClose" all normalize to "adjclose".
std::string normalize_header_cell(std::string_view cell) {
    std::string out;
    for (std::size_t i = 0; i < cell.size(); ++i) {
        const unsigned char ch = static_cast<unsigned char>(cell[i]);
        if (ch == 0xEF && i + 2 < cell.size() &&
            static_cast<unsigned char>(cell[i + 1]) == 0xBB &&
            static_cast<unsigned char>(cell[i + 2]) == 0xBF) {
            i += 2;
            continue;
        }
        if (std::isspace(ch) || ch == '"' || ch == '\'' || ch == '_') continue;
        out.push_back(static_cast<char>(std::tolower(ch)));
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::optional<double> parse_price_cell(const std::string& raw) {
    const std::string cell = trim(raw);
    if (cell.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<Date> parse_date_cell(const std::string& raw, DateFormat fmt) {
    const std::string cell = trim(raw);
    return fmt == DateFormat::Iso ? Date::parse_iso(cell) : Date::parse_us(cell);
}

}  // namespace

ParseResult parse_csv(std::istream& in, const ParseOptions& opts) {
    std::string line;

    // Header: first non-empty, non-comment line.
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw MalformedHeaderError("input has no header row");

    const std::string wanted =
        opts.price_column == PriceColumn::Close ? "close" : "adjclose";
    std::size_t date_col = header.size();
    std::size_t price_col = header.size();
    std::size_t fallback_price_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = normalize_header_cell(header[i]);
        if (name == "date") date_col = i;
        if (name == wanted) price_col = i;
        if (name == "price") fallback_price_col = i;
    }
    if (price_col == header.size()) price_col = fallback_price_col;
    if (date_col == header.size())
        throw MalformedHeaderError("no Date column in header");
    if (price_col == header.size())
        throw MalformedHeaderError(
            opts.price_column == PriceColumn::Close
                ? "no Close (or price) column in header"
                : "no Adj Close (or price) column in header");

    struct Row {
        Date date;
        double price;
        std::size_t order;  // input position; duplicates keep the last one
    };
    std::vector<Row> rows;
    CleaningReport report;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        ++report.rows_total;
        const std::vector<std::string> cells = split_csv_line(line);

        if (date_col >= cells.size()) {
            ++report.dropped.bad_date;
            continue;
        }
        const auto date = parse_date_cell(cells[date_col], opts.date_format);
        if (!date) {
            ++report.dropped.bad_date;
            continue;
        }
        if (price_col >= cells.size() || trim(cells[price_col]).empty()) {
            ++report.dropped.missing_price;
            continue;
        }
        const auto price = parse_price_cell(cells[price_col]);
        if (!price) {
            ++report.dropped.non_numeric_price;
            continue;
        }
        if (*price <= 0.0) {
            ++report.dropped.non_positive_price;
            continue;
        }
        rows.push_back(Row{*date, *price, rows.size()});
    }

    // Sort by date; among equal dates the later input row wins.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });

    PriceSeries ps;
    ps.symbol = opts.symbol;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i + 1 < rows.size() && rows[i + 1].date == rows[i].date) {
            ++report.dropped.duplicate_date;
            continue;
        }
        ps.dates.push_back(rows[i].date);
        ps.prices.push_back(rows[i].price);
    }
    report.rows_kept = ps.size();

    if (ps.size() < 2)
        throw EmptySeriesError("fewer than 2 valid price rows after cleaning");
    return ParseResult{std::move(ps), report};
}

ParseResult parse_csv_file(const std::filesystem::path& path,
                           const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    ParseOptions o = opts;
    if (o.symbol.empty()) o.symbol = path.stem().string();
    return parse_csv(in, o);
}

void write_canonical_csv(std::ostream& out, const PriceSeries& ps) {
    out << "date,price\n";
    char buf[40];
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", ps.prices[i]);
        out << ps.dates[i].to_string() << ',' << buf << '\n';
    }
}

std::string to_canonical_csv(const PriceSeries& ps) {
    std::ostringstream os;
    write_canonical_csv(os, ps);
    return os.str();
}

}  // namespace trendsym
