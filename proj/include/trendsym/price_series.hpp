#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trendsym/dates.hpp"

namespace trendsym {

// Canonical daily price series: strictly increasing trading-day dates with
// positive, finite prices. Always at least two rows.
struct PriceSeries {
    std::string symbol;
    std::vector<Date> dates;
    std::vector<double> prices;

    std::size_t size() const { return prices.size(); }

    bool operator==(const PriceSeries&) const = default;
};

enum class PriceColumn { Close, AdjClose };
enum class DateFormat { Iso, UsSlash };

struct ParseOptions {
    PriceColumn price_column = PriceColumn::Close;
    DateFormat date_format = DateFormat::Iso;
    std::string symbol;
};

// Per-reason counts of rows dropped while cleaning.
struct DropCounts {
    std::size_t bad_date = 0;
    std::size_t missing_price = 0;
    std::size_t non_numeric_price = 0;
    std::size_t non_positive_price = 0;
    std::size_t duplicate_date = 0;

    std::size_t total() const {
        return bad_date + missing_price + non_numeric_price +
               non_positive_price + duplicate_date;
    }
};

struct CleaningReport {
    std::size_t rows_total = 0;  // data rows seen (header excluded)
    std::size_t rows_kept = 0;
    DropCounts dropped;
};

struct ParseResult {
    PriceSeries series;
    CleaningReport report;
};

// Parses a daily price CSV. The header must contain a date column and the
// requested price column ("Close" / "Adj Close"; a bare "price" column is
// accepted as fallback, so canonical output re-parses). Rows that fail to
// parse are dropped and counted; duplicate dates keep the last occurrence.
// Lines starting with '#' are ignored.
//
// Throws MalformedHeaderError or, when fewer than two rows survive,
// EmptySeriesError.
ParseResult parse_csv(std::istream& in, const ParseOptions& opts = {});
ParseResult parse_csv_file(const std::filesystem::path& path,
                           const ParseOptions& opts = {});

// Canonical form: header "date,price", ISO dates, round-trip-exact prices.
void write_canonical_csv(std::ostream& out, const PriceSeries& ps);
std::string to_canonical_csv(const PriceSeries& ps);

}  // namespace trendsym
