#include <doctest.h>

#include <sstream>

#include "trendsym/errors.hpp"
#include "trendsym/price_series.hpp"

using namespace trendsym;

namespace {

ParseResult parse_str(const std::string& text, ParseOptions opts = {}) {
    std::istringstream in(text);
    return parse_csv(in, opts);
}

}  // namespace

TEST_CASE("plain three-row yahoo-style file") {
    const auto r = parse_str(
        "Date,Open,High,Low,Close,Adj Close,Volume\n"
        "1991-11-08,99,101,98,100,99.5,1000\n"
        "1991-11-11,100,102,99,101,100.4,1100\n"
        "1991-11-12,101,104,100,103,102.2,900\n");
    CHECK(r.series.size() == 3);
    CHECK(r.series.prices == std::vector<double>{100.0, 101.0, 103.0});
    CHECK(r.report.rows_total == 3);
    CHECK(r.report.rows_kept == 3);
    CHECK(r.report.dropped.total() == 0);
}

TEST_CASE("null price rows are dropped and counted") {
    const auto r = parse_str(
        "Date,Close\n"
        "2020-01-01,10\n"
        "2020-01-02,null\n"
        "2020-01-03,11\n"
        "2020-01-06,12\n"
        "2020-01-07,13\n"
        "2020-01-08,14\n");
    CHECK(r.series.size() == 5);
    CHECK(r.report.rows_total == 6);
    CHECK(r.report.dropped.non_numeric_price == 1);
}

TEST_CASE("non-positive and missing prices, bad dates") {
    const auto r = parse_str(
        "Date,Close\n"
        "2020-01-01,10\n"
        "2020-01-02,-5\n"
        "2020-01-03,0\n"
        "2020-01-04,\n"
        "not-a-date,11\n"
        "2020-01-07,12\n");
    CHECK(r.series.size() == 2);
    CHECK(r.report.dropped.non_positive_price == 2);
    CHECK(r.report.dropped.missing_price == 1);
    CHECK(r.report.dropped.bad_date == 1);
}

TEST_CASE("adj close column selection") {
    ParseOptions opts;
    opts.price_column = PriceColumn::AdjClose;
    const auto r = parse_str(
        "Date,Close,Adj Close\n"
        "2020-01-01,10,9.5\n"
        "2020-01-02,11,10.4\n",
        opts);
    CHECK(r.series.prices == std::vector<double>{9.5, 10.4});
}

TEST_CASE("unsorted input is sorted; duplicate dates keep the last row") {
    const auto r = parse_str(
        "Date,Close\n"
        "2020-01-03,12\n"
        "2020-01-01,10\n"
        "2020-01-02,991\n"
        "2020-01-02,11\n");
    CHECK(r.series.dates ==
          std::vector<Date>{{2020, 1, 1}, {2020, 1, 2}, {2020, 1, 3}});
    CHECK(r.series.prices == std::vector<double>{10.0, 11.0, 12.0});
    CHECK(r.report.dropped.duplicate_date == 1);
    // Output invariants: strictly increasing dates, positive prices.
    for (std::size_t i = 0; i + 1 < r.series.size(); ++i)
        CHECK(r.series.dates[i] < r.series.dates[i + 1]);
}

TEST_CASE("us date format behind the flag") {
    ParseOptions opts;
    opts.date_format = DateFormat::UsSlash;
    const auto r = parse_str(
        "Date,Close\n"
        "12/20/1994,10\n"
        "12/21/1994,11\n",
        opts);
    CHECK(r.series.dates.front() == Date{1994, 12, 20});
}

TEST_CASE("typed errors for broken input") {
    CHECK_THROWS_AS(parse_str("Open,High\n1,2\n"), MalformedHeaderError);
    CHECK_THROWS_AS(parse_str("Date,Volume\n2020-01-01,5\n"),
                    MalformedHeaderError);
    CHECK_THROWS_AS(parse_str("Date,Close\n2020-01-01,10\n"), EmptySeriesError);
    CHECK_THROWS_AS(parse_str("Date,Close\n"), EmptySeriesError);
    CHECK_THROWS_AS(parse_str(""), MalformedHeaderError);
}

TEST_CASE("canonical serialization round trips exactly") {
    ParseOptions opts;
    opts.symbol = "synthetic";
    const auto r = parse_str(
        "Date,Close\n"
        "2020-01-01,100.123456789012345\n"
        "2020-01-02,99.000000000000007\n"
        "2020-01-03,101.25\n"
        "2020-01-06,0.3333333333333333\n",
        opts);
    const std::string canonical = to_canonical_csv(r.series);
    std::istringstream in(canonical);
    const auto again = parse_csv(in, opts);
    CHECK(again.series == r.series);

    // And a second round trip is byte-identical.
    CHECK(to_canonical_csv(again.series) == canonical);
}

TEST_CASE("comment lines and blank lines are skipped") {
    const auto r = parse_str(
        "# manifest: {\"command\":\"x\"}\n"
        "Date,Close\n"
        "\n"
        "2020-01-01,10\n"
        "# trailing note\n"
        "2020-01-02,11\n");
    CHECK(r.series.size() == 2);
}

TEST_CASE("extra columns ignored, crlf tolerated") {
    const auto r = parse_str(
        "Date,Open,Close,Whatever\r\n"
        "2020-01-01,9,10,x\r\n"
        "2020-01-02,10,11,y\r\n");
    CHECK(r.series.prices == std::vector<double>{10.0, 11.0});
}
