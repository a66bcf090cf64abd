#include "trendsym/cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "trendsym/critical_values.hpp"
#include "trendsym/errors.hpp"
#include "trendsym/observables.hpp"
#include "trendsym/price_series.hpp"
#include "trendsym/report.hpp"
#include "trendsym/rolling.hpp"
#include "trendsym/scan.hpp"
#include "trendsym/tn.hpp"

namespace trendsym {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNoSymmetryPoint = 3;

ObservableKind kind_from_string(const std::string& s) {
    if (s == "returns") return ObservableKind::Returns;
    if (s == "treturns") return ObservableKind::TReturns;
    if (s == "tvreturns") return ObservableKind::TVReturns;
    throw std::invalid_argument("unknown observable: " + s);
}

std::string fmt(double v, const char* format = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

struct LoadedSeries {
    ParseResult parsed;
    std::string digest;
};

LoadedSeries load_series(const std::string& path, PriceColumn column,
                         DateFormat fmt_) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();

    ParseOptions opts;
    opts.price_column = column;
    opts.date_format = fmt_;
    opts.symbol = std::filesystem::path(path).stem().string();
    std::istringstream stream(bytes);
    return LoadedSeries{parse_csv(stream, opts),
                        digest_string(std::span(bytes.data(), bytes.size()))};
}

// Writes either to --out or to the session stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"distributional symmetry analysis of daily financial series"};
    app.set_version_flag("--version", kToolVersion);
    app.fallthrough();
    app.require_subcommand(1);

    std::string price_column = "close";
    std::string out_path;
    bool json_out = false;
    bool us_dates = false;
    std::int64_t seed = 1;
    app.add_option("--price-column", price_column, "price column to analyze")
        ->check(CLI::IsMember({"close", "adjclose"}));
    app.add_flag("--json", json_out, "emit machine-readable JSON");
    app.add_option("--seed", seed, "seed for simulation commands");
    app.add_option("--out", out_path, "write output to a file");
    app.add_flag("--us-dates", us_dates, "parse dates as MM/DD/YYYY");

    std::string file;
    std::string observable = "returns";
    double alpha = 0.05;
    double shift_c = 0.0;
    std::size_t grid_points = GridSpec{}.points;
    double grid_span = GridSpec{}.span_sigma_multiple;
    std::string curve_path;
    std::size_t window_days = 252;
    std::size_t step_days = 1;
    std::string events_path;
    bool default_events = false;
    bool simulate = false;
    std::size_t mc_paths = 100000;
    std::size_t mc_steps = 4096;

    auto* describe_cmd =
        app.add_subcommand("describe", "descriptive statistics of all observables");
    describe_cmd->add_option("file", file, "price CSV")->required();

    auto* test_cmd =
        app.add_subcommand("test", "test symmetry about a point c (default 0)");
    test_cmd->add_option("file", file, "price CSV")->required();
    test_cmd->add_option("--observable", observable)
        ->check(CLI::IsMember({"returns", "treturns", "tvreturns"}));
    test_cmd->add_option("--alpha", alpha, "significance level");
    test_cmd->add_option("--c", shift_c, "candidate symmetry point");

    auto* scan_cmd = app.add_subcommand(
        "scan", "locate the symmetry interval and the most plausible point");
    scan_cmd->add_option("file", file, "price CSV")->required();
    scan_cmd->add_option("--observable", observable)
        ->check(CLI::IsMember({"returns", "treturns", "tvreturns"}));
    scan_cmd->add_option("--alpha", alpha, "significance level");
    scan_cmd->add_option("--grid-points", grid_points, "candidate grid size");
    scan_cmd->add_option("--grid-span", grid_span,
                         "grid half-width in units of sigma/sqrt(n)");
    scan_cmd->add_option("--curve", curve_path, "write the Tn(c) curve CSV here");

    auto* roll_cmd =
        app.add_subcommand("roll", "rolling-window evolution of the test");
    roll_cmd->add_option("file", file, "price CSV")->required();
    roll_cmd->add_option("--observable", observable)
        ->check(CLI::IsMember({"returns", "treturns", "tvreturns"}));
    roll_cmd->add_option("--alpha", alpha, "significance level");
    roll_cmd->add_option("--window", window_days, "window length, trading days");
    roll_cmd->add_option("--step", step_days, "window step, trading days");
    roll_cmd->add_option("--events", events_path, "events CSV (label,date)");
    roll_cmd->add_flag("--default-events", default_events,
                       "annotate with the built-in crisis dates");

    auto* critical_cmd = app.add_subcommand(
        "critical", "upper percentage point of the limiting distribution");
    critical_cmd->add_option("--alpha", alpha, "significance level")->required();
    critical_cmd->add_flag("--simulate", simulate,
                           "Monte Carlo instead of the embedded table");
    critical_cmd->add_option("--paths", mc_paths, "simulated paths");
    critical_cmd->add_option("--steps", mc_steps, "time steps per path");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("trendsym");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    const PriceColumn column =
        price_column == "adjclose" ? PriceColumn::AdjClose : PriceColumn::Close;
    const DateFormat date_format = us_dates ? DateFormat::UsSlash : DateFormat::Iso;

    try {
        Sink sink(out_path, out);
        std::ostream& os = sink.stream();

        if (describe_cmd->parsed()) {
            const LoadedSeries loaded = load_series(file, column, date_format);
            const PriceSeries& ps = loaded.parsed.series;

            RunManifest manifest;
            manifest.command = "describe";
            manifest.config = {{"file", file},
                               {"price_column", price_column},
                               {"date_format", us_dates ? "us" : "iso"}};
            manifest.input_digest = loaded.digest;

            struct Row {
                ObservableKind kind;
                std::size_t n;
                std::optional<DescriptiveStats> stats;
            };
            std::vector<Row> rows;
            for (ObservableKind kind :
                 {ObservableKind::Returns, ObservableKind::TReturns,
                  ObservableKind::TVReturns}) {
                const ObservableSeries s = make_observable(ps, kind);
                Row row{kind, s.size(), std::nullopt};
                try {
                    row.stats = describe(s);
                } catch (const InsufficientDataError&) {
                }
                rows.push_back(std::move(row));
            }

            if (json_out) {
                nlohmann::json j;
                j["manifest"] = manifest.to_json();
                j["symbol"] = ps.symbol;
                j["cleaning"] = to_json(loaded.parsed.report);
                j["observables"] = nlohmann::json::array();
                for (const Row& row : rows) {
                    nlohmann::json o{{"kind", to_string(row.kind)},
                                     {"n", row.n}};
                    if (row.stats) {
                        const nlohmann::json s = to_json(*row.stats);
                        for (auto it = s.begin(); it != s.end(); ++it)
                            o[it.key()] = it.value();
                    } else {
                        o["mean"] = nullptr;
                        o["stddev"] = nullptr;
                        o["skewness"] = nullptr;
                        o["kurtosis"] = nullptr;
                    }
                    j["observables"].push_back(o);
                }
                os << j.dump(2) << '\n';
            } else {
                const CleaningReport& rep = loaded.parsed.report;
                os << "symbol: " << ps.symbol << "  rows kept: " << rep.rows_kept
                   << "/" << rep.rows_total
                   << "  dropped: " << rep.dropped.total() << '\n';
                char line[160];
                std::snprintf(line, sizeof line, "%-10s %8s %12s %12s %10s %10s\n",
                              "Observable", "Entries", "Mean", "StdDev",
                              "Skewness", "Kurtosis");
                os << line;
                for (const Row& row : rows) {
                    if (row.stats) {
                        std::snprintf(line, sizeof line,
                                      "%-10s %8zu %12.4g %12.4g %10.4g %10.4g\n",
                                      to_string(row.kind).c_str(), row.n,
                                      row.stats->mean, row.stats->stddev,
                                      row.stats->skewness, row.stats->kurtosis);
                    } else {
                        std::snprintf(line, sizeof line,
                                      "%-10s %8zu %12s %12s %10s %10s\n",
                                      to_string(row.kind).c_str(), row.n, "-",
                                      "-", "-", "-");
                    }
                    os << line;
                }
            }
            return kExitOk;
        }

        if (test_cmd->parsed()) {
            const LoadedSeries loaded = load_series(file, column, date_format);
            const ObservableSeries s =
                make_observable(loaded.parsed.series, kind_from_string(observable));
            const TnValue t = tn_shifted(s.values, shift_c);
            const double threshold =
                CriticalTable::asymptotic().upper_point(alpha).point;
            const bool rejected = !(t.statistic < threshold);

            RunManifest manifest;
            manifest.command = "test";
            manifest.config = {{"file", file},
                               {"price_column", price_column},
                               {"observable", observable},
                               {"alpha", alpha},
                               {"c", shift_c}};
            manifest.input_digest = loaded.digest;

            if (json_out) {
                nlohmann::json j{{"manifest", manifest.to_json()},
                                 {"observable", to_string(s.kind)},
                                 {"c", shift_c},
                                 {"alpha", alpha},
                                 {"tn", t.statistic},
                                 {"threshold", threshold},
                                 {"rejected", rejected},
                                 {"n_effective", t.n_effective},
                                 {"zeros_dropped", t.zeros_dropped}};
                os << j.dump(2) << '\n';
            } else {
                os << to_string(s.kind) << ": Tn(" << fmt(shift_c) << ") = "
                   << fmt(t.statistic) << "  T(alpha=" << fmt(alpha)
                   << ") = " << fmt(threshold) << "  -> symmetry "
                   << (rejected ? "rejected" : "not rejected") << '\n';
                if (t.zeros_dropped > 0)
                    os << "note: " << t.zeros_dropped
                       << " exact zeros excluded (n_effective = "
                       << t.n_effective << ")\n";
            }
            return kExitOk;
        }

        if (scan_cmd->parsed()) {
            const LoadedSeries loaded = load_series(file, column, date_format);
            const ObservableSeries s =
                make_observable(loaded.parsed.series, kind_from_string(observable));
            GridSpec grid;
            grid.points = grid_points;
            grid.span_sigma_multiple = grid_span;
            const SymmetryResult result = scan(s.values, alpha, grid);

            RunManifest manifest;
            manifest.command = "scan";
            manifest.config = {{"file", file},
                               {"price_column", price_column},
                               {"observable", observable},
                               {"alpha", alpha},
                               {"grid_points", grid.points},
                               {"grid_span", grid.span_sigma_multiple}};
            manifest.input_digest = loaded.digest;

            if (!curve_path.empty()) {
                std::ofstream cf(curve_path);
                if (!cf) throw Error("cannot write " + curve_path);
                write_tn_curve_csv(cf, result.curve, manifest);
            }

            if (json_out) {
                nlohmann::json j = to_json(result);
                j["manifest"] = manifest.to_json();
                j["observable"] = to_string(s.kind);
                os << j.dump(2) << '\n';
            } else {
                os << to_string(s.kind) << ": Tn(0) = " << fmt(result.tn_at_zero)
                   << "  threshold T(" << fmt(alpha) << ") = "
                   << fmt(result.threshold) << '\n';
                if (result.status == ScanStatus::Ok) {
                    os << "symmetry interval: (" << fmt(result.c_min, "%.6e")
                       << ", " << fmt(result.c_max, "%.6e") << ")\n";
                    os << "most plausible symmetry point C = "
                       << fmt(result.c_star, "%.6e")
                       << "  Tn(C) = " << fmt(result.tn_at_c_star) << '\n';
                    os << "zero symmetric: "
                       << (result.zero_symmetric ? "Yes" : "No") << '\n';
                    if (result.disconnected)
                        os << "note: sub-threshold set is disconnected ("
                           << result.components.size() << " components)\n";
                } else {
                    os << "no plausible symmetry point at alpha = " << fmt(alpha)
                       << '\n';
                }
            }
            return result.status == ScanStatus::Ok ? kExitOk
                                                   : kExitNoSymmetryPoint;
        }

        if (roll_cmd->parsed()) {
            const LoadedSeries loaded = load_series(file, column, date_format);
            RollingConfig cfg;
            cfg.window_days = window_days;
            cfg.step_days = step_days;
            cfg.alpha = alpha;
            cfg.observable = kind_from_string(observable);
            const std::vector<RollingPoint> points =
                roll(loaded.parsed.series, cfg);

            EventTable events;
            if (!events_path.empty()) {
                std::ifstream ef(events_path);
                if (!ef) throw Error("cannot open " + events_path);
                events = parse_events_csv(ef);
            } else if (default_events) {
                events = default_market_events();
            }
            const std::vector<AnnotatedEvent> annotated =
                annotate(points, events);

            RunManifest manifest;
            manifest.command = "roll";
            manifest.config = {{"file", file},
                               {"price_column", price_column},
                               {"observable", observable},
                               {"alpha", alpha},
                               {"window_days", window_days},
                               {"step_days", step_days}};
            manifest.input_digest = loaded.digest;

            if (json_out) {
                nlohmann::json j;
                j["manifest"] = manifest.to_json();
                j["points"] = nlohmann::json::array();
                for (const RollingPoint& p : points)
                    j["points"].push_back(to_json(p));
                j["events"] = to_json(std::span(annotated));
                os << j.dump(2) << '\n';
            } else {
                write_rolling_csv(os, points, manifest);
                for (const AnnotatedEvent& e : annotated) {
                    os << "# event: " << e.event.label << ','
                       << e.event.date.to_string() << " -> "
                       << (e.window_end ? e.window_end->to_string()
                                        : std::string("outside-range"))
                       << '\n';
                }
            }
            return kExitOk;
        }

        if (critical_cmd->parsed()) {
            RunManifest manifest;
            manifest.command = "critical";
            manifest.config = {{"alpha", alpha}, {"simulate", simulate}};

            nlohmann::json j;
            j["alpha"] = alpha;
            if (simulate) {
                McConfig cfg;
                cfg.paths = mc_paths;
                cfg.time_steps = mc_steps;
                cfg.seed = static_cast<std::uint64_t>(seed);
                manifest.config["paths"] = mc_paths;
                manifest.config["steps"] = mc_steps;
                manifest.seed = seed;
                const double p = 1.0 - alpha;
                const auto est = simulate_quantile(std::span(&p, 1), cfg);
                j["point"] = est[0].value;
                j["source"] = "simulated";
                j["stderr_estimate"] = est[0].stderr_estimate;
            } else {
                const auto lookup =
                    CriticalTable::asymptotic().upper_point(alpha);
                j["point"] = lookup.point;
                j["source"] = lookup.interpolated ? "interpolated" : "table";
                j["stderr_estimate"] = nullptr;
            }
            j["manifest"] = manifest.to_json();
            os << j.dump(2) << '\n';
            return kExitOk;
        }

        err << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const OutOfTableRangeError& e) {
        err << "error: " << e.what()
            << " (use critical --simulate for out-of-table levels)\n";
        return kExitData;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace trendsym
