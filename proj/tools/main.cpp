#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tradenet/centrality.hpp"
#include "tradenet/errors.hpp"
#include "tradenet/io.hpp"
#include "tradenet/pipeline.hpp"
#include "tradenet/threads.hpp"
#include "tradenet/version.hpp"

namespace {

using namespace tradenet;
using ordered_json = nlohmann::ordered_json;

// Flag combinations the parser cannot express; always exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_failure, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(Errc::io_failure, "failed writing '" + path + "'");
}

bool looks_long_format(const std::string& path) {
    const std::vector<io::CsvRow> rows = io::read_csv(path);
    if (rows.empty()) fail(Errc::malformed_row, "'" + path + "': missing header row");
    return !rows.front().fields.empty() && trim_copy(rows.front().fields[0]) == "year";
}

std::vector<TradeMatrix> load_trade(const std::string& path, std::optional<int> year,
                                    bool for_study) {
    if (std::filesystem::is_regular_file(path) && !looks_long_format(path)) {
        if (for_study)
            throw UsageError(
                "a study needs a multi-year trade source (long-format file or a directory "
                "of <year>.csv grids)");
        if (!year) throw UsageError("this trade table is a single-year grid; pass --year");
        return {io::parse_trade_wide(path, *year)};
    }
    std::vector<TradeMatrix> all = io::load_trade_source(path);
    if (year) {
        for (TradeMatrix& m : all)
            if (m.year == *year) return {std::move(m)};
        fail(Errc::empty_input, "trade source has no data for year " + std::to_string(*year));
    }
    if (all.empty()) fail(Errc::empty_input, "trade source '" + path + "' holds no rows");
    return all;
}

io::ReportFormat format_from_path(const std::string& path) {
    return std::filesystem::path(path).extension() == ".csv" ? io::ReportFormat::csv
                                                             : io::ReportFormat::json;
}

std::string utc_stamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string percent(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", rate * 100.0);
    return buf;
}

void print_rates(const StudyReport& report, std::ostream& os) {
    if (!report.has_rates) return;
    os << "table\tgroup\tsignificant\ttotal\trate\n";
    const auto block = [&](const char* table, const SignificantRate& r) {
        const std::pair<const char*, const RateLine*> lines[] = {
            {"Group 1", &r.group1}, {"Group 2", &r.group2}, {"Total", &r.overall}};
        for (const auto& [group, line] : lines)
            os << table << '\t' << group << '\t' << line->significant << '\t' << line->total
               << '\t' << percent(line->rate) << '\n';
    };
    if (report.rate_inout) block("In versus Out", *report.rate_inout);
    if (report.rate_in) block("In versus GDP", *report.rate_in);
    if (report.rate_out) block("Out versus GDP", *report.rate_out);
}

// --- centrality ---------------------------------------------------------

struct CentralityConfig {
    std::string trade;
    std::optional<int> year;
    bool all_years = false;
    std::string measure;
    std::string direction;
    double tol = 1e-12;
    long max_iter = 100000;
    std::string dangling = "error";
    std::string format = "csv";
    std::string out;
};

int run_centrality(const CentralityConfig& cfg) {
    SolverOptions opts;
    opts.tolerance = cfg.tol;
    opts.max_iterations = static_cast<std::size_t>(cfg.max_iter);
    opts.dangling_policy =
        cfg.dangling == "uniform" ? DanglingPolicy::uniform : DanglingPolicy::error;
    const Measure measure = *measure_from_string(cfg.measure);
    const Direction direction = *direction_from_string(cfg.direction);

    std::vector<TradeMatrix> trades = load_trade(cfg.trade, cfg.year, false);
    std::sort(trades.begin(), trades.end(),
              [](const TradeMatrix& a, const TradeMatrix& b) { return a.year < b.year; });

    std::vector<CentralityVector> results;
    results.reserve(trades.size());
    for (const TradeMatrix& t : trades) {
        try {
            results.push_back(compute_centrality(normalize(t), measure, direction, opts));
        } catch (const TradenetError& e) {
            fail(e.code(), "year " + std::to_string(t.year) + ": " + e.what());
        }
    }

    std::string payload;
    if (cfg.format == "csv") {
        const bool single = results.size() == 1;
        payload = single ? "country,value\n" : "year,country,value\n";
        for (const CentralityVector& cv : results) {
            for (std::size_t i = 0; i < cv.countries.size(); ++i) {
                if (!single) payload += std::to_string(cv.year) + ',';
                payload += io::csv_escape(cv.countries.label(i)) + ',' +
                           io::format_double(cv.values[i]) + '\n';
            }
        }
    } else {
        ordered_json j;
        j["tool"] = {{"name", "tradenet"}, {"version", version}};
        j["measure"] = cfg.measure;
        j["direction"] = cfg.direction;
        ordered_json arr = ordered_json::array();
        for (const CentralityVector& cv : results) {
            ordered_json y;
            y["year"] = cv.year;
            if (cv.leading_eigenvalue) y["leading_eigenvalue"] = *cv.leading_eigenvalue;
            ordered_json values = ordered_json::array();
            for (std::size_t i = 0; i < cv.countries.size(); ++i)
                values.push_back(
                    {{"country", cv.countries.label(i)}, {"value", cv.values[i]}});
            y["values"] = std::move(values);
            arr.push_back(std::move(y));
        }
        j["results"] = std::move(arr);
        payload = j.dump(2) + "\n";
    }
    write_output(cfg.out, payload);
    return 0;
}

// --- study --------------------------------------------------------------

struct StudyConfig {
    std::string kind;
    std::string trade;
    std::string gdp;
    std::string measure;
    std::string groups_path;
    std::string per_capita_path;
    std::optional<int> reference_year;
    double alpha = 0.05;
    std::string compare = "abs";
    std::string out;
    bool stamp = false;
};

int run_study(const StudyConfig& cfg) {
    const bool use_groups = !cfg.groups_path.empty();
    const bool use_per_capita = !cfg.per_capita_path.empty() || cfg.reference_year.has_value();
    if (use_groups == use_per_capita)
        throw UsageError("pass exactly one of --groups or --per-capita with --reference-year");
    if (use_per_capita && (cfg.per_capita_path.empty() || !cfg.reference_year))
        throw UsageError("--per-capita and --reference-year go together");
    if (cfg.kind == "gdp" && cfg.gdp.empty())
        throw UsageError("a gdp study needs --gdp");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw UsageError("--alpha must lie strictly between 0 and 1");

    const std::vector<TradeMatrix> trades = load_trade(cfg.trade, std::nullopt, true);
    std::vector<AdjacencyMatrix> yearly;
    yearly.reserve(trades.size());
    for (const TradeMatrix& t : trades) yearly.push_back(normalize(t));
    const CountryIndex& index = yearly.front().countries;

    const GroupAssignment groups =
        use_groups
            ? io::parse_groups(cfg.groups_path)
            : assign_groups(
                  io::series_year_slice(
                      io::parse_series(cfg.per_capita_path, io::SeriesKind::per_capita),
                      *cfg.reference_year),
                  index);

    StudyOptions opts;
    opts.alpha = cfg.alpha;
    opts.compare = *compare_rule_from_string(cfg.compare);
    const Measure measure = *measure_from_string(cfg.measure);

    StudyReport report =
        cfg.kind == "inout"
            ? inout_study(yearly, measure, groups, opts)
            : gdp_study(yearly, io::parse_series(cfg.gdp, io::SeriesKind::gdp), measure,
                        groups, opts);
    if (cfg.stamp) report.stamp = utc_stamp();

    io::emit_report(report, format_from_path(cfg.out), cfg.out);
    print_rates(report, std::cout);
    return 0;
}

// --- subset -------------------------------------------------------------

struct SubsetConfig {
    std::string report;
    std::string countries;
    std::string out;
};

int run_subset(const SubsetConfig& cfg) {
    std::vector<std::string> wanted;
    std::string token;
    std::istringstream stream(cfg.countries);
    while (std::getline(stream, token, ',')) {
        token = trim_copy(token);
        if (token.empty()) throw UsageError("--countries holds an empty label");
        wanted.push_back(token);
    }
    if (wanted.empty()) throw UsageError("--countries holds no labels");

    const StudyReport full = io::parse_report(cfg.report);
    const StudyReport sub = subset_report(full, wanted);
    io::emit_report(sub, format_from_path(cfg.out), cfg.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed trade network centrality and correlation studies"};
    app.name("tradenet");
    app.set_version_flag("--version", tradenet::version);
    app.require_subcommand(1);

    CentralityConfig cc;
    int cc_year = 0;
    CLI::App* centrality = app.add_subcommand("centrality", "per-country centrality scores");
    centrality->add_option("--trade", cc.trade,
                           "long-format CSV, single-year grid, or directory of <year>.csv")
        ->required();
    CLI::Option* year_opt = centrality->add_option("--year", cc_year, "restrict to one year");
    CLI::Option* all_opt =
        centrality->add_flag("--all-years", cc.all_years, "every year in the source");
    year_opt->excludes(all_opt);
    all_opt->excludes(year_opt);
    centrality->add_option("--measure", cc.measure, "degree, eigenvector or randomwalk")
        ->required()
        ->check(CLI::IsMember({"degree", "eigenvector", "randomwalk"}));
    centrality->add_option("--direction", cc.direction, "in or out")
        ->required()
        ->check(CLI::IsMember({"in", "out"}));
    centrality->add_option("--tol", cc.tol, "solver tolerance")->check(CLI::PositiveNumber);
    centrality->add_option("--max-iter", cc.max_iter, "solver iteration cap")
        ->check(CLI::PositiveNumber);
    centrality->add_option("--dangling", cc.dangling, "zero-degree column policy")
        ->check(CLI::IsMember({"error", "uniform"}));
    centrality->add_option("--format", cc.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    centrality->add_option("--out", cc.out, "output path (stdout when omitted)");

    StudyConfig sc;
    int sc_reference_year = 0;
    CLI::App* study = app.add_subcommand("study", "correlation studies over yearly networks");
    study->add_option("kind", sc.kind, "inout or gdp")
        ->required()
        ->check(CLI::IsMember({"inout", "gdp"}));
    study->add_option("--trade", sc.trade, "multi-year trade source")->required();
    study->add_option("--gdp", sc.gdp, "GDP panel (country,year,value)");
    study->add_option("--measure", sc.measure, "degree, eigenvector or randomwalk")
        ->required()
        ->check(CLI::IsMember({"degree", "eigenvector", "randomwalk"}));
    study->add_option("--groups", sc.groups_path, "explicit country,group assignment");
    study->add_option("--per-capita", sc.per_capita_path,
                      "per-capita panel used to derive groups");
    CLI::Option* ref_opt = study->add_option("--reference-year", sc_reference_year,
                                             "grouping year in the per-capita panel");
    study->add_option("--alpha", sc.alpha, "significance level (default 0.05)");
    study->add_option("--compare", sc.compare, "ranking rule when both are significant")
        ->check(CLI::IsMember({"abs", "signed"}));
    study->add_option("--out", sc.out, "report path (.json or .csv)")->required();
    study->add_flag("--stamp", sc.stamp, "embed a UTC timestamp in the report");

    SubsetConfig bc;
    CLI::App* subset = app.add_subcommand("subset", "restrict a report to named countries");
    subset->add_option("--report", bc.report, "existing report (JSON)")->required();
    subset->add_option("--countries", bc.countries, "comma-separated labels")->required();
    subset->add_option("--out", bc.out, "output path (.json or .csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[Usage]: " << one_line(e.what()) << "\n";
        return 1;
    }

    try {
        tradenet::apply_thread_cap();
    } catch (const tradenet::TradenetError& e) {
        std::cerr << "error[" << e.code_name() << "]: " << one_line(e.what()) << "\n";
        return 1;
    }

    try {
        if (centrality->parsed()) {
            if (year_opt->count()) cc.year = cc_year;
            return run_centrality(cc);
        }
        if (study->parsed()) {
            if (ref_opt->count()) sc.reference_year = sc_reference_year;
            return run_study(sc);
        }
        return run_subset(bc);
    } catch (const UsageError& e) {
        std::cerr << "error[Usage]: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const tradenet::TradenetError& e) {
        std::cerr << "error[" << e.code_name() << "]: " << one_line(e.what()) << "\n";
        return (e.code() == tradenet::Errc::no_convergence ||
                e.code() == tradenet::Errc::zero_limit)
                   ? 3
                   : 2;
    } catch (const std::exception& e) {
        std::cerr << "error[Internal]: " << one_line(e.what()) << "\n";
        return 2;
    }
}
