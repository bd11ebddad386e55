#include "tradenet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tradenet/errors.hpp"
#include "tradenet/version.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace tradenet::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::string where(const std::string& path, std::size_t line) {
    return "'" + path + "' line " + std::to_string(line);
}

double parse_double(const std::string& raw, const std::string& path, std::size_t line,
                    const char* what) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        fail(Errc::malformed_row,
             where(path, line) + ": " + what + " '" + raw + "' is not a finite number");
    return v;
}

long parse_int(const std::string& raw, const std::string& path, std::size_t line,
               const char* what) {
    const std::string s = trim(raw);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(Errc::malformed_row,
             where(path, line) + ": " + what + " '" + raw + "' is not an integer");
    return v;
}

std::string require_label(const std::string& raw, const std::string& path, std::size_t line,
                          const char* what) {
    std::string s = trim(raw);
    if (s.empty())
        fail(Errc::malformed_row, where(path, line) + ": empty " + std::string(what));
    return s;
}

void expect_arity(const CsvRow& row, std::size_t want, const std::string& path) {
    if (row.fields.size() != want)
        fail(Errc::malformed_row, where(path, row.line) + ": expected " + std::to_string(want) +
                                      " fields, got " + std::to_string(row.fields.size()));
}

std::vector<std::string> trimmed_fields(const CsvRow& row) {
    std::vector<std::string> out;
    out.reserve(row.fields.size());
    for (const std::string& f : row.fields) out.push_back(trim(f));
    return out;
}

void expect_header(const std::vector<CsvRow>& rows, const std::vector<std::string>& want,
                   const std::string& path) {
    if (rows.empty())
        fail(Errc::malformed_row, "'" + path + "': missing header row");
    if (trimmed_fields(rows.front()) != want) {
        std::string joined;
        for (const std::string& f : want) {
            if (!joined.empty()) joined += ',';
            joined += f;
        }
        fail(Errc::malformed_row, where(path, rows.front().line) + ": expected header '" +
                                      joined + "'");
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_failure, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(Errc::io_failure, "failed writing '" + path + "'");
}

} // namespace

std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_failure, "cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

    std::vector<CsvRow> rows;
    CsvRow current;
    current.line = 1;
    std::string field;
    std::size_t line = 1;
    bool in_quotes = false;
    bool any = false; // current record has seen a character or separator

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        rows.push_back(std::move(current));
        current = CsvRow{};
        current.line = line;
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            any = true;
        } else if (c == ',') {
            end_field();
            any = true;
        } else if (c == '\n' || (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
            if (c == '\r') ++i;
            ++line;
            end_record();
        } else {
            field += c;
            any = true;
        }
    }
    if (in_quotes)
        fail(Errc::malformed_row,
             where(path, current.line) + ": unterminated quoted field");
    if (any || !field.empty() || !current.fields.empty()) end_record();
    return rows;
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string::npos ||
        (!field.empty() && (field.front() == ' ' || field.front() == '\t' ||
                            field.back() == ' ' || field.back() == '\t'));
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    // Shortest decimal form that parses back to the identical bits.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void DatasetManifest::validate() const {
    if (trade_path.empty()) fail(Errc::io_failure, "trade source path is required");
    if (!fs::exists(trade_path))
        fail(Errc::io_failure, "trade source '" + trade_path + "' does not exist");
    for (const std::string* p : {&gdp_path, &per_capita_path, &groups_path})
        if (!p->empty() && !fs::exists(*p))
            fail(Errc::io_failure, "'" + *p + "' does not exist");
}

std::vector<TradeMatrix> parse_trade_long(const std::string& path) {
    const std::vector<CsvRow> rows = read_csv(path);
    expect_header(rows, {"year", "exporter", "importer", "value"}, path);

    struct Rec {
        std::size_t line;
        int year;
        std::string exporter, importer;
        double value;
    };
    std::vector<Rec> recs;
    recs.reserve(rows.size());
    std::set<std::string> labels;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const CsvRow& row = rows[k];
        expect_arity(row, 4, path);
        Rec r;
        r.line = row.line;
        r.year = static_cast<int>(parse_int(row.fields[0], path, row.line, "year"));
        r.exporter = require_label(row.fields[1], path, row.line, "exporter label");
        r.importer = require_label(row.fields[2], path, row.line, "importer label");
        r.value = parse_double(row.fields[3], path, row.line, "value");
        labels.insert(r.exporter);
        labels.insert(r.importer);
        recs.push_back(std::move(r));
    }

    if (recs.empty()) return {};
    const CountryIndex index{std::vector<std::string>(labels.begin(), labels.end())};
    const std::size_t n = index.size();

    std::map<int, Matrix> flows;
    std::map<int, std::set<std::pair<std::size_t, std::size_t>>> seen;
    for (const Rec& r : recs) {
        const std::size_t i = index.at(r.exporter);
        const std::size_t j = index.at(r.importer);
        if (r.value < 0.0)
            fail(Errc::negative_value, where(path, r.line) + ": negative trade value");
        if (i == j && r.value > 0.0)
            fail(Errc::self_loop,
                 where(path, r.line) + ": positive flow from '" + r.exporter + "' to itself");
        if (!seen[r.year].insert({i, j}).second)
            fail(Errc::duplicate_flow, where(path, r.line) + ": flow " + r.exporter + " -> " +
                                           r.importer + " repeated for year " +
                                           std::to_string(r.year));
        flows.try_emplace(r.year, Matrix(n)).first->second(i, j) = r.value;
    }

    std::vector<TradeMatrix> out;
    out.reserve(flows.size());
    for (auto& [year, m] : flows) out.push_back({year, index, std::move(m)});
    return out;
}

TradeMatrix parse_trade_wide(const std::string& path, int year) {
    const std::vector<CsvRow> rows = read_csv(path);
    if (rows.empty()) fail(Errc::malformed_row, "'" + path + "': missing header row");

    const std::vector<std::string> header = trimmed_fields(rows.front());
    if (header.size() < 2)
        fail(Errc::malformed_row, where(path, rows.front().line) +
                                      ": header needs at least one importer column");
    if (!header.front().empty() && header.front() != "exporter")
        fail(Errc::malformed_row, where(path, rows.front().line) +
                                      ": first header cell must be empty or 'exporter'");

    std::vector<std::string> importers(header.begin() + 1, header.end());
    std::set<std::string> unique;
    for (const std::string& label : importers) {
        if (label.empty())
            fail(Errc::malformed_row, where(path, rows.front().line) + ": empty importer label");
        if (!unique.insert(label).second)
            fail(Errc::duplicate_country,
                 where(path, rows.front().line) + ": importer '" + label + "' listed twice");
    }
    const CountryIndex index{importers}; // column order fixes the index
    const std::size_t n = index.size();

    std::set<std::string> exporters;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        expect_arity(rows[k], n + 1, path);
        const std::string label =
            require_label(rows[k].fields[0], path, rows[k].line, "exporter label");
        if (!exporters.insert(label).second)
            fail(Errc::duplicate_country,
                 where(path, rows[k].line) + ": exporter '" + label + "' listed twice");
    }
    if (exporters != unique) {
        std::string detail;
        for (const std::string& l : unique)
            if (!exporters.count(l)) detail += " missing row '" + l + "';";
        for (const std::string& l : exporters)
            if (!unique.count(l)) detail += " missing column '" + l + "';";
        fail(Errc::label_mismatch,
             "'" + path + "': exporter rows and importer columns differ:" + detail);
    }

    Matrix flows(n);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const CsvRow& row = rows[k];
        const std::size_t i = index.at(trim(row.fields[0]));
        for (std::size_t j = 0; j < n; ++j) {
            const double v = parse_double(row.fields[j + 1], path, row.line, "value");
            if (v < 0.0)
                fail(Errc::negative_value, where(path, row.line) + ": negative trade value");
            if (i == j && v > 0.0)
                fail(Errc::self_loop, where(path, row.line) + ": positive flow from '" +
                                          index.label(i) + "' to itself");
            flows(i, j) = v;
        }
    }
    return {year, index, std::move(flows)};
}

std::vector<TradeMatrix> load_trade_source(const std::string& path) {
    if (!fs::exists(path)) fail(Errc::io_failure, "'" + path + "' does not exist");

    if (fs::is_directory(path)) {
        std::vector<std::pair<int, fs::path>> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            const fs::path& p = entry.path();
            if (p.extension() != ".csv") continue;
            const std::string stem = p.stem().string();
            if (stem.empty() || stem.size() > 6 ||
                !std::all_of(stem.begin(), stem.end(),
                             [](unsigned char c) { return std::isdigit(c); }))
                continue;
            files.emplace_back(std::stoi(stem), p);
        }
        if (files.empty())
            fail(Errc::empty_input, "'" + path + "' holds no <year>.csv trade tables");
        std::sort(files.begin(), files.end());

        std::vector<TradeMatrix> out;
        out.reserve(files.size());
        for (const auto& [year, file] : files)
            out.push_back(parse_trade_wide(file.string(), year));
        for (std::size_t k = 1; k < out.size(); ++k)
            if (!(out[k].countries == out.front().countries))
                fail(Errc::index_mismatch,
                     "'" + files[k].second.string() + "' indexes different countries than '" +
                         files.front().second.string() + "'");
        return out;
    }

    const std::vector<CsvRow> rows = read_csv(path);
    if (rows.empty()) fail(Errc::malformed_row, "'" + path + "': missing header row");
    if (!rows.front().fields.empty() && trim(rows.front().fields[0]) == "year")
        return parse_trade_long(path);
    fail(Errc::malformed_row,
         "'" + path + "': expected long-format header 'year,exporter,importer,value' "
         "(a wide table needs an explicit year)");
}

SeriesPanel parse_series(const std::string& path, SeriesKind kind) {
    const std::vector<CsvRow> rows = read_csv(path);
    expect_header(rows, {"country", "year", "value"}, path);

    SeriesPanel panel;
    std::map<std::string, std::set<int>> seen;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const CsvRow& row = rows[k];
        expect_arity(row, 3, path);
        const std::string country = require_label(row.fields[0], path, row.line, "country label");
        const int year = static_cast<int>(parse_int(row.fields[1], path, row.line, "year"));
        const double value = parse_double(row.fields[2], path, row.line, "value");
        if (kind == SeriesKind::gdp && !(value > 0.0))
            fail(Errc::non_positive_value,
                 where(path, row.line) + ": GDP for '" + country + "' must be positive");
        if (!seen[country].insert(year).second)
            fail(Errc::duplicate_year, where(path, row.line) + ": country '" + country +
                                           "' year " + std::to_string(year) + " repeated");
        CountrySeries& s = panel[country];
        if (s.country.empty()) {
            s.country = country;
            s.quantity = kind == SeriesKind::gdp ? "gdp" : "per_capita";
        }
        s.points.emplace_back(year, value);
    }
    for (auto& [_, s] : panel)
        std::sort(s.points.begin(), s.points.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return panel;
}

std::map<std::string, double> series_year_slice(const SeriesPanel& panel, int year) {
    std::map<std::string, double> out;
    for (const auto& [label, series] : panel)
        if (auto v = series.value_at(year)) out[label] = *v;
    return out;
}

GroupAssignment parse_groups(const std::string& path) {
    const std::vector<CsvRow> rows = read_csv(path);
    expect_header(rows, {"country", "group"}, path);

    GroupAssignment groups;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const CsvRow& row = rows[k];
        expect_arity(row, 2, path);
        const std::string country = require_label(row.fields[0], path, row.line, "country label");
        const long group = parse_int(row.fields[1], path, row.line, "group");
        if (group != 1 && group != 2)
            fail(Errc::invalid_group,
                 where(path, row.line) + ": group must be 1 or 2, got " + std::to_string(group));
        if (groups.group_of(country))
            fail(Errc::duplicate_country,
                 where(path, row.line) + ": country '" + country + "' assigned twice");
        groups.insert(country, static_cast<int>(group));
    }
    return groups;
}

std::vector<FixtureRow> parse_fixture(const std::string& path) {
    const std::vector<CsvRow> rows = read_csv(path);
    if (rows.empty()) fail(Errc::malformed_row, "'" + path + "': missing header row");

    const std::vector<std::string> header = trimmed_fields(rows.front());
    bool paired;
    if (header == std::vector<std::string>{"country", "correlation", "p", "group"})
        paired = false;
    else if (header ==
             std::vector<std::string>{"country", "in_r", "in_p", "out_r", "out_p", "group"})
        paired = true;
    else
        fail(Errc::malformed_row,
             where(path, rows.front().line) +
                 ": expected header 'country,correlation,p,group' or "
                 "'country,in_r,in_p,out_r,out_p,group'");

    auto check_r = [&](double r, std::size_t line) {
        if (std::abs(r) > 1.0)
            fail(Errc::domain_error,
                 where(path, line) + ": correlation " + format_double(r) + " outside [-1, 1]");
    };
    auto check_p = [&](double p, std::size_t line) {
        if (p < 0.0 || p > 1.0)
            fail(Errc::domain_error,
                 where(path, line) + ": p-value " + format_double(p) + " outside [0, 1]");
    };

    std::vector<FixtureRow> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const CsvRow& row = rows[k];
        expect_arity(row, paired ? 6 : 4, path);
        FixtureRow fr;
        fr.country = require_label(row.fields[0], path, row.line, "country label");
        fr.paired = paired;
        std::size_t group_field;
        if (paired) {
            fr.in_r = parse_double(row.fields[1], path, row.line, "in_r");
            fr.in_p = parse_double(row.fields[2], path, row.line, "in_p");
            fr.out_r = parse_double(row.fields[3], path, row.line, "out_r");
            fr.out_p = parse_double(row.fields[4], path, row.line, "out_p");
            check_r(fr.in_r, row.line);
            check_p(fr.in_p, row.line);
            check_r(fr.out_r, row.line);
            check_p(fr.out_p, row.line);
            group_field = 5;
        } else {
            fr.r = parse_double(row.fields[1], path, row.line, "correlation");
            fr.p = parse_double(row.fields[2], path, row.line, "p");
            check_r(fr.r, row.line);
            check_p(fr.p, row.line);
            group_field = 3;
        }
        const long group = parse_int(row.fields[group_field], path, row.line, "group");
        if (group != 1 && group != 2)
            fail(Errc::invalid_group,
                 where(path, row.line) + ": group must be 1 or 2, got " + std::to_string(group));
        fr.group = static_cast<int>(group);
        out.push_back(std::move(fr));
    }
    return out;
}

namespace {

ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double number_from_json(const ordered_json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    fail(Errc::malformed_row, std::string("report JSON: '") + what + "' is not a number");
}

ordered_json corr_to_json(const CorrelationResult& c) {
    ordered_json j;
    j["r"] = json_number(c.r);
    j["n"] = c.n;
    j["t"] = json_number(c.t_stat);
    j["p"] = json_number(c.p);
    j["alpha"] = c.alpha;
    j["significant"] = c.significant;
    return j;
}

CorrelationResult corr_from_json(const ordered_json& j) {
    CorrelationResult c;
    c.r = number_from_json(j.at("r"), "r");
    c.n = j.at("n").get<std::size_t>();
    c.t_stat = number_from_json(j.at("t"), "t");
    c.p = number_from_json(j.at("p"), "p");
    c.alpha = j.at("alpha").get<double>();
    c.significant = j.at("significant").get<bool>();
    return c;
}

ordered_json rate_line_to_json(const RateLine& line) {
    return {{"significant", line.significant}, {"total", line.total}, {"rate", line.rate}};
}

RateLine rate_line_from_json(const ordered_json& j) {
    RateLine line;
    line.significant = j.at("significant").get<std::size_t>();
    line.total = j.at("total").get<std::size_t>();
    line.rate = j.at("rate").get<double>();
    return line;
}

ordered_json rate_to_json(const SignificantRate& r) {
    return {{"group1", rate_line_to_json(r.group1)},
            {"group2", rate_line_to_json(r.group2)},
            {"overall", rate_line_to_json(r.overall)}};
}

SignificantRate rate_from_json(const ordered_json& j) {
    return {rate_line_from_json(j.at("group1")), rate_line_from_json(j.at("group2")),
            rate_line_from_json(j.at("overall"))};
}

ordered_json tendency_to_json(const TendencyCounts& c) {
    ordered_json j;
    j["only_in"] = c.only_in;
    j["only_out"] = c.only_out;
    j["both_in_greater"] = c.both_in_greater;
    j["both_out_greater"] = c.both_out_greater;
    j["neither"] = c.neither;
    j["in_tendency"] = c.in_tendency();
    j["out_tendency"] = c.out_tendency();
    return j;
}

TendencyCounts tendency_from_json(const ordered_json& j) {
    TendencyCounts c;
    c.only_in = j.at("only_in").get<std::size_t>();
    c.only_out = j.at("only_out").get<std::size_t>();
    c.both_in_greater = j.at("both_in_greater").get<std::size_t>();
    c.both_out_greater = j.at("both_out_greater").get<std::size_t>();
    c.neither = j.at("neither").get<std::size_t>();
    return c;
}

} // namespace

std::string report_to_json(const StudyReport& report) {
    ordered_json j;
    j["tool"] = {{"name", "tradenet"}, {"version", version}};
    j["kind"] = to_string(report.kind);
    j["measure"] = to_string(report.measure);
    j["alpha"] = report.alpha;
    j["compare"] = to_string(report.compare);
    j["years"] = {{"min", report.year_min}, {"max", report.year_max}};
    j["min_overlap"] = report.min_overlap;
    j["group_sizes"] = {{"group1", report.group1_size}, {"group2", report.group2_size}};
    if (report.stamp) j["stamp"] = *report.stamp;

    ordered_json rows = ordered_json::array();
    for (const ReportRow& row : report.rows) {
        ordered_json r;
        r["country"] = row.country;
        r["group"] = row.group;
        if (row.inout) r["inout"] = corr_to_json(*row.inout);
        if (row.gdp_in) r["in"] = corr_to_json(*row.gdp_in);
        if (row.gdp_out) r["out"] = corr_to_json(*row.gdp_out);
        if (row.cls) r["class"] = to_string(*row.cls);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);

    ordered_json skipped = ordered_json::array();
    for (const SkipEntry& s : report.skipped)
        skipped.push_back(
            {{"country", s.country}, {"reason", s.reason}, {"detail", s.detail}});
    j["skipped"] = std::move(skipped);

    if (report.has_rates) {
        ordered_json rates;
        if (report.rate_inout) rates["inout"] = rate_to_json(*report.rate_inout);
        if (report.rate_in) rates["in"] = rate_to_json(*report.rate_in);
        if (report.rate_out) rates["out"] = rate_to_json(*report.rate_out);
        j["rates"] = std::move(rates);
    }
    if (report.tendency)
        j["tendency"] = {{"group1", tendency_to_json(report.tendency->group1)},
                         {"group2", tendency_to_json(report.tendency->group2)}};
    return j.dump(2);
}

StudyReport report_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::malformed_row, std::string("invalid report JSON: ") + e.what());
    }
    try {
        StudyReport report;
        const auto kind = study_kind_from_string(j.at("kind").get<std::string>());
        if (!kind) fail(Errc::malformed_row, "report JSON: unknown study kind");
        report.kind = *kind;
        const auto measure = measure_from_string(j.at("measure").get<std::string>());
        if (!measure) fail(Errc::malformed_row, "report JSON: unknown measure");
        report.measure = *measure;
        report.alpha = j.at("alpha").get<double>();
        const auto compare = compare_rule_from_string(j.at("compare").get<std::string>());
        if (!compare) fail(Errc::malformed_row, "report JSON: unknown compare rule");
        report.compare = *compare;
        report.year_min = j.at("years").at("min").get<int>();
        report.year_max = j.at("years").at("max").get<int>();
        report.min_overlap = j.at("min_overlap").get<std::size_t>();
        report.group1_size = j.at("group_sizes").at("group1").get<std::size_t>();
        report.group2_size = j.at("group_sizes").at("group2").get<std::size_t>();
        if (j.contains("stamp")) report.stamp = j.at("stamp").get<std::string>();

        for (const ordered_json& r : j.at("rows")) {
            ReportRow row;
            row.country = r.at("country").get<std::string>();
            row.group = r.at("group").get<int>();
            if (r.contains("inout")) row.inout = corr_from_json(r.at("inout"));
            if (r.contains("in")) row.gdp_in = corr_from_json(r.at("in"));
            if (r.contains("out")) row.gdp_out = corr_from_json(r.at("out"));
            if (r.contains("class")) {
                const auto cls = correlation_class_from_string(r.at("class").get<std::string>());
                if (!cls) fail(Errc::malformed_row, "report JSON: unknown class");
                row.cls = *cls;
            }
            report.rows.push_back(std::move(row));
        }
        for (const ordered_json& s : j.at("skipped"))
            report.skipped.push_back({s.at("country").get<std::string>(),
                                      s.at("reason").get<std::string>(),
                                      s.at("detail").get<std::string>()});

        report.has_rates = j.contains("rates");
        if (report.has_rates) {
            const ordered_json& rates = j.at("rates");
            if (rates.contains("inout")) report.rate_inout = rate_from_json(rates.at("inout"));
            if (rates.contains("in")) report.rate_in = rate_from_json(rates.at("in"));
            if (rates.contains("out")) report.rate_out = rate_from_json(rates.at("out"));
        }
        if (j.contains("tendency"))
            report.tendency = TendencyTable{tendency_from_json(j.at("tendency").at("group1")),
                                            tendency_from_json(j.at("tendency").at("group2"))};
        return report;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::malformed_row, std::string("invalid report JSON: ") + e.what());
    }
}

StudyReport parse_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_failure, "cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return report_from_json(text);
}

namespace {

std::string sibling_path(const std::string& path, const char* suffix) {
    fs::path p(path);
    fs::path base = p.parent_path() / p.stem();
    return base.string() + suffix;
}

void emit_report_csv(const StudyReport& report, const std::string& path) {
    std::string main_table;
    if (report.kind == StudyKind::inout) {
        main_table = "country,correlation,p,group\n";
        for (const ReportRow& row : report.rows) {
            main_table += csv_escape(row.country) + ',' + format_double(row.inout->r) + ',' +
                          format_double(row.inout->p) + ',' + std::to_string(row.group) + '\n';
        }
    } else {
        main_table = "country,in_r,in_p,out_r,out_p,class,group\n";
        for (const ReportRow& row : report.rows) {
            main_table += csv_escape(row.country) + ',' + format_double(row.gdp_in->r) + ',' +
                          format_double(row.gdp_in->p) + ',' + format_double(row.gdp_out->r) +
                          ',' + format_double(row.gdp_out->p) + ',' +
                          to_string(*row.cls) + ',' + std::to_string(row.group) + '\n';
        }
    }
    write_file(path, main_table);

    if (report.has_rates) {
        std::string rates = "table,group,significant,total,rate\n";
        auto add = [&](const char* table, const SignificantRate& r) {
            const std::pair<const char*, const RateLine*> lines[] = {
                {"group1", &r.group1}, {"group2", &r.group2}, {"overall", &r.overall}};
            for (const auto& [name, line] : lines)
                rates += std::string(table) + ',' + name + ',' +
                         std::to_string(line->significant) + ',' + std::to_string(line->total) +
                         ',' + format_double(line->rate) + '\n';
        };
        if (report.rate_inout) add("inout", *report.rate_inout);
        if (report.rate_in) add("in", *report.rate_in);
        if (report.rate_out) add("out", *report.rate_out);
        write_file(sibling_path(path, "_rates.csv"), rates);
    }
    if (report.tendency) {
        std::string tendency =
            "group,only_in,only_out,both_in_greater,both_out_greater,neither,"
            "in_tendency,out_tendency\n";
        const std::pair<const char*, const TendencyCounts*> groups[] = {
            {"group1", &report.tendency->group1}, {"group2", &report.tendency->group2}};
        for (const auto& [name, c] : groups)
            tendency += std::string(name) + ',' + std::to_string(c->only_in) + ',' +
                        std::to_string(c->only_out) + ',' + std::to_string(c->both_in_greater) +
                        ',' + std::to_string(c->both_out_greater) + ',' +
                        std::to_string(c->neither) + ',' + std::to_string(c->in_tendency()) +
                        ',' + std::to_string(c->out_tendency()) + '\n';
        write_file(sibling_path(path, "_tendency.csv"), tendency);
    }
    if (!report.skipped.empty()) {
        std::string skipped = "country,reason,detail\n";
        for (const SkipEntry& s : report.skipped)
            skipped += csv_escape(s.country) + ',' + csv_escape(s.reason) + ',' +
                       csv_escape(s.detail) + '\n';
        write_file(sibling_path(path, "_skipped.csv"), skipped);
    }
}

} // namespace

void emit_report(const StudyReport& report, ReportFormat format, const std::string& path) {
    if (format == ReportFormat::json) {
        write_file(path, report_to_json(report) + "\n");
        return;
    }
    emit_report_csv(report, path);
}

void emit_trade_long(const std::vector<TradeMatrix>& matrices, const std::string& path) {
    std::string out = "year,exporter,importer,value\n";
    for (const TradeMatrix& m : matrices) {
        const std::size_t n = m.countries.size();
        std::vector<bool> present(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double v = m.flows(i, j);
                if (v == 0.0) continue;
                out += std::to_string(m.year) + ',' + csv_escape(m.countries.label(i)) + ',' +
                       csv_escape(m.countries.label(j)) + ',' + format_double(v) + '\n';
                present[i] = present[j] = true;
            }
        }
        // Zero self-rows keep countries without flows (and all-zero years)
        // visible so a parse of the emitted file rebuilds the same index.
        for (std::size_t i = 0; i < n; ++i) {
            if (present[i]) continue;
            const std::string label = csv_escape(m.countries.label(i));
            out += std::to_string(m.year) + ',' + label + ',' + label + ",0\n";
        }
    }
    write_file(path, out);
}

void emit_trade_wide(const TradeMatrix& matrix, const std::string& path) {
    const std::size_t n = matrix.countries.size();
    std::string out;
    for (std::size_t j = 0; j < n; ++j) out += ',' + csv_escape(matrix.countries.label(j));
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out += csv_escape(matrix.countries.label(i));
        for (std::size_t j = 0; j < n; ++j) out += ',' + format_double(matrix.flows(i, j));
        out += '\n';
    }
    write_file(path, out);
}

} // namespace tradenet::io
