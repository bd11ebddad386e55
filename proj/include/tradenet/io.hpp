#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tradenet/pipeline.hpp"
#include "tradenet/stats.hpp"
#include "tradenet/trade_network.hpp"

namespace tradenet::io {

// One CSV record plus the 1-based line it starts on (for error messages).
struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, quotes ("" escape) and
// newlines; \n and \r\n both end records. The first row is the header.
std::vector<CsvRow> read_csv(const std::string& path);

std::string csv_escape(const std::string& field);
std::string format_double(double v); // shortest form that parses back bit-exact

// --- input files ------------------------------------------------------

struct DatasetManifest {
    std::string trade_path;       // long-format file or directory of <year>.csv
    std::string gdp_path;
    std::string per_capita_path;  // optional
    std::string groups_path;      // optional
    void validate() const;        // existence checks, IoFailure
};

// Header `year,exporter,importer,value`; one matrix per distinct year over
// the sorted union of all labels seen.
std::vector<TradeMatrix> parse_trade_long(const std::string& path);

// Grid with importer labels across the header (first cell empty or
// `exporter`) and one exporter row per line.
TradeMatrix parse_trade_wide(const std::string& path, int year);

// Long file, or directory holding one wide file per year named <year>.csv.
std::vector<TradeMatrix> load_trade_source(const std::string& path);

enum class SeriesKind { gdp, per_capita };

// Header `country,year,value`.
SeriesPanel parse_series(const std::string& path, SeriesKind kind);

// Extracts one year across the panel; countries missing that year are absent
// from the result (assign_groups raises MissingValue for required ones).
std::map<std::string, double> series_year_slice(const SeriesPanel& panel, int year);

// Header `country,group` with group 1 or 2.
GroupAssignment parse_groups(const std::string& path);

// Appendix-style correlation tables used as test fixtures:
// `country,correlation,p,group` or `country,in_r,in_p,out_r,out_p,group`.
struct FixtureRow {
    std::string country;
    int group = 0;
    bool paired = false;     // 6-column form
    double r = 0.0, p = 0.0;              // single form
    double in_r = 0.0, in_p = 0.0;        // paired form
    double out_r = 0.0, out_p = 0.0;
};
std::vector<FixtureRow> parse_fixture(const std::string& path);

// --- output -----------------------------------------------------------

enum class ReportFormat { json, csv };

// json: one self-contained document. csv: the per-country table at `path`
// plus `<stem>_rates.csv` / `<stem>_tendency.csv` / `<stem>_skipped.csv`
// siblings when those sections are present.
void emit_report(const StudyReport& report, ReportFormat format, const std::string& path);

std::string report_to_json(const StudyReport& report);
StudyReport report_from_json(const std::string& text);
StudyReport parse_report(const std::string& path);

void emit_trade_long(const std::vector<TradeMatrix>& matrices, const std::string& path);
void emit_trade_wide(const TradeMatrix& matrix, const std::string& path);

} // namespace tradenet::io
