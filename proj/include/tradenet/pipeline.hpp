#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tradenet/centrality.hpp"
#include "tradenet/country_index.hpp"
#include "tradenet/stats.hpp"
#include "tradenet/trade_network.hpp"

namespace tradenet {

// Per-country time series with strictly increasing years.
struct CountrySeries {
    std::string country;
    std::string quantity; // e.g. "gdp", "weighted_gdp", "centrality:degree:out"
    std::vector<std::pair<int, double>> points;

    std::optional<double> value_at(int year) const;
};

// Keyed by country label; std::map keeps iteration order deterministic.
using SeriesPanel = std::map<std::string, CountrySeries>;

enum class StudyKind { inout, gdp_vs_centrality };

const char* to_string(StudyKind k) noexcept;
std::optional<StudyKind> study_kind_from_string(const std::string& s);

struct ReportRow {
    std::string country;
    int group = 0;
    // inout studies: the single in-vs-out correlation
    std::optional<CorrelationResult> inout;
    // gdp studies: weighted GDP vs in- and out-centrality
    std::optional<CorrelationResult> gdp_in;
    std::optional<CorrelationResult> gdp_out;
    std::optional<CorrelationClass> cls;
};

struct SkipEntry {
    std::string country;
    std::string reason; // error code name, e.g. "ZeroVariance"
    std::string detail;
};

struct StudyReport {
    StudyKind kind = StudyKind::inout;
    Measure measure = Measure::degree;
    double alpha = 0.05;
    CompareRule compare = CompareRule::abs;
    int year_min = 0;
    int year_max = 0;
    std::size_t min_overlap = 3;
    std::size_t group1_size = 0;
    std::size_t group2_size = 0;
    std::vector<ReportRow> rows;      // CountryIndex order
    std::vector<SkipEntry> skipped;
    // Group rate tables; dropped (has_rates = false) for hand-picked subsets.
    bool has_rates = true;
    std::optional<SignificantRate> rate_inout;
    std::optional<SignificantRate> rate_in;
    std::optional<SignificantRate> rate_out;
    std::optional<TendencyTable> tendency;
    std::optional<std::string> stamp;
};

// Per-year normalization over exactly the given index: share_i = gdp_i / sum
// over the index. Every indexed country must cover every year that appears
// for any of them.
SeriesPanel weighted_gdp(const SeriesPanel& gdp_panel, const CountryIndex& countries);

// Sort descending by per-capita value (ties: ascending label); the top
// ceil(n/2) countries form Group 1.
GroupAssignment assign_groups(const std::map<std::string, double>& per_capita,
                              const CountryIndex& countries);

// One centrality value per country per year. Years must be unique and all
// matrices must share one index. Solver failures are reported for the
// smallest offending year.
SeriesPanel centrality_series(const std::vector<AdjacencyMatrix>& yearly,
                              Measure measure, Direction direction,
                              const SolverOptions& opts = {});

struct StudyOptions {
    double alpha = 0.05;
    CompareRule compare = CompareRule::abs;
    std::size_t min_overlap = 3;
    SolverOptions solver;
};

StudyReport inout_study(const std::vector<AdjacencyMatrix>& yearly, Measure measure,
                        const GroupAssignment& groups, const StudyOptions& opts = {});

StudyReport gdp_study(const std::vector<AdjacencyMatrix>& yearly,
                      const SeriesPanel& gdp_panel, Measure measure,
                      const GroupAssignment& groups, const StudyOptions& opts = {});

// Restriction to the named countries (rows and skips). Group rate tables are
// dropped: they are not meaningful for hand-picked subsets.
StudyReport subset_report(const StudyReport& report,
                          const std::vector<std::string>& countries);

} // namespace tradenet
