#include "tradenet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "tradenet/errors.hpp"
#include "tradenet/kernels.hpp"

namespace tradenet {

std::optional<double> CountrySeries::value_at(int year) const {
    auto it = std::lower_bound(points.begin(), points.end(), year,
                               [](const auto& p, int y) { return p.first < y; });
    if (it == points.end() || it->first != year) return std::nullopt;
    return it->second;
}

const char* to_string(StudyKind k) noexcept {
    return k == StudyKind::inout ? "inout" : "gdp_vs_centrality";
}

std::optional<StudyKind> study_kind_from_string(const std::string& s) {
    if (s == "inout") return StudyKind::inout;
    if (s == "gdp_vs_centrality") return StudyKind::gdp_vs_centrality;
    return std::nullopt;
}

SeriesPanel weighted_gdp(const SeriesPanel& gdp_panel, const CountryIndex& countries) {
    // Panel entries outside the index are ignored; normalization runs over
    // exactly the indexed countries.
    std::set<int> year_set;
    for (std::size_t i = 0; i < countries.size(); ++i) {
        auto it = gdp_panel.find(countries.label(i));
        if (it == gdp_panel.end()) continue;
        for (const auto& [year, _] : it->second.points) year_set.insert(year);
    }
    if (year_set.empty()) fail(Errc::empty_input, "GDP panel covers no indexed country");

    const std::vector<int> years(year_set.begin(), year_set.end());
    const std::size_t n = countries.size();

    // values[k*n + i] = GDP of country i in years[k]
    std::vector<double> values(years.size() * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& label = countries.label(i);
        auto it = gdp_panel.find(label);
        for (std::size_t k = 0; k < years.size(); ++k) {
            std::optional<double> v;
            if (it != gdp_panel.end()) v = it->second.value_at(years[k]);
            if (!v)
                fail(Errc::missing_year_value, "country '" + label +
                                                   "' has no GDP value for year " +
                                                   std::to_string(years[k]));
            if (!(*v > 0.0))
                fail(Errc::non_positive_gdp, "country '" + label + "' year " +
                                                 std::to_string(years[k]) +
                                                 ": GDP must be positive");
            values[k * n + i] = *v;
        }
    }

    SeriesPanel out;
    std::vector<CountrySeries*> slots(n);
    for (std::size_t i = 0; i < n; ++i) {
        CountrySeries s;
        s.country = countries.label(i);
        s.quantity = "weighted_gdp";
        s.points.reserve(years.size());
        slots[i] = &(out[s.country] = std::move(s));
    }
    std::vector<double> scratch(n);
    for (std::size_t k = 0; k < years.size(); ++k) {
        std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(k * n), n, scratch.begin());
        const double total = kernels::stable_sum(scratch);
        for (std::size_t i = 0; i < n; ++i)
            slots[i]->points.emplace_back(years[k], values[k * n + i] / total);
    }
    return out;
}

GroupAssignment assign_groups(const std::map<std::string, double>& per_capita,
                              const CountryIndex& countries) {
    std::vector<std::pair<double, std::string>> order;
    order.reserve(countries.size());
    for (std::size_t i = 0; i < countries.size(); ++i) {
        const std::string& label = countries.label(i);
        auto it = per_capita.find(label);
        if (it == per_capita.end())
            fail(Errc::missing_value, "no per-capita value for '" + label + "'");
        order.emplace_back(it->second, label);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    const std::size_t top = (order.size() + 1) / 2;
    GroupAssignment groups;
    for (std::size_t k = 0; k < order.size(); ++k)
        groups.insert(order[k].second, k < top ? 1 : 2);
    return groups;
}

SeriesPanel centrality_series(const std::vector<AdjacencyMatrix>& yearly, Measure measure,
                              Direction direction, const SolverOptions& opts) {
    if (yearly.empty()) fail(Errc::empty_input, "no yearly networks given");
    const CountryIndex& countries = yearly.front().countries;
    std::set<int> seen;
    for (const AdjacencyMatrix& a : yearly) {
        if (!(a.countries == countries))
            fail(Errc::index_mismatch, "year " + std::to_string(a.year) +
                                           " indexes a different country set");
        if (!seen.insert(a.year).second)
            fail(Errc::duplicate_year, "year " + std::to_string(a.year) + " appears twice");
    }

    std::vector<std::optional<CentralityVector>> results(yearly.size());
    std::vector<std::optional<std::pair<Errc, std::string>>> failures(yearly.size());
    // Years are independent; exceptions must not cross the parallel region.
#pragma omp parallel for schedule(dynamic) if (yearly.size() > 1)
    for (std::size_t k = 0; k < yearly.size(); ++k) {
        try {
            results[k] = compute_centrality(yearly[k], measure, direction, opts);
        } catch (const TradenetError& e) {
            failures[k] = {e.code(), e.what()};
        } catch (const std::exception& e) {
            failures[k] = {Errc::domain_error, e.what()};
        }
    }

    std::optional<std::size_t> worst;
    for (std::size_t k = 0; k < yearly.size(); ++k) {
        if (!failures[k]) continue;
        if (!worst || yearly[k].year < yearly[*worst].year) worst = k;
    }
    if (worst)
        fail(failures[*worst]->first, "year " + std::to_string(yearly[*worst].year) + ": " +
                                          failures[*worst]->second);

    std::vector<std::size_t> by_year(yearly.size());
    for (std::size_t k = 0; k < by_year.size(); ++k) by_year[k] = k;
    std::sort(by_year.begin(), by_year.end(),
              [&](std::size_t a, std::size_t b) { return yearly[a].year < yearly[b].year; });

    const std::string quantity =
        std::string("centrality:") + to_string(measure) + ":" + to_string(direction);
    SeriesPanel out;
    for (std::size_t i = 0; i < countries.size(); ++i) {
        CountrySeries s;
        s.country = countries.label(i);
        s.quantity = quantity;
        s.points.reserve(yearly.size());
        for (std::size_t k : by_year)
            s.points.emplace_back(yearly[k].year, results[k]->values[i]);
        out[s.country] = std::move(s);
    }
    return out;
}

namespace {

std::vector<int> sorted_years(const std::vector<AdjacencyMatrix>& yearly) {
    std::vector<int> years;
    years.reserve(yearly.size());
    for (const AdjacencyMatrix& a : yearly) years.push_back(a.year);
    std::sort(years.begin(), years.end());
    return years;
}

SignificantRate rate_or_empty(
    const std::vector<std::pair<std::string, CorrelationResult>>& results,
    const GroupAssignment& groups) {
    if (results.empty()) return {};
    return significant_rate(results, groups);
}

void fill_group_sizes(StudyReport& report, const GroupAssignment& groups,
                      const CountryIndex& countries) {
    report.group1_size = report.group2_size = 0;
    for (std::size_t i = 0; i < countries.size(); ++i) {
        if (groups.require(countries.label(i)) == 1)
            ++report.group1_size;
        else
            ++report.group2_size;
    }
}

} // namespace

StudyReport inout_study(const std::vector<AdjacencyMatrix>& yearly, Measure measure,
                        const GroupAssignment& groups, const StudyOptions& opts) {
    if (yearly.size() < opts.min_overlap)
        fail(Errc::too_few_samples, "study spans " + std::to_string(yearly.size()) +
                                        " years, need at least " +
                                        std::to_string(opts.min_overlap));
    const SeriesPanel in_panel = centrality_series(yearly, measure, Direction::in, opts.solver);
    const SeriesPanel out_panel = centrality_series(yearly, measure, Direction::out, opts.solver);
    const CountryIndex& countries = yearly.front().countries;
    const std::vector<int> years = sorted_years(yearly);

    StudyReport report;
    report.kind = StudyKind::inout;
    report.measure = measure;
    report.alpha = opts.alpha;
    report.compare = opts.compare;
    report.min_overlap = opts.min_overlap;
    report.year_min = years.front();
    report.year_max = years.back();
    fill_group_sizes(report, groups, countries);

    std::vector<std::pair<std::string, CorrelationResult>> results;
    for (std::size_t i = 0; i < countries.size(); ++i) {
        const std::string& label = countries.label(i);
        const CountrySeries& is = in_panel.at(label);
        const CountrySeries& os = out_panel.at(label);
        std::vector<double> xs, ys;
        xs.reserve(years.size());
        ys.reserve(years.size());
        for (std::size_t k = 0; k < years.size(); ++k) {
            xs.push_back(is.points[k].second);
            ys.push_back(os.points[k].second);
        }
        try {
            CorrelationResult r = pearson(xs, ys, opts.alpha);
            results.emplace_back(label, r);
            ReportRow row;
            row.country = label;
            row.group = groups.require(label);
            row.inout = r;
            report.rows.push_back(std::move(row));
        } catch (const TradenetError& e) {
            if (e.code() != Errc::zero_variance) throw;
            report.skipped.push_back({label, e.code_name(), e.what()});
        }
    }
    report.rate_inout = rate_or_empty(results, groups);
    return report;
}

StudyReport gdp_study(const std::vector<AdjacencyMatrix>& yearly, const SeriesPanel& gdp_panel,
                      Measure measure, const GroupAssignment& groups,
                      const StudyOptions& opts) {
    if (yearly.empty()) fail(Errc::empty_input, "no yearly networks given");
    const SeriesPanel wgdp = weighted_gdp(gdp_panel, yearly.front().countries);
    const SeriesPanel in_panel = centrality_series(yearly, measure, Direction::in, opts.solver);
    const SeriesPanel out_panel = centrality_series(yearly, measure, Direction::out, opts.solver);
    const CountryIndex& countries = yearly.front().countries;

    // weighted_gdp guarantees a common year set across countries, so the
    // usable window is one intersection for the whole study.
    const std::vector<int> trade_years = sorted_years(yearly);
    std::vector<int> gdp_years;
    for (const auto& [year, _] : wgdp.begin()->second.points) gdp_years.push_back(year);
    std::vector<int> years;
    std::set_intersection(trade_years.begin(), trade_years.end(), gdp_years.begin(),
                          gdp_years.end(), std::back_inserter(years));
    if (years.size() < opts.min_overlap)
        fail(Errc::too_few_samples,
             "centrality and GDP series share " + std::to_string(years.size()) +
                 " years, need at least " + std::to_string(opts.min_overlap));

    StudyReport report;
    report.kind = StudyKind::gdp_vs_centrality;
    report.measure = measure;
    report.alpha = opts.alpha;
    report.compare = opts.compare;
    report.min_overlap = opts.min_overlap;
    report.year_min = years.front();
    report.year_max = years.back();
    fill_group_sizes(report, groups, countries);

    std::vector<std::pair<std::string, CorrelationResult>> in_results, out_results;
    std::vector<std::pair<std::string, CorrelationClass>> classes;
    for (std::size_t i = 0; i < countries.size(); ++i) {
        const std::string& label = countries.label(i);
        const CountrySeries& gs = wgdp.at(label);
        const CountrySeries& is = in_panel.at(label);
        const CountrySeries& os = out_panel.at(label);
        std::vector<double> g, cin, cout_;
        g.reserve(years.size());
        cin.reserve(years.size());
        cout_.reserve(years.size());
        for (int year : years) {
            g.push_back(*gs.value_at(year));
            cin.push_back(*is.value_at(year));
            cout_.push_back(*os.value_at(year));
        }
        try {
            CorrelationResult rin = pearson(g, cin, opts.alpha);
            CorrelationResult rout = pearson(g, cout_, opts.alpha);
            ReportRow row;
            row.country = label;
            row.group = groups.require(label);
            row.gdp_in = rin;
            row.gdp_out = rout;
            row.cls = classify(rin, rout, opts.compare);
            in_results.emplace_back(label, rin);
            out_results.emplace_back(label, rout);
            classes.emplace_back(label, *row.cls);
            report.rows.push_back(std::move(row));
        } catch (const TradenetError& e) {
            if (e.code() != Errc::zero_variance) throw;
            report.skipped.push_back({label, e.code_name(), e.what()});
        }
    }
    report.rate_in = rate_or_empty(in_results, groups);
    report.rate_out = rate_or_empty(out_results, groups);
    report.tendency = classes.empty() ? TendencyTable{} : tendency_counts(classes, groups);
    return report;
}

StudyReport subset_report(const StudyReport& report, const std::vector<std::string>& countries) {
    StudyReport out = report;
    out.rows.clear();
    out.skipped.clear();
    out.has_rates = false;
    out.rate_inout.reset();
    out.rate_in.reset();
    out.rate_out.reset();
    out.tendency.reset();
    out.group1_size = out.group2_size = 0;

    std::set<std::string> requested;
    for (const std::string& label : countries) {
        if (!requested.insert(label).second)
            fail(Errc::duplicate_country, "country '" + label + "' requested twice");
        bool found = false;
        for (const ReportRow& row : report.rows) {
            if (row.country != label) continue;
            out.rows.push_back(row);
            (row.group == 1 ? out.group1_size : out.group2_size) += 1;
            found = true;
            break;
        }
        if (found) continue;
        for (const SkipEntry& skip : report.skipped) {
            if (skip.country != label) continue;
            out.skipped.push_back(skip);
            found = true;
            break;
        }
        if (!found) fail(Errc::unknown_country, "country '" + label + "' not in the report");
    }
    return out;
}

} // namespace tradenet
