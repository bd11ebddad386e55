#include "tradenet/trade_network.hpp"

#include <set>
#include <string>

#include "tradenet/errors.hpp"
#include "tradenet/kernels.hpp"

namespace tradenet {

TradeMatrix build_trade_matrix(const std::vector<FlowRecord>& records,
                               const CountryIndex& countries, int year) {
    const std::size_t n = countries.size();
    TradeMatrix t;
    t.year = year;
    t.countries = countries;
    t.flows = Matrix(n);

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& rec : records) {
        const std::size_t i = countries.at(rec.exporter);
        const std::size_t j = countries.at(rec.importer);
        if (rec.value < 0.0)
            fail(Errc::negative_value, "negative flow " + std::to_string(rec.value) + " for " +
                                           rec.exporter + " -> " + rec.importer);
        if (i == j && rec.value > 0.0)
            fail(Errc::self_loop, "positive self-flow for '" + rec.exporter + "'");
        if (!seen.insert({i, j}).second)
            fail(Errc::duplicate_flow,
                 "duplicate flow " + rec.exporter + " -> " + rec.importer);
        if (i != j) t.flows(i, j) = rec.value;
    }
    return t;
}

AdjacencyMatrix normalize(const TradeMatrix& t) {
    const double total = kernels::total_sum(t.flows);
    if (total <= 0.0)
        fail(Errc::all_zero_matrix,
             "trade matrix for year " + std::to_string(t.year) + " has no positive flows");

    AdjacencyMatrix a;
    a.year = t.year;
    a.countries = t.countries;
    a.weights = Matrix(t.flows.size());
    const std::size_t n = t.flows.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.weights(i, j) = t.flows(i, j) / total;
    return a;
}

} // namespace tradenet
