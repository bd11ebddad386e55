#pragma once

#include <string>
#include <vector>

#include "tradenet/country_index.hpp"
#include "tradenet/matrix.hpp"

namespace tradenet {

// One bilateral export record: value flows exporter -> importer.
struct FlowRecord {
    std::string exporter;
    std::string importer;
    double value = 0.0;
};

// Raw bilateral flow table for one year, in thousands of current US dollars.
// Square, nonnegative, zero diagonal.
struct TradeMatrix {
    int year = 0;
    CountryIndex countries;
    Matrix flows;
};

// Globally normalized network: entries are shares of total world trade and
// sum to 1.
struct AdjacencyMatrix {
    int year = 0;
    CountryIndex countries;
    Matrix weights;
};

// Places records into a dense matrix; absent pairs stay 0. Rejects labels
// outside the index, duplicate pairs, positive self-flows and negative values.
TradeMatrix build_trade_matrix(const std::vector<FlowRecord>& records,
                               const CountryIndex& countries, int year);

// a(i,j) = flows(i,j) / total of all flows. All-zero matrices are rejected
// here rather than at construction so partial matrices can be built first.
AdjacencyMatrix normalize(const TradeMatrix& t);

} // namespace tradenet
