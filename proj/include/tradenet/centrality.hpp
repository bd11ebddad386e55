#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tradenet/country_index.hpp"
#include "tradenet/matrix.hpp"
#include "tradenet/trade_network.hpp"

namespace tradenet {

enum class Measure { degree, eigenvector, randomwalk };
enum class Direction { in, out };

const char* to_string(Measure m) noexcept;
const char* to_string(Direction d) noexcept;
std::optional<Measure> measure_from_string(const std::string& s);
std::optional<Direction> direction_from_string(const std::string& s);

enum class DanglingPolicy { error, uniform };
enum class InitialVector { uniform };

struct SolverOptions {
    double tolerance = 1e-12;          // L1 change per sweep
    std::size_t max_iterations = 100000;
    InitialVector initial_vector = InitialVector::uniform;
    DanglingPolicy dangling_policy = DanglingPolicy::error;
};

// One measure x direction x year of per-country scores. Values are L1
// normalized (sum 1, entrywise >= 0) for every measure so scores are
// comparable across years and measures.
struct CentralityVector {
    Measure measure = Measure::degree;
    Direction direction = Direction::out;
    int year = 0;
    CountryIndex countries;
    std::vector<double> values;
    std::optional<double> leading_eigenvalue; // eigenvector measure only
};

enum class WalkKind { in_walk, out_walk };

// Column-stochastic transition matrix of the value-flow Markov chain.
// in_walk:  entries(i,j) = a(j,i) / out_degree(j)
// out_walk: entries(i,j) = a(i,j) / in_degree(j)
struct TransitionMatrix {
    WalkKind kind = WalkKind::in_walk;
    Matrix entries;
};

CentralityVector degree_out(const AdjacencyMatrix& a);
CentralityVector degree_in(const AdjacencyMatrix& a);

CentralityVector eigenvector_out(const AdjacencyMatrix& a, const SolverOptions& opts = {});
CentralityVector eigenvector_in(const AdjacencyMatrix& a, const SolverOptions& opts = {});

// With policy=uniform, a column whose scaling degree is 0 becomes the uniform
// column 1/n; with policy=error such columns raise DanglingNode naming the
// countries at fault.
TransitionMatrix build_transition(const AdjacencyMatrix& a, WalkKind kind,
                                  DanglingPolicy policy = DanglingPolicy::error);

CentralityVector randomwalk_in(const AdjacencyMatrix& a, const SolverOptions& opts = {});
CentralityVector randomwalk_out(const AdjacencyMatrix& a, const SolverOptions& opts = {});

// Dispatcher used by the pipeline and the CLI.
CentralityVector compute_centrality(const AdjacencyMatrix& a, Measure measure,
                                    Direction direction, const SolverOptions& opts = {});

} // namespace tradenet
