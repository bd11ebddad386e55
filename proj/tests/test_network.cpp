#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tradenet/errors.hpp"
#include "tradenet/scc.hpp"
#include "tradenet/trade_network.hpp"

#include "support.hpp"

using namespace tradenet;

namespace {

Errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const TradenetError& e) {
        return e.code();
    }
    FAIL("expected a TradenetError");
    return Errc::io_failure;
}

// Reachability-based strongly connected components: i ~ j iff i reaches j
// and j reaches i. Quadratic BFS, independent of the library's algorithm.
std::vector<std::set<std::size_t>> reachability_components(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (a(u, v) > 0.0 && !reach[s][v]) {
                    reach[s][v] = true;
                    stack.push_back(v);
                }
        }
    }
    std::vector<bool> done(n, false);
    std::vector<std::set<std::size_t>> comps;
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::set<std::size_t> comp;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) {
                comp.insert(j);
                done[j] = true;
            }
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace

TEST_CASE("CountryIndex lookup and validation") {
    const CountryIndex idx(std::vector<std::string>{"Brazil", "China", "India"});
    CHECK(idx.size() == 3);
    CHECK(idx.label(1) == "China");
    CHECK(idx.labels() == std::vector<std::string>{"Brazil", "China", "India"});
    CHECK(idx.find("India") == 2);
    CHECK(!idx.find("Peru").has_value());
    CHECK(idx.contains("Brazil"));
    CHECK(idx.at("Brazil") == 0);
    CHECK(thrown_code([&] { (void)idx.at("Peru"); }) == Errc::unknown_country);

    CHECK(thrown_code([] { CountryIndex(std::vector<std::string>{"A", "A"}); }) ==
          Errc::duplicate_country);
    CHECK(thrown_code([] { CountryIndex(std::vector<std::string>{""}); }) ==
          Errc::unknown_country);
}

TEST_CASE("Matrix transpose and equality") {
    Matrix m(2);
    m(0, 1) = 3.0;
    m(1, 0) = 4.0;
    const Matrix t = m.transposed();
    CHECK(t(0, 1) == 4.0);
    CHECK(t(1, 0) == 3.0);
    CHECK(t.transposed() == m);
}

TEST_CASE("build_trade_matrix places records directly") {
    const CountryIndex idx(std::vector<std::string>{"A", "B"});
    const std::vector<FlowRecord> records{{"A", "B", 60.0}, {"B", "A", 40.0}};
    const TradeMatrix t = build_trade_matrix(records, idx, 2000);
    CHECK(t.year == 2000);
    CHECK(t.flows(0, 0) == 0.0);
    CHECK(t.flows(0, 1) == 60.0);
    CHECK(t.flows(1, 0) == 40.0);
    CHECK(t.flows(1, 1) == 0.0);

    const TradeMatrix empty = build_trade_matrix({}, idx, 1999);
    CHECK(empty.flows == Matrix(2));
}

TEST_CASE("build_trade_matrix rejects bad records") {
    const CountryIndex idx(std::vector<std::string>{"A", "B"});
    using R = std::vector<FlowRecord>;
    CHECK(thrown_code([&] { build_trade_matrix(R{{"A", "C", 1.0}}, idx, 2000); }) ==
          Errc::unknown_country);
    CHECK(thrown_code([&] { build_trade_matrix(R{{"A", "B", -1.0}}, idx, 2000); }) ==
          Errc::negative_value);
    CHECK(thrown_code([&] { build_trade_matrix(R{{"A", "A", 1.0}}, idx, 2000); }) ==
          Errc::self_loop);
    CHECK(thrown_code([&] { build_trade_matrix(R{{"A", "B", 1.0}, {"A", "B", 1.0}}, idx,
                                               2000); }) == Errc::duplicate_flow);
    // zero-valued self flows are tolerated (they carry no edge)
    const TradeMatrix t = build_trade_matrix(R{{"A", "A", 0.0}, {"A", "B", 2.0}}, idx, 2000);
    CHECK(t.flows(0, 0) == 0.0);
}

TEST_CASE("normalize divides by the global total") {
    const CountryIndex idx(std::vector<std::string>{"A", "B"});
    const TradeMatrix t = build_trade_matrix({{"A", "B", 60.0}, {"B", "A", 40.0}}, idx, 2000);
    const AdjacencyMatrix a = normalize(t);
    CHECK(a.weights(0, 1) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(a.weights(1, 0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(a.weights(0, 0) == 0.0);

    // three countries, all six off-diagonal flows equal -> every weight 1/6
    const CountryIndex idx3(std::vector<std::string>{"A", "B", "C"});
    std::vector<FlowRecord> records;
    for (const char* ex : {"A", "B", "C"})
        for (const char* im : {"A", "B", "C"})
            if (std::string(ex) != im) records.push_back({ex, im, 7.5});
    const AdjacencyMatrix a3 = normalize(build_trade_matrix(records, idx3, 2000));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(a3.weights(i, j) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("normalized entries sum to one and scaling cancels") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 5;
        TradeMatrix t;
        t.year = 2000;
        t.countries = CountryIndex(testsupport::letter_labels(n));
        t.flows = Matrix(n);
        std::uniform_real_distribution<double> dist(0.0, 1e6);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) t.flows(i, j) = dist(rng);

        const AdjacencyMatrix a = normalize(t);
        long double total = 0.0L;
        for (double v : a.weights.data()) total += v;
        CHECK(std::fabs(static_cast<double>(total) - 1.0) <= 1e-12);

        TradeMatrix scaled = t;
        for (double& v : scaled.flows.data()) v *= 1e6;
        const AdjacencyMatrix b = normalize(scaled);
        for (std::size_t i = 0; i < n * n; ++i)
            CHECK(std::fabs(a.weights.data()[i] - b.weights.data()[i]) <= 1e-15);
    }
}

TEST_CASE("normalize rejects an all-zero matrix") {
    const CountryIndex idx(std::vector<std::string>{"A", "B"});
    const TradeMatrix t = build_trade_matrix({}, idx, 2000);
    CHECK(thrown_code([&] { normalize(t); }) == Errc::all_zero_matrix);
}

TEST_CASE("strongly connected components on known digraphs") {
    // 3-cycle: one component
    Matrix cyc(3);
    cyc(0, 1) = cyc(1, 2) = cyc(2, 0) = 1.0;
    CHECK(is_strongly_connected(cyc));
    CHECK(strongly_connected_components(cyc).size() == 1);

    // chain 0 -> 1 -> 2: three singleton components
    Matrix chain(3);
    chain(0, 1) = chain(1, 2) = 1.0;
    CHECK(!is_strongly_connected(chain));
    CHECK(strongly_connected_components(chain).size() == 3);

    // two 2-cycles joined one-way: {0,1} and {2,3}
    Matrix two(4);
    two(0, 1) = two(1, 0) = 1.0;
    two(2, 3) = two(3, 2) = 1.0;
    two(1, 2) = 1.0;
    const auto comps = strongly_connected_components(two);
    CHECK(comps.size() == 2);
    // smallest_component: both have size 2, tie broken by smallest vertex id
    const auto smallest = smallest_component(two);
    CHECK(std::set<std::size_t>(smallest.begin(), smallest.end()) ==
          std::set<std::size_t>{0, 1});

    // isolated vertex forms its own component
    Matrix iso(3);
    iso(0, 1) = iso(1, 0) = 1.0;
    const auto s = smallest_component(iso);
    CHECK(s == std::vector<std::size_t>{2});
}

TEST_CASE("components match a reachability oracle on random digraphs") {
    std::mt19937_64 rng(555);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rng() % 30;
        Matrix a(n);
        std::bernoulli_distribution edge(rep % 2 == 0 ? 0.08 : 0.25);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && edge(rng)) a(i, j) = 1.0;

        auto got = strongly_connected_components(a);
        std::vector<std::set<std::size_t>> got_sets;
        std::size_t covered = 0;
        for (const auto& c : got) {
            got_sets.emplace_back(c.begin(), c.end());
            covered += c.size();
        }
        CHECK(covered == n); // partition covers every vertex

        auto want = reachability_components(a);
        auto order = [](const std::set<std::size_t>& x, const std::set<std::size_t>& y) {
            return *x.begin() < *y.begin();
        };
        std::sort(got_sets.begin(), got_sets.end(), order);
        std::sort(want.begin(), want.end(), order);
        CHECK(got_sets == want);

        CHECK(is_strongly_connected(a) == (want.size() == 1));
    }
}
