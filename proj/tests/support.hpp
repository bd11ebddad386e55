#pragma once

// Shared plumbing for the test binaries: fixture locations, scratch
// directories, and random-network generators.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tradenet/country_index.hpp"
#include "tradenet/matrix.hpp"
#include "tradenet/trade_network.hpp"

namespace testsupport {

// Set by each test main from --fixtures= / --bin= before doctest runs.
extern std::string fixtures_dir;
extern std::string cli_bin;

inline std::string fixture(const std::string& name) {
    return (std::filesystem::path(fixtures_dir) / name).string();
}

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        std::ostringstream name;
        name << "tradenet_test_" << std::hex << rd() << "_" << counter++;
        base_ = std::filesystem::temp_directory_path() / name.str();
        std::filesystem::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(base_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string path(const std::string& name) const { return (base_ / name).string(); }
    const std::filesystem::path& root() const { return base_; }

private:
    std::filesystem::path base_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> letter_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, char('A' + i)));
    return labels;
}

// Random nonnegative matrix with zero diagonal whose entries sum to 1 and
// whose positive entries form a strongly connected digraph. A directed
// cycle through a random permutation guarantees connectivity; with some
// probability the cycle is all there is, which makes the induced chain
// periodic and stresses the solvers' handling of oscillating iterates.
inline tradenet::Matrix random_strongly_connected(std::size_t n, std::mt19937_64& rng) {
    tradenet::Matrix m(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    for (std::size_t k = 0; k < n; ++k) m(perm[k], perm[(k + 1) % n]) = weight(rng);
    std::bernoulli_distribution cycle_only(0.3);
    if (!cycle_only(rng)) {
        std::bernoulli_distribution keep(0.5);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && m(i, j) == 0.0 && keep(rng)) m(i, j) = weight(rng);
    }
    double total = 0.0;
    for (double v : m.data()) total += v;
    for (double& v : m.data()) v /= total;
    return m;
}

inline tradenet::AdjacencyMatrix random_adjacency(std::size_t n, std::mt19937_64& rng,
                                                  int year = 2000) {
    tradenet::AdjacencyMatrix a;
    a.year = year;
    a.countries = tradenet::CountryIndex(letter_labels(n));
    a.weights = random_strongly_connected(n, rng);
    return a;
}

} // namespace testsupport
