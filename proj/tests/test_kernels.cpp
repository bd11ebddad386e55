#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tradenet/errors.hpp"
#include "tradenet/kernels.hpp"
#include "tradenet/matrix.hpp"

#include "support.hpp"

using namespace tradenet;
namespace k = tradenet::kernels;

namespace {

Matrix random_matrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    Matrix m(n);
    std::uniform_real_distribution<double> dist(lo, hi);
    for (double& v : m.data()) v = dist(rng);
    return m;
}

long double naive_sum_ld(const std::vector<double>& v) {
    long double s = 0.0L;
    for (double x : v) s += x;
    return s;
}

} // namespace

TEST_CASE("stable_sum basics") {
    std::vector<double> empty;
    CHECK(k::stable_sum(empty) == 0.0);
    std::vector<double> one{3.5};
    CHECK(k::stable_sum(one) == 3.5);
    std::vector<double> cancel{1e16, 1.0, -1e16};
    CHECK(k::stable_sum(cancel) == 1.0);
}

TEST_CASE("stable_sum is independent of input order") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> v(257);
        for (double& x : v) x = std::ldexp(dist(rng), rng() % 40);
        std::vector<double> a = v, b = v;
        std::shuffle(b.begin(), b.end(), rng);
        const double sa = k::stable_sum(a);
        const double sb = k::stable_sum(b);
        CHECK(sa == sb); // bitwise
        // and close to an extended-precision reference
        const long double ref = naive_sum_ld(v);
        CHECK(std::fabs(static_cast<long double>(sa) - ref) <=
              1e-15L * std::fabs(ref) + 1e-300L);
    }
}

TEST_CASE("row, column and total sums match a direct reference") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 2u, 5u, 17u, 130u}) {
        const Matrix m = random_matrix(n, rng);
        const auto rows = k::row_sums(m);
        const auto cols = k::col_sums(m);
        REQUIRE(rows.size() == n);
        REQUIRE(cols.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            long double r = 0.0L, c = 0.0L;
            for (std::size_t j = 0; j < n; ++j) {
                r += m(i, j);
                c += m(j, i);
            }
            CHECK(std::fabs(rows[i] - static_cast<double>(r)) <= 1e-13);
            CHECK(std::fabs(cols[i] - static_cast<double>(c)) <= 1e-13);
        }
        long double t = 0.0L;
        for (double v : m.data()) t += v;
        CHECK(std::fabs(k::total_sum(m) - static_cast<double>(t)) <= 1e-12);
    }
}

TEST_CASE("matvec and matvec_transposed match a direct reference") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 3u, 40u, 140u}) {
        const Matrix m = random_matrix(n, rng);
        std::vector<double> x(n);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        for (double& v : x) v = dist(rng);
        std::vector<double> y(n), yt(n);
        k::matvec(m, x, y);
        k::matvec_transposed(m, x, yt);
        for (std::size_t i = 0; i < n; ++i) {
            long double s = 0.0L, st = 0.0L;
            for (std::size_t j = 0; j < n; ++j) {
                s += m(i, j) * x[j];
                st += m(j, i) * x[j];
            }
            CHECK(std::fabs(y[i] - static_cast<double>(s)) <= 1e-12);
            CHECK(std::fabs(yt[i] - static_cast<double>(st)) <= 1e-12);
        }
    }
}

TEST_CASE("parallel kernels agree bitwise with the serial reference") {
    std::mt19937_64 rng(1234);
    // sizes straddling the parallel cutoff
    for (std::size_t n : {4u, 127u, 128u, 200u}) {
        const Matrix m = random_matrix(n, rng);
        std::vector<double> x(n);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (double& v : x) v = dist(rng);

        CHECK(k::row_sums(m) == k::serial::row_sums(m));
        CHECK(k::col_sums(m) == k::serial::col_sums(m));
        CHECK(k::total_sum(m) == k::serial::total_sum(m));

        std::vector<double> y1(n), y2(n);
        k::matvec(m, x, y1);
        k::serial::matvec(m, x, y2);
        CHECK(y1 == y2);
        k::matvec_transposed(m, x, y1);
        k::serial::matvec_transposed(m, x, y2);
        CHECK(y1 == y2);

        std::vector<double> sc1 = x, sc2 = x;
        CHECK(k::stable_sum(sc1) == k::serial::stable_sum(sc2));
    }
}

TEST_CASE("solve_linear solves well-conditioned systems") {
    std::mt19937_64 rng(99);
    for (std::size_t n : {1u, 2u, 8u, 40u}) {
        Matrix a = random_matrix(n, rng);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n) + 1.0;
        std::vector<double> x_true(n);
        std::uniform_real_distribution<double> dist(-3.0, 3.0);
        for (double& v : x_true) v = dist(rng);
        std::vector<double> b(n);
        k::matvec(a, x_true, b);

        const auto x = k::solve_linear(a, b);
        REQUIRE(x.size() == n);
        std::vector<double> ax(n);
        k::matvec(a, x, ax);
        CHECK(k::max_abs_diff(ax, b) <= 1e-10);
        // parallel and serial elimination produce identical bits
        CHECK(x == k::serial::solve_linear(a, b));
    }
}

TEST_CASE("solve_linear rejects singular systems") {
    Matrix a(2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0; // second row is a multiple of the first
    std::vector<double> b{1.0, 2.0};
    CHECK_THROWS_AS(k::solve_linear(a, b), TradenetError);
    try {
        k::solve_linear(a, b);
    } catch (const TradenetError& e) {
        CHECK(e.code() == Errc::domain_error);
    }
}

TEST_CASE("l1_norm and max_abs_diff") {
    std::vector<double> a{1.0, -2.0, 3.0};
    std::vector<double> b{0.5, -2.0, 5.5};
    CHECK(k::l1_norm(a) == 6.0);
    CHECK(k::max_abs_diff(a, b) == 2.5);
    CHECK(k::max_abs_diff(a, a) == 0.0);
}
