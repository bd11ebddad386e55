// Compares the OpenMP kernels against the serial reference implementations.
// Results must match bitwise: the parallel kernels only split independent
// output elements across threads.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tradenet/kernels.hpp"
#include "tradenet/matrix.hpp"
#include "tradenet/threads.hpp"

namespace {

using tradenet::Matrix;
namespace kernels = tradenet::kernels;

Matrix random_matrix(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

template <class F>
double time_ms(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* op, std::size_t n, double serial_ms, double parallel_ms,
            bool identical) {
    std::printf("%-12s %6zu %12.4f %12.4f %9.2fx %s\n", op, n, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                identical ? "identical" : "DIFFER");
}

int reps_for(std::size_t n) {
    const double work = static_cast<double>(n) * static_cast<double>(n);
    const int reps = static_cast<int>(2e7 / work);
    return reps < 1 ? 1 : (reps > 2000 ? 2000 : reps);
}

} // namespace

int main() {
    tradenet::apply_thread_cap();
    std::printf("threads: %d\n", tradenet::max_threads());
    std::printf("%-12s %6s %12s %12s %10s\n", "op", "n", "serial ms", "parallel ms",
                "speedup");

    bool all_identical = true;
    for (std::size_t n : {71u, 256u, 512u, 1024u}) {
        const Matrix m = random_matrix(n, static_cast<std::uint32_t>(n));
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / static_cast<double>(i + 1);
        const int reps = reps_for(n);

        {
            const auto serial = kernels::serial::row_sums(m);
            const auto parallel = kernels::row_sums(m);
            const bool same = serial == parallel;
            all_identical = all_identical && same;
            report("row_sums", n, time_ms([&] { kernels::serial::row_sums(m); }, reps),
                   time_ms([&] { kernels::row_sums(m); }, reps), same);
        }
        {
            const auto serial = kernels::serial::col_sums(m);
            const auto parallel = kernels::col_sums(m);
            const bool same = serial == parallel;
            all_identical = all_identical && same;
            report("col_sums", n, time_ms([&] { kernels::serial::col_sums(m); }, reps),
                   time_ms([&] { kernels::col_sums(m); }, reps), same);
        }
        {
            std::vector<double> ys(n), yp(n);
            kernels::serial::matvec(m, x, ys);
            kernels::matvec(m, x, yp);
            const bool same = ys == yp;
            all_identical = all_identical && same;
            report("matvec", n, time_ms([&] { kernels::serial::matvec(m, x, ys); }, reps),
                   time_ms([&] { kernels::matvec(m, x, yp); }, reps), same);
        }
        {
            const double serial = kernels::serial::total_sum(m);
            const double parallel = kernels::total_sum(m);
            const bool same = serial == parallel;
            all_identical = all_identical && same;
            report("total_sum", n, time_ms([&] { kernels::serial::total_sum(m); }, reps),
                   time_ms([&] { kernels::total_sum(m); }, reps), same);
        }
        {
            Matrix a = m;
            for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
            const auto serial = kernels::serial::solve_linear(a, x);
            const auto parallel = kernels::solve_linear(a, x);
            const bool same = serial == parallel;
            all_identical = all_identical && same;
            const int solve_reps = n <= 256 ? 5 : 1;
            report("solve", n, time_ms([&] { kernels::serial::solve_linear(a, x); }, solve_reps),
                   time_ms([&] { kernels::solve_linear(a, x); }, solve_reps), same);
        }
    }
    std::printf("%s\n", all_identical ? "all kernels bitwise identical"
                                      : "MISMATCH between serial and parallel kernels");
    return all_identical ? 0 : 1;
}
