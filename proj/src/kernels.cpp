#include "tradenet/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "tradenet/errors.hpp"

namespace tradenet::kernels {

namespace {

// Neumaier-compensated sum over an ascending-sorted buffer. Sorting first
// makes the result a function of the multiset of values, not their order,
// which is what gives degree and normalization their exact permutation
// equivariance.
double sorted_compensated_sum(std::vector<double>& scratch) {
    std::sort(scratch.begin(), scratch.end());
    double sum = 0.0, comp = 0.0;
    for (double v : scratch) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double dot(const double* row, const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    return acc;
}

void eliminate_rows(Matrix& a, std::vector<double>& b, std::size_t k, bool use_parallel) {
    const std::size_t n = a.size();
    const double* pivot_row = a.row(k);
    const double pivot = pivot_row[k];
    const double bk = b[k];
#pragma omp parallel for schedule(static) if (use_parallel)
    for (std::size_t i = k + 1; i < n; ++i) {
        double* row = a.row(i);
        const double factor = row[k] / pivot;
        if (factor == 0.0) continue;
        row[k] = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) row[j] -= factor * pivot_row[j];
        b[i] -= factor * bk;
    }
}

std::vector<double> gaussian_solve(Matrix a, std::vector<double> b, bool use_parallel) {
    const std::size_t n = a.size();
    if (b.size() != n)
        fail(Errc::length_mismatch, "matrix of size " + std::to_string(n) +
                                        " with rhs of size " + std::to_string(b.size()));
    double scale = 0.0;
    for (double v : a.data()) scale = std::max(scale, std::abs(v));

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            std::swap(b[k], b[pivot]);
        }
        if (std::abs(a(k, k)) <= scale * 1e-14)
            fail(Errc::domain_error, "linear system is singular to working precision");
        eliminate_rows(a, b, k, use_parallel && n >= parallel_cutoff);
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double acc = b[k];
        const double* row = a.row(k);
        for (std::size_t j = k + 1; j < n; ++j) acc -= row[j] * x[j];
        x[k] = acc / row[k];
    }
    return x;
}

} // namespace

double stable_sum(std::vector<double>& scratch) { return sorted_compensated_sum(scratch); }

std::vector<double> row_sums(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static) if (n >= parallel_cutoff)
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> scratch(a.row(i), a.row(i) + n);
        out[i] = sorted_compensated_sum(scratch);
    }
    return out;
}

std::vector<double> col_sums(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static) if (n >= parallel_cutoff)
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> scratch(n);
        for (std::size_t i = 0; i < n; ++i) scratch[i] = a(i, j);
        out[j] = sorted_compensated_sum(scratch);
    }
    return out;
}

double total_sum(const Matrix& a) {
    // One global sorted fold; kept serial in both namespaces because the
    // order-independent reduction cannot be split without changing rounding.
    std::vector<double> scratch(a.data());
    return sorted_compensated_sum(scratch);
}

void matvec(const Matrix& a, const std::vector<double>& x, std::vector<double>& y) {
    const std::size_t n = a.size();
    y.resize(n);
#pragma omp parallel for schedule(static) if (n >= parallel_cutoff)
    for (std::size_t i = 0; i < n; ++i) y[i] = dot(a.row(i), x.data(), n);
}

void matvec_transposed(const Matrix& a, const std::vector<double>& x, std::vector<double>& y) {
    const std::size_t n = a.size();
    y.resize(n);
#pragma omp parallel for schedule(static) if (n >= parallel_cutoff)
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += a(i, j) * x[i];
        y[j] = acc;
    }
}

double l1_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += std::abs(e);
    return acc;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    return gaussian_solve(std::move(a), std::move(b), true);
}

namespace serial {

double stable_sum(std::vector<double>& scratch) { return sorted_compensated_sum(scratch); }

std::vector<double> row_sums(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> scratch(a.row(i), a.row(i) + n);
        out[i] = sorted_compensated_sum(scratch);
    }
    return out;
}

std::vector<double> col_sums(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> scratch(n);
        for (std::size_t i = 0; i < n; ++i) scratch[i] = a(i, j);
        out[j] = sorted_compensated_sum(scratch);
    }
    return out;
}

double total_sum(const Matrix& a) {
    std::vector<double> scratch(a.data());
    return sorted_compensated_sum(scratch);
}

void matvec(const Matrix& a, const std::vector<double>& x, std::vector<double>& y) {
    const std::size_t n = a.size();
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = dot(a.row(i), x.data(), n);
}

void matvec_transposed(const Matrix& a, const std::vector<double>& x, std::vector<double>& y) {
    const std::size_t n = a.size();
    y.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += a(i, j) * x[i];
        y[j] = acc;
    }
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    return gaussian_solve(std::move(a), std::move(b), false);
}

} // namespace serial

} // namespace tradenet::kernels
