#pragma once

#include <cstddef>
#include <vector>

#include "tradenet/matrix.hpp"

namespace tradenet::kernels {

// Dense kernels used by the solvers. The functions in this namespace are
// OpenMP-parallel over independent output elements, so results are identical
// to the serial reference implementations in kernels::serial regardless of
// thread count. Summations that feed exact invariants (degree, normalization)
// sort their terms first, which makes them independent of input ordering too.

// Problems smaller than this run serially even when OpenMP is enabled.
inline constexpr std::size_t parallel_cutoff = 128;

// Order-independent compensated sum of values (the buffer is sorted in place).
double stable_sum(std::vector<double>& scratch);

std::vector<double> row_sums(const Matrix& a);
std::vector<double> col_sums(const Matrix& a);
double total_sum(const Matrix& a);

// y = A x and y = A^T x.
void matvec(const Matrix& a, const std::vector<double>& x, std::vector<double>& y);
void matvec_transposed(const Matrix& a, const std::vector<double>& x, std::vector<double>& y);

double l1_norm(const std::vector<double>& v);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

// Solves A x = b by Gaussian elimination with partial pivoting; A and b are
// consumed. Throws Errc::domain_error on a numerically singular pivot.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

namespace serial {

double stable_sum(std::vector<double>& scratch);
std::vector<double> row_sums(const Matrix& a);
std::vector<double> col_sums(const Matrix& a);
double total_sum(const Matrix& a);
void matvec(const Matrix& a, const std::vector<double>& x, std::vector<double>& y);
void matvec_transposed(const Matrix& a, const std::vector<double>& x, std::vector<double>& y);
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

} // namespace serial

} // namespace tradenet::kernels
