#pragma once

#include <cstddef>
#include <vector>

namespace tradenet {

// Dense row-major square matrix. n stays small (tens of countries), so dense
// storage and O(n^3) algorithms are the simple and fast choice.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    const double* row(std::size_t i) const { return data_.data() + i * n_; }
    double* row(std::size_t i) { return data_.data() + i * n_; }
    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    Matrix transposed() const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

} // namespace tradenet
