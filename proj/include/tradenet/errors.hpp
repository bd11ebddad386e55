#pragma once

#include <stdexcept>
#include <string>

namespace tradenet {

enum class Errc {
    unknown_country,
    duplicate_flow,
    self_loop,
    negative_value,
    all_zero_matrix,
    no_convergence,
    zero_limit,
    dangling_node,
    reducible_network,
    length_mismatch,
    too_few_samples,
    zero_variance,
    domain_error,
    missing_group,
    empty_input,
    missing_year_value,
    non_positive_gdp,
    missing_value,
    index_mismatch,
    malformed_row,
    label_mismatch,
    duplicate_year,
    non_positive_value,
    invalid_group,
    duplicate_country,
    io_failure,
};

// Stable PascalCase names used in error messages and CLI output.
const char* errc_name(Errc code) noexcept;

class TradenetError : public std::runtime_error {
public:
    TradenetError(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw TradenetError(code, message);
}

} // namespace tradenet
