#include "tradenet/errors.hpp"

namespace tradenet {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::unknown_country:    return "UnknownCountry";
        case Errc::duplicate_flow:     return "DuplicateFlow";
        case Errc::self_loop:          return "SelfLoop";
        case Errc::negative_value:     return "NegativeValue";
        case Errc::all_zero_matrix:    return "AllZeroMatrix";
        case Errc::no_convergence:     return "NoConvergence";
        case Errc::zero_limit:         return "ZeroLimit";
        case Errc::dangling_node:      return "DanglingNode";
        case Errc::reducible_network:  return "ReducibleNetwork";
        case Errc::length_mismatch:    return "LengthMismatch";
        case Errc::too_few_samples:    return "TooFewSamples";
        case Errc::zero_variance:      return "ZeroVariance";
        case Errc::domain_error:       return "DomainError";
        case Errc::missing_group:      return "MissingGroup";
        case Errc::empty_input:        return "EmptyInput";
        case Errc::missing_year_value: return "MissingYearValue";
        case Errc::non_positive_gdp:   return "NonPositiveGDP";
        case Errc::missing_value:      return "MissingValue";
        case Errc::index_mismatch:     return "IndexMismatch";
        case Errc::malformed_row:      return "MalformedRow";
        case Errc::label_mismatch:     return "LabelMismatch";
        case Errc::duplicate_year:     return "DuplicateYear";
        case Errc::non_positive_value: return "NonPositiveValue";
        case Errc::invalid_group:      return "InvalidGroup";
        case Errc::duplicate_country:  return "DuplicateCountry";
        case Errc::io_failure:         return "IoFailure";
    }
    return "Unknown";
}

} // namespace tradenet
