#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tradenet {

// Ordered set of unique country labels. The order fixes row/column indexing
// for every matrix and vector downstream.
class CountryIndex {
public:
    CountryIndex() = default;
    explicit CountryIndex(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::optional<std::size_t> find(const std::string& label) const;
    // Like find() but throws UnknownCountry.
    std::size_t at(const std::string& label) const;
    bool contains(const std::string& label) const { return find(label).has_value(); }

    bool operator==(const CountryIndex& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> position_;
};

} // namespace tradenet
