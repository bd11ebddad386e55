#include "tradenet/country_index.hpp"

#include "tradenet/errors.hpp"

namespace tradenet {

CountryIndex::CountryIndex(std::vector<std::string> labels) : labels_(std::move(labels)) {
    position_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty())
            fail(Errc::unknown_country, "country label at position " + std::to_string(i) + " is empty");
        auto [_, inserted] = position_.emplace(labels_[i], i);
        if (!inserted)
            fail(Errc::duplicate_country, "duplicate country label '" + labels_[i] + "'");
    }
}

std::optional<std::size_t> CountryIndex::find(const std::string& label) const {
    auto it = position_.find(label);
    if (it == position_.end()) return std::nullopt;
    return it->second;
}

std::size_t CountryIndex::at(const std::string& label) const {
    auto pos = find(label);
    if (!pos) fail(Errc::unknown_country, "country '" + label + "' is not in the index");
    return *pos;
}

} // namespace tradenet
