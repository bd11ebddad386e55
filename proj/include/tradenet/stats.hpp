#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tradenet {

struct CorrelationResult {
    double r = 0.0;
    std::size_t n = 0;
    double t_stat = 0.0;
    double p = 1.0;
    double alpha = 0.05;
    bool significant = false; // p < alpha
};

// Country -> group (1 or 2). Kept as an explicit mapping so a printed
// grouping can be loaded verbatim instead of being recomputed.
class GroupAssignment {
public:
    void insert(const std::string& country, int group);
    std::optional<int> group_of(const std::string& country) const;
    // Throws MissingGroup.
    int require(const std::string& country) const;
    std::size_t size() const noexcept { return by_label_.size(); }
    std::size_t count(int group) const;
    const std::map<std::string, int>& entries() const noexcept { return by_label_; }

private:
    std::map<std::string, int> by_label_;
};

enum class CorrelationClass {
    only_in_significant,
    only_out_significant,
    both_in_greater,
    both_out_greater,
    neither_significant,
};

const char* to_string(CorrelationClass c) noexcept;
std::optional<CorrelationClass> correlation_class_from_string(const std::string& s);

// Rule for ranking in vs out when both correlations are significant.
enum class CompareRule { abs, signed_r };

const char* to_string(CompareRule r) noexcept;
std::optional<CompareRule> compare_rule_from_string(const std::string& s);

struct RateLine {
    std::size_t significant = 0;
    std::size_t total = 0;
    double rate = 0.0; // significant / total; 0 when total == 0
};

struct SignificantRate {
    RateLine group1;
    RateLine group2;
    RateLine overall;
};

struct TendencyCounts {
    // counts[class] for one group
    std::size_t only_in = 0;
    std::size_t only_out = 0;
    std::size_t both_in_greater = 0;
    std::size_t both_out_greater = 0;
    std::size_t neither = 0;
    // roll-ups
    std::size_t in_tendency() const { return only_in + both_in_greater; }
    std::size_t out_tendency() const { return only_out + both_out_greater; }
};

struct TendencyTable {
    TendencyCounts group1;
    TendencyCounts group2;
};

// Two-sided Pearson significance test. Throws LengthMismatch, TooFewSamples,
// ZeroVariance.
CorrelationResult pearson(const std::vector<double>& x, const std::vector<double>& y,
                          double alpha = 0.05);

// t statistic and two-sided p for a correlation of r over n samples
// (df = n - 2). |r| = 1 gives p = 0 exactly. Throws DomainError.
struct TestStat {
    double t_stat;
    double p;
};
TestStat p_value(double r, std::size_t n);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, exposed for the test suite.
double ibeta_reg(double a, double b, double x);

SignificantRate significant_rate(
    const std::vector<std::pair<std::string, CorrelationResult>>& results,
    const GroupAssignment& groups);

CorrelationClass classify(const CorrelationResult& in_result,
                          const CorrelationResult& out_result,
                          CompareRule rule = CompareRule::abs);

TendencyTable tendency_counts(
    const std::vector<std::pair<std::string, CorrelationClass>>& classes,
    const GroupAssignment& groups);

} // namespace tradenet
