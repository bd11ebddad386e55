#include "tradenet/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tradenet/errors.hpp"

namespace tradenet {

void GroupAssignment::insert(const std::string& country, int group) {
    if (group != 1 && group != 2)
        fail(Errc::invalid_group,
             "group for '" + country + "' must be 1 or 2, got " + std::to_string(group));
    auto [_, inserted] = by_label_.emplace(country, group);
    if (!inserted) fail(Errc::duplicate_country, "country '" + country + "' assigned twice");
}

std::optional<int> GroupAssignment::group_of(const std::string& country) const {
    auto it = by_label_.find(country);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

int GroupAssignment::require(const std::string& country) const {
    auto g = group_of(country);
    if (!g) fail(Errc::missing_group, "no group assignment for '" + country + "'");
    return *g;
}

std::size_t GroupAssignment::count(int group) const {
    std::size_t n = 0;
    for (const auto& [_, g] : by_label_)
        if (g == group) ++n;
    return n;
}

const char* to_string(CorrelationClass c) noexcept {
    switch (c) {
        case CorrelationClass::only_in_significant:  return "OnlyInSignificant";
        case CorrelationClass::only_out_significant: return "OnlyOutSignificant";
        case CorrelationClass::both_in_greater:      return "BothInGreater";
        case CorrelationClass::both_out_greater:     return "BothOutGreater";
        case CorrelationClass::neither_significant:  return "NeitherSignificant";
    }
    return "?";
}

std::optional<CorrelationClass> correlation_class_from_string(const std::string& s) {
    if (s == "OnlyInSignificant") return CorrelationClass::only_in_significant;
    if (s == "OnlyOutSignificant") return CorrelationClass::only_out_significant;
    if (s == "BothInGreater") return CorrelationClass::both_in_greater;
    if (s == "BothOutGreater") return CorrelationClass::both_out_greater;
    if (s == "NeitherSignificant") return CorrelationClass::neither_significant;
    return std::nullopt;
}

const char* to_string(CompareRule r) noexcept {
    return r == CompareRule::abs ? "abs" : "signed";
}

std::optional<CompareRule> compare_rule_from_string(const std::string& s) {
    if (s == "abs") return CompareRule::abs;
    if (s == "signed") return CompareRule::signed_r;
    return std::nullopt;
}

namespace {

constexpr double cf_epsilon = 3e-16;
constexpr double cf_floor = 1e-300;

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < cf_floor) d = cf_floor;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < cf_floor) d = cf_floor;
        c = 1.0 + aa / c;
        if (std::abs(c) < cf_floor) c = cf_floor;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < cf_floor) d = cf_floor;
        c = 1.0 + aa / c;
        if (std::abs(c) < cf_floor) c = cf_floor;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < cf_epsilon) return h;
    }
    fail(Errc::no_convergence, "incomplete beta continued fraction did not converge");
}

} // namespace

double ibeta_reg(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        fail(Errc::domain_error, "ibeta_reg requires positive shape parameters");
    if (std::isnan(x) || x < 0.0 || x > 1.0)
        fail(Errc::domain_error, "ibeta_reg requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // x^a (1-x)^b / (a B(a,b)) evaluated in log space so tail values far
    // below 1e-300 come out as clean zeros instead of garbage.
    const double log_front = a * std::log(x) + b * std::log1p(-x) -
                             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(log_front) * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(log_front) * beta_cf(b, a, 1.0 - x) / b;
}

TestStat p_value(double r, std::size_t n) {
    if (std::isnan(r) || std::abs(r) > 1.0)
        fail(Errc::domain_error, "correlation must lie in [-1, 1]");
    if (n < 3)
        fail(Errc::domain_error, "p_value needs at least 3 samples, got " + std::to_string(n));

    const double df = static_cast<double>(n - 2);
    if (std::abs(r) == 1.0) {
        const double inf = std::numeric_limits<double>::infinity();
        return {r > 0 ? inf : -inf, 0.0};
    }
    const double t = r * std::sqrt(df / (1.0 - r * r));
    // Two-sided tail of Student's t with df degrees of freedom.
    const double p = ibeta_reg(df / 2.0, 0.5, df / (df + t * t));
    return {t, p};
}

CorrelationResult pearson(const std::vector<double>& x, const std::vector<double>& y,
                          double alpha) {
    if (x.size() != y.size())
        fail(Errc::length_mismatch, "series lengths differ: " + std::to_string(x.size()) +
                                        " vs " + std::to_string(y.size()));
    const std::size_t n = x.size();
    if (n < 3)
        fail(Errc::too_few_samples,
             "need at least 3 paired samples, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0) fail(Errc::zero_variance, "first series has zero variance");
    if (syy <= 0.0) fail(Errc::zero_variance, "second series has zero variance");

    double r = sxy / std::sqrt(sxx * syy);
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;

    const TestStat ts = p_value(r, n);
    CorrelationResult out;
    out.r = r;
    out.n = n;
    out.t_stat = ts.t_stat;
    out.p = ts.p;
    out.alpha = alpha;
    out.significant = ts.p < alpha;
    return out;
}

SignificantRate significant_rate(
    const std::vector<std::pair<std::string, CorrelationResult>>& results,
    const GroupAssignment& groups) {
    if (results.empty()) fail(Errc::empty_input, "no correlation results to aggregate");

    SignificantRate out;
    for (const auto& [country, result] : results) {
        RateLine& line = groups.require(country) == 1 ? out.group1 : out.group2;
        line.total += 1;
        if (result.significant) line.significant += 1;
    }
    out.overall.total = out.group1.total + out.group2.total;
    out.overall.significant = out.group1.significant + out.group2.significant;
    for (RateLine* line : {&out.group1, &out.group2, &out.overall})
        line->rate = line->total == 0
                         ? 0.0
                         : static_cast<double>(line->significant) / static_cast<double>(line->total);
    return out;
}

CorrelationClass classify(const CorrelationResult& in_result,
                          const CorrelationResult& out_result, CompareRule rule) {
    const bool in_sig = in_result.significant;
    const bool out_sig = out_result.significant;
    if (in_sig && !out_sig) return CorrelationClass::only_in_significant;
    if (out_sig && !in_sig) return CorrelationClass::only_out_significant;
    if (!in_sig && !out_sig) return CorrelationClass::neither_significant;

    const double lhs = rule == CompareRule::abs ? std::abs(in_result.r) : in_result.r;
    const double rhs = rule == CompareRule::abs ? std::abs(out_result.r) : out_result.r;
    // Ties (within 1e-12) land on the in side so the split is deterministic.
    return lhs >= rhs - 1e-12 ? CorrelationClass::both_in_greater
                              : CorrelationClass::both_out_greater;
}

TendencyTable tendency_counts(
    const std::vector<std::pair<std::string, CorrelationClass>>& classes,
    const GroupAssignment& groups) {
    TendencyTable table;
    for (const auto& [country, cls] : classes) {
        TendencyCounts& c = groups.require(country) == 1 ? table.group1 : table.group2;
        switch (cls) {
            case CorrelationClass::only_in_significant:  c.only_in += 1; break;
            case CorrelationClass::only_out_significant: c.only_out += 1; break;
            case CorrelationClass::both_in_greater:      c.both_in_greater += 1; break;
            case CorrelationClass::both_out_greater:     c.both_out_greater += 1; break;
            case CorrelationClass::neither_significant:  c.neither += 1; break;
        }
    }
    return table;
}

} // namespace tradenet
