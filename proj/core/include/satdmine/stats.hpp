#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satdmine::stats {

inline constexpr double kAlpha = 0.05;

double mean(std::span<const double> values);

// Midpoint average for even counts. Throws StatsError when empty.
double median(std::span<const double> values);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string method;

    bool significant(double alpha = kAlpha) const noexcept { return p_value < alpha; }
};

enum class Magnitude { Negligible, Small, Medium, Large };

std::string_view to_string(Magnitude m) noexcept;

// |d| < 0.147 negligible, < 0.33 small, < 0.474 medium, otherwise large.
Magnitude magnitude_of(double delta) noexcept;

struct EffectSize {
    double delta = 0.0;
    Magnitude magnitude = Magnitude::Negligible;
};

/// Midranks (1-based) of `values`, ties averaged.
std::vector<double> midranks(std::span<const double> values);

/// Two-sided Mann-Whitney U. The statistic is U for `x`. Exact null
/// distribution when |x| + |y| <= 16 and there are no ties; otherwise the
/// normal approximation with continuity and tie corrections.
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y);

/// Exact two-sided p-value for U with sample sizes n1, n2 (no ties).
double mann_whitney_exact_p(double u, std::size_t n1, std::size_t n2);

EffectSize cliffs_delta(std::span<const double> x, std::span<const double> y);

/// One-way ANOVA F test. Needs >= 2 groups of >= 2 values each.
TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

/// Upper tail of the F(d1, d2) distribution.
double f_distribution_sf(double f, double d1, double d2);

}  // namespace satdmine::stats
