#include "satdmine/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>

#include "satdmine/types.hpp"

namespace satdmine::stats {

double mean(std::span<const double> values) {
    if (values.empty()) throw StatsError("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
    if (values.empty()) throw StatsError("median of an empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::string_view to_string(Magnitude m) noexcept {
    switch (m) {
        case Magnitude::Negligible: return "negligible";
        case Magnitude::Small: return "small";
        case Magnitude::Medium: return "medium";
        case Magnitude::Large: return "large";
    }
    return "negligible";
}

Magnitude magnitude_of(double delta) noexcept {
    const double a = std::abs(delta);
    if (a < 0.147) return Magnitude::Negligible;
    if (a < 0.33) return Magnitude::Small;
    if (a < 0.474) return Magnitude::Medium;
    return Magnitude::Large;
}

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double mann_whitney_exact_p(double u, std::size_t n1, std::size_t n2) {
    // counts[k] = number of rank arrangements with U = k, built by adding one
    // observation at a time: f(i, j, k) = f(i-1, j, k-j) + f(i, j-1, k).
    const std::size_t max_u = n1 * n2;
    std::vector<std::vector<double>> prev(n2 + 1), cur(n2 + 1);
    for (std::size_t j = 0; j <= n2; ++j) {
        prev[j].assign(max_u + 1, 0.0);
        prev[j][0] = 1.0;  // no x observations: U = 0
    }
    for (std::size_t i = 1; i <= n1; ++i) {
        for (std::size_t j = 0; j <= n2; ++j) {
            cur[j].assign(max_u + 1, 0.0);
            for (std::size_t k = 0; k <= max_u; ++k) {
                double v = 0.0;
                if (k >= j) v += prev[j][k - j];
                if (j > 0) v += cur[j - 1][k];
                cur[j][k] = v;
            }
        }
        std::swap(prev, cur);
    }
    const auto& counts = prev[n2];
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto uk = static_cast<std::size_t>(std::llround(u));
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t k = 0; k <= max_u; ++k) {
        if (k <= uk) lower += counts[k];
        if (k >= uk) upper += counts[k];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw StatsError("Mann-Whitney U requires two non-empty samples");
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();
    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    const auto ranks = midranks(pooled);
    const double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n1), 0.0);
    const double u1 = r1 - static_cast<double>(n1 * (n1 + 1)) / 2.0;

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    bool ties = false;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        if (t > 1) ties = true;
        tie_term += t * t * t - t;
        i = j;
    }

    TestResult result;
    result.statistic = u1;
    if (!ties && n1 + n2 <= 16) {
        result.method = "mann-whitney-exact";
        result.p_value = mann_whitney_exact_p(u1, n1, n2);
        return result;
    }
    result.method = "mann-whitney-normal";
    const double n = static_cast<double>(n1 + n2);
    const double mu = static_cast<double>(n1 * n2) / 2.0;
    const double var = static_cast<double>(n1 * n2) / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
        result.p_value = 1.0;
        return result;
    }
    const double z = std::max(0.0, std::abs(u1 - mu) - 0.5) / std::sqrt(var);
    result.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
    return result;
}

EffectSize cliffs_delta(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw StatsError("Cliff's delta requires two non-empty samples");
    std::vector<double> ys(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    double greater = 0.0;
    double less = 0.0;
    for (double v : x) {
        const auto lo = std::lower_bound(ys.begin(), ys.end(), v);
        const auto hi = std::upper_bound(ys.begin(), ys.end(), v);
        less += static_cast<double>(ys.end() - hi);     // y > x
        greater += static_cast<double>(lo - ys.begin());  // y < x
    }
    EffectSize e;
    e.delta = (greater - less) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
    e.magnitude = magnitude_of(e.delta);
    return e;
}

double f_distribution_sf(double f, double d1, double d2) {
    if (std::isinf(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    const boost::math::fisher_f dist(d1, d2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw StatsError("ANOVA requires at least two groups");
    double grand_sum = 0.0;
    std::size_t total = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw StatsError("ANOVA requires at least two values per group");
        grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
        total += g.size();
    }
    const double grand_mean = grand_sum / static_cast<double>(total);
    double ss_between = 0.0;
    double ss_within = 0.0;
    for (const auto& g : groups) {
        const double m = mean(g);
        ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
        for (double v : g) ss_within += (v - m) * (v - m);
    }
    const double df_between = static_cast<double>(groups.size() - 1);
    const double df_within = static_cast<double>(total - groups.size());
    const double ms_between = ss_between / df_between;
    const double ms_within = ss_within / df_within;

    TestResult r;
    r.method = "one-way-anova";
    if (ms_within == 0.0) {
        r.statistic = ms_between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        r.statistic = ms_between / ms_within;
    }
    r.p_value = f_distribution_sf(r.statistic, df_between, df_within);
    return r;
}

}  // namespace satdmine::stats
