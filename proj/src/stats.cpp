#include "tcr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcr/errors.hpp"
#include "tcr/voter_model.hpp"

namespace tcr {

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

SummaryStats summarize(std::span<const double> values) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.mean = s.stddev = s.min = s.max = s.p05 = s.p95 = nan;
        return s;
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    s.min = sorted.front();
    s.max = sorted.back();
    s.p05 = quantile_sorted(sorted, 0.05);
    s.p95 = quantile_sorted(sorted, 0.95);
    return s;
}

SummaryStats summarize(std::span<const std::optional<double>> values) {
    std::vector<double> present;
    present.reserve(values.size());
    for (const auto& v : values) {
        if (v) present.push_back(*v);
    }
    return summarize(present);
}

double mean_present(std::span<const std::optional<double>> values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values) {
        if (v) {
            sum += *v;
            ++n;
        }
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

ConfidenceInterval bootstrap_mean_difference(std::span<const std::optional<double>> a,
                                             std::span<const std::optional<double>> b, std::size_t resamples,
                                             double level, std::uint64_t seed) {
    if (a.size() != b.size() || a.empty()) throw ComputationError("bootstrap needs paired, non-empty samples");
    if (resamples == 0 || !(level > 0.0 && level < 1.0)) throw ComputationError("bad bootstrap settings");

    ConfidenceInterval ci;
    ci.estimate = mean_present(a) - mean_present(b);

    RngStream rng(seed);
    const std::size_t n = a.size();
    std::vector<double> diffs;
    diffs.reserve(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        double sa = 0.0, sb = 0.0;
        std::size_t na = 0, nb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
            if (a[j]) {
                sa += *a[j];
                ++na;
            }
            if (b[j]) {
                sb += *b[j];
                ++nb;
            }
        }
        if (na == 0 || nb == 0) continue;
        diffs.push_back(sa / static_cast<double>(na) - sb / static_cast<double>(nb));
    }
    if (diffs.empty()) throw ComputationError("bootstrap produced no usable resamples");
    std::sort(diffs.begin(), diffs.end());
    const double tail = (1.0 - level) / 2.0;
    ci.lower = quantile_sorted(diffs, tail);
    ci.upper = quantile_sorted(diffs, 1.0 - tail);
    return ci;
}

}  // namespace tcr
