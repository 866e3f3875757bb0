#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tcr {

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample (n-1) standard deviation; 0 for a single value
    double min = 0.0;
    double max = 0.0;
    double p05 = 0.0;
    double p95 = 0.0;
};

/// Linear-interpolation quantile of sorted data, q in [0,1].
double quantile_sorted(std::span<const double> sorted, double q);

/// Statistics over the present values only; all fields NaN when none are present.
SummaryStats summarize(std::span<const std::optional<double>> values);
SummaryStats summarize(std::span<const double> values);

/// Mean of the present values, NaN if none.
double mean_present(std::span<const std::optional<double>> values);

struct ConfidenceInterval {
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    bool excludes_zero() const { return lower > 0.0 || upper < 0.0; }
};

/// Paired percentile bootstrap for mean(a) - mean(b), where a[i] and b[i] come
/// from the same replication. Resamples replication indices; absent values are
/// skipped inside each resample's means.
ConfidenceInterval bootstrap_mean_difference(std::span<const std::optional<double>> a,
                                             std::span<const std::optional<double>> b,
                                             std::size_t resamples = 2000, double level = 0.95,
                                             std::uint64_t seed = 0x5eed);

}  // namespace tcr
