#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "tcr/protocol.hpp"
#include "tcr/voter_class.hpp"

namespace tcr {

struct ClassMetrics {
    double tokens = 0.0;
    std::size_t count = 0;
    std::optional<double> wealth;  // absent when the class is empty
};

struct MetricsRow {
    std::size_t round_index = 0;
    std::int64_t lurp_raw = 0;
    std::int64_t lurp_clamped = 0;
    double t_total = 0.0;
    std::array<ClassMetrics, 4> classes{};

    const ClassMetrics& of(VoterClass c) const { return classes[index_of(c)]; }
};

/// Registry value: correct minus incorrect collective decisions.
std::int64_t lurp(std::size_t v_correct, std::size_t v_incorrect);

/// Average wealth per voter of a class, (w_tot / t_tot) * (t_class / n_class).
/// Empty classes yield nullopt; a non-positive t_tot throws ComputationError.
std::optional<double> class_wealth(double w_tot, double t_tot, double t_class, std::size_t n_class);

/// Pure function of the state. Wealth uses the clamped value unless the
/// state's params disable clamping.
MetricsRow snapshot(const TcrState& state);

}  // namespace tcr
