#include "tcr/metrics.hpp"

#include <algorithm>

#include "tcr/errors.hpp"

namespace tcr {

std::int64_t lurp(std::size_t v_correct, std::size_t v_incorrect) {
    return static_cast<std::int64_t>(v_correct) - static_cast<std::int64_t>(v_incorrect);
}

std::optional<double> class_wealth(double w_tot, double t_tot, double t_class, std::size_t n_class) {
    if (!(t_tot > 0.0)) throw ComputationError("class wealth needs a positive token total");
    if (n_class == 0) return std::nullopt;
    return (w_tot / t_tot) * (t_class / static_cast<double>(n_class));
}

MetricsRow snapshot(const TcrState& state) {
    MetricsRow row;
    row.round_index = state.round_index();
    row.lurp_raw = lurp(state.v_correct(), state.v_incorrect());
    row.lurp_clamped = std::max<std::int64_t>(0, row.lurp_raw);
    for (const auto& v : state.voters()) {
        auto& c = row.classes[index_of(v.voter_class())];
        c.tokens += v.balance;
        ++c.count;
        row.t_total += v.balance;
    }
    const double value = static_cast<double>(state.params().clamp_value ? row.lurp_clamped : row.lurp_raw);
    for (auto& c : row.classes) c.wealth = class_wealth(value, row.t_total, c.tokens, c.count);
    return row;
}

}  // namespace tcr
