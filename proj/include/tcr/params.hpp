#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

namespace tcr {

/// Stake grows with the token supply: S(t) = (S(0)/T(0)) * (T_total(t)/N).
struct ProtocolStake {
    friend bool operator==(const ProtocolStake&, const ProtocolStake&) = default;
};

/// Stake is a fixed fraction of the mean engaged-uninformed balance.
struct AnalysisSigmaStake {
    double sigma = 0.05;
    friend bool operator==(const AnalysisSigmaStake&, const AnalysisSigmaStake&) = default;
};

using StakePolicy = std::variant<ProtocolStake, AnalysisSigmaStake>;

/// Ties never add an item; every stake is returned.
enum class TieRule { RejectAndRefund };

/// Registry and voter-behaviour parameters. Defaults are the paper's
/// simulation table with 2% inflation and p_I = 0.5.
struct SimParams {
    std::size_t num_voters = 100;
    std::size_t num_items = 50;
    double initial_tokens = 100.0;
    double initial_stake = 5.0;
    double inflation_rate = 0.02;
    double p_engaged = 0.5;
    double p_informed = 0.5;
    double p_vote_engaged = 0.8;
    double p_vote_disengaged = 0.2;
    double p_correct_informed = 0.85;
    double p_correct_uninformed = 0.15;
    double p_item_good = 0.5;
    StakePolicy stake_policy = ProtocolStake{};
    TieRule tie_rule = TieRule::RejectAndRefund;
    bool clamp_value = true;

    friend bool operator==(const SimParams&, const SimParams&) = default;
};

/// Throws ConfigError naming the first violated constraint.
void validate(const SimParams& params);

/// Names accepted by set_numeric_param (and therefore by sweep grids).
bool is_numeric_param(std::string_view name);

/// Sets a numeric SimParams field by name. Count fields must be whole and
/// non-negative; `clamp_value` accepts 0/1. Throws ConfigError on unknown names.
void set_numeric_param(SimParams& params, std::string_view name, double value);

double get_numeric_param(const SimParams& params, std::string_view name);

}  // namespace tcr
