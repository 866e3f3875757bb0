#include "tcr/params.hpp"

#include <array>
#include <cmath>
#include <string>

#include "tcr/errors.hpp"

namespace tcr {

namespace {

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(name) + " must be a probability in [0,1], got " + std::to_string(p));
    }
}

std::size_t to_count(double value, std::string_view name) {
    if (!(value >= 0.0) || std::floor(value) != value || value > 1e12) {
        throw ConfigError(std::string(name) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(value);
}

constexpr std::array<std::string_view, 13> kNumericParams{
    "num_voters",        "num_items",          "initial_tokens",       "initial_stake",
    "inflation_rate",    "p_engaged",          "p_informed",           "p_vote_engaged",
    "p_vote_disengaged", "p_correct_informed", "p_correct_uninformed", "p_item_good",
    "clamp_value"};

}  // namespace

void validate(const SimParams& p) {
    if (p.num_voters < 1) throw ConfigError("num_voters must be at least 1");
    if (!(p.initial_tokens > 0.0) || !std::isfinite(p.initial_tokens)) {
        throw ConfigError("initial_tokens must be positive");
    }
    if (!(p.initial_stake >= 0.0 && p.initial_stake <= p.initial_tokens)) {
        throw ConfigError("initial_stake must lie in [0, initial_tokens]");
    }
    if (!(p.inflation_rate >= 0.0) || !std::isfinite(p.inflation_rate)) {
        throw ConfigError("inflation_rate must be non-negative");
    }
    require_probability(p.p_engaged, "p_engaged");
    require_probability(p.p_informed, "p_informed");
    require_probability(p.p_vote_engaged, "p_vote_engaged");
    require_probability(p.p_vote_disengaged, "p_vote_disengaged");
    require_probability(p.p_correct_informed, "p_correct_informed");
    require_probability(p.p_correct_uninformed, "p_correct_uninformed");
    require_probability(p.p_item_good, "p_item_good");
    if (const auto* sigma = std::get_if<AnalysisSigmaStake>(&p.stake_policy)) {
        if (!(sigma->sigma > 0.0 && sigma->sigma < 1.0)) {
            throw ConfigError("analysis sigma must lie in (0,1)");
        }
    }
}

bool is_numeric_param(std::string_view name) {
    for (auto n : kNumericParams) {
        if (n == name) return true;
    }
    return false;
}

void set_numeric_param(SimParams& p, std::string_view name, double value) {
    if (name == "num_voters") p.num_voters = to_count(value, name);
    else if (name == "num_items") p.num_items = to_count(value, name);
    else if (name == "initial_tokens") p.initial_tokens = value;
    else if (name == "initial_stake") p.initial_stake = value;
    else if (name == "inflation_rate") p.inflation_rate = value;
    else if (name == "p_engaged") p.p_engaged = value;
    else if (name == "p_informed") p.p_informed = value;
    else if (name == "p_vote_engaged") p.p_vote_engaged = value;
    else if (name == "p_vote_disengaged") p.p_vote_disengaged = value;
    else if (name == "p_correct_informed") p.p_correct_informed = value;
    else if (name == "p_correct_uninformed") p.p_correct_uninformed = value;
    else if (name == "p_item_good") p.p_item_good = value;
    else if (name == "clamp_value") {
        if (value != 0.0 && value != 1.0) throw ConfigError("clamp_value must be 0 or 1");
        p.clamp_value = value != 0.0;
    } else {
        throw ConfigError("unknown parameter '" + std::string(name) + "'");
    }
}

double get_numeric_param(const SimParams& p, std::string_view name) {
    if (name == "num_voters") return static_cast<double>(p.num_voters);
    if (name == "num_items") return static_cast<double>(p.num_items);
    if (name == "initial_tokens") return p.initial_tokens;
    if (name == "initial_stake") return p.initial_stake;
    if (name == "inflation_rate") return p.inflation_rate;
    if (name == "p_engaged") return p.p_engaged;
    if (name == "p_informed") return p.p_informed;
    if (name == "p_vote_engaged") return p.p_vote_engaged;
    if (name == "p_vote_disengaged") return p.p_vote_disengaged;
    if (name == "p_correct_informed") return p.p_correct_informed;
    if (name == "p_correct_uninformed") return p.p_correct_uninformed;
    if (name == "p_item_good") return p.p_item_good;
    if (name == "clamp_value") return p.clamp_value ? 1.0 : 0.0;
    throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

}  // namespace tcr
