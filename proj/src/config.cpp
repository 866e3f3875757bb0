#include "tcr/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tcr/errors.hpp"

namespace tcr {

namespace {

const std::set<std::string, std::less<>> kSimKeys{
    "num_voters",        "num_items",          "initial_tokens",       "initial_stake",
    "inflation_rate",    "p_engaged",          "p_informed",           "p_vote_engaged",
    "p_vote_disengaged", "p_correct_informed", "p_correct_uninformed", "p_item_good",
    "stake_policy",      "tie_rule",           "clamp_value"};

void require_object(const Json& doc, std::string_view what) {
    if (!doc.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

double as_number(const Json& v, std::string_view key) {
    if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' must be a number");
    return v.get<double>();
}

std::uint64_t as_seed(const Json& v) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError("'base_seed' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

StakePolicy stake_policy_from_json(const Json& v) {
    if (v.is_string() && v.get<std::string>() == "protocol") return ProtocolStake{};
    if (v.is_object() && v.size() == 1 && v.contains("analysis_sigma")) {
        return AnalysisSigmaStake{as_number(v.at("analysis_sigma"), "analysis_sigma")};
    }
    throw ConfigError("'stake_policy' must be \"protocol\" or {\"analysis_sigma\": <sigma>}");
}

// Splits a run/sweep document into SimParams keys and the rest.
SimParams collect_sim_params(const Json& doc, const std::set<std::string, std::less<>>& own_keys) {
    Json flat = Json::object();
    SimParams params;
    if (doc.contains("sim_params")) {
        require_object(doc.at("sim_params"), "sim_params");
        params = sim_params_from_json(doc.at("sim_params"));
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "sim_params" || own_keys.contains(key)) continue;
        if (!kSimKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
        flat[key] = value;
    }
    return sim_params_from_json(flat, params);
}

}  // namespace

SimParams sim_params_from_json(const Json& doc, SimParams p) {
    require_object(doc, "sim_params");
    for (const auto& [key, value] : doc.items()) {
        if (!kSimKeys.contains(key)) throw ConfigError("unknown sim_params key '" + key + "'");
        if (key == "stake_policy") {
            p.stake_policy = stake_policy_from_json(value);
        } else if (key == "tie_rule") {
            if (!value.is_string() || value.get<std::string>() != "reject_and_refund") {
                throw ConfigError("'tie_rule' only supports \"reject_and_refund\"");
            }
            p.tie_rule = TieRule::RejectAndRefund;
        } else if (key == "clamp_value") {
            if (!value.is_boolean()) throw ConfigError("'clamp_value' must be a boolean");
            p.clamp_value = value.get<bool>();
        } else {
            set_numeric_param(p, key, as_number(value, key));
        }
    }
    validate(p);
    return p;
}

Json to_json(const SimParams& p) {
    Json j;
    j["num_voters"] = p.num_voters;
    j["num_items"] = p.num_items;
    j["initial_tokens"] = p.initial_tokens;
    j["initial_stake"] = p.initial_stake;
    j["inflation_rate"] = p.inflation_rate;
    j["p_engaged"] = p.p_engaged;
    j["p_informed"] = p.p_informed;
    j["p_vote_engaged"] = p.p_vote_engaged;
    j["p_vote_disengaged"] = p.p_vote_disengaged;
    j["p_correct_informed"] = p.p_correct_informed;
    j["p_correct_uninformed"] = p.p_correct_uninformed;
    j["p_item_good"] = p.p_item_good;
    if (const auto* sigma = std::get_if<AnalysisSigmaStake>(&p.stake_policy)) {
        j["stake_policy"] = Json{{"analysis_sigma", sigma->sigma}};
    } else {
        j["stake_policy"] = "protocol";
    }
    j["tie_rule"] = "reject_and_refund";
    j["clamp_value"] = p.clamp_value;
    return j;
}

std::string_view to_string(BehaviorMode mode) {
    return mode == BehaviorMode::DegenerateIdeal ? "degenerate_ideal" : "stochastic";
}

BehaviorMode behavior_mode_from_string(std::string_view text) {
    if (text == "stochastic") return BehaviorMode::Stochastic;
    if (text == "degenerate_ideal") return BehaviorMode::DegenerateIdeal;
    throw ConfigError("unknown behavior_mode '" + std::string(text) + "'");
}

RunConfig run_config_from_json(const Json& doc) {
    require_object(doc, "run config");
    try {
        RunConfig config;
        config.sim_params = collect_sim_params(doc, {"base_seed", "behavior_mode"});
        if (doc.contains("base_seed")) config.base_seed = as_seed(doc.at("base_seed"));
        if (doc.contains("behavior_mode")) {
            config.behavior_mode = behavior_mode_from_string(doc.at("behavior_mode").get<std::string>());
        }
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed run config: ") + e.what());
    }
}

Json to_json(const RunConfig& config) {
    Json j;
    j["sim_params"] = to_json(config.sim_params);
    j["base_seed"] = config.base_seed;
    j["behavior_mode"] = to_string(config.behavior_mode);
    return j;
}

SweepSpec sweep_spec_from_json(const Json& doc) {
    require_object(doc, "sweep spec");
    try {
        SweepSpec spec;
        spec.base_params = collect_sim_params(doc, {"base_seed", "behavior_mode", "grid", "replications"});
        if (doc.contains("base_seed")) spec.base_seed = as_seed(doc.at("base_seed"));
        if (doc.contains("behavior_mode")) {
            spec.behavior_mode = behavior_mode_from_string(doc.at("behavior_mode").get<std::string>());
        }
        if (doc.contains("replications")) {
            const auto& r = doc.at("replications");
            if (!r.is_number_integer() || r.get<std::int64_t>() < 1) {
                throw ConfigError("'replications' must be a positive integer");
            }
            spec.replications = r.get<std::size_t>();
        }
        if (doc.contains("grid")) {
            const auto& grid = doc.at("grid");
            if (!grid.is_array()) throw ConfigError("'grid' must be an array of {name, values}");
            for (const auto& axis : grid) {
                require_object(axis, "grid axis");
                for (const auto& [key, _] : axis.items()) {
                    if (key != "name" && key != "values") throw ConfigError("unknown grid axis key '" + key + "'");
                }
                GridAxis a;
                a.name = axis.at("name").get<std::string>();
                for (const auto& v : axis.at("values")) a.values.push_back(as_number(v, a.name));
                spec.grid.push_back(std::move(a));
            }
        }
        validate(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed sweep spec: ") + e.what());
    }
}

Json to_json(const SweepSpec& spec) {
    Json j;
    j["sim_params"] = to_json(spec.base_params);
    j["base_seed"] = spec.base_seed;
    j["behavior_mode"] = to_string(spec.behavior_mode);
    j["replications"] = spec.replications;
    Json grid = Json::array();
    for (const auto& axis : spec.grid) grid.push_back(Json{{"name", axis.name}, {"values", axis.values}});
    j["grid"] = std::move(grid);
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace tcr
