#include "tcr/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "tcr/errors.hpp"

namespace tcr {

class RoundEngine {
public:
    static std::vector<VoterState>& voters(TcrState& s) { return s.voters_; }

    static void record_decision(TcrState& s, const Item& item, Decision decision) {
        if (is_correct(decision, item)) ++s.v_correct_;
        else ++s.v_incorrect_;
        if (decision == Decision::Add) s.registry_.push_back(item.item_id);
        ++s.round_index_;
    }
};

namespace {

std::vector<VoterId> sorted_unique(std::span<const VoterId> ids) {
    std::vector<VoterId> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void require_known(const TcrState& state, std::span<const VoterId> ids) {
    for (auto id : ids) {
        if (id >= state.voters().size()) {
            throw ContractViolation("unknown voter id " + std::to_string(id));
        }
    }
}

double balance_sum(const TcrState& state, std::span<const VoterId> ids) {
    double sum = 0.0;
    for (auto id : ids) sum += state.voter(id).balance;
    return sum;
}

}  // namespace

double TcrState::total_tokens() const {
    double sum = 0.0;
    for (const auto& v : voters_) sum += v.balance;
    return sum;
}

bool approx_equal(double a, double b, double rel_tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= rel_tol * scale;
}

TcrState init_registry(const SimParams& params, std::span<const RosterEntry> roster) {
    validate(params);
    if (roster.size() != params.num_voters) {
        throw ConfigError("roster has " + std::to_string(roster.size()) + " voters, expected " +
                          std::to_string(params.num_voters));
    }
    TcrState state;
    state.params_ = params;
    state.voters_.reserve(roster.size());
    for (std::size_t i = 0; i < roster.size(); ++i) {
        state.voters_.push_back({i, roster[i].is_engaged, roster[i].is_informed, params.initial_tokens});
    }
    return state;
}

double required_stake(const TcrState& state) {
    const auto& p = state.params();
    const auto voters = state.voters();
    if (const auto* sigma = std::get_if<AnalysisSigmaStake>(&p.stake_policy)) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& v : voters) {
            if (v.voter_class() == VoterClass::UninformedEngaged) {
                sum += v.balance;
                ++n;
            }
        }
        if (n == 0) return sigma->sigma * state.total_tokens() / static_cast<double>(voters.size());
        return sigma->sigma * sum / static_cast<double>(n);
    }
    return (p.initial_stake / p.initial_tokens) * (state.total_tokens() / static_cast<double>(p.num_voters));
}

Decision tally(std::size_t add_count, std::size_t reject_count) {
    return add_count > reject_count ? Decision::Add : Decision::Reject;
}

bool can_afford(const VoterState& voter, double stake) { return voter.balance >= stake; }

std::vector<VoterId> eligible_participants(const TcrState& state, std::span<const VoterId> intents) {
    require_known(state, intents);
    const double stake = required_stake(state);
    std::vector<VoterId> out;
    for (auto id : sorted_unique(intents)) {
        if (can_afford(state.voter(id), stake)) out.push_back(id);
    }
    return out;
}

Settlement settle(TcrState state, double stake, std::span<const VoterId> add_voters,
                  std::span<const VoterId> reject_voters, Decision decision) {
    require_known(state, add_voters);
    require_known(state, reject_voters);
    const auto adds = sorted_unique(add_voters);
    const auto rejects = sorted_unique(reject_voters);
    std::vector<VoterId> overlap;
    std::set_intersection(adds.begin(), adds.end(), rejects.begin(), rejects.end(), std::back_inserter(overlap));
    if (!overlap.empty()) throw ContractViolation("voter cast both Add and Reject");

    auto& voters = RoundEngine::voters(state);
    for (auto ids : {std::span<const VoterId>(adds), std::span<const VoterId>(rejects)}) {
        for (auto id : ids) {
            if (!can_afford(voters[id], stake)) {
                throw InvariantViolation("participant " + std::to_string(id) + " cannot cover the stake");
            }
        }
    }

    const std::size_t participants = adds.size() + rejects.size();
    if (participants == 0) return {std::move(state), 0.0};
    if (adds.size() == rejects.size()) return {std::move(state), stake};

    const auto& winners = decision == Decision::Add ? adds : rejects;
    const auto& losers = decision == Decision::Add ? rejects : adds;
    if (winners.empty()) throw ContractViolation("decision side has no voters");

    const double pool = stake * static_cast<double>(participants);
    const double payout = pool / static_cast<double>(winners.size());
    for (auto id : winners) voters[id].balance = voters[id].balance - stake + payout;
    for (auto id : losers) voters[id].balance -= stake;
    return {std::move(state), payout};
}

TcrState apply_inflation(TcrState state, std::span<const VoterId> participants, double delta) {
    require_known(state, participants);
    auto& voters = RoundEngine::voters(state);
    for (auto id : sorted_unique(participants)) voters[id].balance *= 1.0 + delta;
    return state;
}

bool is_correct(Decision decision, const Item& item) {
    return (decision == Decision::Add) == item.is_good;
}

RoundResult run_round(TcrState state, const Item& item, std::span<const VoterId> participation_intents,
                      const std::map<VoterId, Vote>& votes) {
    require_known(state, participation_intents);

    RoundRecord rec;
    rec.round_index = state.round_index();
    rec.item = item;
    rec.stake = required_stake(state);
    rec.intended_participants = sorted_unique(participation_intents);
    for (auto id : rec.intended_participants) {
        if (!can_afford(state.voter(id), rec.stake)) rec.forced_abstentions.push_back(id);
    }
    const auto eligible = eligible_participants(state, rec.intended_participants);

    if (votes.size() != eligible.size() ||
        !std::equal(eligible.begin(), eligible.end(), votes.begin(),
                    [](VoterId id, const auto& kv) { return id == kv.first; })) {
        std::ostringstream msg;
        msg << "votes must be keyed by exactly the " << eligible.size() << " eligible participants, got "
            << votes.size() << " votes";
        throw ContractViolation(msg.str());
    }
    for (const auto& [id, vote] : votes) {
        (vote == Vote::Add ? rec.add_voters : rec.reject_voters).push_back(id);
    }

    rec.decision = tally(rec.add_voters.size(), rec.reject_voters.size());
    rec.decision_correct = is_correct(rec.decision, item);

    rec.total_before = state.total_tokens();
    auto settled = settle(std::move(state), rec.stake, rec.add_voters, rec.reject_voters, rec.decision);
    state = std::move(settled.state);
    rec.per_winner_payout = settled.per_winner_payout;
    rec.total_after_settlement = state.total_tokens();
    if (!approx_equal(rec.total_before, rec.total_after_settlement)) {
        throw InvariantViolation("settlement is not zero-sum in round " + std::to_string(rec.round_index));
    }

    rec.inflation_applied_to = eligible;
    const double inflated_base = balance_sum(state, eligible);
    const double delta = state.params().inflation_rate;
    state = apply_inflation(std::move(state), eligible, delta);
    rec.total_after_inflation = state.total_tokens();
    if (!approx_equal(rec.total_after_inflation, rec.total_after_settlement + delta * inflated_base)) {
        throw InvariantViolation("inflation bookkeeping mismatch in round " + std::to_string(rec.round_index));
    }
    for (const auto& v : state.voters()) {
        if (v.balance < 0.0) {
            throw InvariantViolation("negative balance for voter " + std::to_string(v.voter_id));
        }
    }

    RoundEngine::record_decision(state, item, rec.decision);
    return {std::move(state), std::move(rec)};
}

}  // namespace tcr
