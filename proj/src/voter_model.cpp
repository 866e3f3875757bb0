#include "tcr/voter_model.hpp"

namespace tcr {

std::vector<RosterEntry> sample_roster(const SimParams& params, RngStream& rng) {
    std::vector<RosterEntry> roster(params.num_voters);
    for (auto& entry : roster) {
        entry.is_engaged = rng.bernoulli(params.p_engaged);
        entry.is_informed = rng.bernoulli(params.p_informed);
    }
    return roster;
}

bool decide_participation(const VoterState& voter, const SimParams& params, RngStream& rng) {
    return rng.bernoulli(voter.is_engaged ? params.p_vote_engaged : params.p_vote_disengaged);
}

Vote cast_vote(const VoterState& voter, const Item& item, const SimParams& params, RngStream& rng) {
    const bool correct = rng.bernoulli(voter.is_informed ? params.p_correct_informed : params.p_correct_uninformed);
    return correct == item.is_good ? Vote::Add : Vote::Reject;
}

RoundDraws draw_round(const TcrState& state, RngStream& rng) {
    const auto& params = state.params();
    RoundDraws draws;
    draws.item = {state.round_index(), rng.bernoulli(params.p_item_good)};
    const double stake = required_stake(state);
    for (const auto& voter : state.voters()) {
        if (!decide_participation(voter, params, rng)) continue;
        draws.intents.push_back(voter.voter_id);
        if (can_afford(voter, stake)) draws.votes.emplace(voter.voter_id, cast_vote(voter, draws.item, params, rng));
    }
    return draws;
}

}  // namespace tcr
