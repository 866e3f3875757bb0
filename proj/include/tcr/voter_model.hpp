#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "tcr/params.hpp"
#include "tcr/protocol.hpp"

namespace tcr {

/// Seeded 64-bit stream. Uniform and Bernoulli draws are derived from raw
/// mt19937_64 output by hand, so sequences do not depend on the standard
/// library's distribution implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Always consumes exactly one draw; p = 1 is always true, p = 0 never.
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Two draws per voter in id order: engaged, then informed.
std::vector<RosterEntry> sample_roster(const SimParams& params, RngStream& rng);

bool decide_participation(const VoterState& voter, const SimParams& params, RngStream& rng);

Vote cast_vote(const VoterState& voter, const Item& item, const SimParams& params, RngStream& rng);

struct RoundDraws {
    Item item;
    std::vector<VoterId> intents;
    std::map<VoterId, Vote> votes;
};

/// Draws the inputs of the next round in fixed order: item polarity, then for
/// each voter id a participation draw followed, if the voter intends to vote and
/// can afford the current stake, by a vote draw.
RoundDraws draw_round(const TcrState& state, RngStream& rng);

}  // namespace tcr
