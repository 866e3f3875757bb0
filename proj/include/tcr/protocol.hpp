#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "tcr/params.hpp"
#include "tcr/voter_class.hpp"

namespace tcr {

using VoterId = std::size_t;
using ItemId = std::size_t;

enum class Vote { Add, Reject };
using Decision = Vote;

struct VoterState {
    VoterId voter_id = 0;
    bool is_engaged = false;
    bool is_informed = false;
    double balance = 0.0;

    VoterClass voter_class() const { return class_of(is_informed, is_engaged); }
};

struct RosterEntry {
    bool is_engaged = false;
    bool is_informed = false;
    friend bool operator==(const RosterEntry&, const RosterEntry&) = default;
};

struct Item {
    ItemId item_id = 0;
    bool is_good = false;
};

class TcrState {
public:
    const SimParams& params() const { return params_; }
    std::span<const VoterState> voters() const { return voters_; }
    const VoterState& voter(VoterId id) const { return voters_.at(id); }
    std::size_t round_index() const { return round_index_; }
    std::size_t v_correct() const { return v_correct_; }
    std::size_t v_incorrect() const { return v_incorrect_; }
    const std::vector<ItemId>& registry() const { return registry_; }

    /// Sum of all voter balances, i.e. T_total(t).
    double total_tokens() const;

private:
    friend TcrState init_registry(const SimParams&, std::span<const RosterEntry>);
    friend class RoundEngine;

    SimParams params_;
    std::vector<VoterState> voters_;
    std::size_t round_index_ = 0;
    std::size_t v_correct_ = 0;
    std::size_t v_incorrect_ = 0;
    std::vector<ItemId> registry_;
};

/// Full audit of one voting round. Voter-id sets are sorted ascending.
struct RoundRecord {
    std::size_t round_index = 0;
    Item item;
    double stake = 0.0;
    std::vector<VoterId> intended_participants;
    std::vector<VoterId> forced_abstentions;
    std::vector<VoterId> add_voters;
    std::vector<VoterId> reject_voters;
    Decision decision = Decision::Reject;
    bool decision_correct = false;
    double per_winner_payout = 0.0;
    std::vector<VoterId> inflation_applied_to;

    // Ledger totals at the three checkpoints of the round.
    double total_before = 0.0;
    double total_after_settlement = 0.0;
    double total_after_inflation = 0.0;

    std::size_t participant_count() const { return add_voters.size() + reject_voters.size(); }
};

/// Relative tolerance used by every ledger comparison.
inline constexpr double kLedgerTolerance = 1e-9;

bool approx_equal(double a, double b, double rel_tol = kLedgerTolerance);

TcrState init_registry(const SimParams& params, std::span<const RosterEntry> roster);

double required_stake(const TcrState& state);

Decision tally(std::size_t add_count, std::size_t reject_count);

/// Balance is at least the stake.
bool can_afford(const VoterState& voter, double stake);

/// Voters from `intents` (any order) who can afford the current stake, sorted.
std::vector<VoterId> eligible_participants(const TcrState& state, std::span<const VoterId> intents);

struct Settlement {
    TcrState state;
    double per_winner_payout = 0.0;
};

/// Zero-sum transfer of the losers' stakes to the winners. Ties refund.
Settlement settle(TcrState state, double stake, std::span<const VoterId> add_voters,
                  std::span<const VoterId> reject_voters, Decision decision);

/// Multiplies each participant's balance by (1 + delta).
TcrState apply_inflation(TcrState state, std::span<const VoterId> participants, double delta);

struct RoundResult {
    TcrState state;
    RoundRecord record;
};

/// One full round: stake, eligibility, tally, settle, inflate, LURP counters.
/// `votes` must be keyed by exactly the eligible subset of `participation_intents`.
/// Throws InvariantViolation if conservation or inflation bookkeeping breaks.
RoundResult run_round(TcrState state, const Item& item, std::span<const VoterId> participation_intents,
                      const std::map<VoterId, Vote>& votes);

bool is_correct(Decision decision, const Item& item);

}  // namespace tcr
