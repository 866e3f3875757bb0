#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcr/analysis.hpp"
#include "tcr/metrics.hpp"
#include "tcr/params.hpp"
#include "tcr/protocol.hpp"
#include "tcr/stats.hpp"

namespace tcr {

enum class BehaviorMode {
    Stochastic,
    /// Forces p_VE=1, p_VD=0, p_VCI=1, p_VCU=0; the roster must have more
    /// informed-engaged than uninformed-engaged voters.
    DegenerateIdeal,
};

struct RunConfig {
    SimParams sim_params;
    std::uint64_t base_seed = 0;
    BehaviorMode behavior_mode = BehaviorMode::Stochastic;
    /// Fixed roster instead of a sampled one. Must have num_voters entries.
    std::optional<std::vector<RosterEntry>> roster;
};

/// SimParams with the behaviour-mode overrides applied.
SimParams effective_params(const RunConfig& config);

struct RoundTrace {
    RoundRecord record;
    MetricsRow metrics;
};

struct SimulationResult {
    SimParams params;  // effective parameters
    std::vector<RosterEntry> roster;
    MetricsRow initial;
    std::vector<RoundTrace> rounds;

    const MetricsRow& final_metrics() const { return rounds.empty() ? initial : rounds.back().metrics; }
};

/// Runs num_items rounds from RngStream(base_seed). Every round re-checks the
/// ledger invariants and the class partition; a failure throws InvariantViolation.
SimulationResult run_simulation(const RunConfig& config);

/// Called with the state after initialization and after every round.
using StateObserver = std::function<void(const TcrState&)>;
SimulationResult run_simulation(const RunConfig& config, const StateObserver& observer);

// ---- sweeps ---------------------------------------------------------------

struct GridAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepSpec {
    SimParams base_params;
    BehaviorMode behavior_mode = BehaviorMode::Stochastic;
    std::vector<GridAxis> grid;
    std::size_t replications = 500;
    std::uint64_t base_seed = 0;
};

struct SweepCell {
    std::size_t index = 0;
    std::vector<std::pair<std::string, double>> assignment;
    SimParams params;
};

/// Throws ConfigError for an empty grid, an empty axis, an unknown parameter
/// name, zero replications, or a cell whose params fail validation.
void validate(const SweepSpec& spec);

/// Cartesian product of the axes, last axis varying fastest.
std::vector<SweepCell> expand_grid(const SweepSpec& spec);

/// splitmix64-based mix of (base_seed, cell, replication).
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t cell, std::size_t replication);

enum class Metric : std::size_t {
    LurpRaw,
    LurpClamped,
    TTotal,
    TokensIE,
    TokensID,
    TokensUE,
    TokensUD,
    WealthIE,
    WealthID,
    WealthUE,
    WealthUD,
};
inline constexpr std::size_t kMetricCount = 11;

std::string_view metric_name(Metric m);
std::optional<double> metric_value(const MetricsRow& row, Metric m);
Metric tokens_metric(VoterClass c);
Metric wealth_metric(VoterClass c);

struct CellAggregate {
    SweepCell cell;
    std::size_t replications = 0;
    /// rounds[r][m]: stats of metric m after round r+1.
    std::vector<std::array<SummaryStats, kMetricCount>> rounds;
    /// Final-round metrics of each replication, in replication order.
    std::vector<MetricsRow> final_rows;
};

struct AggregateStats {
    SweepSpec spec;
    std::vector<CellAggregate> cells;
};

/// Runs every (cell, replication) on up to `jobs` threads. The result does not
/// depend on `jobs` or on scheduling.
AggregateStats run_sweep(const SweepSpec& spec, std::size_t jobs = 1);

/// Per-replication final rows for one parameter set, seeded like cell `cell_index`.
std::vector<MetricsRow> run_replications(const SimParams& params, BehaviorMode mode, std::size_t replications,
                                         std::uint64_t base_seed, std::size_t cell_index = 0,
                                         std::size_t jobs = 1);

// ---- closed-form validation -----------------------------------------------

struct SeriesError {
    std::string name;
    double max_relative_error = 0.0;
    std::size_t worst_round = 0;
};

struct ValidationReport {
    analysis::AnalysisParams params;
    std::size_t k_max = 0;
    std::vector<SeriesError> series;

    double max_error() const;
    bool passed(double tolerance = 1e-9) const { return max_error() <= tolerance; }
};

/// Roster laid out as IE, UE, ID, UD blocks; stake policy AnalysisSigma.
RunConfig analysis_run_config(const analysis::AnalysisParams& params, std::size_t k_max);

/// Runs the idealized simulator for k_max rounds and compares every voter's
/// balance, the token total and the value per token with the closed forms at
/// every k in 0..k_max.
ValidationReport validate_against_analysis(const analysis::AnalysisParams& params, std::size_t k_max);

double relative_error(double actual, double expected);

}  // namespace tcr
