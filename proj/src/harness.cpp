#include "tcr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tcr/errors.hpp"
#include "tcr/voter_model.hpp"

namespace tcr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t count_class(std::span<const RosterEntry> roster, VoterClass c) {
    return static_cast<std::size_t>(std::count_if(roster.begin(), roster.end(), [c](const RosterEntry& e) {
        return class_of(e.is_informed, e.is_engaged) == c;
    }));
}

void check_partition(const MetricsRow& row, std::size_t num_voters) {
    double tokens = 0.0;
    std::size_t count = 0;
    for (const auto& c : row.classes) {
        tokens += c.tokens;
        count += c.count;
    }
    if (count != num_voters || !approx_equal(tokens, row.t_total)) {
        throw InvariantViolation("class totals do not partition the ledger in round " +
                                 std::to_string(row.round_index));
    }
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first failure.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SimParams effective_params(const RunConfig& config) {
    SimParams p = config.sim_params;
    if (config.behavior_mode == BehaviorMode::DegenerateIdeal) {
        p.p_vote_engaged = 1.0;
        p.p_vote_disengaged = 0.0;
        p.p_correct_informed = 1.0;
        p.p_correct_uninformed = 0.0;
    }
    return p;
}

SimulationResult run_simulation(const RunConfig& config) { return run_simulation(config, nullptr); }

SimulationResult run_simulation(const RunConfig& config, const StateObserver& observer) {
    SimulationResult result;
    result.params = effective_params(config);
    validate(result.params);

    RngStream rng(config.base_seed);
    if (config.roster) {
        result.roster = *config.roster;
    } else {
        result.roster = sample_roster(result.params, rng);
    }
    if (config.behavior_mode == BehaviorMode::DegenerateIdeal &&
        count_class(result.roster, VoterClass::InformedEngaged) <=
            count_class(result.roster, VoterClass::UninformedEngaged)) {
        throw ConfigError("idealized behaviour needs more informed-engaged than uninformed-engaged voters");
    }

    TcrState state = init_registry(result.params, result.roster);
    result.initial = snapshot(state);
    check_partition(result.initial, result.params.num_voters);
    if (observer) observer(state);

    result.rounds.reserve(result.params.num_items);
    for (std::size_t t = 0; t < result.params.num_items; ++t) {
        auto draws = draw_round(state, rng);
        auto [next, record] = run_round(std::move(state), draws.item, draws.intents, draws.votes);
        state = std::move(next);
        auto row = snapshot(state);
        check_partition(row, result.params.num_voters);
        if (state.round_index() != state.v_correct() + state.v_incorrect()) {
            throw InvariantViolation("round counter diverged from decision count");
        }
        if (observer) observer(state);
        result.rounds.push_back({std::move(record), row});
    }
    return result;
}

// ---- sweeps ---------------------------------------------------------------

void validate(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ConfigError("sweep grid is empty");
    if (spec.replications < 1) throw ConfigError("replications must be at least 1");
    for (const auto& axis : spec.grid) {
        if (!is_numeric_param(axis.name)) throw ConfigError("unknown sweep parameter '" + axis.name + "'");
        if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.name + "' has no values");
    }
    for (const auto& cell : expand_grid(spec)) validate(cell.params);
}

std::vector<SweepCell> expand_grid(const SweepSpec& spec) {
    std::size_t total = 1;
    for (const auto& axis : spec.grid) total *= axis.values.size();
    if (spec.grid.empty()) total = 0;

    std::vector<SweepCell> cells;
    cells.reserve(total);
    for (std::size_t index = 0; index < total; ++index) {
        SweepCell cell;
        cell.index = index;
        cell.params = spec.base_params;
        std::size_t rest = index;
        std::vector<std::pair<std::string, double>> reversed;
        for (auto axis = spec.grid.rbegin(); axis != spec.grid.rend(); ++axis) {
            const double value = axis->values[rest % axis->values.size()];
            rest /= axis->values.size();
            reversed.emplace_back(axis->name, value);
        }
        cell.assignment.assign(reversed.rbegin(), reversed.rend());
        for (const auto& [name, value] : cell.assignment) set_numeric_param(cell.params, name, value);
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t cell, std::size_t replication) {
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(cell));
    return splitmix64(h ^ (static_cast<std::uint64_t>(replication) * 0xd1342543de82ef95ULL));
}

std::string_view metric_name(Metric m) {
    constexpr std::array<std::string_view, kMetricCount> names{
        "lurp_raw",  "lurp_clamped", "t_total",   "tokens_IE", "tokens_ID", "tokens_UE",
        "tokens_UD", "wealth_IE",    "wealth_ID", "wealth_UE", "wealth_UD"};
    return names[static_cast<std::size_t>(m)];
}

Metric tokens_metric(VoterClass c) {
    return static_cast<Metric>(static_cast<std::size_t>(Metric::TokensIE) + index_of(c));
}

Metric wealth_metric(VoterClass c) {
    return static_cast<Metric>(static_cast<std::size_t>(Metric::WealthIE) + index_of(c));
}

std::optional<double> metric_value(const MetricsRow& row, Metric m) {
    const auto i = static_cast<std::size_t>(m);
    switch (m) {
        case Metric::LurpRaw: return static_cast<double>(row.lurp_raw);
        case Metric::LurpClamped: return static_cast<double>(row.lurp_clamped);
        case Metric::TTotal: return row.t_total;
        case Metric::TokensIE:
        case Metric::TokensID:
        case Metric::TokensUE:
        case Metric::TokensUD: return row.classes[i - static_cast<std::size_t>(Metric::TokensIE)].tokens;
        case Metric::WealthIE:
        case Metric::WealthID:
        case Metric::WealthUE:
        case Metric::WealthUD: return row.classes[i - static_cast<std::size_t>(Metric::WealthIE)].wealth;
    }
    return std::nullopt;
}

namespace {

std::vector<std::vector<MetricsRow>> run_cell_traces(const SimParams& params, BehaviorMode mode,
                                                     std::size_t replications, std::uint64_t base_seed,
                                                     std::size_t cell_index, std::size_t jobs) {
    std::vector<std::vector<MetricsRow>> traces(replications);
    parallel_for(replications, jobs, [&](std::size_t rep) {
        RunConfig config{params, replication_seed(base_seed, cell_index, rep), mode, std::nullopt};
        auto result = run_simulation(config);
        auto& rows = traces[rep];
        rows.reserve(result.rounds.size() + 1);
        rows.push_back(result.initial);
        for (auto& r : result.rounds) rows.push_back(r.metrics);
    });
    return traces;
}

}  // namespace

std::vector<MetricsRow> run_replications(const SimParams& params, BehaviorMode mode, std::size_t replications,
                                         std::uint64_t base_seed, std::size_t cell_index, std::size_t jobs) {
    auto traces = run_cell_traces(params, mode, replications, base_seed, cell_index, jobs);
    std::vector<MetricsRow> finals;
    finals.reserve(traces.size());
    for (auto& t : traces) finals.push_back(t.back());
    return finals;
}

AggregateStats run_sweep(const SweepSpec& spec, std::size_t jobs) {
    validate(spec);
    AggregateStats out;
    out.spec = spec;
    const auto cells = expand_grid(spec);

    std::vector<std::vector<std::vector<MetricsRow>>> traces;
    traces.reserve(cells.size());
    for (const auto& cell : cells) {
        traces.push_back(
            run_cell_traces(cell.params, spec.behavior_mode, spec.replications, spec.base_seed, cell.index, jobs));
    }

    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellAggregate agg;
        agg.cell = cells[c];
        agg.replications = spec.replications;
        const std::size_t rounds = cells[c].params.num_items;
        agg.rounds.resize(rounds);
        std::vector<std::optional<double>> column(spec.replications);
        for (std::size_t r = 0; r < rounds; ++r) {
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                for (std::size_t rep = 0; rep < spec.replications; ++rep) {
                    column[rep] = metric_value(traces[c][rep][r + 1], static_cast<Metric>(m));
                }
                agg.rounds[r][m] = summarize(column);
            }
        }
        for (auto& t : traces[c]) agg.final_rows.push_back(t.back());
        out.cells.push_back(std::move(agg));
    }
    return out;
}

// ---- closed-form validation -----------------------------------------------

double relative_error(double actual, double expected) {
    if (expected == 0.0) return std::fabs(actual);
    return std::fabs(actual - expected) / std::fabs(expected);
}

double ValidationReport::max_error() const {
    double worst = 0.0;
    for (const auto& s : series) worst = std::max(worst, s.max_relative_error);
    return worst;
}

RunConfig analysis_run_config(const analysis::AnalysisParams& a, std::size_t k_max) {
    analysis::validate(a);
    RunConfig config;
    auto& p = config.sim_params;
    p.num_voters = a.total_voters();
    p.num_items = k_max;
    p.initial_tokens = a.t0;
    p.initial_stake = a.sigma * a.t0;
    p.inflation_rate = a.delta;
    p.stake_policy = AnalysisSigmaStake{a.sigma};
    config.behavior_mode = BehaviorMode::DegenerateIdeal;

    std::vector<RosterEntry> roster;
    roster.reserve(p.num_voters);
    roster.insert(roster.end(), a.n_ie, RosterEntry{true, true});
    roster.insert(roster.end(), a.n_ue, RosterEntry{true, false});
    roster.insert(roster.end(), a.n_id, RosterEntry{false, true});
    roster.insert(roster.end(), a.n_ud, RosterEntry{false, false});
    config.roster = std::move(roster);
    return config;
}

ValidationReport validate_against_analysis(const analysis::AnalysisParams& a, std::size_t k_max) {
    const auto config = analysis_run_config(a, k_max);

    ValidationReport report;
    report.params = a;
    report.k_max = k_max;
    std::array<SeriesError, 4> per_class;
    for (auto c : kAllClasses) per_class[index_of(c)].name = "tokens_" + std::string(short_name(c));
    SeriesError total{"t_total", 0.0, 0};
    SeriesError value{"value_per_token", 0.0, 0};

    auto note = [](SeriesError& s, double err, std::size_t k) {
        if (err > s.max_relative_error) {
            s.max_relative_error = err;
            s.worst_round = k;
        }
    };

    run_simulation(config, [&](const TcrState& state) {
        const std::size_t k = state.round_index();
        const auto expected = analysis::series_at(a, k);
        for (const auto& v : state.voters()) {
            const auto c = v.voter_class();
            note(per_class[index_of(c)], relative_error(v.balance, expected.tokens(c)), k);
        }
        const double t_total = state.total_tokens();
        const double value_now = static_cast<double>(lurp(state.v_correct(), state.v_incorrect()));
        note(total, relative_error(t_total, expected.t_total), k);
        note(value, relative_error(value_now / t_total, expected.value_per_token), k);
    });

    for (auto& s : per_class) report.series.push_back(s);
    report.series.push_back(total);
    report.series.push_back(value);
    return report;
}

}  // namespace tcr
