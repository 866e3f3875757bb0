#include "tcr/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tcr/errors.hpp"

namespace tcr {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json metrics_json(const MetricsRow& row) {
    Json j;
    j["round"] = row.round_index;
    j["lurp_raw"] = row.lurp_raw;
    j["lurp_clamped"] = row.lurp_clamped;
    j["t_total"] = row.t_total;
    Json tokens, counts, wealth;
    for (auto c : kAllClasses) {
        const auto key = std::string(short_name(c));
        tokens[key] = row.of(c).tokens;
        counts[key] = row.of(c).count;
        wealth[key] = optional_number(row.of(c).wealth);
    }
    j["tokens"] = std::move(tokens);
    j["class_counts"] = std::move(counts);
    j["wealth"] = std::move(wealth);
    return j;
}

Json stats_json(const SummaryStats& s) {
    auto num = [](double v) { return std::isnan(v) ? Json(nullptr) : Json(v); };
    return Json{{"count", s.count}, {"mean", num(s.mean)}, {"stddev", num(s.stddev)}, {"min", num(s.min)},
                {"max", num(s.max)},     {"p05", num(s.p05)},   {"p95", num(s.p95)}};
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

const std::vector<std::string>& trace_columns() {
    static const std::vector<std::string> columns{
        "round",     "item_good", "decision",     "decision_correct", "stake",     "participants", "forced_abstentions",
        "add_votes", "reject_votes", "lurp_raw",  "lurp_clamped",     "t_total",   "tokens_IE",    "tokens_ID",
        "tokens_UE", "tokens_UD", "wealth_IE",    "wealth_ID",        "wealth_UE", "wealth_UD"};
    return columns;
}

std::string trace_csv(const SimulationResult& result) {
    std::ostringstream out;
    const auto& cols = trace_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& [rec, row] : result.rounds) {
        out << row.round_index << ',' << (rec.item.is_good ? 1 : 0) << ','
            << (rec.decision == Decision::Add ? "add" : "reject") << ',' << (rec.decision_correct ? 1 : 0) << ','
            << format_number(rec.stake) << ',' << rec.participant_count() << ',' << rec.forced_abstentions.size()
            << ',' << rec.add_voters.size() << ',' << rec.reject_voters.size() << ',' << row.lurp_raw << ','
            << row.lurp_clamped << ',' << format_number(row.t_total);
        for (auto c : kAllClasses) out << ',' << format_number(row.of(c).tokens);
        for (auto c : kAllClasses) {
            const auto& w = row.of(c).wealth;
            out << ',' << format_number(w ? *w : std::nan(""));
        }
        out << '\n';
    }
    return out.str();
}

Json summary_json(const SimulationResult& result, const RunConfig& config) {
    Json j;
    j["seed"] = config.base_seed;
    j["rounds"] = result.rounds.size();
    Json counts;
    for (auto c : kAllClasses) counts[std::string(short_name(c))] = result.initial.of(c).count;
    j["class_counts"] = std::move(counts);
    j["final"] = metrics_json(result.final_metrics());
    std::size_t added = 0;
    for (const auto& r : result.rounds) added += r.record.decision == Decision::Add ? 1 : 0;
    j["items_added"] = added;
    j["params"] = to_json(config);
    return j;
}

std::string aggregate_csv(const AggregateStats& stats) {
    std::ostringstream out;
    out << "cell";
    for (const auto& axis : stats.spec.grid) out << ',' << axis.name;
    out << ",round,metric,count,mean,stddev,min,max,p05,p95\n";
    for (const auto& cell : stats.cells) {
        std::string prefix = std::to_string(cell.cell.index);
        for (const auto& [_, value] : cell.cell.assignment) prefix += "," + format_number(value);
        for (std::size_t r = 0; r < cell.rounds.size(); ++r) {
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                const auto& s = cell.rounds[r][m];
                out << prefix << ',' << (r + 1) << ',' << metric_name(static_cast<Metric>(m)) << ',' << s.count
                    << ',' << format_number(s.mean) << ',' << format_number(s.stddev) << ','
                    << format_number(s.min) << ',' << format_number(s.max) << ',' << format_number(s.p05) << ','
                    << format_number(s.p95) << '\n';
            }
        }
    }
    return out.str();
}

Json aggregate_json(const AggregateStats& stats) {
    Json j;
    j["spec"] = to_json(stats.spec);
    Json cells = Json::array();
    for (const auto& cell : stats.cells) {
        Json c;
        c["cell"] = cell.cell.index;
        Json assignment;
        for (const auto& [name, value] : cell.cell.assignment) assignment[name] = value;
        c["params"] = std::move(assignment);
        c["replications"] = cell.replications;
        Json rounds = Json::array();
        for (std::size_t r = 0; r < cell.rounds.size(); ++r) {
            Json round;
            round["round"] = r + 1;
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                round[std::string(metric_name(static_cast<Metric>(m)))] = stats_json(cell.rounds[r][m]);
            }
            rounds.push_back(std::move(round));
        }
        c["rounds"] = std::move(rounds);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return j;
}

Json validation_json(const ValidationReport& report, double tolerance) {
    const auto& a = report.params;
    Json j;
    j["params"] = Json{{"t0", a.t0},     {"sigma", a.sigma}, {"delta", a.delta}, {"n_ie", a.n_ie},
                       {"n_ue", a.n_ue}, {"n_id", a.n_id},   {"n_ud", a.n_ud}};
    j["k"] = report.k_max;
    j["tolerance"] = tolerance;
    j["max_relative_error"] = report.max_error();
    j["passed"] = report.passed(tolerance);
    Json series = Json::array();
    for (const auto& s : report.series) {
        series.push_back(
            Json{{"name", s.name}, {"max_relative_error", s.max_relative_error}, {"worst_round", s.worst_round}});
    }
    j["series"] = std::move(series);

    const auto trends = analysis::asymptotic_classification(a);
    Json t;
    t["covered"] = trends.covered;
    t["note"] = trends.note;
    t["ue_tokens"] = analysis::to_string(trends.ue_tokens);
    if (trends.covered) {
        for (auto c : kAllClasses) t["wealth_" + std::string(short_name(c))] = analysis::to_string(trends.trend(c));
    }
    j["trends"] = std::move(t);
    return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace tcr
