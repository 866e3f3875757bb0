#include "tcr/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tcr/config.hpp"
#include "tcr/errors.hpp"
#include "tcr/report.hpp"
#include "tcr/svg_chart.hpp"

namespace tcr::cli {

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::size_t parse_count(std::string_view text) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw ConfigError("bad class count '" + std::string(text) + "'");
    return value;
}

analysis::AnalysisParams parse_classes(const ValidateOptions& opts) {
    std::vector<std::size_t> counts;
    std::stringstream ss(opts.classes);
    for (std::string part; std::getline(ss, part, ',');) counts.push_back(parse_count(part));
    if (counts.size() != 4) throw ConfigError("--classes expects n_IE,n_UE,n_ID,n_UD");
    return {opts.t0, opts.sigma, opts.delta, counts[0], counts[1], counts[2], counts[3]};
}

// ---- CSV input for plotting --------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw ConfigError("input has no column '" + name + "'");
    }
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + " is empty");
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = split_csv_line(line);
        if (row.size() != t.header.size()) throw ConfigError("ragged row in " + path.string());
        t.rows.push_back(std::move(row));
    }
    return t;
}

double parse_double(const std::string& text) {
    if (text == "nan" || text.empty()) return std::nan("");
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw ConfigError("bad number '" + text + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("bad number '" + text + "'");
    }
}

struct FamilySpec {
    std::string title;
    std::string y_label;
    std::vector<std::pair<std::string, std::string>> series;  // (legend, metric column)
};

FamilySpec family_spec(const std::string& family) {
    FamilySpec f;
    if (family == "tokens" || family == "wealth") {
        f.title = family == "tokens" ? "Tokens per class" : "Average wealth per voter";
        f.y_label = family == "tokens" ? "tokens" : "wealth";
        for (auto c : kAllClasses) f.series.emplace_back(long_name(c), family + "_" + std::string(short_name(c)));
    } else if (family == "value") {
        f.title = "Registry value";
        f.y_label = "value";
        f.series = {{"raw", "lurp_raw"}, {"clamped", "lurp_clamped"}};
    } else {
        throw ConfigError("unknown metric family '" + family + "' (expected tokens, wealth or value)");
    }
    return f;
}

LineChart chart_from_trace(const Table& t, const FamilySpec& f) {
    LineChart chart;
    chart.title = f.title;
    chart.y_label = f.y_label;
    const auto round_col = t.column("round");
    for (const auto& row : t.rows) chart.x.push_back(parse_double(row[round_col]));
    for (const auto& [legend, metric] : f.series) {
        ChartSeries s{legend, {}};
        const auto col = t.column(metric);
        for (const auto& row : t.rows) s.values.push_back(parse_double(row[col]));
        chart.series.push_back(std::move(s));
    }
    return chart;
}

LineChart chart_from_aggregate(const Table& t, const FamilySpec& f, std::size_t cell) {
    const auto cell_col = t.column("cell");
    const auto round_col = t.column("round");
    const auto metric_col = t.column("metric");
    const auto mean_col = t.column("mean");
    const auto cell_text = std::to_string(cell);

    std::map<std::string, std::map<double, double>> by_metric;
    for (const auto& row : t.rows) {
        if (row[cell_col] != cell_text) continue;
        by_metric[row[metric_col]][parse_double(row[round_col])] = parse_double(row[mean_col]);
    }
    if (by_metric.empty()) throw ConfigError("aggregate has no cell " + cell_text);

    LineChart chart;
    chart.title = f.title + " (mean, cell " + cell_text + ")";
    chart.y_label = f.y_label;
    for (const auto& [legend, metric] : f.series) {
        const auto it = by_metric.find(metric);
        if (it == by_metric.end()) throw ConfigError("aggregate has no metric '" + metric + "'");
        if (chart.x.empty()) {
            for (const auto& [round, _] : it->second) chart.x.push_back(round);
        }
        ChartSeries s{legend, {}};
        for (const auto& [_, mean] : it->second) s.values.push_back(mean);
        chart.series.push_back(std::move(s));
    }
    return chart;
}

}  // namespace

int command_simulate(const SimulateOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig config = opts.config ? run_config_from_json(read_json_file(*opts.config)) : RunConfig{};
        if (opts.seed) config.base_seed = *opts.seed;
        const auto result = run_simulation(config);
        ensure_dir(opts.out_dir);
        write_text_file(opts.out_dir / "trace.csv", trace_csv(result));
        write_json_file(opts.out_dir / "summary.json", summary_json(result, config));
        return kExitOk;
    });
}

int command_sweep(const SweepOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const auto spec = sweep_spec_from_json(read_json_file(opts.spec));
        const auto stats = run_sweep(spec, opts.jobs);
        ensure_dir(opts.out_dir);
        write_text_file(opts.out_dir / "aggregate.csv", aggregate_csv(stats));
        write_json_file(opts.out_dir / "aggregate.json", aggregate_json(stats));
        return kExitOk;
    });
}

int command_validate(const ValidateOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        constexpr double kTolerance = 1e-9;
        const auto params = parse_classes(opts);
        const auto report = validate_against_analysis(params, opts.k);
        ensure_dir(opts.out_dir);
        write_json_file(opts.out_dir / "validation.json", validation_json(report, kTolerance));
        if (!report.passed(kTolerance)) {
            err << "simulator deviates from the closed form: max relative error " << report.max_error() << '\n';
            return kExitFailed;
        }
        return kExitOk;
    });
}

int command_plot(const PlotOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const auto family = family_spec(opts.family);
        const auto table = read_csv(opts.input);
        LineChart chart;
        if (table.header == trace_columns()) {
            chart = chart_from_trace(table, family);
        } else if (!table.header.empty() && table.header.front() == "cell") {
            chart = chart_from_aggregate(table, family, opts.cell);
        } else {
            throw ConfigError(opts.input.string() + " is neither a trace nor an aggregate CSV");
        }
        if (opts.out.has_parent_path()) ensure_dir(opts.out.parent_path());
        write_text_file(opts.out, render_svg(chart));
        return kExitOk;
    });
}

int run(int argc, char** argv) {
    CLI::App app{"Token-curated registry simulator with voter-only inflation"};
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string sim_config;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Run one seeded simulation; writes trace.csv and summary.json");
    simulate->add_option("config", sim_config, "JSON run config (defaults when omitted)");
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "RNG seed (overrides base_seed)");
    simulate->add_option("--out", sim.out_dir, "Output directory");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Replicated parameter sweep; writes aggregate.csv/json");
    sweep_cmd->add_option("spec", sweep.spec, "JSON sweep spec")->required();
    sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory");

    ValidateOptions val;
    auto* validate_cmd = app.add_subcommand("validate", "Compare the idealized simulator with the closed forms");
    validate_cmd->add_option("--sigma", val.sigma, "Stake fraction");
    validate_cmd->add_option("--delta", val.delta, "Inflation rate");
    validate_cmd->add_option("--classes", val.classes, "n_IE,n_UE,n_ID,n_UD");
    validate_cmd->add_option("--k", val.k, "Rounds");
    validate_cmd->add_option("--t0", val.t0, "Initial tokens per voter");
    validate_cmd->add_option("--out", val.out_dir, "Output directory");

    PlotOptions plot;
    auto* plot_cmd = app.add_subcommand("plot", "Render a trace or aggregate CSV as an SVG line chart");
    plot_cmd->add_option("input", plot.input, "trace.csv or aggregate.csv")->required();
    plot_cmd->add_option("--metric", plot.family, "tokens | wealth | value")->required();
    plot_cmd->add_option("--out", plot.out, "Output SVG path")->required();
    plot_cmd->add_option("--cell", plot.cell, "Aggregate cell index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (*simulate) {
        if (!sim_config.empty()) sim.config = sim_config;
        if (*seed_opt) sim.seed = sim_seed;
        return command_simulate(sim, std::cerr);
    }
    if (*sweep_cmd) return command_sweep(sweep, std::cerr);
    if (*validate_cmd) return command_validate(val, std::cerr);
    return command_plot(plot, std::cerr);
}

}  // namespace tcr::cli
