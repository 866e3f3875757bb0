#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace tcr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // validation mismatch or internal error
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

struct SimulateOptions {
    std::optional<std::filesystem::path> config;  // Table I defaults when absent
    std::optional<std::uint64_t> seed;           // overrides base_seed from the config
    std::filesystem::path out_dir = ".";
};

struct SweepOptions {
    std::filesystem::path spec;
    std::size_t jobs = 1;
    std::filesystem::path out_dir = ".";
};

struct ValidateOptions {
    double sigma = 0.05;
    double delta = 0.02;
    std::string classes = "30,20,30,20";  // n_IE,n_UE,n_ID,n_UD
    std::size_t k = 50;
    double t0 = 100.0;
    std::filesystem::path out_dir = ".";
};

struct PlotOptions {
    std::filesystem::path input;  // trace.csv or aggregate.csv
    std::string family;           // tokens | wealth | value
    std::filesystem::path out;
    std::size_t cell = 0;  // aggregate input only
};

// Each command returns a process exit code and reports problems on `err`.
int command_simulate(const SimulateOptions& opts, std::ostream& err);
int command_sweep(const SweepOptions& opts, std::ostream& err);
int command_validate(const ValidateOptions& opts, std::ostream& err);
int command_plot(const PlotOptions& opts, std::ostream& err);

/// Full command line entry point (CLI11); used by the tcrsim binary.
int run(int argc, char** argv);

}  // namespace tcr::cli
