#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tcr/voter_class.hpp"

namespace tcr::analysis {

/// Idealized setting: engaged voters always vote, disengaged never do,
/// informed voters are always right, uninformed always wrong, and every
/// participant stakes `sigma` times an uninformed-engaged balance.
struct AnalysisParams {
    double t0 = 100.0;
    double sigma = 0.05;
    double delta = 0.02;
    std::size_t n_ie = 30;
    std::size_t n_ue = 20;
    std::size_t n_id = 30;
    std::size_t n_ud = 20;

    std::size_t total_voters() const { return n_ie + n_ue + n_id + n_ud; }
    std::size_t count(VoterClass c) const;
};

/// Throws ConfigError unless n_ie > n_ue, sigma in (0,1), delta >= 0, t0 > 0.
void validate(const AnalysisParams& p);

struct AnalysisSeries {
    std::size_t k = 0;
    double t_ie = 0.0;
    double t_ue = 0.0;
    double t_id = 0.0;
    double t_ud = 0.0;
    double t_total = 0.0;
    double value_per_token = 0.0;

    double tokens(VoterClass c) const;
};

double tokens_disengaged(const AnalysisParams& p, std::size_t k);
double tokens_uninformed_engaged(const AnalysisParams& p, std::size_t k);

/// Exact solution of the informed-engaged recursion (geometric sum form).
double tokens_informed_engaged(const AnalysisParams& p, std::size_t k);

/// T_IE^(0..k_max) by iterating
/// T_IE^(k) = (T_IE^(k-1) + T_UE^(k-1) * sigma * n_ue / n_ie) * (1 + delta).
std::vector<double> tokens_informed_engaged_by_recursion(const AnalysisParams& p, std::size_t k_max);

/// Large-k approximation t0 (1+delta)^k (1 + n_ue/n_ie).
double tokens_informed_engaged_asymptotic(const AnalysisParams& p, std::size_t k);

/// |asymptotic - exact| never exceeds t0 (1+delta)^k (n_ue/n_ie) (1-sigma)^k.
double asymptotic_error_bound(const AnalysisParams& p, std::size_t k);

double total_tokens(const AnalysisParams& p, std::size_t k);

/// k / T_tot^(k): every one of the k decisions is correct.
double value_per_token(const AnalysisParams& p, std::size_t k);

/// value_per_token(k) * per-voter tokens of class c.
double class_wealth(const AnalysisParams& p, VoterClass c, std::size_t k);

AnalysisSeries series_at(const AnalysisParams& p, std::size_t k);

enum class Trend {
    LinearGrowth,
    TendsToZero,
    RisesThenTendsToZero,
};

enum class UeTokenDirection { Increasing, Constant, Decreasing };

struct TrendReport {
    bool covered = false;  // false when delta == 0
    std::string note;
    std::array<Trend, 4> wealth_trend{};  // indexed by index_of(VoterClass)
    UeTokenDirection ue_tokens = UeTokenDirection::Constant;
    double inflation_factor = 1.0;   // 1 + delta
    double break_even_factor = 1.0;  // 1 / (1 - sigma)

    Trend trend(VoterClass c) const { return wealth_trend[index_of(c)]; }
};

TrendReport asymptotic_classification(const AnalysisParams& p);

std::string_view to_string(Trend t);
std::string_view to_string(UeTokenDirection d);

}  // namespace tcr::analysis
