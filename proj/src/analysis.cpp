#include "tcr/analysis.hpp"

#include <cmath>

#include "tcr/errors.hpp"

namespace tcr::analysis {

namespace {

double ratio_ue_ie(const AnalysisParams& p) {
    return static_cast<double>(p.n_ue) / static_cast<double>(p.n_ie);
}

double kd(std::size_t k) { return static_cast<double>(k); }

}  // namespace

std::size_t AnalysisParams::count(VoterClass c) const {
    switch (c) {
        case VoterClass::InformedEngaged: return n_ie;
        case VoterClass::InformedDisengaged: return n_id;
        case VoterClass::UninformedEngaged: return n_ue;
        case VoterClass::UninformedDisengaged: return n_ud;
    }
    return 0;
}

void validate(const AnalysisParams& p) {
    if (p.n_ie <= p.n_ue) {
        throw ConfigError("informed-engaged voters (" + std::to_string(p.n_ie) +
                          ") must outnumber uninformed-engaged voters (" + std::to_string(p.n_ue) +
                          ") so that every decision is correct");
    }
    if (!(p.sigma > 0.0 && p.sigma < 1.0)) throw ConfigError("sigma must lie in (0,1)");
    if (!(p.delta >= 0.0) || !std::isfinite(p.delta)) throw ConfigError("delta must be non-negative");
    if (!(p.t0 > 0.0) || !std::isfinite(p.t0)) throw ConfigError("t0 must be positive");
}

double AnalysisSeries::tokens(VoterClass c) const {
    switch (c) {
        case VoterClass::InformedEngaged: return t_ie;
        case VoterClass::InformedDisengaged: return t_id;
        case VoterClass::UninformedEngaged: return t_ue;
        case VoterClass::UninformedDisengaged: return t_ud;
    }
    return 0.0;
}

double tokens_disengaged(const AnalysisParams& p, std::size_t) { return p.t0; }

double tokens_uninformed_engaged(const AnalysisParams& p, std::size_t k) {
    return p.t0 * std::pow(1.0 - p.sigma, kd(k)) * std::pow(1.0 + p.delta, kd(k));
}

double tokens_informed_engaged(const AnalysisParams& p, std::size_t k) {
    // sigma * sum_{n<k} (1-sigma)^n == 1 - (1-sigma)^k
    const double won = 1.0 - std::pow(1.0 - p.sigma, kd(k));
    return p.t0 * std::pow(1.0 + p.delta, kd(k)) * (1.0 + ratio_ue_ie(p) * won);
}

std::vector<double> tokens_informed_engaged_by_recursion(const AnalysisParams& p, std::size_t k_max) {
    std::vector<double> out;
    out.reserve(k_max + 1);
    double t_ie = p.t0;
    double t_ue = p.t0;
    out.push_back(t_ie);
    const double ratio = ratio_ue_ie(p);
    for (std::size_t k = 1; k <= k_max; ++k) {
        t_ie = (t_ie + t_ue * p.sigma * ratio) * (1.0 + p.delta);
        t_ue = t_ue * (1.0 - p.sigma) * (1.0 + p.delta);
        out.push_back(t_ie);
    }
    return out;
}

double tokens_informed_engaged_asymptotic(const AnalysisParams& p, std::size_t k) {
    return p.t0 * std::pow(1.0 + p.delta, kd(k)) * (1.0 + ratio_ue_ie(p));
}

double asymptotic_error_bound(const AnalysisParams& p, std::size_t k) {
    return p.t0 * std::pow(1.0 + p.delta, kd(k)) * ratio_ue_ie(p) * std::pow(1.0 - p.sigma, kd(k));
}

double total_tokens(const AnalysisParams& p, std::size_t k) {
    const double disengaged = tokens_disengaged(p, k);
    return kd(p.n_ie) * tokens_informed_engaged(p, k) + kd(p.n_ue) * tokens_uninformed_engaged(p, k) +
           kd(p.n_id) * disengaged + kd(p.n_ud) * disengaged;
}

double value_per_token(const AnalysisParams& p, std::size_t k) { return kd(k) / total_tokens(p, k); }

double class_wealth(const AnalysisParams& p, VoterClass c, std::size_t k) {
    return series_at(p, k).tokens(c) * value_per_token(p, k);
}

AnalysisSeries series_at(const AnalysisParams& p, std::size_t k) {
    AnalysisSeries s;
    s.k = k;
    s.t_ie = tokens_informed_engaged(p, k);
    s.t_ue = tokens_uninformed_engaged(p, k);
    s.t_id = tokens_disengaged(p, k);
    s.t_ud = tokens_disengaged(p, k);
    s.t_total = total_tokens(p, k);
    s.value_per_token = kd(k) / s.t_total;
    return s;
}

TrendReport asymptotic_classification(const AnalysisParams& p) {
    validate(p);
    TrendReport r;
    r.inflation_factor = 1.0 + p.delta;
    r.break_even_factor = 1.0 / (1.0 - p.sigma);
    const double per_round = (1.0 + p.delta) * (1.0 - p.sigma);
    if (std::fabs(per_round - 1.0) <= 1e-12) r.ue_tokens = UeTokenDirection::Constant;
    else r.ue_tokens = per_round > 1.0 ? UeTokenDirection::Increasing : UeTokenDirection::Decreasing;

    if (p.delta == 0.0) {
        r.covered = false;
        r.note = "no inflation; trends not covered by the closed-form claims";
        return r;
    }
    r.covered = true;
    r.wealth_trend[index_of(VoterClass::InformedEngaged)] = Trend::LinearGrowth;
    r.wealth_trend[index_of(VoterClass::UninformedEngaged)] =
        r.ue_tokens == UeTokenDirection::Increasing ? Trend::RisesThenTendsToZero : Trend::TendsToZero;
    r.wealth_trend[index_of(VoterClass::InformedDisengaged)] = Trend::TendsToZero;
    r.wealth_trend[index_of(VoterClass::UninformedDisengaged)] = Trend::TendsToZero;
    r.note = "value per token decays as k/(1+delta)^k; only informed-engaged holdings keep pace";
    return r;
}

std::string_view to_string(Trend t) {
    switch (t) {
        case Trend::LinearGrowth: return "linear_growth";
        case Trend::TendsToZero: return "tends_to_zero";
        case Trend::RisesThenTendsToZero: return "rises_then_tends_to_zero";
    }
    return "unknown";
}

std::string_view to_string(UeTokenDirection d) {
    switch (d) {
        case UeTokenDirection::Increasing: return "increasing";
        case UeTokenDirection::Constant: return "constant";
        case UeTokenDirection::Decreasing: return "decreasing";
    }
    return "unknown";
}

}  // namespace tcr::analysis
