#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pidkit/curves.hpp"
#include "pidkit/error.hpp"
#include "pidkit/ingest.hpp"
#include "pidkit/spline.hpp"

namespace pidkit {

inline constexpr double kMinOverlap = 20.0;

struct CurveComparison {
    double rms = 0.0;
    double max_deviation = 0.0;
    double overlap = 0.0;
    std::size_t grid_points = 0;
};

/// Both curves splined onto the integer grid of their common support; illustrative points dropped.
inline CurveComparison compare_curves(const MeanIncomeCurve& a, const MeanIncomeCurve& b,
                                      double min_overlap = kMinOverlap) {
    MeanIncomeCurve ma = measured_points(a), mb = measured_points(b);
    if (ma.points.empty() || mb.points.empty()) throw InsufficientDataError("cannot compare an empty curve");
    const double lo = std::max(ma.points.front().work_exp, mb.points.front().work_exp);
    const double hi = std::min(ma.points.back().work_exp, mb.points.back().work_exp);
    const double overlap = hi - lo;
    if (!(overlap >= min_overlap)) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s vs %s: overlap of %.6g years is below the %.6g-year minimum",
                      a.label.c_str(), b.label.c_str(), std::max(overlap, 0.0), min_overlap);
        throw InsufficientDataError(buf);
    }
    NaturalSpline sa(ma.xs(), ma.values()), sb(mb.xs(), mb.values());
    CurveComparison c;
    c.overlap = overlap;
    double ss = 0.0;
    for (double x = std::ceil(lo); x <= std::floor(hi) + 1e-9; x += 1.0) {
        double d = sa(x) - sb(x);
        ss += d * d;
        c.max_deviation = std::max(c.max_deviation, std::abs(d));
        ++c.grid_points;
    }
    c.rms = std::sqrt(ss / static_cast<double>(c.grid_points));
    return c;
}

struct RunnerUp {
    int year = 0;
    double misfit = 0.0;
    double max_deviation = 0.0;
};

struct MatchResult {
    std::string target_label;
    std::optional<int> target_year;
    int best_year = 0;
    double misfit = 0.0;
    double max_deviation = 0.0;
    double overlap = 0.0;
    std::vector<RunnerUp> runner_ups;  ///< every other library year, best first
    std::optional<double> gdp_target;
    std::optional<double> gdp_reference;
};

struct MatchOptions {
    std::optional<int> target_year;
    std::optional<double> gdp_target;
    std::optional<GdpSeries> reference_gdp;
    double min_overlap = kMinOverlap;
};

/// Library year whose normalised curve has the smallest RMS misfit against the target.
/// Exact ties go to the year whose GDP is nearest the target's, then to the earlier year.
inline MatchResult match_curve(const MeanIncomeCurve& target, const std::map<int, MeanIncomeCurve>& library,
                               const MatchOptions& opt = {}) {
    if (!target.normalized) throw DomainError(target.label + ": target curve must be peak-normalised");
    if (library.empty()) throw InsufficientDataError("reference library is empty");
    std::vector<RunnerUp> scores;
    for (const auto& [year, curve] : library) {
        if (!curve.normalized) throw DomainError(curve.label + ": library curve must be peak-normalised");
        CurveComparison c = compare_curves(target, curve, opt.min_overlap);
        scores.push_back({year, c.rms, c.max_deviation});
    }
    double best = scores.front().misfit;
    for (const auto& s : scores) best = std::min(best, s.misfit);
    auto gdp_gap = [&](int year) -> double {
        if (!opt.gdp_target || !opt.reference_gdp) return 0.0;
        auto g = opt.reference_gdp->at(year);
        return g ? std::abs(*g - *opt.gdp_target) : HUGE_VAL;
    };
    const RunnerUp* pick = nullptr;
    for (const auto& s : scores) {
        if (s.misfit > best + 1e-12 * std::max(1.0, best)) continue;
        if (!pick || gdp_gap(s.year) < gdp_gap(pick->year)) pick = &s;
    }

    MatchResult r;
    r.target_label = target.label;
    r.target_year = opt.target_year;
    r.best_year = pick->year;
    r.misfit = pick->misfit;
    r.max_deviation = pick->max_deviation;
    r.overlap = compare_curves(target, library.at(pick->year), opt.min_overlap).overlap;
    for (const auto& s : scores)
        if (s.year != pick->year) r.runner_ups.push_back(s);
    std::stable_sort(r.runner_ups.begin(), r.runner_ups.end(),
                     [](const RunnerUp& a, const RunnerUp& b) { return a.misfit < b.misfit; });
    r.gdp_target = opt.gdp_target;
    if (opt.reference_gdp) r.gdp_reference = opt.reference_gdp->at(pick->year);
    return r;
}

/// Bin curve of a table, MA-smoothed when it has one-year spacing, then peak-normalised.
inline MeanIncomeCurve prepared_curve(const BinnedIncomeTable& table, int window) {
    MeanIncomeCurve c = bin_midpoint_curve(table);
    bool yearly = c.points.size() > 1;
    for (std::size_t i = 1; i < c.points.size() && yearly; ++i)
        yearly = std::abs(c.points[i].work_exp - c.points[i - 1].work_exp - 1.0) <= 1e-9;
    if (yearly) c = moving_average(c, window);
    return normalize_to_peak(c);
}

inline std::map<int, MeanIncomeCurve> build_library(const std::vector<BinnedIncomeTable>& tables, int window,
                                                    const std::string& country = "") {
    std::map<int, MeanIncomeCurve> lib;
    for (const auto& t : tables) {
        if (!country.empty() && t.country != country) continue;
        if (!lib.emplace(t.year, prepared_curve(t, window)).second)
            throw ValidationError("library holds two tables for " + std::to_string(t.year) + "; pass a country");
    }
    if (lib.empty()) throw InsufficientDataError("no library tables" + (country.empty() ? std::string() : " for " + country));
    return lib;
}

/// Working-age adjustments for matched reference GDP levels.
struct Corrections {
    /// Reference-country population; the factor is r(matched year) / r(target year), r = total/working.
    std::optional<PopulationSeries> population;
    /// Explicit factors keyed by matched year; these win over `population`.
    std::map<int, double> factors;
};

struct MatchReportRow {
    std::string target_label;
    std::optional<int> target_year;
    int matched_year = 0;
    double misfit = 0.0;
    std::optional<double> gdp_target;
    std::optional<double> gdp_reference;
    double correction_factor = 1.0;
    std::optional<double> corrected_reference;
    std::optional<int> lag_years;
};

inline std::vector<MatchReportRow> match_report(const std::vector<MatchResult>& results, const Corrections& corr = {}) {
    std::vector<MatchReportRow> rows;
    for (const auto& r : results) {
        MatchReportRow row;
        row.target_label = r.target_label;
        row.target_year = r.target_year;
        row.matched_year = r.best_year;
        row.misfit = r.misfit;
        row.gdp_target = r.gdp_target;
        row.gdp_reference = r.gdp_reference;
        if (auto it = corr.factors.find(r.best_year); it != corr.factors.end())
            row.correction_factor = it->second;
        else if (corr.population && r.target_year)
            row.correction_factor = corr.population->ratio(r.best_year) / corr.population->ratio(*r.target_year);
        if (r.gdp_reference) row.corrected_reference = *r.gdp_reference * row.correction_factor;
        if (r.target_year) row.lag_years = *r.target_year - r.best_year;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pidkit
