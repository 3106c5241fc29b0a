#pragma once

#include <gsl/gsl_fit.h>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pidkit/curves.hpp"
#include "pidkit/error.hpp"
#include "pidkit/ingest.hpp"

namespace pidkit {

struct CriticalAgePrediction {
    double base_work_exp = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double predicted_work_exp = 0.0;
    double predicted_age = 0.0;
    double factor() const { return predicted_work_exp / base_work_exp; }
};

/// T2 = T1 * sqrt(g2 / g1), on work experience.
inline CriticalAgePrediction predict_peak(double base_work_exp, double g1, double g2) {
    if (!(base_work_exp > 0.0) || !(g1 > 0.0) || !(g2 > 0.0))
        throw DomainError("predict_peak needs positive work experience and GDP levels");
    CriticalAgePrediction p{base_work_exp, g1, g2, 0.0, 0.0};
    p.predicted_work_exp = base_work_exp * std::sqrt(g2 / g1);
    p.predicted_age = p.predicted_work_exp + kWorkStartAge;
    return p;
}

struct MatchingYear {
    double level = 0.0;
    int year = 0;                   ///< sample year nearest the canonical crossing
    double interpolated_year = 0.0; ///< earliest crossing
    double reference_level = 0.0;   ///< series value in `year`
    std::vector<double> crossings;  ///< every crossing, ascending
};

/// Year(s) in which `reference` passes through `level`, by linear interpolation between samples.
inline MatchingYear find_matching_year(double level, const GdpSeries& reference) {
    const auto& pts = reference.points;
    if (pts.empty()) throw InsufficientDataError("reference series " + reference.country + " is empty");
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].gdp_pc < pts[lo].gdp_pc) lo = i;
        if (pts[i].gdp_pc > pts[hi].gdp_pc) hi = i;
    }
    if (level < pts[lo].gdp_pc || level > pts[hi].gdp_pc) {
        const GdpPoint& near = level < pts[lo].gdp_pc ? pts[lo] : pts[hi];
        char buf[256];
        std::snprintf(buf, sizeof buf, "level %.6g outside %s range [%.6g, %.6g]; nearest endpoint %d (%.6g)", level,
                      reference.country.c_str(), pts[lo].gdp_pc, pts[hi].gdp_pc, near.year, near.gdp_pc);
        throw OutOfRangeError(buf, near.year, near.gdp_pc);
    }

    MatchingYear m;
    m.level = level;
    std::optional<std::size_t> first_bracket;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].gdp_pc == level) {
            m.crossings.push_back(pts[i].year);
            if (!first_bracket) first_bracket = i;
            continue;
        }
        if (i + 1 < pts.size()) {
            double g0 = pts[i].gdp_pc, g1 = pts[i + 1].gdp_pc;
            if ((g0 < level && level < g1) || (g0 > level && level > g1)) {
                double f = (level - g0) / (g1 - g0);
                m.crossings.push_back(pts[i].year + f * (pts[i + 1].year - pts[i].year));
                if (!first_bracket) first_bracket = i;
            }
        }
    }
    m.interpolated_year = m.crossings.front();
    std::size_t i = *first_bracket;
    std::size_t pick = i;
    if (pts[i].gdp_pc != level && i + 1 < pts.size() &&
        std::abs(pts[i + 1].gdp_pc - level) < std::abs(pts[i].gdp_pc - level))
        pick = i + 1;
    m.year = pts[pick].year;
    m.reference_level = pts[pick].gdp_pc;
    return m;
}

struct LinearTrend {
    double slope = 0.0;      ///< currency units per year
    double intercept = 0.0;  ///< value at calendar year 0
    int first_year = 0;
    int last_year = 0;
    std::size_t n = 0;

    double at(double year) const { return intercept + slope * year; }
};

/// Ordinary least squares of gdp_pc on calendar year, optionally within [from, to].
inline LinearTrend fit_linear_trend(const GdpSeries& series, std::optional<std::pair<int, int>> window = std::nullopt) {
    std::vector<double> x, y;
    std::vector<int> years;
    for (const auto& p : series.points) {
        if (window && (p.year < window->first || p.year > window->second)) continue;
        years.push_back(p.year);
        x.push_back(p.year);
        y.push_back(p.gdp_pc);
    }
    if (x.size() < 2)
        throw InsufficientDataError("trend for " + series.country + " needs at least 2 points in the window, got " +
                                    std::to_string(x.size()));
    // Centre the years so the fit does not lean on large absolute values.
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (double& v : x) v -= mean;
    double c0 = 0.0, c1 = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
    gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
    LinearTrend t;
    t.slope = c1;
    t.intercept = c0 - c1 * mean;
    t.first_year = years.front();
    t.last_year = years.back();
    t.n = x.size();
    return t;
}

/// Year at which `target_level` is reached from (anchor_year, anchor_level) along the trend slope.
inline double project_attainment(const LinearTrend& trend, double anchor_year, double anchor_level, double target_level) {
    if (target_level == anchor_level) return anchor_year;
    if (target_level > anchor_level && !(trend.slope > 0.0))
        throw DomainError("target level is above the anchor but the trend slope is not positive; unreachable");
    if (target_level < anchor_level && !(trend.slope != 0.0))
        throw DomainError("zero trend slope; target level unreachable");
    return anchor_year + (target_level - anchor_level) / trend.slope;
}

struct YearRatio {
    int year = 0;
    double ratio = 0.0;
};

/// a / b on the years both series carry.
inline std::vector<YearRatio> series_ratio(const GdpSeries& a, const GdpSeries& b) {
    std::vector<YearRatio> out;
    for (const auto& p : a.points)
        if (auto q = b.at(p.year)) out.push_back({p.year, p.gdp_pc / *q});
    if (out.empty()) throw InsufficientDataError("series " + a.country + " and " + b.country + " share no years");
    return out;
}

}  // namespace pidkit
