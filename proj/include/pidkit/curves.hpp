#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/ingest.hpp"
#include "pidkit/spline.hpp"

namespace pidkit {

inline constexpr double kWorkStartAge = 14.0;
inline constexpr double kForcedOpenBinWorkExp = 2.0;
inline constexpr double kDefaultGridStep = 0.1;

struct CurvePoint {
    double work_exp = 0.0;
    double value = 0.0;
    bool illustrative = false;  ///< placed by convention, not by the data (leading open bin)
    bool operator==(const CurvePoint&) const = default;
};

/// Mean income against work experience.
struct MeanIncomeCurve {
    std::string label;
    std::vector<CurvePoint> points;
    bool normalized = false;

    bool operator==(const MeanIncomeCurve&) const = default;

    std::vector<double> xs() const {
        std::vector<double> out;
        for (const auto& p : points) out.push_back(p.work_exp);
        return out;
    }
    std::vector<double> values() const {
        std::vector<double> out;
        for (const auto& p : points) out.push_back(p.value);
        return out;
    }
};

struct PeakEstimate {
    double peak_work_exp = 0.0;
    double peak_age = 0.0;
    double peak_value = 0.0;
    double grid_step = kDefaultGridStep;
    // Bin-level maximum of the same curve, kept alongside the spline maximum.
    double bin_peak_work_exp = 0.0;
    double bin_peak_value = 0.0;
    std::string method = "natural cubic spline";
};

inline double to_work_experience(double age) {
    if (!(age >= kWorkStartAge)) throw DomainError("age " + std::to_string(age) + " is below 14");
    return age - kWorkStartAge;
}

namespace detail {

inline void check_increasing(const MeanIncomeCurve& c) {
    for (std::size_t i = 1; i < c.points.size(); ++i)
        if (!(c.points[i].work_exp > c.points[i - 1].work_exp))
            throw ValidationError(c.label + ": work experience not strictly increasing");
}

inline std::size_t argmax_first(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

}  // namespace detail

/// Work experience assigned to an age bin.
inline double bin_work_exp(const AgeRange& r) {
    if (!r.lo) return kForcedOpenBinWorkExp;
    if (!r.hi) return to_work_experience(*r.lo + 5.0);
    return to_work_experience((*r.lo + *r.hi) / 2.0);
}

/// One point per bin at the bin's work-experience midpoint.
inline MeanIncomeCurve bin_midpoint_curve(const BinnedIncomeTable& table) {
    if (table.bins.empty()) throw InsufficientDataError(table.label() + ": empty table");
    MeanIncomeCurve c{table.label(), {}, false};
    for (const auto& b : table.bins) c.points.push_back({bin_work_exp(b.age), b.mean_income, !b.age.lo});
    detail::check_increasing(c);
    return c;
}

/// Weighted mean income per single year of age.
inline MeanIncomeCurve microdata_curve(const MicrodataSet& set) {
    if (set.records.empty()) throw InsufficientDataError("microdata set is empty");
    std::map<int, std::pair<double, double>> acc;  // age -> (sum w*x, sum w)
    for (const auto& r : set.records) {
        auto& a = acc[r.age];
        a.first += r.weight * r.income;
        a.second += r.weight;
    }
    MeanIncomeCurve c{set.country + "_" + std::to_string(set.year), {}, false};
    for (const auto& [age, a] : acc) c.points.push_back({to_work_experience(age), a.first / a.second, false});
    return c;
}

/// Centred moving average; the window shrinks symmetrically near the ends.
inline MeanIncomeCurve moving_average(const MeanIncomeCurve& curve, int window) {
    if (window < 1 || window % 2 == 0) throw DomainError("moving-average window must be odd and >= 1");
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        if (std::abs(curve.points[i].work_exp - curve.points[i - 1].work_exp - 1.0) > 1e-9)
            throw DomainError(curve.label + ": moving average needs 1-year spacing; interpolate first");
    const auto n = static_cast<std::ptrdiff_t>(curve.points.size());
    const std::ptrdiff_t half = (window - 1) / 2;
    MeanIncomeCurve out = curve;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        std::ptrdiff_t h = std::min({half, i, n - 1 - i});
        double s = 0.0;
        for (std::ptrdiff_t j = i - h; j <= i + h; ++j) s += curve.points[j].value;
        out.points[i].value = s / static_cast<double>(2 * h + 1);
    }
    out.normalized = false;
    return out;
}

inline MeanIncomeCurve normalize_to_peak(const MeanIncomeCurve& curve) {
    double top = 0.0;
    for (const auto& p : curve.points) top = std::max(top, p.value);
    if (!(top > 0.0)) throw DomainError(curve.label + ": curve has no positive value to normalise by");
    MeanIncomeCurve out = curve;
    for (auto& p : out.points) p.value /= top;
    out.normalized = true;
    return out;
}

/// The curve without its illustrative points.
inline MeanIncomeCurve measured_points(const MeanIncomeCurve& curve) {
    MeanIncomeCurve out{curve.label, {}, curve.normalized};
    for (const auto& p : curve.points)
        if (!p.illustrative) out.points.push_back(p);
    return out;
}

/// Natural cubic spline through every point, resampled from the first point at `grid_step`.
/// Resampled values may exceed a normalised curve's 1.0, so the result is not marked normalised.
inline MeanIncomeCurve spline_interpolate(const MeanIncomeCurve& curve, double grid_step) {
    if (curve.points.size() < 3)
        throw InsufficientDataError(curve.label + ": spline needs at least 3 points");
    NaturalSpline s(curve.xs(), curve.values());
    MeanIncomeCurve out{curve.label, {}, false};
    for (double x : uniform_grid(s.lo(), s.hi(), grid_step)) out.points.push_back({x, s(x), false});
    return out;
}

/// Spline maximum on a `grid_step` grid, illustrative points excluded; ties go to the smaller work experience.
inline PeakEstimate estimate_peak(const MeanIncomeCurve& curve, double grid_step = kDefaultGridStep) {
    MeanIncomeCurve measured = measured_points(curve);
    MeanIncomeCurve fine = spline_interpolate(measured, grid_step);
    std::size_t i = detail::argmax_first(fine.values());
    std::size_t j = detail::argmax_first(measured.values());
    PeakEstimate e;
    e.peak_work_exp = fine.points[i].work_exp;
    e.peak_age = e.peak_work_exp + kWorkStartAge;
    e.peak_value = fine.points[i].value;
    e.grid_step = grid_step;
    e.bin_peak_work_exp = measured.points[j].work_exp;
    e.bin_peak_value = measured.points[j].value;
    return e;
}

struct ShareTransition {
    int year = 0;
    std::size_t from = 0;
    std::size_t to = 0;
};

/// Per-year group means over the year's largest group mean.
struct GroupShareHistory {
    std::vector<AgeRange> groups;
    std::vector<double> work_exp;
    std::map<int, std::vector<double>> shares;
    std::map<int, std::size_t> peak_group;
    std::vector<ShareTransition> transitions;
};

inline GroupShareHistory group_share_history(const std::vector<BinnedIncomeTable>& tables) {
    if (tables.empty()) throw InsufficientDataError("group share history needs at least one table");
    std::vector<const BinnedIncomeTable*> order;
    for (const auto& t : tables) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->year < b->year; });

    GroupShareHistory h;
    for (const auto& b : order.front()->bins) {
        h.groups.push_back(b.age);
        h.work_exp.push_back(bin_work_exp(b.age));
    }
    for (const auto* t : order) {
        if (t->bins.size() != h.groups.size())
            throw ValidationError(t->label() + ": bin layout differs from " + order.front()->label());
        for (std::size_t i = 0; i < h.groups.size(); ++i)
            if (!(t->bins[i].age == h.groups[i]))
                throw ValidationError(t->label() + ": bin layout differs from " + order.front()->label());
        if (h.shares.count(t->year)) throw ValidationError("two tables for year " + std::to_string(t->year));
        std::vector<double> v;
        for (const auto& b : t->bins) v.push_back(b.mean_income);
        std::size_t k = detail::argmax_first(v);
        if (!(v[k] > 0.0)) throw DomainError(t->label() + ": all group means are zero");
        const double top = v[k];
        for (double& x : v) x /= top;
        if (!h.peak_group.empty() && h.peak_group.rbegin()->second != k)
            h.transitions.push_back({t->year, h.peak_group.rbegin()->second, k});
        h.shares[t->year] = std::move(v);
        h.peak_group[t->year] = k;
    }
    return h;
}

}  // namespace pidkit
