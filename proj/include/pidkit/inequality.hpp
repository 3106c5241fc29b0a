#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pidkit/curves.hpp"
#include "pidkit/error.hpp"
#include "pidkit/ingest.hpp"

namespace pidkit {

/// Weighted Gini ratio, sorted cumulative-weight form:
/// G = sum_i w_i x_i (2 C_{i-1} + w_i - W) / (W * sum_i w_i x_i).
inline double gini(const std::vector<double>& incomes, const std::vector<double>& weights) {
    if (incomes.size() != weights.size()) throw DomainError("gini: incomes and weights differ in length");
    if (incomes.empty()) throw InsufficientDataError("gini: no records");
    std::vector<std::size_t> order(incomes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return incomes[a] < incomes[b]; });
    double total_w = 0.0, total_wx = 0.0;
    for (std::size_t i : order) {
        if (!(weights[i] > 0.0)) throw ValidationError("gini: weights must be positive");
        if (!(incomes[i] >= 0.0)) throw ValidationError("gini: incomes must be nonnegative");
        total_w += weights[i];
        total_wx += weights[i] * incomes[i];
    }
    if (!(total_wx > 0.0)) throw DomainError("gini: mean income is zero");
    double cum = 0.0, acc = 0.0;
    for (std::size_t i : order) {
        acc += weights[i] * incomes[i] * (2.0 * cum + weights[i] - total_w);
        cum += weights[i];
    }
    return acc / (total_w * total_wx);
}

inline double gini(const MicrodataSet& data) {
    std::vector<double> x, w;
    x.reserve(data.records.size());
    w.reserve(data.records.size());
    for (const auto& r : data.records) {
        x.push_back(r.income);
        w.push_back(r.weight);
    }
    return gini(x, w);
}

struct TailBin {
    AgeRange age;
    double above = 0.0;
    double population = 0.0;
    double portion = 0.0;
    bool flagged = false;  ///< youngest bin reaching below working age
};

/// Portion of each age bin above an income threshold.
struct TailProfile {
    std::string label;
    double threshold = 0.0;
    std::vector<TailBin> bins;
    double total_portion = 0.0;
    bool normalized = false;

    std::size_t peak_bin() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < bins.size(); ++i)
            if (bins[i].portion > bins[best].portion) best = i;
        return best;
    }
};

namespace detail {

inline bool youngest_flag(const std::vector<TailBin>& bins, std::size_t i) {
    return i == 0 && (!bins[0].age.lo || *bins[0].age.lo < 15);
}

inline void finish_profile(TailProfile& p) {
    double above = 0.0, pop = 0.0;
    for (std::size_t i = 0; i < p.bins.size(); ++i) {
        auto& b = p.bins[i];
        b.portion = b.population > 0.0 ? b.above / b.population : 0.0;
        b.flagged = youngest_flag(p.bins, i);
        above += b.above;
        pop += b.population;
    }
    if (!(pop > 0.0)) throw InsufficientDataError(p.label + ": population is zero");
    p.total_portion = above / pop;
}

}  // namespace detail

/// Per-bin count_above / population; the total is the pooled ratio.
inline TailProfile tail_portion_by_age(const BinnedIncomeTable& counts_above, const BinnedIncomeTable& population,
                                       double threshold) {
    if (counts_above.bins.size() != population.bins.size())
        throw ValidationError(counts_above.label() + ": count and population tables have different bin layouts");
    TailProfile p;
    p.label = counts_above.label();
    p.threshold = threshold;
    for (std::size_t i = 0; i < counts_above.bins.size(); ++i) {
        const auto& c = counts_above.bins[i];
        const auto& n = population.bins[i];
        if (!(c.age == n.age))
            throw ValidationError(counts_above.label() + ": bin " + c.age.label() + " does not match population bin " +
                                  n.age.label());
        if (c.persons > n.persons)
            throw ValidationError(counts_above.label() + ": count above threshold exceeds population in bin " +
                                  c.age.label());
        p.bins.push_back({c.age, c.persons, n.persons, 0.0, false});
    }
    detail::finish_profile(p);
    return p;
}

/// Portions above `threshold`, which must be an income-bin edge of the table.
inline TailProfile tail_portion_from_dist(const IncomeDistTable& dist, double threshold) {
    if (dist.cells.empty()) throw InsufficientDataError(dist.label() + ": empty table");
    auto edges = dist.income_edges();
    std::optional<double> top_hi;
    for (const auto& c : dist.cells)
        if (c.age == dist.cells.front().age) top_hi = c.income_hi;
    bool on_edge = std::find(edges.begin(), edges.end(), threshold) != edges.end() || (top_hi && threshold >= *top_hi) ||
                   threshold <= edges.front();
    if (!on_edge)
        throw DomainError(dist.label() + ": threshold " + exact_number(threshold) +
                          " is not an income-bin edge; thresholds are limited to bin boundaries");
    TailProfile p;
    p.label = dist.label();
    p.threshold = threshold;
    for (const auto& r : dist.age_bins()) {
        TailBin b{r, 0.0, 0.0, 0.0, false};
        for (const auto& c : dist.cells) {
            if (!(c.age == r)) continue;
            b.population += c.persons;
            if (c.income_lo >= threshold) b.above += c.persons;
        }
        p.bins.push_back(b);
    }
    detail::finish_profile(p);
    return p;
}

inline TailProfile peak_normalize_profile(const TailProfile& profile) {
    if (profile.bins.empty()) throw InsufficientDataError(profile.label + ": empty profile");
    double top = profile.bins[profile.peak_bin()].portion;
    if (!(top > 0.0)) throw DomainError(profile.label + ": all portions are zero");
    TailProfile out = profile;
    for (auto& b : out.bins) b.portion /= top;
    out.normalized = true;
    return out;
}

struct ThresholdCalibration {
    double threshold = 0.0;
    double achieved_portion = 0.0;
    double target_portion = 0.0;
    double gap = 0.0;
    std::string warning;  ///< set when the gap exceeds the allowed maximum
    std::vector<std::pair<double, double>> sweep;  ///< (edge, total portion) for every edge
};

/// Income-bin edge whose total portion is nearest `target_portion`; ties go to the smaller edge.
inline ThresholdCalibration calibrate_threshold(const IncomeDistTable& dist, double target_portion,
                                                double max_gap = 0.005) {
    if (!(target_portion > 0.0 && target_portion <= 1.0)) throw DomainError("target portion must lie in (0, 1]");
    ThresholdCalibration c;
    c.target_portion = target_portion;
    bool first = true;
    for (double e : dist.income_edges()) {
        double portion = tail_portion_from_dist(dist, e).total_portion;
        c.sweep.emplace_back(e, portion);
        double gap = std::abs(portion - target_portion);
        if (first || gap < c.gap) {
            c.threshold = e;
            c.achieved_portion = portion;
            c.gap = gap;
            first = false;
        }
    }
    if (first) throw InsufficientDataError(dist.label() + ": no income bins");
    if (c.gap > max_gap) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "nearest edge misses the target by %.6g (allowed %.6g)", c.gap, max_gap);
        c.warning = buf;
    }
    return c;
}

/// Age at the middle of a bin; open bins sit 5 years past (or before) their edge.
inline double bin_mid_age(const AgeRange& r) {
    if (!r.lo) return *r.hi - 5.0;
    if (!r.hi) return *r.lo + 5.0;
    return (*r.lo + *r.hi) / 2.0;
}

/// The profile as a curve over bin mid-ages, for matching.
inline MeanIncomeCurve profile_curve(const TailProfile& profile) {
    MeanIncomeCurve c{profile.label, {}, profile.normalized};
    for (const auto& b : profile.bins) c.points.push_back({bin_mid_age(b.age), b.portion, !b.age.lo});
    return c;
}

}  // namespace pidkit
