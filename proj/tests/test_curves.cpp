#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace pidkit;
using testing_support::fixture;
using testing_support::make_table;

namespace {

MeanIncomeCurve curve_of(const std::vector<double>& x, const std::vector<double>& y) {
    MeanIncomeCurve c{"c", {}, false};
    for (std::size_t i = 0; i < x.size(); ++i) c.points.push_back({x[i], y[i], false});
    return c;
}

// Textbook natural cubic spline: second derivatives from a tridiagonal solve.
double reference_spline(const std::vector<double>& x, const std::vector<double>& y, double at) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), a(n, 0.0), b(n, 1.0), c(n, 0.0), r(n, 0.0), m(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        a[i] = h[i - 1];
        b[i] = 2.0 * (h[i - 1] + h[i]);
        c[i] = h[i];
        r[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
    }
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
    std::size_t k = 0;
    while (k + 2 < n && at > x[k + 1]) ++k;
    double t0 = x[k + 1] - at, t1 = at - x[k];
    return m[k] * t0 * t0 * t0 / (6 * h[k]) + m[k + 1] * t1 * t1 * t1 / (6 * h[k]) +
           (y[k] / h[k] - m[k] * h[k] / 6) * t0 + (y[k + 1] / h[k] - m[k + 1] * h[k] / 6) * t1;
}

}  // namespace

TEST(WorkExperience, Conversion) {
    EXPECT_DOUBLE_EQ(to_work_experience(52.5), 38.5);
    EXPECT_DOUBLE_EQ(to_work_experience(14.0), 0.0);
    EXPECT_DOUBLE_EQ(to_work_experience(64.0), 50.0);
    EXPECT_THROW(to_work_experience(13.0), DomainError);
    for (double age : {14.0, 20.25, 33.3, 80.0}) EXPECT_DOUBLE_EQ(to_work_experience(age) + kWorkStartAge, age);
}

TEST(BinCurve, Midpoints) {
    EXPECT_DOUBLE_EQ(bin_work_exp({25, 29}), 13.0);
    EXPECT_DOUBLE_EQ(bin_work_exp({45, 54}), 35.5);
    EXPECT_DOUBLE_EQ(bin_work_exp({std::nullopt, 19}), 2.0);
    EXPECT_DOUBLE_EQ(bin_work_exp({65, std::nullopt}), 56.0);
    auto c = bin_midpoint_curve(parse_binned_table(fixture("uk_income_bins.csv"), "GBR", 2012));
    EXPECT_TRUE(c.points.front().illustrative);
    for (std::size_t i = 1; i < c.points.size(); ++i) EXPECT_FALSE(c.points[i].illustrative);
    EXPECT_EQ(measured_points(c).points.size(), c.points.size() - 1);
    BinnedIncomeTable empty{"A", 2000, "X", {}};
    EXPECT_THROW(bin_midpoint_curve(empty), InsufficientDataError);
}

TEST(Microdata, WeightedMeanPerAge) {
    MicrodataSet m{"A", 2000, {{30, 10.0, 1.0}, {30, 40.0, 3.0}, {20, 5.0, 2.0}}};
    auto c = microdata_curve(m);
    ASSERT_EQ(c.points.size(), 2u);
    EXPECT_DOUBLE_EQ(c.points[0].work_exp, 6.0);
    EXPECT_DOUBLE_EQ(c.points[0].value, 5.0);
    EXPECT_DOUBLE_EQ(c.points[1].value, 32.5);
}

TEST(MovingAverage, MatchesDirectWindowMeans) {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> x, y;
    for (int i = 0; i < 40; ++i) {
        x.push_back(i);
        y.push_back(u(gen));
    }
    for (int w : {1, 3, 5, 9}) {
        auto out = moving_average(curve_of(x, y), w);
        for (int i = 0; i < 40; ++i) {
            int h = std::min({(w - 1) / 2, i, 39 - i});
            std::vector<double> win(y.begin() + i - h, y.begin() + i + h + 1);
            double mean = std::accumulate(win.begin(), win.end(), 0.0) / win.size();
            EXPECT_NEAR(out.points[i].value, mean, 1e-12) << "w=" << w << " i=" << i;
        }
    }
}

TEST(MovingAverage, Properties) {
    std::vector<double> x, flat, line, spike(21, 0.0);
    for (int i = 0; i < 21; ++i) {
        x.push_back(i);
        flat.push_back(4.2);
        line.push_back(3.0 * i + 1.0);
    }
    spike[10] = 9.0;
    for (const auto& p : moving_average(curve_of(x, flat), 9).points) EXPECT_NEAR(p.value, 4.2, 1e-12);
    auto l = moving_average(curve_of(x, line), 5);
    for (std::size_t i = 0; i < 21; ++i) EXPECT_NEAR(l.points[i].value, line[i], 1e-12);  // symmetric shrink keeps lines
    auto s = moving_average(curve_of(x, spike), 3);
    for (int i = 0; i < 21; ++i) EXPECT_NEAR(s.points[i].value, std::abs(i - 10) <= 1 ? 3.0 : 0.0, 1e-12);
    EXPECT_EQ(moving_average(curve_of(x, spike), 1).values(), spike);
    EXPECT_THROW(moving_average(curve_of(x, spike), 4), DomainError);
    EXPECT_THROW(moving_average(curve_of(x, spike), 0), DomainError);
    try {
        moving_average(curve_of({0, 5, 10}, {1, 2, 3}), 3);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("interpolate first"), std::string::npos);
    }
}

TEST(Normalize, Basics) {
    auto n = normalize_to_peak(curve_of({0, 1, 2}, {2, 6, 3}));
    EXPECT_TRUE(n.normalized);
    EXPECT_DOUBLE_EQ(n.points[0].value, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(n.points[1].value, 1.0);
    EXPECT_DOUBLE_EQ(n.points[2].value, 0.5);
    EXPECT_EQ(normalize_to_peak(n), n);
    auto scaled = curve_of({0, 1, 2}, {2000, 6000, 3000});
    auto ns = normalize_to_peak(scaled);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(ns.points[i].value, n.points[i].value, 1e-15);
    EXPECT_THROW(normalize_to_peak(curve_of({0, 1}, {0, 0})), DomainError);
}

TEST(Spline, AgreesWithReferenceImplementation) {
    std::vector<double> x{2, 6.5, 13, 18, 23, 28, 35.5, 45.5, 56};
    std::vector<double> y{0.2, 0.55, 0.8, 0.93, 1.0, 0.98, 0.9, 0.75, 0.4};
    NaturalSpline s(x, y);
    for (double t = 2.0; t <= 56.0; t += 0.37) EXPECT_NEAR(s(t), reference_spline(x, y, t), 1e-10) << t;
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s(x[i]), y[i], 1e-12);
}

TEST(Spline, ReproducesLinesAndResamples) {
    auto c = spline_interpolate(curve_of({0, 3, 7, 10}, {1, 7, 15, 21}), 0.5);
    EXPECT_FALSE(c.normalized);
    ASSERT_EQ(c.points.size(), 21u);
    for (const auto& p : c.points) EXPECT_NEAR(p.value, 2.0 * p.work_exp + 1.0, 1e-9);
    EXPECT_THROW(spline_interpolate(curve_of({0, 1}, {0, 1}), 0.1), InsufficientDataError);
}

TEST(Spline, NormalizedInputCanOvershootOne) {
    auto n = normalize_to_peak(curve_of({0, 10, 20, 30}, {0.5, 0.95, 1.0, 0.6}));
    auto s = spline_interpolate(n, 0.1);
    double top = 0.0;
    for (const auto& p : s.points) top = std::max(top, p.value);
    EXPECT_GT(top, 1.0);
    EXPECT_FALSE(s.normalized);
}

TEST(Peak, SymmetricTriangle) {
    auto e = estimate_peak(curve_of({10, 20, 30}, {0, 1, 0}));
    EXPECT_NEAR(e.peak_work_exp, 20.0, 1e-9);
    EXPECT_NEAR(e.peak_age, 34.0, 1e-9);
    EXPECT_DOUBLE_EQ(e.bin_peak_work_exp, 20.0);
}

TEST(Peak, ParabolaVertex) {
    for (double v : {17.3, 25.0, 31.85}) {
        std::vector<double> x{0, 10, 20, 30, 40, 50}, y;
        for (double t : x) y.push_back(100.0 - (t - v) * (t - v) / 10.0);
        EXPECT_NEAR(estimate_peak(curve_of(x, y)).peak_work_exp, v, 0.5) << v;
    }
}

TEST(Peak, FlatTopTiesGoToSmallest) {
    auto e = estimate_peak(curve_of({5, 6, 7, 8}, {1, 1, 1, 1}));
    EXPECT_DOUBLE_EQ(e.peak_work_exp, 5.0);
}

TEST(Peak, ScaleInvariantAndIgnoresIllustrative) {
    auto t = parse_binned_table(fixture("uk_income_bins.csv"), "GBR", 2012);
    auto c = bin_midpoint_curve(t);
    auto e = estimate_peak(c);
    EXPECT_NEAR(e.peak_work_exp, 32.5, 0.5);
    auto big = c;
    for (auto& p : big.points) p.value *= 1e4;
    EXPECT_DOUBLE_EQ(estimate_peak(big).peak_work_exp, e.peak_work_exp);
    EXPECT_DOUBLE_EQ(estimate_peak(normalize_to_peak(c)).peak_work_exp, e.peak_work_exp);
    auto spiked = c;
    spiked.points.front().value = 1e9;  // an illustrative point never drives the peak
    EXPECT_DOUBLE_EQ(estimate_peak(spiked).peak_work_exp, e.peak_work_exp);
}

TEST(Peak, NzEarliestYear) {
    auto t = parse_binned_table(fixture("nz_income_bins.csv"), "NZL", 1998);
    EXPECT_NEAR(estimate_peak(bin_midpoint_curve(t)).peak_work_exp, 32.0, 0.5);
}

TEST(GroupShare, IdenticalTablesHaveNoTransitions) {
    auto t = make_table({{20, 24}, {25, 29}, {30, 34}}, {10, 30, 20});
    auto t2 = t;
    t2.year = 2001;
    auto h = group_share_history({t, t2});
    EXPECT_TRUE(h.transitions.empty());
    EXPECT_EQ(h.peak_group.at(2000), 1u);
    EXPECT_DOUBLE_EQ(h.shares.at(2001)[1], 1.0);
}

TEST(GroupShare, DriftingPeakTransitions) {
    std::vector<BinnedIncomeTable> tables;
    for (int k = 0; k < 6; ++k)
        tables.push_back(make_table({{20, 24}, {25, 29}, {30, 34}}, {10, 30.0 - k, 25.0 + k}, 2000 + k));
    std::reverse(tables.begin(), tables.end());  // input order does not matter
    auto h = group_share_history(tables);
    ASSERT_EQ(h.transitions.size(), 1u);
    EXPECT_EQ(h.transitions[0].year, 2003);
    EXPECT_EQ(h.transitions[0].from, 1u);
    EXPECT_EQ(h.transitions[0].to, 2u);
}

TEST(GroupShare, LayoutMismatch) {
    auto a = make_table({{20, 24}, {25, 29}}, {1, 2}, 2000);
    auto b = make_table({{20, 24}, {25, 30}}, {1, 2}, 2001);
    EXPECT_THROW(group_share_history({a, b}), ValidationError);
    EXPECT_THROW(group_share_history({}), InsufficientDataError);
}

TEST(GroupShare, UkFixturePeakMovesOlder) {
    auto h = group_share_history(parse_binned_tables(fixture("uk_income_bins.csv")));
    EXPECT_LT(h.peak_group.at(2000), h.peak_group.at(2003));
}
