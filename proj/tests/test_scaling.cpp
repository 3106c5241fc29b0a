#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace pidkit;
using testing_support::fixture;

namespace {

GdpSeries us() { return parse_gdp_series(fixture("gdp_ted.csv"), "USA"); }

}  // namespace

TEST(Predict, WorkedExamples) {
    auto nz = predict_peak(32.0, 15404.0, 20526.0);
    EXPECT_NEAR(nz.predicted_work_exp, 36.9, 0.05);
    auto ca = predict_peak(27.5, 14902.0, 25629.0);
    EXPECT_NEAR(ca.factor(), 1.31, 0.005);
    EXPECT_NEAR(ca.predicted_work_exp, 36.1, 0.05);
    auto uk = predict_peak(28.5, 20207.0, 23017.0);
    EXPECT_NEAR(uk.predicted_work_exp, 30.417, 0.001);
    EXPECT_DOUBLE_EQ(uk.predicted_age, uk.predicted_work_exp + 14.0);
}

TEST(Predict, Properties) {
    EXPECT_DOUBLE_EQ(predict_peak(30.0, 5000.0, 5000.0).predicted_work_exp, 30.0);
    EXPECT_NEAR(predict_peak(10.0, 1.0, 4.0).predicted_work_exp, 20.0, 1e-12);
    // Scaling both levels leaves the prediction unchanged.
    EXPECT_NEAR(predict_peak(25.0, 12000.0, 18000.0).predicted_work_exp,
                predict_peak(25.0, 1.2, 1.8).predicted_work_exp, 1e-12);
    // Two steps compose into one.
    double two = predict_peak(predict_peak(25.0, 100.0, 170.0).predicted_work_exp, 170.0, 260.0).predicted_work_exp;
    EXPECT_NEAR(two, predict_peak(25.0, 100.0, 260.0).predicted_work_exp, 1e-12);
    EXPECT_THROW(predict_peak(0.0, 1.0, 2.0), DomainError);
    EXPECT_THROW(predict_peak(10.0, -1.0, 2.0), DomainError);
    EXPECT_THROW(predict_peak(10.0, 1.0, 0.0), DomainError);
}

TEST(Predict, UsGrowthWithAndWithoutCorrection) {
    auto g = us();
    auto c = correct_gdp_for_working_age(g, parse_population_series(fixture("pop_us.csv"), "USA"));
    double raw = predict_peak(27.0, *g.at(1960), *g.at(2013)).predicted_age;
    double cor = predict_peak(27.0, *c.at(1960), *c.at(2013)).predicted_age;
    EXPECT_NEAR(cor, 56.4, 0.1);
    EXPECT_GT(raw, cor);
}

TEST(MatchingYear, FixtureLevels) {
    auto m = find_matching_year(23272.0, us());
    EXPECT_EQ(m.year, 1992);
    EXPECT_DOUBLE_EQ(m.reference_level, 23363.0);
    EXPECT_EQ(find_matching_year(20526.0, us()).year, 1985);
}

TEST(MatchingYear, ExactSampleAndInterpolation) {
    GdpSeries s{"S", {{2000, 100.0}, {2001, 200.0}, {2002, 300.0}}};
    auto exact = find_matching_year(200.0, s);
    EXPECT_EQ(exact.year, 2001);
    EXPECT_DOUBLE_EQ(exact.interpolated_year, 2001.0);
    auto mid = find_matching_year(175.0, s);
    EXPECT_DOUBLE_EQ(mid.interpolated_year, 2000.75);
    EXPECT_EQ(mid.year, 2001);
    EXPECT_EQ(find_matching_year(120.0, s).year, 2000);
}

TEST(MatchingYear, MonotoneOnIncreasingSeries) {
    auto s = us();
    double last = -1e9;
    for (double level = s.points.front().gdp_pc; level <= s.points.back().gdp_pc; level += 97.0) {
        auto m = find_matching_year(level, s);
        if (m.crossings.size() == 1) {
            EXPECT_GE(m.interpolated_year, last);
            last = m.interpolated_year;
        }
    }
}

TEST(MatchingYear, RecessionGivesSeveralCrossings) {
    GdpSeries s{"S", {{2000, 100.0}, {2001, 120.0}, {2002, 110.0}, {2003, 130.0}}};
    auto m = find_matching_year(115.0, s);
    ASSERT_EQ(m.crossings.size(), 3u);
    EXPECT_DOUBLE_EQ(m.interpolated_year, m.crossings.front());
    EXPECT_DOUBLE_EQ(m.crossings[0], 2000.75);
    EXPECT_DOUBLE_EQ(m.crossings[1], 2001.5);
    EXPECT_DOUBLE_EQ(m.crossings[2], 2002.25);
}

TEST(MatchingYear, OutOfRangeNamesEndpoint) {
    auto s = us();
    try {
        find_matching_year(1e6, s);
        FAIL();
    } catch (const OutOfRangeError& e) {
        EXPECT_EQ(e.nearest_year(), s.points.back().year);
        EXPECT_DOUBLE_EQ(e.nearest_level(), s.points.back().gdp_pc);
    }
    EXPECT_THROW(find_matching_year(1.0, s), InsufficientDataError);
}

TEST(Trend, ExactLine) {
    GdpSeries s{"L", {}};
    for (int y = 1990; y <= 2010; ++y) s.points.push_back({y, 250.0 * (y - 1990) + 9000.0});
    auto t = fit_linear_trend(s);
    EXPECT_NEAR(t.slope, 250.0, 1e-9);
    EXPECT_NEAR(t.at(2000), 11500.0, 1e-6);
    EXPECT_EQ(t.n, 21u);
}

TEST(Trend, SymmetricPerturbationKeepsSlope) {
    GdpSeries s{"L", {}}, p{"P", {}};
    for (int y = 2000; y <= 2010; ++y) {
        double base = 300.0 * y - 500000.0;
        s.points.push_back({y, base});
        p.points.push_back({y, base + 7.0 * (y - 2005) * (y - 2005)});  // even about the centre
    }
    EXPECT_NEAR(fit_linear_trend(p).slope, fit_linear_trend(s).slope, 1e-9);
}

TEST(Trend, WindowAndErrors) {
    auto s = us();
    auto t = fit_linear_trend(s, std::make_pair(1970, 2000));
    EXPECT_EQ(t.first_year, 1970);
    EXPECT_EQ(t.last_year, 2000);
    EXPECT_EQ(t.n, 31u);
    EXPECT_THROW(fit_linear_trend(s, std::make_pair(1800, 1850)), InsufficientDataError);
    EXPECT_THROW(fit_linear_trend(GdpSeries{"X", {{2000, 1.0}}}), InsufficientDataError);
    EXPECT_NEAR(fit_linear_trend(s).slope, 416.0, 15.0);
}

TEST(Project, WorkedExample) {
    LinearTrend t;
    t.slope = 195.0;
    double y = project_attainment(t, 2014.0, 20526.0, 32000.0);
    EXPECT_NEAR(y, 2072.8, 0.1);
    EXPECT_GE(y, 2068.0);
    EXPECT_LE(y, 2074.0);
}

TEST(Project, Properties) {
    LinearTrend t;
    t.slope = 400.0;
    EXPECT_DOUBLE_EQ(project_attainment(t, 2000.0, 20000.0, 20000.0), 2000.0);
    EXPECT_DOUBLE_EQ(project_attainment(t, 2000.0, 20000.0, 24000.0), 2010.0);
    double y = project_attainment(t, 1995.0, 18000.0, 31111.0);
    EXPECT_NEAR(18000.0 + t.slope * (y - 1995.0), 31111.0, 1e-9);
    t.slope = 0.0;
    EXPECT_THROW(project_attainment(t, 2000.0, 1.0, 2.0), DomainError);
    t.slope = -10.0;
    EXPECT_THROW(project_attainment(t, 2000.0, 1.0, 2.0), DomainError);
}

TEST(Ratio, BeaOverTed) {
    auto all = parse_gdp_table(fixture("gdp_bea_ted_us.csv"));
    auto r = series_ratio(all.at("USA_BEA"), all.at("USA_TED"));
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r.front().year, 1947);
    EXPECT_NEAR(r.front().ratio, 1.506, 0.01);
    for (const auto& x : r)
        if (x.year == 2000) EXPECT_NEAR(x.ratio, 1.545, 0.01);
}

TEST(Ratio, Properties) {
    GdpSeries a{"A", {{2000, 10.0}, {2001, 12.0}, {2002, 15.0}}};
    GdpSeries b{"B", {{2001, 24.0}, {2002, 30.0}, {2003, 31.0}}};
    for (const auto& r : series_ratio(a, a)) EXPECT_DOUBLE_EQ(r.ratio, 1.0);
    auto r = series_ratio(a, b);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].year, 2001);
    EXPECT_DOUBLE_EQ(r[0].ratio, 0.5);
    EXPECT_DOUBLE_EQ(r[1].ratio, 0.5);
    EXPECT_THROW(series_ratio(a, GdpSeries{"C", {{1900, 1.0}}}), InsufficientDataError);
}
