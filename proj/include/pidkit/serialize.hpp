#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pidkit/csv.hpp"
#include "pidkit/curves.hpp"
#include "pidkit/inequality.hpp"
#include "pidkit/ingest.hpp"
#include "pidkit/matcher.hpp"
#include "pidkit/model.hpp"
#include "pidkit/scaling.hpp"

namespace pidkit {

using Json = nlohmann::ordered_json;

/// Six significant digits, C locale.
inline std::string fmt6(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// The value as it reads at six significant digits, for JSON output.
inline Json num6(double v) { return std::stod(fmt6(v)); }

template <class T>
Json opt6(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_integral_v<T>) return *v;
    else return num6(*v);
}

// ---------------------------------------------------------------------------
// Curves

inline std::string curve_csv(const MeanIncomeCurve& c) {
    std::string out = "work_exp,value,normalized\n";
    for (const auto& p : c.points) out += fmt6(p.work_exp) + "," + fmt6(p.value) + "," + (c.normalized ? "true" : "false") + "\n";
    return out;
}

inline Json curve_json(const MeanIncomeCurve& c) {
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back(Json::array({num6(p.work_exp), num6(p.value)}));
    return Json{{"label", c.label}, {"points", pts}, {"normalized", c.normalized}};
}

/// Reads a `work_exp,value,normalized` file back into a curve labelled `label`.
inline MeanIncomeCurve parse_curve_csv(const std::string& path, const std::string& label) {
    CsvFile f = read_csv(path);
    const std::vector<std::string> cols{"work_exp", "value", "normalized"};
    if (!header_is(f, cols)) throw ValidationError(path + ":1: header must be " + join_columns(cols));
    MeanIncomeCurve c{label, {}, false};
    for (const auto& row : f.rows) {
        auto x = row.fields.size() == 3 ? parse_double(row.fields[0]) : std::nullopt;
        auto y = row.fields.size() == 3 ? parse_double(row.fields[1]) : std::nullopt;
        if (!x || !y) throw ValidationError(path + ":" + std::to_string(row.line) + ": malformed row");
        const std::string& n = row.fields[2];
        c.normalized = n == "true" || n == "1";
        c.points.push_back({*x, *y, false});
    }
    if (c.points.empty()) throw InsufficientDataError(path + ": no points");
    for (std::size_t i = 1; i < c.points.size(); ++i)
        if (!(c.points[i].work_exp > c.points[i - 1].work_exp))
            throw ValidationError(path + ": work_exp not strictly increasing");
    return c;
}

inline Json peak_json(const PeakEstimate& e) {
    return Json{{"peak_work_exp", num6(e.peak_work_exp)}, {"peak_age", num6(e.peak_age)},
                {"peak_value", num6(e.peak_value)},       {"grid_step", num6(e.grid_step)},
                {"method", e.method},                      {"bin_peak_work_exp", num6(e.bin_peak_work_exp)},
                {"bin_peak_value", num6(e.bin_peak_value)}};
}

inline Json group_share_json(const GroupShareHistory& h) {
    Json groups = Json::array();
    for (std::size_t i = 0; i < h.groups.size(); ++i)
        groups.push_back(Json{{"age", h.groups[i].label()}, {"work_exp", num6(h.work_exp[i])}});
    Json years = Json::array();
    for (const auto& [year, v] : h.shares) {
        Json vals = Json::array();
        for (double x : v) vals.push_back(num6(x));
        years.push_back(Json{{"year", year}, {"peak_group", h.groups[h.peak_group.at(year)].label()}, {"shares", vals}});
    }
    Json trans = Json::array();
    for (const auto& t : h.transitions)
        trans.push_back(Json{{"year", t.year}, {"from", h.groups[t.from].label()}, {"to", h.groups[t.to].label()}});
    return Json{{"groups", groups}, {"years", years}, {"transitions", trans}};
}

// ---------------------------------------------------------------------------
// Scaling

inline Json prediction_json(const CriticalAgePrediction& p) {
    return Json{{"base_work_exp", num6(p.base_work_exp)}, {"g1", num6(p.g1)}, {"g2", num6(p.g2)},
                {"factor", num6(p.factor())},              {"predicted_work_exp", num6(p.predicted_work_exp)},
                {"predicted_age", num6(p.predicted_age)}};
}

inline Json matching_year_json(const MatchingYear& m) {
    Json cross = Json::array();
    for (double c : m.crossings) cross.push_back(num6(c));
    return Json{{"level", num6(m.level)},
                {"year", m.year},
                {"interpolated_year", num6(m.interpolated_year)},
                {"reference_level", num6(m.reference_level)},
                {"crossings", cross}};
}

inline Json trend_json(const LinearTrend& t) {
    return Json{{"slope", num6(t.slope)},
                {"intercept", num6(t.intercept)},
                {"fit_window", Json::array({t.first_year, t.last_year})},
                {"points", t.n}};
}

// ---------------------------------------------------------------------------
// Inequality

inline std::string profile_csv(const TailProfile& p) {
    std::string out = "age_lo,age_hi,portion\n";
    for (const auto& b : p.bins)
        out += (b.age.lo ? std::to_string(*b.age.lo) : "") + "," + (b.age.hi ? std::to_string(*b.age.hi) : "") + "," +
               fmt6(b.portion) + "\n";
    return out;
}

inline Json profile_json(const TailProfile& p) {
    Json bins = Json::array();
    for (const auto& b : p.bins)
        bins.push_back(Json{{"age", b.age.label()}, {"portion", num6(b.portion)}, {"flagged", b.flagged}});
    return Json{{"label", p.label},
                {"threshold", num6(p.threshold)},
                {"total_portion", num6(p.total_portion)},
                {"peak_bin", p.bins.empty() ? std::string() : p.bins[p.peak_bin()].age.label()},
                {"normalized", p.normalized},
                {"bins", bins}};
}

inline Json calibration_json(const ThresholdCalibration& c) {
    Json sweep = Json::array();
    for (const auto& [e, v] : c.sweep) sweep.push_back(Json::array({num6(e), num6(v)}));
    return Json{{"threshold", num6(c.threshold)},
                {"achieved_portion", num6(c.achieved_portion)},
                {"target_portion", num6(c.target_portion)},
                {"gap", num6(c.gap)},
                {"warning", c.warning.empty() ? Json(nullptr) : Json(c.warning)},
                {"sweep", sweep}};
}

// ---------------------------------------------------------------------------
// Matching

inline Json match_json(const MatchResult& r) {
    Json ru = Json::array();
    for (const auto& u : r.runner_ups)
        ru.push_back(Json{{"year", u.year}, {"misfit", num6(u.misfit)}, {"max_deviation", num6(u.max_deviation)}});
    return Json{{"target", r.target_label},
                {"best_year", r.best_year},
                {"misfit", num6(r.misfit)},
                {"max_deviation", num6(r.max_deviation)},
                {"runner_ups", ru},
                {"gdp_target", opt6(r.gdp_target)},
                {"gdp_reference", opt6(r.gdp_reference)},
                {"lag_years", r.target_year ? Json(*r.target_year - r.best_year) : Json(nullptr)}};
}

inline Json report_rows_json(const std::vector<MatchReportRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back(Json{{"target", r.target_label},
                           {"target_year", opt6(r.target_year)},
                           {"matched_year", r.matched_year},
                           {"misfit", num6(r.misfit)},
                           {"gdp_target", opt6(r.gdp_target)},
                           {"gdp_reference", opt6(r.gdp_reference)},
                           {"correction_factor", num6(r.correction_factor)},
                           {"corrected_reference", opt6(r.corrected_reference)},
                           {"lag_years", opt6(r.lag_years)}});
    return out;
}

// ---------------------------------------------------------------------------
// Model

inline Json params_json(const ModelParams& p) {
    Json grid = Json::array();
    for (const auto& s : p.sigma_grid) grid.push_back(Json{{"sigma", s.sigma}, {"weight", s.weight}});
    return Json{{"lambda_ref", p.lambda_ref}, {"g_ref", p.g_ref},   {"tc_ref", p.tc_ref},
                {"beta", p.beta},             {"sigma_grid", grid}, {"pareto_index", p.pareto_index},
                {"dt", p.dt},                 {"horizon", p.horizon}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline ModelParams params_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("model parameters must be a JSON object");
    ModelParams p;
    auto number = [&](const std::string& key, double& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) throw ValidationError("model parameter " + key + " must be a number");
        out = j[key].get<double>();
    };
    for (const auto& [key, value] : j.items()) {
        static const std::vector<std::string> known{"lambda_ref", "g_ref", "tc_ref", "beta", "sigma_grid",
                                                    "pareto_index", "dt", "horizon"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ValidationError("unknown model parameter " + key);
    }
    number("lambda_ref", p.lambda_ref);
    number("g_ref", p.g_ref);
    number("tc_ref", p.tc_ref);
    number("beta", p.beta);
    number("pareto_index", p.pareto_index);
    number("dt", p.dt);
    number("horizon", p.horizon);
    if (j.contains("sigma_grid")) {
        if (!j["sigma_grid"].is_array()) throw ValidationError("sigma_grid must be an array");
        p.sigma_grid.clear();
        for (const auto& e : j["sigma_grid"]) {
            if (!e.is_object() || !e.contains("sigma") || !e["sigma"].is_number() || !e.contains("weight") ||
                !e["weight"].is_number())
                throw ValidationError("sigma_grid entries need numeric sigma and weight");
            p.sigma_grid.push_back({e["sigma"].get<double>(), e["weight"].get<double>()});
        }
    }
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ValidationError(std::string("model parameters: ") + e.what());
    }
    return p;
}

inline ModelParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ValidationError(path + ": not valid JSON");
    return params_from_json(j);
}

inline Json simulation_json(const SimulatedCurve& s) {
    return Json{{"gdp_pc", num6(s.gdp_pc)},
                {"lambda", num6(s.lambda)},
                {"critical_work_exp", num6(s.critical_work_exp)},
                {"critical_age", num6(s.critical_work_exp + kWorkStartAge)},
                {"beta", num6(s.beta)},
                {"points", s.points.size()}};
}

// ---------------------------------------------------------------------------
// Exact table writers (the inverse of the parsers)

inline std::string gdp_csv(const std::vector<GdpSeries>& series) {
    std::string out = "country,year,gdp_pc\n";
    for (const auto& s : series)
        for (const auto& p : s.points) out += s.country + "," + std::to_string(p.year) + "," + exact_number(p.gdp_pc) + "\n";
    return out;
}

inline std::string population_csv(const std::vector<PopulationSeries>& series) {
    std::string out = "country,year,total_pop,working_age_pop\n";
    for (const auto& s : series)
        for (const auto& p : s.points)
            out += s.country + "," + std::to_string(p.year) + "," + exact_number(p.total) + "," +
                   exact_number(p.working_age) + "\n";
    return out;
}

inline std::string binned_csv(const std::vector<BinnedIncomeTable>& tables) {
    std::string out = "country,year,currency,age_lo,age_hi,persons,mean_income\n";
    for (const auto& t : tables)
        for (const auto& b : t.bins)
            out += t.country + "," + std::to_string(t.year) + "," + t.currency + "," +
                   (b.age.lo ? std::to_string(*b.age.lo) : "") + "," + (b.age.hi ? std::to_string(*b.age.hi) : "") +
                   "," + exact_number(b.persons) + "," + exact_number(b.mean_income) + "\n";
    return out;
}

inline std::string microdata_csv(const MicrodataSet& m) {
    std::string out = "country,year,age,income,weight\n";
    for (const auto& r : m.records)
        out += m.country + "," + std::to_string(m.year) + "," + std::to_string(r.age) + "," + exact_number(r.income) +
               "," + exact_number(r.weight) + "\n";
    return out;
}

}  // namespace pidkit
