#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pidkit/curves.hpp"
#include "pidkit/error.hpp"
#include "pidkit/inequality.hpp"
#include "pidkit/ingest.hpp"
#include "pidkit/matcher.hpp"
#include "pidkit/model.hpp"
#include "pidkit/scaling.hpp"
#include "pidkit/serialize.hpp"

namespace pidkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInsufficient = 3;

/// Everything one CLI invocation needs.
struct RunConfig {
    std::string command;  ///< ingest curve peak scale gini tail calibrate simulate match validate
    std::string action;   ///< scale only: predict match-year trend project ratio

    std::vector<std::string> gdp;
    std::string pop, income, micro, curve, dist, counts, library, config;

    std::vector<std::string> country;
    std::optional<int> year, from, to, anchor_year;

    int window = 9;
    double grid = kDefaultGridStep;
    std::optional<double> threshold, portion, level, t1, g1, g2, slope, anchor_level, target;
    double max_gap = 0.005;
    std::uint64_t seed = 1;
    std::size_t samples = 0;
    std::string out = "pidkit-out";
};

struct Artifact {
    std::string name;
    std::string content;
};

struct RunOutput {
    Json report;
    std::vector<Artifact> files;
};

namespace detail {

inline std::string safe_name(std::string s) {
    for (char& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) c = '_';
    return s;
}

inline const std::string& first_country(const RunConfig& c) {
    static const std::string none;
    return c.country.empty() ? none : c.country.front();
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

inline void check_files(const RunConfig& c) {
    std::vector<std::string> paths = c.gdp;
    for (const auto* p : {&c.pop, &c.income, &c.micro, &c.curve, &c.dist, &c.counts, &c.library, &c.config})
        if (!p->empty()) paths.push_back(*p);
    for (const auto& p : paths)
        if (!std::filesystem::is_regular_file(p)) throw ValidationError(p + ": no such file");
}

inline void check_params(const RunConfig& c) {
    require(c.window >= 1 && c.window % 2 == 1, "--window must be an odd integer >= 1");
    require(c.grid > 0.0, "--grid must be positive");
    if (c.portion) require(*c.portion > 0.0 && *c.portion <= 1.0, "--portion must lie in (0, 1]");
    if (c.threshold) require(*c.threshold >= 0.0, "--threshold must be nonnegative");
    require(c.max_gap >= 0.0, "--max-gap must be nonnegative");
}

/// GDP series for `country` from the first --gdp file that carries it.
inline std::optional<GdpSeries> find_series(const RunConfig& c, const std::string& country) {
    for (const auto& path : c.gdp) {
        auto all = parse_gdp_table(path);
        if (country.empty() && all.size() == 1) return all.begin()->second;
        if (auto it = all.find(country); it != all.end()) return it->second;
    }
    return std::nullopt;
}

inline GdpSeries need_series(const RunConfig& c, const std::string& country) {
    require(!c.gdp.empty(), "--gdp is required");
    auto s = find_series(c, country);
    if (!s) throw ValidationError("no GDP series for " + (country.empty() ? std::string("the requested country") : country));
    return *s;
}

inline double need_level(const GdpSeries& s, int year) {
    auto v = s.at(year);
    if (!v) throw InsufficientDataError("series " + s.country + " has no value for " + std::to_string(year));
    return *v;
}

inline std::vector<BinnedIncomeTable> filtered_tables(const std::string& path, const RunConfig& c) {
    std::vector<BinnedIncomeTable> out;
    for (auto& t : parse_binned_tables(path))
        if ((first_country(c).empty() || t.country == first_country(c)) && (!c.year || t.year == *c.year))
            out.push_back(std::move(t));
    if (out.empty()) throw InsufficientDataError(path + ": no table matches the requested country/year");
    return out;
}

inline std::vector<IncomeDistTable> filtered_dists(const RunConfig& c) {
    std::vector<IncomeDistTable> out;
    for (auto& t : parse_income_dist(c.dist))
        if ((first_country(c).empty() || t.country == first_country(c)) && (!c.year || t.year == *c.year))
            out.push_back(std::move(t));
    if (out.empty()) throw InsufficientDataError(c.dist + ": no table matches the requested country/year");
    return out;
}

// --- subcommands -------------------------------------------------------------

inline RunOutput cmd_ingest(const RunConfig& c) {
    RunOutput r;
    Json inputs = Json::object();
    for (const auto& path : c.gdp) {
        Json list = Json::array();
        for (const auto& [code, s] : parse_gdp_table(path))
            list.push_back(Json{{"country", code},
                                {"first_year", s.points.front().year},
                                {"last_year", s.points.back().year},
                                {"points", s.points.size()}});
        inputs[path] = Json{{"kind", "gdp"}, {"series", list}};
    }
    if (!c.pop.empty()) {
        Json list = Json::array();
        for (const auto& [code, s] : parse_population_table(c.pop))
            list.push_back(Json{{"country", code}, {"first_year", s.points.front().year}, {"last_year", s.points.back().year}});
        inputs[c.pop] = Json{{"kind", "population"}, {"series", list}};
    }
    if (!c.income.empty()) {
        Json list = Json::array();
        for (const auto& t : parse_binned_tables(c.income)) {
            std::size_t open = 0, flagged = 0;
            for (const auto& b : t.bins) {
                open += b.age.open();
                flagged += b.flagged;
            }
            list.push_back(Json{{"label", t.label()}, {"currency", t.currency}, {"bins", t.bins.size()},
                                {"open_bins", open}, {"zero_population_bins", flagged}});
        }
        inputs[c.income] = Json{{"kind", "binned income"}, {"tables", list}};
    }
    if (!c.micro.empty()) {
        MicrodataSet m = parse_microdata(c.micro);
        double w = 0.0;
        for (const auto& rec : m.records) w += rec.weight;
        inputs[c.micro] = Json{{"kind", "microdata"}, {"country", m.country}, {"year", m.year},
                               {"records", m.records.size()}, {"total_weight", num6(w)}};
    }
    if (!c.dist.empty()) {
        Json list = Json::array();
        for (const auto& t : parse_income_dist(c.dist))
            list.push_back(Json{{"label", t.label()}, {"age_bins", t.age_bins().size()}, {"income_bins", t.income_edges().size()}});
        inputs[c.dist] = Json{{"kind", "income distribution"}, {"tables", list}};
    }
    require(!inputs.empty(), "ingest needs at least one input file");
    r.report = Json{{"command", "ingest"}, {"inputs", inputs}};

    if (!c.gdp.empty() && !c.pop.empty()) {
        PopulationSeries pop = parse_population_series(c.pop, first_country(c));
        GdpSeries gdp = need_series(c, pop.country);
        GdpSeries corrected = correct_gdp_for_working_age(gdp, pop);
        std::string csv = "country,year,gdp_pc\n";
        for (const auto& p : corrected.points) csv += corrected.country + "," + std::to_string(p.year) + "," + fmt6(p.gdp_pc) + "\n";
        r.files.push_back({"gdp_corrected_" + safe_name(corrected.country) + ".csv", csv});
        const auto &a = gdp.points.front(), &b = gdp.points.back();
        const auto &ca = corrected.points.front(), &cb = corrected.points.back();
        r.report["working_age_correction"] = Json{{"country", gdp.country},
                                                  {"from", a.year},
                                                  {"to", b.year},
                                                  {"growth_raw", num6(b.gdp_pc / a.gdp_pc)},
                                                  {"growth_corrected", num6(cb.gdp_pc / ca.gdp_pc)},
                                                  {"factor", num6((cb.gdp_pc / ca.gdp_pc) / (b.gdp_pc / a.gdp_pc))}};
    }
    return r;
}

inline RunOutput cmd_curve(const RunConfig& c) {
    RunOutput r;
    Json curves = Json::array();
    auto emit = [&](const MeanIncomeCurve& norm) {
        curves.push_back(curve_json(norm));
        r.files.push_back({safe_name(norm.label) + ".csv", curve_csv(norm)});
        if (measured_points(norm).points.size() >= 3) {
            MeanIncomeCurve fine = spline_interpolate(measured_points(norm), c.grid);
            r.files.push_back({safe_name(norm.label) + "_spline.csv", curve_csv(fine)});
        }
    };
    r.report = Json{{"command", "curve"}, {"window", c.window}, {"grid_step", num6(c.grid)}};
    if (!c.micro.empty()) {
        MeanIncomeCurve raw = microdata_curve(parse_microdata(c.micro));
        emit(normalize_to_peak(moving_average(raw, c.window)));
    } else {
        require(!c.income.empty(), "curve needs --income or --micro");
        auto tables = filtered_tables(c.income, c);
        for (const auto& t : tables) emit(prepared_curve(t, c.window));
        std::set<std::string> countries;
        for (const auto& t : tables) countries.insert(t.country);
        if (tables.size() > 1 && countries.size() == 1) {
            try {
                r.report["group_share_history"] = group_share_json(group_share_history(tables));
            } catch (const ValidationError&) {
                r.report["group_share_history"] = nullptr;  // layouts differ across years
            }
        }
    }
    r.report["curves"] = curves;
    return r;
}

inline RunOutput cmd_peak(const RunConfig& c) {
    RunOutput r;
    Json peaks = Json::array();
    auto emit = [&](const MeanIncomeCurve& curve) {
        PeakEstimate e = estimate_peak(curve, c.grid);
        Json j = peak_json(e);
        j["label"] = curve.label;
        peaks.push_back(j);
        r.files.push_back({safe_name(curve.label) + ".csv", curve_csv(curve)});
    };
    if (!c.curve.empty()) {
        std::string label = std::filesystem::path(c.curve).stem().string();
        emit(parse_curve_csv(c.curve, label));
    } else if (!c.micro.empty()) {
        emit(normalize_to_peak(moving_average(microdata_curve(parse_microdata(c.micro)), c.window)));
    } else {
        require(!c.income.empty(), "peak needs --curve, --income or --micro");
        for (const auto& t : filtered_tables(c.income, c)) emit(prepared_curve(t, c.window));
    }
    r.report = Json{{"command", "peak"}, {"grid_step", num6(c.grid)}, {"peaks", peaks}};
    return r;
}

inline RunOutput cmd_scale(const RunConfig& c) {
    RunOutput r;
    r.report = Json{{"command", "scale"}, {"action", c.action}};
    if (c.action == "predict") {
        require(c.t1.has_value(), "scale predict needs --t1");
        if (c.g1 && c.g2) {
            r.report["critical_age_prediction"] = prediction_json(predict_peak(*c.t1, *c.g1, *c.g2));
            return r;
        }
        require(c.from && c.to, "scale predict needs --g1 and --g2, or --gdp with --from and --to");
        GdpSeries s = need_series(c, first_country(c));
        CriticalAgePrediction raw = predict_peak(*c.t1, need_level(s, *c.from), need_level(s, *c.to));
        if (c.pop.empty()) {
            r.report["critical_age_prediction"] = prediction_json(raw);
        } else {
            GdpSeries corr = correct_gdp_for_working_age(s, parse_population_series(c.pop, s.country));
            r.report["critical_age_prediction"] =
                prediction_json(predict_peak(*c.t1, need_level(corr, *c.from), need_level(corr, *c.to)));
            r.report["uncorrected_prediction"] = prediction_json(raw);
        }
        return r;
    }
    if (c.action == "match-year") {
        require(c.level.has_value(), "scale match-year needs --level");
        GdpSeries s = need_series(c, first_country(c));
        r.report["reference"] = s.country;
        r.report["matching_year"] = matching_year_json(find_matching_year(*c.level, s));
        return r;
    }
    std::optional<std::pair<int, int>> window;
    if (c.from || c.to) window = std::make_pair(c.from.value_or(-1000000), c.to.value_or(1000000));
    if (c.action == "trend") {
        GdpSeries s = need_series(c, first_country(c));
        r.report["country"] = s.country;
        r.report["trend"] = trend_json(fit_linear_trend(s, window));
        return r;
    }
    if (c.action == "project") {
        require(c.target.has_value(), "scale project needs --target");
        LinearTrend trend;
        std::optional<GdpSeries> s;
        if (!c.gdp.empty()) s = need_series(c, first_country(c));
        if (c.slope) {
            trend.slope = *c.slope;
        } else {
            require(s.has_value(), "scale project needs --slope or --gdp");
            trend = fit_linear_trend(*s, window);
            r.report["trend"] = trend_json(trend);
        }
        double anchor_year = 0.0, anchor_level = 0.0;
        if (c.anchor_year && c.anchor_level) {
            anchor_year = *c.anchor_year;
            anchor_level = *c.anchor_level;
        } else {
            require(s.has_value(), "scale project needs --anchor-year and --anchor-level, or --gdp");
            int y = c.anchor_year.value_or(s->points.back().year);
            anchor_year = y;
            anchor_level = c.anchor_level.value_or(need_level(*s, y));
        }
        double year = project_attainment(trend, anchor_year, anchor_level, *c.target);
        r.report["projection"] = Json{{"slope", num6(trend.slope)},
                                      {"anchor_year", num6(anchor_year)},
                                      {"anchor_level", num6(anchor_level)},
                                      {"target_level", num6(*c.target)},
                                      {"year", num6(year)}};
        return r;
    }
    if (c.action == "ratio") {
        require(c.country.size() == 2, "scale ratio needs two --country values (numerator, denominator)");
        GdpSeries a = need_series(c, c.country[0]);
        GdpSeries b = need_series(c, c.country[1]);
        std::string csv = "year,ratio\n";
        Json list = Json::array();
        for (const auto& yr : series_ratio(a, b)) {
            csv += std::to_string(yr.year) + "," + fmt6(yr.ratio) + "\n";
            list.push_back(Json::array({yr.year, num6(yr.ratio)}));
        }
        r.report["numerator"] = a.country;
        r.report["denominator"] = b.country;
        r.report["ratios"] = list;
        r.files.push_back({"ratio_" + safe_name(a.country) + "_" + safe_name(b.country) + ".csv", csv});
        return r;
    }
    throw ValidationError("scale needs one of predict, match-year, trend, project, ratio");
}

inline RunOutput cmd_gini(const RunConfig& c) {
    require(!c.micro.empty(), "gini needs --micro");
    MicrodataSet m = parse_microdata(c.micro);
    double w = 0.0;
    for (const auto& rec : m.records) w += rec.weight;
    RunOutput r;
    r.report = Json{{"command", "gini"},   {"country", m.country},         {"year", m.year},
                    {"gini", num6(gini(m))}, {"records", m.records.size()}, {"total_weight", num6(w)}};
    return r;
}

inline void emit_profile(RunOutput& r, Json& list, const TailProfile& p, const std::string& name) {
    TailProfile norm = peak_normalize_profile(p);
    list.push_back(Json{{"profile", profile_json(p)}, {"normalized", profile_json(norm)}});
    r.files.push_back({name + ".csv", profile_csv(p)});
    r.files.push_back({name + "_normalized.csv", profile_csv(norm)});
}

inline RunOutput cmd_tail(const RunConfig& c) {
    RunOutput r;
    Json list = Json::array();
    if (!c.dist.empty()) {
        for (const auto& t : filtered_dists(c)) {
            std::vector<double> thresholds;
            if (c.threshold) thresholds.push_back(*c.threshold);
            else
                for (double e : t.income_edges())
                    if (e > 0.0) thresholds.push_back(e);
            for (double thr : thresholds) {
                TailProfile p = tail_portion_from_dist(t, thr);
                emit_profile(r, list, p, safe_name(t.label() + "_tail_" + fmt6(thr)));
            }
        }
    } else {
        require(!c.counts.empty() && !c.income.empty(), "tail needs --dist, or --counts with --income (population)");
        require(c.threshold.has_value(), "tail with --counts needs --threshold (the level the counts refer to)");
        auto counts = filtered_tables(c.counts, c);
        auto pops = parse_binned_tables(c.income);
        for (const auto& t : counts) {
            TailProfile p = tail_portion_by_age(t, select_table(pops, t.country, t.year, c.income), *c.threshold);
            emit_profile(r, list, p, safe_name(t.label() + "_tail_" + fmt6(*c.threshold)));
        }
    }
    r.report = Json{{"command", "tail"}, {"profiles", list}};
    return r;
}

inline RunOutput cmd_calibrate(const RunConfig& c) {
    require(!c.dist.empty() && c.portion.has_value(), "calibrate needs --dist and --portion");
    RunOutput r;
    Json list = Json::array();
    for (const auto& t : filtered_dists(c)) {
        Json j = calibration_json(calibrate_threshold(t, *c.portion, c.max_gap));
        j["label"] = t.label();
        list.push_back(j);
    }
    r.report = Json{{"command", "calibrate"}, {"calibrations", list}};
    return r;
}

inline RunOutput cmd_simulate(const RunConfig& c) {
    ModelParams p = c.config.empty() ? ModelParams{} : load_params(c.config);
    p.validate();
    double g = c.level.value_or(p.g_ref);
    SimulatedCurve s = simulate_curve(g, p);
    RunOutput r;
    std::string label = safe_name("sim_" + fmt6(g));
    MeanIncomeCurve curve = s.to_curve(label);
    r.files.push_back({label + ".csv", curve_csv(curve)});
    r.report = Json{{"command", "simulate"}, {"params", params_json(p)}, {"simulation", simulation_json(s)}};
    r.report["peak"] = peak_json(estimate_peak(curve, c.grid));
    if (c.threshold)
        r.report["predicted_tail_portion"] =
            Json{{"threshold", num6(*c.threshold)},
                 {"work_exp", num6(s.critical_work_exp)},
                 {"portion", num6(predicted_tail_portion(g, *c.threshold, s.critical_work_exp, p))}};
    if (c.samples > 0) {
        MicrodataSet m = sample_pareto(p.pareto_index, 1.0, c.samples, c.seed);
        double mean = 0.0;
        std::string csv = "country,year,age,income,weight\n";
        for (const auto& rec : m.records) {
            mean += rec.income;
            csv += m.country + ",0," + std::to_string(rec.age) + "," + fmt6(rec.income) + ",1\n";
        }
        mean /= static_cast<double>(m.records.size());
        r.files.push_back({"pareto_sample.csv", csv});
        r.report["pareto_sample"] = Json{{"k", num6(p.pareto_index)}, {"x_m", 1}, {"n", c.samples},
                                         {"seed", c.seed}, {"mean", num6(mean)}, {"gini", num6(gini(m))}};
    }
    return r;
}

inline RunOutput cmd_match(const RunConfig& c) {
    require(!c.library.empty(), "match needs --library");
    RunOutput r;
    std::vector<MatchResult> results;
    std::vector<MeanIncomeCurve> targets;
    std::vector<std::string> target_countries;
    std::vector<int> target_years;
    std::map<int, MeanIncomeCurve> library;
    std::string reference_country;

    if (!c.dist.empty()) {
        require(c.threshold.has_value(), "tail matching needs --threshold");
        require(!c.counts.empty(), "tail matching needs --counts for the reference library");
        auto pops = parse_binned_tables(c.library);
        for (const auto& t : parse_binned_tables(c.counts)) {
            TailProfile p = tail_portion_by_age(t, select_table(pops, t.country, t.year, c.library), *c.threshold);
            if (!library.emplace(t.year, profile_curve(peak_normalize_profile(p))).second)
                throw ValidationError(c.counts + ": two tail tables for " + std::to_string(t.year));
            reference_country = t.country;
        }
        for (const auto& t : filtered_dists(c)) {
            targets.push_back(profile_curve(peak_normalize_profile(tail_portion_from_dist(t, *c.threshold))));
            target_countries.push_back(t.country);
            target_years.push_back(t.year);
        }
    } else {
        require(!c.income.empty(), "match needs --income or --dist for the target");
        auto lib_tables = parse_binned_tables(c.library);
        library = build_library(lib_tables, c.window);
        reference_country = lib_tables.front().country;
        for (const auto& t : filtered_tables(c.income, c)) {
            targets.push_back(prepared_curve(t, c.window));
            target_countries.push_back(t.country);
            target_years.push_back(t.year);
        }
    }

    std::optional<GdpSeries> ref_gdp;
    if (!c.gdp.empty()) ref_gdp = find_series(c, reference_country);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        MatchOptions opt;
        const std::string& label = targets[i].label;
        opt.target_year = target_years[i];
        opt.reference_gdp = ref_gdp;
        if (!c.gdp.empty())
            if (auto s = find_series(c, target_countries[i])) opt.gdp_target = s->at(*opt.target_year);
        results.push_back(match_curve(targets[i], library, opt));
        r.files.push_back({safe_name(label) + ".csv", curve_csv(targets[i])});
    }
    std::set<int> best_years;
    for (const auto& m : results) best_years.insert(m.best_year);
    for (int y : best_years) {
        MeanIncomeCurve ref = library.at(y);
        ref.label = safe_name(reference_country + "_" + std::to_string(y));
        r.files.push_back({ref.label + ".csv", curve_csv(ref)});
    }

    Corrections corr;
    if (!c.pop.empty()) corr.population = parse_population_series(c.pop, reference_country);
    Json matches = Json::array();
    for (const auto& m : results) matches.push_back(match_json(m));
    r.report = Json{{"command", "match"},
                    {"reference", reference_country},
                    {"matches", matches},
                    {"report", report_rows_json(match_report(results, corr))}};
    return r;
}

inline RunOutput compute(const RunConfig& c) {
    check_params(c);
    check_files(c);
    if (c.command == "ingest") return cmd_ingest(c);
    if (c.command == "curve") return cmd_curve(c);
    if (c.command == "peak") return cmd_peak(c);
    if (c.command == "scale") return cmd_scale(c);
    if (c.command == "gini") return cmd_gini(c);
    if (c.command == "tail") return cmd_tail(c);
    if (c.command == "calibrate") return cmd_calibrate(c);
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "match") return cmd_match(c);
    throw ValidationError("unknown subcommand '" + c.command + "'");
}

/// Writes every artifact under a staging name, then renames them into place.
inline void write_artifacts(const std::string& dir, const std::vector<Artifact>& files) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ValidationError(dir + ": cannot create output directory: " + ec.message());
    std::vector<fs::path> staged;
    auto discard = [&] {
        for (const auto& p : staged) fs::remove(p, ec);
    };
    for (const auto& f : files) {
        fs::path tmp = fs::path(dir) / (f.name + ".tmp");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (out) staged.push_back(tmp);
        out << f.content;
        out.close();
        if (!out) {
            discard();
            throw ValidationError(tmp.string() + ": cannot write");
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        fs::rename(staged[i], fs::path(dir) / files[i].name, ec);
        if (ec) {
            discard();
            throw ValidationError(files[i].name + ": cannot move into place: " + ec.message());
        }
    }
}

}  // namespace detail

/// Schema problems in every file the config names, without running anything.
inline Diagnostics validate(const RunConfig& c) {
    Diagnostics d;
    auto guard = [&](const std::string& path, auto&& parse) {
        if (path.empty()) return;
        if (!std::filesystem::is_regular_file(path)) {
            d.push_back({path, 0, "no such file"});
            return;
        }
        try {
            parse(path);
        } catch (const Error& e) {
            d.push_back({path, 0, e.what()});
        }
    };
    for (const auto& g : c.gdp) guard(g, [&](const std::string& p) { parse_gdp_table(p, &d); });
    guard(c.pop, [&](const std::string& p) { parse_population_table(p, &d); });
    guard(c.income, [&](const std::string& p) { parse_binned_tables(p, &d); });
    guard(c.library, [&](const std::string& p) { parse_binned_tables(p, &d); });
    guard(c.counts, [&](const std::string& p) { parse_binned_tables(p, &d); });
    guard(c.micro, [&](const std::string& p) { parse_microdata(p, &d); });
    guard(c.dist, [&](const std::string& p) { parse_income_dist(p, &d); });
    guard(c.curve, [&](const std::string& p) { parse_curve_csv(p, "curve"); });
    guard(c.config, [&](const std::string& p) { load_params(p); });
    try {
        detail::check_params(c);
    } catch (const Error& e) {
        d.push_back({"flags", 0, e.what()});
    }
    return d;
}

/// Runs one subcommand. Returns the process exit status; the report goes to `out` and `<config.out>/report.json`.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        if (c.command == "validate") {
            Diagnostics d = validate(c);
            for (const auto& x : d) out << format_diagnostic(x) << "\n";
            if (d.empty()) out << "ok\n";
            return d.empty() ? kExitOk : kExitInvalid;
        }
        RunOutput r = detail::compute(c);
        std::string report = r.report.dump(2) + "\n";
        r.files.insert(r.files.begin(), {"report.json", report});
        detail::write_artifacts(c.out, r.files);
        out << report;
        return kExitOk;
    } catch (const InsufficientDataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInsufficient;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace pidkit
