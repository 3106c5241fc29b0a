#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pidkit/cli.hpp"

namespace {

void add_flags(CLI::App* app, pidkit::RunConfig& c) {
    app->add_option("--gdp", c.gdp, "GDP table (country,year,gdp_pc); repeatable");
    app->add_option("--pop", c.pop, "Population table (country,year,total_pop,working_age_pop)");
    app->add_option("--income", c.income, "Binned income table; population table for `tail --counts`");
    app->add_option("--micro", c.micro, "Microdata (country,year,age,income,weight)");
    app->add_option("--curve", c.curve, "Curve file (work_exp,value,normalized)");
    app->add_option("--dist", c.dist, "Income distribution by age and income bin");
    app->add_option("--counts", c.counts, "Counts above a threshold per age bin");
    app->add_option("--library", c.library, "Reference library: binned table, or populations for tail matching");
    app->add_option("--config", c.config, "Model parameters (JSON)");
    app->add_option("--country", c.country, "Country code; `scale ratio` takes two");
    app->add_option("--year", c.year, "Table year");
    app->add_option("--from", c.from, "First year");
    app->add_option("--to", c.to, "Last year");
    app->add_option("--window", c.window, "Moving-average window")->capture_default_str();
    app->add_option("--grid", c.grid, "Spline grid step (years)")->capture_default_str();
    app->add_option("--threshold", c.threshold, "Income threshold");
    app->add_option("--portion", c.portion, "Target portion above threshold");
    app->add_option("--max-gap", c.max_gap, "Largest calibration gap before a warning")->capture_default_str();
    app->add_option("--level", c.level, "GDP per capita level");
    app->add_option("--t1", c.t1, "Base critical work experience");
    app->add_option("--g1", c.g1, "Base GDP per capita");
    app->add_option("--g2", c.g2, "New GDP per capita");
    app->add_option("--slope", c.slope, "Trend slope per year");
    app->add_option("--anchor-year", c.anchor_year, "Projection anchor year");
    app->add_option("--anchor-level", c.anchor_level, "Projection anchor level");
    app->add_option("--target", c.target, "Projection target level");
    app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app->add_option("--samples", c.samples, "Pareto sample size for `simulate`");
    app->add_option("--out", c.out, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pidkit: age-resolved personal income distribution toolkit"};
    app.require_subcommand(1);
    pidkit::RunConfig config;

    const char* plain[][2] = {
        {"ingest", "Parse inputs and apply the working-age GDP correction"},
        {"curve", "Build normalised mean-income curves"},
        {"peak", "Estimate the peak (critical) work experience"},
        {"gini", "Weighted Gini ratio of microdata"},
        {"tail", "Portions above an income threshold by age"},
        {"calibrate", "Pick the income edge nearest a target portion"},
        {"simulate", "Run the income-evolution model"},
        {"match", "Best-fitting reference year for a curve"},
        {"validate", "Report schema problems without running"},
    };
    for (const auto& [name, help] : plain) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_flags(sub, config);
        sub->callback([&config, n = std::string(name)] { config.command = n; });
    }
    CLI::App* scale = app.add_subcommand("scale", "Square-root GDP law, matching years, trends");
    scale->require_subcommand(1);
    for (const char* action : {"predict", "match-year", "trend", "project", "ratio"}) {
        CLI::App* sub = scale->add_subcommand(action);
        add_flags(sub, config);
        sub->callback([&config, a = std::string(action)] {
            config.command = "scale";
            config.action = a;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pidkit::kExitInvalid;
    }
    return pidkit::run(config);
}
