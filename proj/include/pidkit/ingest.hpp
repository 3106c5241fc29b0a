#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pidkit/csv.hpp"
#include "pidkit/error.hpp"

namespace pidkit {

// ---------------------------------------------------------------------------
// Types

struct GdpPoint {
    int year = 0;
    double gdp_pc = 0.0;
    bool operator==(const GdpPoint&) const = default;
};

/// Annual real GDP per capita for one country.
struct GdpSeries {
    std::string country;
    std::vector<GdpPoint> points;

    bool operator==(const GdpSeries&) const = default;

    std::optional<double> at(int year) const {
        auto it = std::lower_bound(points.begin(), points.end(), year,
                                   [](const GdpPoint& p, int y) { return p.year < y; });
        if (it == points.end() || it->year != year) return std::nullopt;
        return it->gdp_pc;
    }
};

struct PopulationPoint {
    int year = 0;
    double total = 0.0;
    double working_age = 0.0;
    bool operator==(const PopulationPoint&) const = default;
};

struct PopulationSeries {
    std::string country;
    std::vector<PopulationPoint> points;

    bool operator==(const PopulationSeries&) const = default;

    const PopulationPoint* find(int year) const {
        for (const auto& p : points)
            if (p.year == year) return &p;
        return nullptr;
    }

    /// total / working_age for a year; throws InsufficientDataError when absent.
    double ratio(int year) const {
        const PopulationPoint* p = find(year);
        if (!p) throw InsufficientDataError("population for " + country + " has no year " + std::to_string(year));
        return p->total / p->working_age;
    }
};

/// Age bin; a missing edge marks an open-ended bin ("under 20", "65 and over").
struct AgeRange {
    std::optional<int> lo;
    std::optional<int> hi;

    bool operator==(const AgeRange&) const = default;

    bool open() const noexcept { return !lo || !hi; }

    std::string label() const {
        return (lo ? std::to_string(*lo) : std::string()) + "-" + (hi ? std::to_string(*hi) : std::string());
    }
};

/// Canonical order: a leading open bin first, then ascending lower edge.
inline bool age_order(const AgeRange& a, const AgeRange& b) {
    if (!a.lo || !b.lo) return !a.lo && b.lo;
    if (*a.lo != *b.lo) return *a.lo < *b.lo;
    return a.hi.value_or(1 << 30) < b.hi.value_or(1 << 30);
}

struct AgeBin {
    AgeRange age;
    double persons = 0.0;
    double mean_income = 0.0;
    bool flagged = false;  ///< zero population; mean forced to 0
    bool operator==(const AgeBin&) const = default;
};

struct BinnedIncomeTable {
    std::string country;
    int year = 0;
    std::string currency;
    std::vector<AgeBin> bins;

    bool operator==(const BinnedIncomeTable&) const = default;

    std::string label() const { return country + "_" + std::to_string(year); }
};

struct MicroRecord {
    int age = 0;
    double income = 0.0;
    double weight = 0.0;
    bool operator==(const MicroRecord&) const = default;
};

struct MicrodataSet {
    std::string country;
    int year = 0;
    std::vector<MicroRecord> records;
    bool operator==(const MicrodataSet&) const = default;
};

/// Persons per (age bin, income bin). A missing income_hi marks the open top bin.
struct DistCell {
    AgeRange age;
    double income_lo = 0.0;
    std::optional<double> income_hi;
    double persons = 0.0;
    bool operator==(const DistCell&) const = default;
};

struct IncomeDistTable {
    std::string country;
    int year = 0;
    std::string currency;
    std::vector<DistCell> cells;  ///< sorted by age bin, then income_lo

    bool operator==(const IncomeDistTable&) const = default;

    std::string label() const { return country + "_" + std::to_string(year); }

    std::vector<AgeRange> age_bins() const {
        std::vector<AgeRange> out;
        for (const auto& c : cells)
            if (out.empty() || !(out.back() == c.age)) out.push_back(c.age);
        return out;
    }

    /// Lower edges of the income bins, ascending.
    std::vector<double> income_edges() const {
        std::vector<double> out;
        for (const auto& c : cells)
            if (c.age == cells.front().age) out.push_back(c.income_lo);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Validation of in-memory values

namespace detail {

inline void check_series_points(IssueSink& sink, const std::string& country, std::size_t n_points) {
    if (n_points < 2) sink.report(0, "series " + country + " needs at least 2 points");
}

/// Sorts bins canonically and reports layout problems. `lines` runs parallel to `bins` (may be empty).
inline void check_age_layout(IssueSink& sink, std::vector<AgeBin>& bins, std::vector<std::size_t> lines,
                             const std::string& what) {
    if (lines.size() != bins.size()) lines.assign(bins.size(), 0);
    std::vector<std::size_t> idx(bins.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return age_order(bins[a].age, bins[b].age); });
    std::vector<AgeBin> sorted;
    std::vector<std::size_t> sorted_lines;
    for (std::size_t i : idx) {
        sorted.push_back(bins[i]);
        sorted_lines.push_back(lines[i]);
    }
    bins = std::move(sorted);
    lines = std::move(sorted_lines);

    auto rows = [&](std::size_t a, std::size_t b) {
        if (lines[a] == 0) return std::string();
        return " (rows " + std::to_string(lines[a]) + " and " + std::to_string(lines[b]) + ")";
    };
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const AgeRange& r = bins[i].age;
        if (!r.lo && !r.hi) sink.report(lines[i], what + ": bin with neither edge");
        if (r.lo && r.hi && *r.lo > *r.hi) sink.report(lines[i], what + ": bin " + r.label() + " has lo > hi");
        if (!r.lo && i != 0) sink.report(lines[i], what + ": second open lower bin " + r.label());
        if (!r.hi && i + 1 != bins.size())
            sink.report(lines[i], what + ": open upper bin " + r.label() + " is not the last bin");
        if (i > 0) {
            const AgeRange& p = bins[i - 1].age;
            if (p.hi && r.lo && *r.lo <= *p.hi)
                sink.report(lines[i], what + ": bins " + p.label() + " and " + r.label() + " overlap" + rows(i - 1, i));
        }
    }
}

}  // namespace detail

/// Throws ValidationError when a table breaks its invariants. Sorts the bins canonically.
inline void validate_table(BinnedIncomeTable& t) {
    IssueSink sink(t.label(), nullptr);
    if (t.bins.empty()) sink.report(0, "table has no bins");
    for (const auto& b : t.bins) {
        if (!(b.persons >= 0.0)) sink.report(0, "negative persons in bin " + b.age.label());
        if (!(b.mean_income >= 0.0)) sink.report(0, "negative mean income in bin " + b.age.label());
    }
    detail::check_age_layout(sink, t.bins, {}, t.label());
}

inline void validate_series(const GdpSeries& s) {
    if (s.points.size() < 2) throw ValidationError("series " + s.country + " needs at least 2 points");
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (!(s.points[i].gdp_pc > 0.0))
            throw ValidationError("series " + s.country + ": nonpositive GDP in " + std::to_string(s.points[i].year));
        if (i > 0 && s.points[i].year <= s.points[i - 1].year)
            throw ValidationError("series " + s.country + ": years not strictly increasing at " +
                                  std::to_string(s.points[i].year));
    }
}

// ---------------------------------------------------------------------------
// Parsers. With `diag` set, problems are collected and parsing continues;
// without it the first problem throws ValidationError.

inline std::map<std::string, GdpSeries> parse_gdp_table(const std::string& path, Diagnostics* diag = nullptr) {
    IssueSink sink(path, diag);
    CsvFile f = read_csv(path);
    const std::vector<std::string> cols{"country", "year", "gdp_pc"};
    if (!header_is(f, cols)) {
        sink.report(1, "header must be " + join_columns(cols));
        return {};
    }
    std::map<std::string, GdpSeries> out;
    std::map<std::pair<std::string, int>, std::size_t> seen;
    for (const auto& row : f.rows) {
        if (row.fields.size() != cols.size()) {
            sink.report(row.line, "expected 3 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        auto year = parse_int(row.fields[1]);
        auto gdp = parse_double(row.fields[2]);
        if (row.fields[0].empty() || !year || !gdp) {
            sink.report(row.line, "malformed row");
            continue;
        }
        if (*gdp <= 0.0) {
            sink.report(row.line, "nonpositive GDP " + row.fields[2]);
            continue;
        }
        auto key = std::make_pair(row.fields[0], static_cast<int>(*year));
        if (auto it = seen.find(key); it != seen.end()) {
            sink.report(row.line, "duplicate year " + std::to_string(*year) + " for " + row.fields[0] +
                                      " (first at row " + std::to_string(it->second) + ")");
            continue;
        }
        seen.emplace(key, row.line);
        auto& s = out[row.fields[0]];
        s.country = row.fields[0];
        s.points.push_back({static_cast<int>(*year), *gdp});
    }
    if (out.empty() && sink.count() == 0) sink.report(0, "no data rows");
    for (auto& [code, s] : out) {
        std::sort(s.points.begin(), s.points.end(), [](const GdpPoint& a, const GdpPoint& b) { return a.year < b.year; });
        detail::check_series_points(sink, code, s.points.size());
    }
    return out;
}

namespace detail {

template <class Map>
auto pick_country(const Map& all, const std::string& country, const std::string& path) {
    if (!country.empty()) {
        auto it = all.find(country);
        if (it == all.end()) throw ValidationError(path + ": no rows for country " + country);
        return it->second;
    }
    if (all.size() != 1) {
        std::string names;
        for (const auto& kv : all) names += (names.empty() ? "" : ", ") + kv.first;
        throw ValidationError(path + ": several countries (" + names + "); pick one");
    }
    return all.begin()->second;
}

}  // namespace detail

/// One country's series from a GDP file. `country` may be empty when the file holds one country.
inline GdpSeries parse_gdp_series(const std::string& path, const std::string& country = "") {
    return detail::pick_country(parse_gdp_table(path), country, path);
}

inline std::map<std::string, PopulationSeries> parse_population_table(const std::string& path,
                                                                      Diagnostics* diag = nullptr) {
    IssueSink sink(path, diag);
    CsvFile f = read_csv(path);
    const std::vector<std::string> cols{"country", "year", "total_pop", "working_age_pop"};
    if (!header_is(f, cols)) {
        sink.report(1, "header must be " + join_columns(cols));
        return {};
    }
    std::map<std::string, PopulationSeries> out;
    std::set<std::pair<std::string, int>> seen;
    for (const auto& row : f.rows) {
        if (row.fields.size() != cols.size()) {
            sink.report(row.line, "expected 4 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        auto year = parse_int(row.fields[1]);
        auto total = parse_double(row.fields[2]);
        auto working = parse_double(row.fields[3]);
        if (row.fields[0].empty() || !year || !total || !working) {
            sink.report(row.line, "malformed row");
            continue;
        }
        if (*total <= 0.0 || *working <= 0.0) {
            sink.report(row.line, "population counts must be positive");
            continue;
        }
        if (*working > *total) {
            sink.report(row.line, "working-age population exceeds total");
            continue;
        }
        if (!seen.emplace(row.fields[0], static_cast<int>(*year)).second) {
            sink.report(row.line, "duplicate year " + std::to_string(*year));
            continue;
        }
        auto& s = out[row.fields[0]];
        s.country = row.fields[0];
        s.points.push_back({static_cast<int>(*year), *total, *working});
    }
    if (out.empty() && sink.count() == 0) sink.report(0, "no data rows");
    for (auto& [code, s] : out)
        std::sort(s.points.begin(), s.points.end(),
                  [](const PopulationPoint& a, const PopulationPoint& b) { return a.year < b.year; });
    return out;
}

inline PopulationSeries parse_population_series(const std::string& path, const std::string& country = "") {
    return detail::pick_country(parse_population_table(path), country, path);
}

namespace detail {

inline std::optional<int> optional_int(IssueSink& sink, std::size_t line, const std::string& s, bool& ok) {
    if (s.empty()) return std::nullopt;
    auto v = parse_int(s);
    if (!v) {
        sink.report(line, "malformed integer '" + s + "'");
        ok = false;
        return std::nullopt;
    }
    return static_cast<int>(*v);
}

}  // namespace detail

/// Every (country, year) table in a binned-income file, ordered by country then year.
/// Accepts `mean_income` or `total_income` as the last column.
inline std::vector<BinnedIncomeTable> parse_binned_tables(const std::string& path, Diagnostics* diag = nullptr) {
    IssueSink sink(path, diag);
    CsvFile f = read_csv(path);
    const std::vector<std::string> mean_cols{"country", "year", "currency", "age_lo", "age_hi", "persons", "mean_income"};
    const std::vector<std::string> total_cols{"country", "year", "currency", "age_lo", "age_hi", "persons", "total_income"};
    bool totals = header_is(f, total_cols);
    if (!totals && !header_is(f, mean_cols)) {
        sink.report(1, "header must be " + join_columns(mean_cols));
        return {};
    }
    std::map<std::pair<std::string, int>, BinnedIncomeTable> tables;
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> lines;
    for (const auto& row : f.rows) {
        const auto& v = row.fields;
        if (v.size() != mean_cols.size()) {
            sink.report(row.line, "expected 7 fields, got " + std::to_string(v.size()));
            continue;
        }
        bool ok = true;
        auto year = parse_int(v[1]);
        auto lo = detail::optional_int(sink, row.line, v[3], ok);
        auto hi = detail::optional_int(sink, row.line, v[4], ok);
        auto persons = parse_double(v[5]);
        auto income = parse_double(v[6]);
        if (!ok) continue;
        if (v[0].empty() || !year || !persons || !income) {
            sink.report(row.line, "malformed row");
            continue;
        }
        if (*persons < 0.0) {
            sink.report(row.line, "negative persons");
            continue;
        }
        if (*income < 0.0) {
            sink.report(row.line, "negative income");
            continue;
        }
        auto key = std::make_pair(v[0], static_cast<int>(*year));
        auto& t = tables[key];
        if (t.bins.empty()) {
            t.country = v[0];
            t.year = key.second;
            t.currency = v[2];
        } else if (t.currency != v[2]) {
            sink.report(row.line, "currency " + v[2] + " differs from " + t.currency + " in the same table");
            continue;
        }
        AgeBin b{{lo, hi}, *persons, *income, false};
        if (*persons == 0.0) {
            b.mean_income = 0.0;
            b.flagged = true;
        } else if (totals) {
            b.mean_income = *income / *persons;
        }
        t.bins.push_back(b);
        lines[key].push_back(row.line);
    }
    if (tables.empty() && sink.count() == 0) sink.report(0, "no data rows");
    std::vector<BinnedIncomeTable> out;
    for (auto& [key, t] : tables) {
        detail::check_age_layout(sink, t.bins, lines[key], t.label());
        out.push_back(std::move(t));
    }
    return out;
}

/// Selects one table; `country` and `year` may be left unset when the file is unambiguous.
inline BinnedIncomeTable select_table(const std::vector<BinnedIncomeTable>& tables, const std::string& country,
                                      std::optional<int> year, const std::string& path = "income table") {
    std::vector<const BinnedIncomeTable*> hits;
    for (const auto& t : tables)
        if ((country.empty() || t.country == country) && (!year || t.year == *year)) hits.push_back(&t);
    if (hits.empty())
        throw ValidationError(path + ": no table for " + (country.empty() ? "any country" : country) +
                              (year ? " in " + std::to_string(*year) : std::string()));
    if (hits.size() > 1) throw ValidationError(path + ": " + std::to_string(hits.size()) + " tables match; pass country and year");
    return *hits.front();
}

inline BinnedIncomeTable parse_binned_table(const std::string& path, const std::string& country = "",
                                            std::optional<int> year = std::nullopt) {
    return select_table(parse_binned_tables(path), country, year, path);
}

/// Reads a microdata file holding one (country, year) sample.
inline MicrodataSet parse_microdata(const std::string& path, Diagnostics* diag = nullptr) {
    IssueSink sink(path, diag);
    CsvFile f = read_csv(path);
    const std::vector<std::string> cols{"country", "year", "age", "income", "weight"};
    if (!header_is(f, cols)) {
        sink.report(1, "header must be " + join_columns(cols));
        return {};
    }
    MicrodataSet set;
    set.records.reserve(f.rows.size());
    bool first = true;
    for (const auto& row : f.rows) {
        const auto& v = row.fields;
        if (v.size() != cols.size()) {
            sink.report(row.line, "expected 5 fields, got " + std::to_string(v.size()));
            continue;
        }
        auto year = parse_int(v[1]);
        auto age = parse_int(v[2]);
        auto income = parse_double(v[3]);
        auto weight = parse_double(v[4]);
        if (v[0].empty() || !year || !age || !income || !weight) {
            sink.report(row.line, "malformed row");
            continue;
        }
        if (*age < 15) {
            sink.report(row.line, "age " + std::to_string(*age) + " below 15");
            continue;
        }
        if (*income < 0.0) {
            sink.report(row.line, "negative income");
            continue;
        }
        if (*weight <= 0.0) {
            sink.report(row.line, "weight must be positive");
            continue;
        }
        if (first) {
            set.country = v[0];
            set.year = static_cast<int>(*year);
            first = false;
        } else if (set.country != v[0] || set.year != *year) {
            sink.report(row.line, "mixed samples: " + v[0] + " " + v[1] + " after " + set.country + " " +
                                      std::to_string(set.year));
            continue;
        }
        set.records.push_back({static_cast<int>(*age), *income, *weight});
    }
    if (set.records.empty() && sink.count() == 0) sink.report(0, "no records");
    return set;
}

/// Every (country, year) table in an income-distribution file
/// (`country,year,currency,age_lo,age_hi,income_lo,income_hi,persons`).
inline std::vector<IncomeDistTable> parse_income_dist(const std::string& path, Diagnostics* diag = nullptr) {
    IssueSink sink(path, diag);
    CsvFile f = read_csv(path);
    const std::vector<std::string> cols{"country", "year", "currency", "age_lo", "age_hi", "income_lo", "income_hi", "persons"};
    if (!header_is(f, cols)) {
        sink.report(1, "header must be " + join_columns(cols));
        return {};
    }
    std::map<std::pair<std::string, int>, IncomeDistTable> tables;
    for (const auto& row : f.rows) {
        const auto& v = row.fields;
        if (v.size() != cols.size()) {
            sink.report(row.line, "expected 8 fields, got " + std::to_string(v.size()));
            continue;
        }
        bool ok = true;
        auto year = parse_int(v[1]);
        auto lo = detail::optional_int(sink, row.line, v[3], ok);
        auto hi = detail::optional_int(sink, row.line, v[4], ok);
        auto ilo = parse_double(v[5]);
        auto ihi = v[6].empty() ? std::optional<double>() : parse_double(v[6]);
        auto persons = parse_double(v[7]);
        if (!ok) continue;
        if (v[0].empty() || !year || !ilo || (!v[6].empty() && !ihi) || !persons) {
            sink.report(row.line, "malformed row");
            continue;
        }
        if (*persons < 0.0) {
            sink.report(row.line, "negative persons");
            continue;
        }
        if (ihi && *ihi <= *ilo) {
            sink.report(row.line, "income bin upper edge not above lower edge");
            continue;
        }
        auto& t = tables[{v[0], static_cast<int>(*year)}];
        if (t.cells.empty()) {
            t.country = v[0];
            t.year = static_cast<int>(*year);
            t.currency = v[2];
        }
        t.cells.push_back({{lo, hi}, *ilo, ihi, *persons});
    }
    if (tables.empty() && sink.count() == 0) sink.report(0, "no data rows");

    std::vector<IncomeDistTable> out;
    for (auto& [key, t] : tables) {
        std::stable_sort(t.cells.begin(), t.cells.end(), [](const DistCell& a, const DistCell& b) {
            if (!(a.age == b.age)) return age_order(a.age, b.age);
            return a.income_lo < b.income_lo;
        });
        // Age layout.
        std::vector<AgeBin> bins;
        for (const auto& r : t.age_bins()) bins.push_back({r, 0.0, 0.0, false});
        detail::check_age_layout(sink, bins, {}, t.label());
        // Every age bin carries the same contiguous income grid.
        std::vector<std::pair<double, std::optional<double>>> grid;
        for (const auto& c : t.cells)
            if (c.age == t.cells.front().age) grid.emplace_back(c.income_lo, c.income_hi);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (!grid[i].second || *grid[i].second != grid[i + 1].first)
                sink.report(0, t.label() + ": income bins are not contiguous at " + exact_number(grid[i].first));
        for (const auto& r : t.age_bins()) {
            std::vector<std::pair<double, std::optional<double>>> mine;
            for (const auto& c : t.cells)
                if (c.age == r) mine.emplace_back(c.income_lo, c.income_hi);
            if (mine != grid) sink.report(0, t.label() + ": age bin " + r.label() + " has a different income grid");
        }
        out.push_back(std::move(t));
    }
    return out;
}

inline IncomeDistTable select_dist(const std::vector<IncomeDistTable>& tables, const std::string& country,
                                   std::optional<int> year) {
    std::vector<const IncomeDistTable*> hits;
    for (const auto& t : tables)
        if ((country.empty() || t.country == country) && (!year || t.year == *year)) hits.push_back(&t);
    if (hits.empty()) throw ValidationError("no income-distribution table for the requested country/year");
    if (hits.size() > 1) throw ValidationError(std::to_string(hits.size()) + " income-distribution tables match; pass country and year");
    return *hits.front();
}

// ---------------------------------------------------------------------------

/// GDP per working-age person: each point times total/working_age of the same year.
inline GdpSeries correct_gdp_for_working_age(const GdpSeries& gdp, const PopulationSeries& pop) {
    GdpSeries out{gdp.country, {}};
    out.points.reserve(gdp.points.size());
    for (const auto& p : gdp.points) {
        const PopulationPoint* q = pop.find(p.year);
        if (!q) throw InsufficientDataError("population series " + pop.country + " lacks year " + std::to_string(p.year));
        out.points.push_back({p.year, p.gdp_pc * (q->total / q->working_age)});
    }
    return out;
}

}  // namespace pidkit
