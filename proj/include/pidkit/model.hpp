#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "pidkit/curves.hpp"
#include "pidkit/error.hpp"
#include "pidkit/ingest.hpp"

namespace pidkit {

struct SigmaLevel {
    double sigma = 1.0;
    double weight = 1.0;
    bool operator==(const SigmaLevel&) const = default;
};

inline std::vector<SigmaLevel> default_sigma_grid() {
    std::vector<SigmaLevel> g;
    for (int s = 1; s <= 10; ++s) g.push_back({static_cast<double>(s), 0.1});
    return g;
}

/// Parameters of the income-evolution model. Defaults: Tc = 38.5 yr at the US 1998 level.
struct ModelParams {
    double lambda_ref = 12.0;
    double g_ref = 26853.0;
    double tc_ref = 38.5;
    double beta = std::log(2.0) / 25.0;  // halves 25 years past the peak
    std::vector<SigmaLevel> sigma_grid = default_sigma_grid();
    double pareto_index = 2.5;
    double dt = 0.01;
    double horizon = 60.0;  ///< last work-experience year simulated

    bool operator==(const ModelParams&) const = default;

    void validate() const {
        if (!(lambda_ref > 0.0)) throw DomainError("lambda_ref must be positive");
        if (!(g_ref > 0.0)) throw DomainError("g_ref must be positive");
        if (!(tc_ref > 0.0)) throw DomainError("tc_ref must be positive");
        if (!(beta > 0.0)) throw DomainError("beta must be positive");
        if (!(dt > 0.0)) throw DomainError("dt must be positive");
        if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
        if (!(pareto_index > 1.0)) throw DomainError("pareto_index must exceed 1");
        if (sigma_grid.empty()) throw DomainError("sigma_grid is empty");
        double sum = 0.0;
        for (const auto& s : sigma_grid) {
            if (!(s.sigma > 0.0)) throw DomainError("sigma levels must be positive");
            if (!(s.weight > 0.0)) throw DomainError("sigma weights must be positive");
            sum += s.weight;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw DomainError("sigma weights must sum to 1");
    }
};

/// Lambda(g) = lambda_ref * sqrt(g / g_ref).
inline double work_capital(double g, const ModelParams& p) {
    if (!(g > 0.0)) throw DomainError("GDP per capita must be positive");
    return p.lambda_ref * std::sqrt(g / p.g_ref);
}

/// Tc(g) = tc_ref * sqrt(g / g_ref).
inline double critical_work_exp(double g, const ModelParams& p) {
    if (!(g > 0.0)) throw DomainError("GDP per capita must be positive");
    return p.tc_ref * std::sqrt(g / p.g_ref);
}

struct IncomePath {
    std::vector<double> t;
    std::vector<double> m;
};

namespace detail {

struct Rhs {
    double sigma;
    double lambda;
};

inline int income_rhs(double, const double y[], double dydt[], void* params) {
    const auto* r = static_cast<const Rhs*>(params);
    dydt[0] = r->sigma - y[0] / r->lambda;
    return GSL_SUCCESS;
}

}  // namespace detail

/// dM/dt = sigma - M/lambda, M(0) = 0, by fixed-step RK4 on [0, t_end].
/// The step is shrunk to t_end/ceil(t_end/dt) so t_end is a node.
inline IncomePath integrate_income(double sigma, double lambda, double t_end, double dt) {
    if (!(sigma > 0.0) || !(lambda > 0.0) || !(dt > 0.0)) throw DomainError("sigma, lambda and dt must be positive");
    if (!(t_end >= 0.0)) throw DomainError("t_end must be nonnegative");
    if (dt > t_end) throw DomainError("dt exceeds the integration span");
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(n);

    detail::Rhs rhs{sigma, lambda};
    gsl_odeiv2_system sys{detail::income_rhs, nullptr, 1, &rhs};
    std::unique_ptr<gsl_odeiv2_step, void (*)(gsl_odeiv2_step*)> step(gsl_odeiv2_step_alloc(gsl_odeiv2_step_rk4, 1),
                                                                      gsl_odeiv2_step_free);
    if (!step) throw DomainError("could not allocate the ODE stepper");

    IncomePath path;
    path.t.reserve(n + 1);
    path.m.reserve(n + 1);
    double y[1] = {0.0}, yerr[1] = {0.0};
    path.t.push_back(0.0);
    path.m.push_back(0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        double t0 = static_cast<double>(k - 1) * h;
        if (gsl_odeiv2_step_apply(step.get(), t0, h, y, yerr, nullptr, nullptr, &sys) != GSL_SUCCESS)
            throw DomainError("ODE step failed");
        path.t.push_back(k == n ? t_end : static_cast<double>(k) * h);
        path.m.push_back(y[0]);
    }
    return path;
}

struct SimulatedCurve {
    double gdp_pc = 0.0;
    double lambda = 0.0;
    double critical_work_exp = 0.0;
    double beta = 0.0;
    std::vector<CurvePoint> points;

    MeanIncomeCurve to_curve(const std::string& label) const { return {label, points, false}; }
};

/// Weighted mean income over the sigma grid: saturation growth up to Tc(g),
/// then M(Tc) exp(-beta (t - Tc)) out to the horizon.
inline SimulatedCurve simulate_curve(double g, const ModelParams& p) {
    p.validate();
    SimulatedCurve c;
    c.gdp_pc = g;
    c.lambda = work_capital(g, p);
    c.critical_work_exp = critical_work_exp(g, p);
    c.beta = p.beta;
    const double tc = c.critical_work_exp;
    if (!(tc < p.horizon)) throw DomainError("critical work experience lies beyond the simulation horizon");

    std::vector<double> mean;
    std::vector<double> t;
    for (const auto& s : p.sigma_grid) {
        IncomePath path = integrate_income(s.sigma, c.lambda, tc, std::min(p.dt, tc));
        if (mean.empty()) {
            mean.assign(path.m.size(), 0.0);
            t = path.t;
        }
        for (std::size_t k = 0; k < path.m.size(); ++k) mean[k] += s.weight * path.m[k];
    }
    for (std::size_t k = 0; k < t.size(); ++k) c.points.push_back({t[k], mean[k], false});
    const double h = t.size() > 1 ? t[1] - t[0] : p.dt;
    const double top = mean.back();
    for (std::size_t k = 1;; ++k) {
        double tk = tc + static_cast<double>(k) * h;
        if (tk > p.horizon + 1e-9) break;
        c.points.push_back({tk, top * std::exp(-p.beta * (tk - tc)), false});
    }
    return c;
}

/// Weighted share of sigma levels whose income at work experience `t` exceeds `threshold`.
inline double predicted_tail_portion(double g, double threshold, double t, const ModelParams& p) {
    p.validate();
    if (!(t >= 0.0)) throw DomainError("work experience must be nonnegative");
    const double lambda = work_capital(g, p);
    const double tc = critical_work_exp(g, p);
    const double span = std::min(t, tc);
    double share = 0.0;
    for (const auto& s : p.sigma_grid) {
        double m = 0.0;
        if (span > 0.0) m = integrate_income(s.sigma, lambda, span, std::min(p.dt, span)).m.back();
        if (t > tc) m *= std::exp(-p.beta * (t - tc));
        if (m > threshold) share += s.weight;
    }
    return share;
}

/// Inverse Pareto CDF: x_m * u^(-1/k).
inline double pareto_quantile(double u, double k, double x_m) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("u must lie in (0, 1)");
    if (!(k > 0.0) || !(x_m > 0.0)) throw DomainError("Pareto index and scale must be positive");
    return x_m * std::pow(u, -1.0 / k);
}

/// Uniform draw in (0, 1) from the top 53 bits; identical on every platform.
inline double uniform_open01(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

/// Pareto(k, x_m) sample of unit-weight records with ages cycling 15..64.
inline MicrodataSet sample_pareto(double k, double x_m, std::size_t n, std::uint64_t seed) {
    if (!(k > 1.0)) throw DomainError("Pareto index must exceed 1");
    if (!(x_m > 0.0)) throw DomainError("Pareto scale must be positive");
    if (n < 1) throw DomainError("sample size must be at least 1");
    std::mt19937_64 gen(seed);
    MicrodataSet set{"PARETO", 0, {}};
    set.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        set.records.push_back({15 + static_cast<int>(i % 50), pareto_quantile(uniform_open01(gen), k, x_m), 1.0});
    return set;
}

}  // namespace pidkit
