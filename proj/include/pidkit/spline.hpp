#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "pidkit/error.hpp"

namespace pidkit {

/// Natural cubic spline (zero second derivative at both ends), backed by GSL.
class NaturalSpline {
public:
    NaturalSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size()) throw DomainError("spline: x and y differ in length");
        if (x_.size() < 3) throw InsufficientDataError("spline needs at least 3 points, got " + std::to_string(x_.size()));
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1])) throw DomainError("spline: abscissae must be strictly increasing");
        interp_.reset(gsl_interp_alloc(gsl_interp_cspline, x_.size()));
        if (!interp_ || gsl_interp_init(interp_.get(), x_.data(), y_.data(), x_.size()) != GSL_SUCCESS)
            throw DomainError("spline: initialisation failed");
    }

    double lo() const noexcept { return x_.front(); }
    double hi() const noexcept { return x_.back(); }

    /// Value at `x`; points within 1e-9 outside the support are clamped onto it.
    double operator()(double x) const {
        const double tol = 1e-9 * std::max(1.0, std::abs(hi()));
        if (x < lo() - tol || x > hi() + tol) throw DomainError("spline: evaluation outside the support");
        x = std::clamp(x, lo(), hi());
        double out = 0.0;
        if (gsl_interp_eval_e(interp_.get(), x_.data(), y_.data(), x, nullptr, &out) != GSL_SUCCESS)
            throw DomainError("spline: evaluation failed");
        return out;
    }

private:
    struct Free {
        void operator()(gsl_interp* p) const noexcept { gsl_interp_free(p); }
    };
    std::vector<double> x_, y_;
    std::unique_ptr<gsl_interp, Free> interp_;
};

/// x0 + k*step for k = 0..floor((x1-x0)/step).
inline std::vector<double> uniform_grid(double x0, double x1, double step) {
    if (!(step > 0.0)) throw DomainError("grid step must be positive");
    const auto n = static_cast<std::size_t>(std::floor((x1 - x0) / step + 1e-9));
    std::vector<double> g(n + 1);
    for (std::size_t k = 0; k <= n; ++k) g[k] = x0 + static_cast<double>(k) * step;
    return g;
}

}  // namespace pidkit
