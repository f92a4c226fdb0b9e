#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace phismooth {

struct SigmaOptions {
    bool allow_resample = false;  // resample chi onto the solver step on mismatch
    bool force_log = false;       // fill the log companion even without underflow
};

namespace detail {

struct SolverGrid {
    std::size_t N;    // last index, U = N*h
    std::size_t one;  // index of u = 1
};

inline SolverGrid check_solver_params(double U, double h) {
    if (!(h > 0.0) || h > 1.0 / 16.0 + 1e-15)
        throw std::domain_error("volterra: need 0 < h <= 1/16");
    auto per_unit = std::llround(1.0 / h);
    if (per_unit < 16 || std::fabs(double(per_unit) * h - 1.0) > 1e-12)
        throw std::domain_error("volterra: 1/h must be an integer");
    if (!(U >= 1.0)) throw std::domain_error("volterra: U must be >= 1");
    auto N = std::llround(U / h);
    if (N < per_unit || std::fabs(double(N) * h - U) > 1e-9)
        throw std::domain_error("volterra: U must be a multiple of h");
    return {(std::size_t)N, (std::size_t)per_unit};
}

// rerun of the recurrence in log space via log-sum-exp, same weights and order
inline void fill_log_companion(GridFunction& s, const GridFunction& c, std::size_t one,
                               std::size_t J) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::size_t N = s.values.size() - 1;
    std::vector<double> lc(c.values.size());
    for (std::size_t j = 0; j < c.values.size(); ++j)
        lc[j] = c.values[j] == 0.0 && c.logv.empty() ? neg_inf : c.log_value(j);

    std::vector<double> lv(N + 1, 0.0);
    std::vector<double> t;
    const double lhalf = std::log(0.5);
    for (std::size_t i = one + 1; i <= N; ++i) {
        std::size_t M = std::min(i, J);
        t.clear();
        double mx = neg_inf;
        for (std::size_t j = 1; j <= M; ++j) {
            double v = lv[i - j] + lc[j] + (j == M ? lhalf : 0.0);
            t.push_back(v);
            if (v > mx) mx = v;
        }
        double sum = 0.0;
        for (double v : t)
            if (v != neg_inf) sum += std::exp(v - mx);
        lv[i] = mx + std::log(sum) - std::log(double(i) - 0.5);
    }
    s.logv = std::move(lv);
}

}  // namespace detail

// implicit trapezoid march for u*sigma(u) = integral_0^u sigma(u-t) chi(t) dt,
// sigma = 1 on [0,1]. Integration stops at the chi support edge with a half
// weight there: the trapezoid rule for the jump cell, keeping the scheme
// second order for indicator chi.
inline GridFunction solve_sigma(const GridFunction& chi, double U, double h,
                                SigmaOptions opt = {}) {
    auto [N, one] = detail::check_solver_params(U, h);
    validate_chi(chi);

    const GridFunction* cp = &chi;
    GridFunction resampled;
    if (std::fabs(chi.h - h) > 1e-12) {
        if (!opt.allow_resample)
            throw std::domain_error("solve_sigma: chi step mismatch (resampling disabled)");
        resampled = resample_grid(chi, h);
        cp = &resampled;
    }
    const GridFunction& c = *cp;
    if (!c.compact_support && c.umax() < U - 1e-9)
        throw std::domain_error("solve_sigma: chi must cover [0,U] unless compact-support");

    std::size_t J = c.compact_support ? c.support_end() : c.values.size() - 1;

    GridFunction s;
    s.h = h;
    s.values.assign(N + 1, 1.0);
    bool underflow = opt.force_log;
    for (std::size_t i = one + 1; i <= N; ++i) {
        std::size_t M = std::min(i, J);
        double acc = 0.0;
        for (std::size_t j = 1; j < M; ++j) acc += s.values[i - j] * c.values[j];
        acc += 0.5 * s.values[i - M] * c.values[M];
        // the t=0 half weight carries chi(0)=1 and moves to the left side
        double v = acc / (double(i) - 0.5);
        if (v < 0.0) v = 0.0;
        s.values[i] = v;
        if (v < 1e-300) underflow = true;
    }
    if (underflow) detail::fill_log_companion(s, c, one, J);
    return s;
}

inline GridFunction dickman_rho(double U, double h) {
    detail::check_solver_params(U, h);
    return solve_sigma(indicator_chi(1.0, h), U, h);
}

// sigma_0 = rho, sigma_{j+1} solves the equation with chi = sigma_j
inline std::vector<GridFunction> iterate_sigma(int k, double U, double h,
                                               SigmaOptions opt = {}) {
    if (k < 0) throw std::domain_error("iterate_sigma: k must be >= 0");
    std::vector<GridFunction> out;
    out.reserve(std::size_t(k) + 1);
    out.push_back(dickman_rho(U, h));
    for (int j = 0; j < k; ++j) out.push_back(solve_sigma(out.back(), U, h, opt));
    return out;
}

// worst |u*sigma(u) - Q(u)| / (h^2 u) over grid u > 1, Q the trapezoid quadrature
// of the equation's right side
inline double residual_C(const GridFunction& s, const GridFunction& chi) {
    validate_chi(s);
    validate_chi(chi);
    if (std::fabs(s.h - chi.h) > 1e-12)
        throw std::domain_error("residual_C: step mismatch");
    double h = s.h;
    auto one = (std::size_t)std::llround(1.0 / h);
    std::size_t J = chi.compact_support ? chi.support_end() : chi.values.size() - 1;
    std::size_t N = s.values.size() - 1;
    double worst = 0.0;
    for (std::size_t i = one + 1; i <= N; ++i) {
        std::size_t M = std::min(i, J);
        double acc = 0.5 * s.values[i];
        for (std::size_t j = 1; j < M; ++j) acc += s.values[i - j] * chi.values[j];
        acc += 0.5 * s.values[i - M] * chi.values[M];
        double u = double(i) * h;
        worst = std::max(worst, std::fabs(u * s.values[i] - h * acc) / (h * h * u));
    }
    return worst;
}

}  // namespace phismooth
