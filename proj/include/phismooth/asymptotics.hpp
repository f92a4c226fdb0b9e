#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "format.hpp"
#include "grid.hpp"

namespace phismooth {

struct XiResult {
    double u = 0.0;
    double xi = 0.0;
    double integral = 0.0;      // value of the defining integral at xi
    double residual = 0.0;      // |integral - u|
    double truncation_T = 0.0;  // upper integration limit used

    static std::string csv_header() { return "u,xi,integral,residual,truncation_T"; }
    std::string csv_row() const {
        return format_sig(u) + "," + format_sig(xi) + "," + format_sig(integral) + "," +
               format_sig(residual) + "," + format_sig(truncation_T);
    }
};

namespace detail {

struct ChiRange {
    std::size_t one;  // index of v = 1
    std::size_t J;    // last index carrying mass
};

inline ChiRange chi_exp_range(const GridFunction& chi) {
    validate_chi(chi);
    auto one = std::llround(1.0 / chi.h);
    if (one < 1 || std::fabs(double(one) * chi.h - 1.0) > 1e-9)
        throw std::domain_error("asymptotics: chi grid must place v = 1 on the grid");
    std::size_t J = chi.compact_support ? chi.support_end() : chi.values.size() - 1;
    return {(std::size_t)one, J};
}

inline bool has_mass_beyond_one(const GridFunction& chi) {
    auto one = (std::size_t)std::llround(1.0 / chi.h);
    for (std::size_t j = one + 1; j < chi.values.size(); ++j)
        if (chi.values[j] > 0.0) return true;
    return false;
}

struct TruncIntegral {
    double value;
    double T;
};

// trapezoid of chi(v) e^{xi v} from v = 1; non-compact chi stops once the
// integrand stays below 1e-16 of the running total for 10 consecutive steps
inline TruncIntegral chi_exp_integral_trunc(const GridFunction& chi, double xi) {
    auto [one, J] = chi_exp_range(chi);
    const double inf = std::numeric_limits<double>::infinity();
    if (J <= one) return {0.0, double(one) * chi.h};
    bool cut = !chi.compact_support;
    double raw = 0.0, t_first = 0.0, t_last = 0.0;
    std::size_t je = J;
    int consec = 0;
    for (std::size_t j = one; j <= J; ++j) {
        double v = double(j) * chi.h;
        double a = xi * v;
        if (a > 709.0) return {inf, v};
        double term = chi.values[j] == 0.0 ? 0.0 : chi.values[j] * std::exp(a);
        raw += term;
        if (std::isinf(raw)) return {inf, v};
        if (j == one) t_first = term;
        t_last = term;
        je = j;
        if (cut && j > one) {
            if (term < 1e-16 * chi.h * raw) {
                if (++consec >= 10) break;
            } else {
                consec = 0;
            }
        }
    }
    return {chi.h * (raw - 0.5 * (t_first + t_last)), double(je) * chi.h};
}

// trapezoid of chi(v) e^{xi v} / v over [1, T]
inline double chi_exp_over_v_integral(const GridFunction& chi, double xi, double T) {
    auto [one, J] = chi_exp_range(chi);
    auto je = std::min<std::size_t>(J, (std::size_t)std::llround(T / chi.h));
    if (je <= one) return 0.0;
    double acc = 0.0;
    for (std::size_t j = one; j <= je; ++j) {
        if (chi.values[j] == 0.0) continue;
        double v = double(j) * chi.h;
        double w = (j == one || j == je) ? 0.5 : 1.0;
        acc += w * chi.values[j] * std::exp(xi * v) / v;
    }
    return chi.h * acc;
}

}  // namespace detail

// full-range trapezoid of chi(v) e^{xi v} over [1, support edge]
inline double chi_exp_integral(const GridFunction& chi, double xi) {
    auto [one, J] = detail::chi_exp_range(chi);
    if (J <= one) return 0.0;
    double acc = 0.0;
    for (std::size_t j = one; j <= J; ++j) {
        if (chi.values[j] == 0.0) continue;
        double a = xi * double(j) * chi.h;
        if (a > 709.0) return std::numeric_limits<double>::infinity();
        double w = (j == one || j == J) ? 0.5 : 1.0;
        acc += w * chi.values[j] * std::exp(a);
    }
    return chi.h * acc;
}

// root of u = integral of chi(v) e^{xi v} over v >= 1; the integral is strictly
// increasing in xi, so an expanding bracket plus bisection is exact
inline XiResult solve_xi(const GridFunction& chi, double u) {
    detail::chi_exp_range(chi);
    if (!(u > 0.0)) throw std::domain_error("solve_xi: u must be positive");
    if (!detail::has_mass_beyond_one(chi))
        throw std::domain_error("solve_xi: chi carries no mass beyond v = 1");

    auto eval = [&](double xi) { return detail::chi_exp_integral_trunc(chi, xi).value; };
    double lo = -1.0, hi = 1.0;
    while (eval(lo) > u) {
        lo *= 2.0;
        if (-lo > 1e6) throw std::runtime_error("solve_xi: bracket expansion failed (low)");
    }
    while (eval(hi) < u) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("solve_xi: bracket expansion failed (high)");
    }

    double xi = 0.0;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
        xi = 0.5 * (lo + hi);
        double v = eval(xi);
        if (v < u) lo = xi; else hi = xi;
        if (hi - lo <= 1e-12 * std::max(1.0, std::fabs(xi)) &&
            std::fabs(v - u) <= 1e-9 * u) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("solve_xi: bisection did not converge");

    auto ti = detail::chi_exp_integral_trunc(chi, xi);
    double residual = std::fabs(ti.value - u);
    if (residual > 1e-9 * u)
        throw std::runtime_error("solve_xi: residual tolerance not reached");
    return {u, xi, ti.value, residual, ti.T};
}

namespace detail {

// chi supported inside [0,1] (so identically 1 there): classical smooth-density
// saddle point s with u = integral_0^1 e^{s v} dv, estimate
// -u s + integral_0^1 (e^{s v} - 1)/v dv
inline double dickman_saddle_estimate(const GridFunction& chi, double u) {
    auto one = (std::size_t)std::llround(1.0 / chi.h);
    double h = chi.h;
    auto I0 = [&](double s) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= one; ++j) {
            double a = s * double(j) * h;
            if (a > 709.0) return std::numeric_limits<double>::infinity();
            double w = (j == 0 || j == one) ? 0.5 : 1.0;
            acc += w * std::exp(a);
        }
        return h * acc;
    };
    double lo = -1.0, hi = 1.0;
    while (I0(lo) > u) {
        lo *= 2.0;
        if (-lo > 1e6) throw std::runtime_error("sigma_estimate: bracket expansion failed");
    }
    while (I0(hi) < u) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("sigma_estimate: bracket expansion failed");
    }
    double s = 0.0;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
        s = 0.5 * (lo + hi);
        double v = I0(s);
        if (v < u) lo = s; else hi = s;
        if (hi - lo <= 1e-12 * std::max(1.0, std::fabs(s)) &&
            std::fabs(v - u) <= 1e-9 * std::max(1.0, u)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("sigma_estimate: bisection did not converge");

    double second = 0.0;
    for (std::size_t j = 0; j <= one; ++j) {
        double v = double(j) * h;
        double g = j == 0 ? s : std::expm1(s * v) / v;
        double w = (j == 0 || j == one) ? 0.5 : 1.0;
        second += w * g;
    }
    return -u * s + h * second;
}

}  // namespace detail

// log-scale saddle-point estimate -xi(u) u + integral of chi(v) e^{xi v}/v over v >= 1
inline double sigma_estimate(const GridFunction& chi, double u) {
    detail::chi_exp_range(chi);
    if (!(u > 0.0)) throw std::domain_error("sigma_estimate: u must be positive");
    if (!detail::has_mass_beyond_one(chi))
        return detail::dickman_saddle_estimate(chi, u);
    XiResult xr = solve_xi(chi, u);
    return -xr.xi * u + detail::chi_exp_over_v_integral(chi, xr.xi, xr.truncation_T);
}

// leading-order saddle point log(u)/T for the indicator of [0,T]
inline double prop3_xi(double T, double u) {
    if (!(T > 1.0)) throw std::domain_error("prop3_xi: T must exceed 1");
    if (!(u > 1.0)) throw std::domain_error("prop3_xi: u must exceed 1");
    return std::log(u) / T;
}

// k-fold natural log; every nested value must stay positive
inline double iterated_log(int k, double u) {
    if (k < 0) throw std::domain_error("iterated_log: k must be >= 0");
    double v = u;
    for (int i = 0; i < k; ++i) {
        v = std::log(v);
        if (!(v > 0.0)) throw std::domain_error("iterated_log: nested log not positive");
    }
    return v;
}

// positive non-decreasing h with known limit n of u h'(u)/h(u)
struct HSpec {
    enum class Kind { u_log_u, log_product, tabulated };
    Kind kind = Kind::u_log_u;
    int k = 1;                   // depth for the log_k * log_{k+1} family
    double n = 1.0;              // limit of u h'(u)/h(u)
    std::vector<double> vs, hs;  // tabulated nodes

    double value(double v) const {
        switch (kind) {
            case Kind::u_log_u:
                if (!(v > 1.0)) throw std::domain_error("HSpec: u log u needs v > 1");
                return v * std::log(v);
            case Kind::log_product:
                return iterated_log(k, v) * iterated_log(k + 1, v);
            case Kind::tabulated: {
                if (vs.empty() || v < vs.front() || v > vs.back())
                    throw std::domain_error("HSpec: v outside tabulated range");
                auto it = std::lower_bound(vs.begin(), vs.end(), v);
                if (it == vs.begin()) return hs.front();
                std::size_t i = std::size_t(it - vs.begin()) - 1;
                double w = (v - vs[i]) / (vs[i + 1] - vs[i]);
                return hs[i] * (1.0 - w) + hs[i + 1] * w;
            }
        }
        throw std::logic_error("HSpec: unknown kind");
    }
};

inline HSpec hspec_u_log_u() {
    HSpec s;
    s.kind = HSpec::Kind::u_log_u;
    s.n = 1.0;
    return s;
}

inline HSpec hspec_log_product(int k) {
    if (k < 1) throw std::domain_error("hspec_log_product: k must be >= 1");
    HSpec s;
    s.kind = HSpec::Kind::log_product;
    s.k = k;
    s.n = 0.0;
    return s;
}

inline HSpec hspec_tabulated(std::vector<double> vs, std::vector<double> hs, double n) {
    if (vs.size() != hs.size() || vs.size() < 2)
        throw std::domain_error("hspec_tabulated: need two or more matching nodes");
    if (!(n >= 0.0)) throw std::domain_error("hspec_tabulated: n must be >= 0");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!(hs[i] > 0.0)) throw std::domain_error("hspec_tabulated: h must be positive");
        if (i > 0 && !(vs[i] > vs[i - 1]))
            throw std::domain_error("hspec_tabulated: nodes must increase");
        if (i > 0 && hs[i] < hs[i - 1])
            throw std::domain_error("hspec_tabulated: h must be non-decreasing");
    }
    HSpec s;
    s.kind = HSpec::Kind::tabulated;
    s.n = n;
    s.vs = std::move(vs);
    s.hs = std::move(hs);
    return s;
}

// log-scale estimate -u log h(zeta log u) with zeta = e/n for n > 0, zeta = 1 for n = 0
inline double prop4_sigma(const HSpec& hspec, double u) {
    if (!(u > 1.0)) throw std::domain_error("prop4_sigma: u must exceed 1");
    double zeta = hspec.n > 0.0 ? std::exp(1.0) / hspec.n : 1.0;
    double hv = hspec.value(zeta * std::log(u));
    if (!(hv > 0.0)) throw std::domain_error("prop4_sigma: h not positive at zeta log u");
    return -u * std::log(hv);
}

// both sides of the lower-bound shape: integral of chi e^{(xi+eps)v} >= u^{1+eps/(2 xi)}
inline std::pair<double, double> lemma51_sides(const GridFunction& chi, double u, double eps) {
    XiResult xr = solve_xi(chi, u);
    if (!(xr.xi > 0.0)) throw std::domain_error("lemma51_sides: requires xi(u) > 0");
    return {chi_exp_integral(chi, xr.xi + eps), std::pow(u, 1.0 + eps / (2.0 * xr.xi))};
}

}  // namespace phismooth
