#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "format.hpp"

namespace phismooth {

// uniformly sampled function on [0, N*h]: values[i] ~ f(i*h)
struct GridFunction {
    double h = 0.0;
    std::vector<double> values;
    bool compact_support = false;   // exact zero beyond the last nonzero sample
    std::vector<double> logv;       // log-scale companion, filled when values underflow

    std::size_t size() const { return values.size(); }
    double umax() const { return values.empty() ? 0.0 : h * double(values.size() - 1); }

    double log_value(std::size_t i) const {
        assert(i < values.size());
        return logv.empty() ? std::log(values[i]) : logv[i];
    }

    // last grid index with a nonzero value
    std::size_t support_end() const {
        std::size_t e = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] != 0.0) e = i;
        return e;
    }

    // linear interpolation; beyond umax compact support reads 0
    double operator()(double u) const {
        if (!(u >= 0.0)) throw std::domain_error("GridFunction: u < 0");
        double last = umax();
        if (u > last) {
            if (compact_support) return 0.0;
            if (u <= last + 1e-9 * (1.0 + last)) return values.back();
            throw std::out_of_range("GridFunction: u beyond umax");
        }
        double s = u / h;
        auto i = (std::size_t)s;
        if (i + 1 >= values.size()) return values.back();
        double w = s - double(i);
        return values[i] * (1.0 - w) + values[i + 1] * w;
    }

    // interpolated natural log, usable below the linear underflow floor
    double log_at(double u) const {
        if (!(u >= 0.0)) throw std::domain_error("GridFunction: u < 0");
        double last = umax();
        if (u > last + 1e-9 * (1.0 + last))
            throw std::out_of_range("GridFunction: u beyond umax");
        double s = std::min(u / h, double(values.size() - 1));
        auto i = (std::size_t)s;
        if (i + 1 >= values.size()) return log_value(values.size() - 1);
        double w = s - double(i);
        return log_value(i) * (1.0 - w) + log_value(i + 1) * w;
    }
};

// invariants for chi / rho / sigma grids: 1 on [0,1], bounded in [0,1]
inline void validate_chi(const GridFunction& g) {
    if (!(g.h > 0.0) || g.values.size() < 2)
        throw std::domain_error("chi grid: need h > 0 and at least two samples");
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        double v = g.values[i];
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("chi grid: values must lie in [0,1]");
        if (double(i) * g.h <= 1.0 + 1e-12 && v != 1.0)
            throw std::domain_error("chi grid: values must be 1 on [0,1]");
    }
}

// indicator of [0,T] sampled at step h; T must sit on the grid
inline GridFunction indicator_chi(double T, double h) {
    if (!(h > 0.0) || !(T >= 1.0))
        throw std::domain_error("indicator_chi: need h > 0 and T >= 1");
    auto n = (std::size_t)std::llround(T / h);
    if (n < 1 || std::fabs(double(n) * h - T) > 1e-9)
        throw std::domain_error("indicator_chi: T must be a multiple of h");
    GridFunction g;
    g.h = h;
    g.values.assign(n + 1, 1.0);
    g.compact_support = true;
    return g;
}

// linear resample onto a new step covering the same [0, umax]
inline GridFunction resample_grid(const GridFunction& g, double h_new) {
    if (!(h_new > 0.0)) throw std::domain_error("resample_grid: step must be positive");
    double U = g.umax();
    auto n = (std::size_t)std::llround(U / h_new);
    if (n < 1 || std::fabs(double(n) * h_new - U) > 1e-9)
        throw std::domain_error("resample_grid: umax must be a multiple of the new step");
    GridFunction r;
    r.h = h_new;
    r.compact_support = g.compact_support;
    r.values.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) r.values[i] = g(double(i) * h_new);
    return r;
}

inline void write_grid_csv(const GridFunction& g, std::ostream& out) {
    out << "u,value\n";
    for (std::size_t i = 0; i < g.values.size(); ++i)
        out << format_sig(double(i) * g.h) << "," << format_sig(g.values[i]) << "\n";
}

inline void write_grid_csv(const GridFunction& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path);
    write_grid_csv(g, out);
}

inline GridFunction read_grid_csv(std::istream& in) {
    auto strip = [](std::string& s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    };
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("grid csv: empty input");
    strip(line);
    if (line != "u,value") throw std::invalid_argument("grid csv: missing u,value header");
    GridFunction g;
    std::vector<double> us;
    while (std::getline(in, line)) {
        strip(line);
        if (line.empty()) continue;
        auto c = line.find(',');
        if (c == std::string::npos) throw std::invalid_argument("grid csv: malformed row");
        try {
            us.push_back(std::stod(line.substr(0, c)));
            g.values.push_back(std::stod(line.substr(c + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("grid csv: non-numeric field");
        }
    }
    if (g.values.size() < 2) throw std::invalid_argument("grid csv: need at least two rows");
    if (us[0] != 0.0 || g.values[0] != 1.0)
        throw std::invalid_argument("grid csv: first row must be 0,1");
    g.h = us[1];
    if (!(g.h > 0.0)) throw std::invalid_argument("grid csv: step must be positive");
    for (std::size_t i = 0; i < us.size(); ++i)
        if (std::fabs(us[i] - double(i) * g.h) > 1e-9 * (1.0 + us[i]))
            throw std::invalid_argument("grid csv: non-uniform step");
    return g;
}

inline GridFunction read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("read_grid_csv: cannot open " + path);
    return read_grid_csv(in);
}

}  // namespace phismooth
