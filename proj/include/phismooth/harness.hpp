#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "asymptotics.hpp"
#include "counting.hpp"
#include "format.hpp"
#include "grid.hpp"
#include "identities.hpp"
#include "primeset.hpp"
#include "sieve.hpp"
#include "volterra.hpp"

namespace phismooth {

struct ExperimentConfig {
    std::vector<std::uint64_t> x_list;
    double u = 2.0;                // y derived as round(x^(1/u)) unless y_override set
    int k = 0;
    std::uint64_t y_override = 0;  // 0 = derive from u
    double h = 1.0 / 256;
    double U = 20.0;
    int jobs = 1;
    std::uint64_t cap = default_sieve_cap;
    std::string out_path;          // empty = stdout
};

struct ComparisonRow {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    int k = 0;
    double u = std::numeric_limits<double>::quiet_NaN();
    double empirical = std::numeric_limits<double>::quiet_NaN();
    double tower = std::numeric_limits<double>::quiet_NaN();
    double sigma_k = std::numeric_limits<double>::quiet_NaN();
    double sigma_k_log10 = std::numeric_limits<double>::quiet_NaN();
    double prop4_log10 = std::numeric_limits<double>::quiet_NaN();
    double prop1_ratio = std::numeric_limits<double>::quiet_NaN();
    std::string note;

    static std::string csv_header() {
        return "x,y,k,u,empirical,tower,sigma_k,sigma_k_log10,prop4_log10,prop1_ratio,note";
    }
    std::string csv_row() const {
        std::string clean = note;
        std::replace(clean.begin(), clean.end(), ',', ';');
        return std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(k) + "," +
               format_sig(u) + "," + format_sig(empirical) + "," + format_sig(tower) + "," +
               format_sig(sigma_k) + "," + format_sig(sigma_k_log10) + "," +
               format_sig(prop4_log10) + "," + format_sig(prop1_ratio) + "," + clean;
    }
};

namespace detail {

inline void append_note(std::string& note, const std::string& msg) {
    if (!note.empty()) note += "; ";
    note += msg;
}

}  // namespace detail

// one experiment row; failures are reported in the note column, never thrown
inline ComparisonRow compare_row(const ExperimentConfig& cfg, const GridFunction& sigk,
                                 std::uint64_t x) {
    ComparisonRow row;
    row.x = x;
    row.k = cfg.k;
    try {
        if (x < 2) throw std::domain_error("x must be >= 2");
        std::uint64_t y = cfg.y_override
                              ? cfg.y_override
                              : (std::uint64_t)std::llround(std::pow(double(x), 1.0 / cfg.u));
        if (y < 2) throw std::domain_error("derived y is below 2");
        row.y = y;
        double ue = std::log(double(x)) / std::log(double(y));
        row.u = ue;

        if (ue <= sigk.umax() + 1e-9) {
            double uc = std::min(ue, sigk.umax());
            row.sigma_k = sigk(uc);
            row.sigma_k_log10 = sigk.log_at(uc) / std::log(10.0);
        } else {
            detail::append_note(row.note, "u beyond solver horizon");
        }
        try {
            HSpec hs = cfg.k == 0 ? hspec_u_log_u() : hspec_log_product(cfg.k);
            row.prop4_log10 = prop4_sigma(hs, ue) / std::log(10.0);
        } catch (const std::domain_error&) {
            // u below the asymptotic regime: column stays nan
        }

        if (x > cfg.cap) throw std::out_of_range("x exceeds sieve cap");
        SpfTable t = build_spf(x, std::max(cfg.cap, default_sieve_cap));
        TotientTable tt = build_totient(t);
        CountRecord phik = phi_k_smooth_count(x, y, cfg.k, t, tt);
        std::vector<PrimeSet> tower = build_pk_tower(x, y, cfg.k, t);
        CountRecord tow = psi_set(x, tower.back(), t);
        row.empirical = phik.ratio;
        row.tower = tow.ratio;
        row.prop1_ratio = double(tow.count - phik.count) * double(y) /
                          (double(x) * std::pow(std::log(double(x)), 2.0 * cfg.k));
    } catch (const std::exception& e) {
        detail::append_note(row.note, e.what());
    }
    return row;
}

// rows computed concurrently, emitted in input order: output is byte-identical
// for any jobs value
inline void cmd_compare(const ExperimentConfig& cfg, std::ostream& out) {
    if (!(cfg.u >= 1.0)) throw std::domain_error("compare: u must be >= 1");
    if (cfg.k < 0) throw std::domain_error("compare: k must be >= 0");
    std::vector<GridFunction> sig = iterate_sigma(cfg.k, cfg.U, cfg.h);
    const GridFunction& sigk = sig.back();

    std::vector<ComparisonRow> rows(cfg.x_list.size());
    std::size_t nt = std::min<std::size_t>(std::max(1, cfg.jobs), std::max<std::size_t>(rows.size(), 1));
    if (nt <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = compare_row(cfg, sigk, cfg.x_list[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= rows.size()) return;
                rows[i] = compare_row(cfg, sigk, cfg.x_list[i]);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < nt; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    out << ComparisonRow::csv_header() << "\n";
    for (const auto& r : rows) out << r.csv_row() << "\n";
}

// empirical shifted-prime density against smooth density, plus the general-P
// variant with its correction factor and the not-in-P reciprocal sum
inline void cmd_conjecture1(std::uint64_t x, std::uint64_t y, const PrimeSet* P,
                            std::ostream& out) {
    if (x < 2 || x > default_sieve_cap)
        throw std::out_of_range("conjecture1: x out of [2, sieve cap]");
    if (y < 1) throw std::domain_error("conjecture1: y must be >= 1");
    SpfTable t = build_spf(x);

    PrimeSet def;
    if (P == nullptr) {
        def = make_prime_set(t, x, [&](std::uint64_t p) { return p <= y; });
        P = &def;
    }
    if (P->limit < x) throw std::out_of_range("conjecture1: P.limit below x");

    CountRecord piy = pi_smooth_shifted(x, y, t);
    CountRecord psiy = psi_smooth(x, y, t);
    CountRecord pip = pi_set(x, *P, t);
    CountRecord psip = psi_set(x, *P, t);
    double corr = correction_factor(*P);
    double corrected = corr * psip.ratio;
    double tail = 0.0;
    for (std::size_t i = 0; i < P->primes.size(); ++i)
        if (!P->member[i] && P->primes[i] <= x) tail += 1.0 / double(P->primes[i]);

    out << "x,y,pi_ratio,psi_ratio,pi_over_psi,pi_set_ratio,psi_set_ratio,"
           "correction,corrected_psi_set_ratio,set_pi_over_corrected,tail_sum\n";
    double over = psiy.ratio > 0.0 ? piy.ratio / psiy.ratio
                                   : std::numeric_limits<double>::quiet_NaN();
    double set_over = corrected > 0.0 ? pip.ratio / corrected
                                      : std::numeric_limits<double>::quiet_NaN();
    out << x << "," << y << "," << format_sig(piy.ratio) << "," << format_sig(psiy.ratio)
        << "," << format_sig(over) << "," << format_sig(pip.ratio) << ","
        << format_sig(psip.ratio) << "," << format_sig(corr) << "," << format_sig(corrected)
        << "," << format_sig(set_over) << "," << format_sig(tail) << "\n";
}

inline void cmd_eh(std::uint64_t x, double epsilon, std::ostream& out) {
    if (x < 2 || x > default_sieve_cap)
        throw std::out_of_range("eh: x out of [2, sieve cap]");
    SpfTable t = build_spf(x);
    double disc = eh_discrepancy(x, epsilon, t);
    auto dmax = (std::uint64_t)std::floor(std::pow(double(x), 1.0 - epsilon) + 1e-9);
    std::uint64_t pix = detail::prime_count(x, t);
    out << "x,epsilon,d_max,pi_x,discrepancy\n";
    out << x << "," << format_sig(epsilon) << "," << dmax << "," << pix << ","
        << format_sig(disc) << "\n";
}

// runs all three identity sweeps; false means at least one suite failed
inline bool cmd_identities(std::ostream& out) {
    SpfTable t = build_spf(10000);
    SuiteResult suites[] = {lemma32_suite(), lemma33_suite(), lemma42_suite(t)};
    out << "suite,cases,worst,worst_case,status\n";
    bool ok = true;
    for (const SuiteResult& s : suites) {
        out << s.name << "," << s.cases << "," << format_sig(s.worst) << "," << s.worst_case
            << "," << (s.ok ? "PASS" : "FAIL") << "\n";
        ok = ok && s.ok;
    }
    return ok;
}

}  // namespace phismooth
