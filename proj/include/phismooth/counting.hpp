#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "format.hpp"
#include "grid.hpp"
#include "primeset.hpp"
#include "sieve.hpp"

namespace phismooth {

struct CountRecord {
    std::uint64_t x = 0;
    std::uint64_t y = 0;        // ignored when set_based
    bool set_based = false;
    int k = 0;
    std::uint64_t count = 0;
    double ratio = 0.0;         // count/x for integer counts, count/pi(x) for prime counts

    static std::string csv_header() { return "x,y,k,count,ratio"; }
    std::string csv_row() const {
        std::string ycol = set_based ? std::string("set") : std::to_string(y);
        return std::to_string(x) + "," + ycol + "," + std::to_string(k) + "," +
               std::to_string(count) + "," + format_sig(ratio);
    }
};

namespace detail {

inline bool smooth_upto(std::uint64_t n, std::uint64_t y, const SpfTable& t) {
    while (n > 1) {
        std::uint64_t p = t.spf[n];
        if (p > y) return false;
        do { n /= p; } while (n % p == 0);
    }
    return true;   // n = 1 is y-smooth for every y
}

inline bool smooth_in_set(std::uint64_t n, const std::vector<std::uint8_t>& inset,
                          const SpfTable& t) {
    while (n > 1) {
        std::uint64_t p = t.spf[n];
        if (!inset[p]) return false;
        do { n /= p; } while (n % p == 0);
    }
    return true;
}

inline std::uint64_t prime_count(std::uint64_t x, const SpfTable& t) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (t.is_prime(n)) ++c;
    return c;
}

}  // namespace detail

// Psi(x,y): integers n <= x whose prime factors are all <= y
inline CountRecord psi_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& t) {
    if (x < 1 || x > t.limit || y < 1)
        throw std::out_of_range("psi_smooth: x out of [1, limit] or y < 1");
    std::uint64_t c = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        if (detail::smooth_upto(n, y, t)) ++c;
    return {x, y, false, 0, c, double(c) / double(x)};
}

// pi(x,y): primes p <= x with p-1 y-smooth (p=2 always counts: p-1=1)
inline CountRecord pi_smooth_shifted(std::uint64_t x, std::uint64_t y, const SpfTable& t) {
    if (x < 1 || x > t.limit || y < 1)
        throw std::out_of_range("pi_smooth_shifted: x out of [1, limit] or y < 1");
    std::uint64_t c = 0, pix = 0;
    for (std::uint64_t p = 2; p <= x; ++p)
        if (t.is_prime(p)) {
            ++pix;
            if (detail::smooth_upto(p - 1, y, t)) ++c;
        }
    CountRecord r{x, y, false, 0, c, pix ? double(c) / double(pix) : 0.0};
    return r;
}

// Psi(x,P): integers n <= x whose prime factors all lie in P
inline CountRecord psi_set(std::uint64_t x, const PrimeSet& P, const SpfTable& t) {
    if (x < 1 || x > t.limit)
        throw std::out_of_range("psi_set: x out of [1, limit]");
    if (P.limit < x)
        throw std::out_of_range("psi_set: P.limit < x");
    std::vector<std::uint8_t> inset = P.bitmap();
    std::uint64_t c = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        if (detail::smooth_in_set(n, inset, t)) ++c;
    return {x, 0, true, 0, c, double(c) / double(x)};
}

// pi(x,P): primes p <= x with every prime factor of p-1 in P
inline CountRecord pi_set(std::uint64_t x, const PrimeSet& P, const SpfTable& t) {
    if (x < 1 || x > t.limit)
        throw std::out_of_range("pi_set: x out of [1, limit]");
    if (P.limit < x)
        throw std::out_of_range("pi_set: P.limit < x");
    std::vector<std::uint8_t> inset = P.bitmap();
    std::uint64_t c = 0, pix = 0;
    for (std::uint64_t p = 2; p <= x; ++p)
        if (t.is_prime(p)) {
            ++pix;
            if (detail::smooth_in_set(p - 1, inset, t)) ++c;
        }
    return {x, 0, true, 0, c, pix ? double(c) / double(pix) : 0.0};
}

// P_0 = {p <= y}; P_{j+1} = {p <= x : q | p-1 implies q in P_j}. Returns P_0..P_k.
// p-1 is factored once; levels reuse the distinct-prime lists.
inline std::vector<PrimeSet> build_pk_tower(std::uint64_t x, std::uint64_t y, int k,
                                            const SpfTable& t) {
    if (x < 2 || x > t.limit || y < 1 || y > x)
        throw std::out_of_range("build_pk_tower: need 1 <= y <= x <= limit");
    if (k < 0)
        throw std::domain_error("build_pk_tower: k < 0");

    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (t.is_prime(n)) primes.push_back(n);

    // distinct prime factors of p-1, flattened
    std::vector<std::uint32_t> fac;
    std::vector<std::uint32_t> off(primes.size() + 1, 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::uint64_t m = primes[i] - 1;
        while (m > 1) {
            std::uint64_t p = t.spf[m];
            fac.push_back(static_cast<std::uint32_t>(p));
            do { m /= p; } while (m % p == 0);
        }
        off[i + 1] = static_cast<std::uint32_t>(fac.size());
    }

    std::vector<PrimeSet> tower;
    PrimeSet P0;
    P0.limit = x;
    P0.primes = primes;
    P0.member.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) P0.member[i] = primes[i] <= y ? 1 : 0;
    P0.rebuild_prefix();
    tower.push_back(std::move(P0));

    for (int j = 0; j < k; ++j) {
        std::vector<std::uint8_t> inset = tower.back().bitmap();
        PrimeSet next;
        next.limit = x;
        next.primes = primes;
        next.member.resize(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) {
            bool ok = true;
            for (std::uint32_t a = off[i]; a < off[i + 1]; ++a)
                if (!inset[fac[a]]) { ok = false; break; }
            next.member[i] = ok ? 1 : 0;
        }
        next.rebuild_prefix();
        tower.push_back(std::move(next));
    }
    return tower;
}

// Phi_k(x,y): integers n <= x with phi_k(n) y-smooth; Phi_0 = Psi
inline CountRecord phi_k_smooth_count(std::uint64_t x, std::uint64_t y, int k,
                                      const SpfTable& t, const TotientTable& tt) {
    if (x < 1 || x > t.limit || x > tt.limit || y < 1)
        throw std::out_of_range("phi_k_smooth_count: x out of [1, min(limits)] or y < 1");
    if (k < 0)
        throw std::domain_error("phi_k_smooth_count: k < 0");
    std::uint64_t c = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        std::uint64_t m = n;
        for (int i = 0; i < k && m > 1; ++i) m = tt.phi[m];
        if (detail::smooth_upto(m, y, t)) ++c;
    }
    return {x, y, false, k, c, double(c) / double(x)};
}

// prod over primes p <= P.limit, p not in P, of (1 - 1/(p-1)^2); 0 once p=2 is missing
inline double correction_factor(const PrimeSet& P) {
    double prod = 1.0;
    for (std::size_t i = 0; i < P.primes.size(); ++i) {
        if (P.member[i]) continue;
        std::uint64_t p = P.primes[i];
        if (p == 2) return 0.0;
        double q = double(p - 1);
        prod *= 1.0 - 1.0 / (q * q);
    }
    return prod;
}

// chi(u) = #{p in P : p <= y^u} / pi(y^u) for u > 1, clamped to 1 on [0,1]
inline GridFunction chi_from_prime_set(const PrimeSet& P, std::uint64_t y, double U, double h) {
    if (y < 2)
        throw std::domain_error("chi_from_prime_set: y < 2");
    if (h <= 0 || U < 1)
        throw std::domain_error("chi_from_prime_set: need h > 0 and U >= 1");
    auto per_unit = std::llround(1.0 / h);
    if (per_unit < 1 || std::fabs(double(per_unit) * h - 1.0) > 1e-9)
        throw std::domain_error("chi_from_prime_set: 1/h must be an integer");
    if (P.members_upto(y) != P.primes_upto(y))
        throw std::domain_error("chi_from_prime_set: P must contain all primes <= y");
    long double ly = std::log((long double)y);
    if ((long double)U * ly > std::log((long double)P.limit) + 1e-9L)
        throw std::domain_error("chi_from_prime_set: y^U exceeds P.limit");

    std::size_t N = (std::size_t)std::llround(U / h);
    if (std::fabs(double(N) * h - U) > 1e-9)
        throw std::domain_error("chi_from_prime_set: U must be a multiple of h");
    GridFunction g;
    g.h = h;
    g.values.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        double u = double(i) * h;
        if (u <= 1.0) {
            g.values[i] = 1.0;
            continue;
        }
        long double yu = std::exp((long double)u * ly);
        auto tcut = (std::uint64_t)std::min(std::floor(yu + yu * 1e-12L),
                                            (long double)P.limit);
        std::uint64_t denom = P.primes_upto(tcut);
        g.values[i] = denom ? double(P.members_upto(tcut)) / double(denom) : 1.0;
    }
    return g;
}

// (1/pi(x)) * sum_{d <= x^(1-eps)} |pi(x;d,1) - pi(x)/phi(d)|
inline double eh_discrepancy(std::uint64_t x, double epsilon, const SpfTable& t) {
    if (x < 2 || x > t.limit)
        throw std::out_of_range("eh_discrepancy: x out of [2, limit]");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("eh_discrepancy: epsilon out of (0,1)");
    std::uint64_t pix = detail::prime_count(x, t);
    auto dmax = (std::uint64_t)std::floor(std::pow(double(x), 1.0 - epsilon) + 1e-9);
    double sum = 0.0;
    for (std::uint64_t d = 1; d <= dmax; ++d) {
        std::uint64_t cnt = 0;
        for (std::uint64_t n = 1 + d; n <= x; n += d)
            if (t.is_prime(n)) ++cnt;
        double phid = 1.0;
        for (auto [p, e] : factorize(d, t)) {
            phid *= double(p - 1);
            for (int i = 1; i < e; ++i) phid *= double(p);
        }
        sum += std::fabs(double(cnt) - double(pix) / phid);
    }
    return sum / double(pix);
}

}  // namespace phismooth
