#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace phismooth {

// Hard ceiling for table construction; ~400 MB of 32-bit entries per table.
inline constexpr std::uint64_t default_sieve_cap = 100000000;

struct SpfTable {
    std::uint64_t limit = 0;
    // spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[0] = spf[1] = 0.
    // Entries fit in 32 bits because limit <= 10^8.
    std::vector<std::uint32_t> spf;

    bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
    std::uint32_t operator[](std::uint64_t n) const { return spf[n]; }
};

struct TotientTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> phi;   // phi[n] for 1 <= n <= limit; phi[0] = 0

    std::uint32_t operator[](std::uint64_t n) const { return phi[n]; }
};

inline SpfTable build_spf(std::uint64_t limit, std::uint64_t cap = default_sieve_cap) {
    if (limit < 2 || limit > cap)
        throw std::length_error("build_spf: limit out of [2, cap]");
    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    // linear sieve: each composite is struck exactly once, by its smallest prime factor
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = static_cast<std::uint32_t>(n);
            primes.push_back(static_cast<std::uint32_t>(n));
        }
        for (std::uint32_t p : primes) {
            if (p > t.spf[n] || p > limit / n) break;
            t.spf[n * p] = p;
        }
    }
    return t;
}

// factorization in strictly increasing prime order
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n, const SpfTable& t) {
    if (n < 1 || n > t.limit)
        throw std::out_of_range("factorize: n out of [1, limit]");
    std::vector<std::pair<std::uint64_t, int>> f;
    while (n > 1) {
        std::uint64_t p = t.spf[n];
        int e = 0;
        do { n /= p; ++e; } while (n % p == 0);
        f.emplace_back(p, e);
    }
    return f;
}

inline TotientTable build_totient(const SpfTable& t) {
    TotientTable tt;
    tt.limit = t.limit;
    tt.phi.assign(t.limit + 1, 0);
    tt.phi[1] = 1;
    // phi(n) = phi(n/p) * (p if p | n/p else p-1) with p = spf(n)
    for (std::uint64_t n = 2; n <= t.limit; ++n) {
        std::uint64_t p = t.spf[n];
        std::uint64_t m = n / p;
        tt.phi[n] = static_cast<std::uint32_t>(tt.phi[m] * (m % p == 0 ? p : p - 1));
    }
    return tt;
}

inline TotientTable build_totient(std::uint64_t limit, std::uint64_t cap = default_sieve_cap) {
    if (limit < 1 || limit > cap)
        throw std::length_error("build_totient: limit out of [1, cap]");
    if (limit == 1) {
        TotientTable tt;
        tt.limit = 1;
        tt.phi = {0, 1};
        return tt;
    }
    return build_totient(build_spf(limit, cap));
}

inline std::uint64_t phi_iterate(std::uint64_t n, int k, const TotientTable& tt) {
    if (n < 1 || n > tt.limit)
        throw std::out_of_range("phi_iterate: n out of [1, limit]");
    if (k < 0)
        throw std::domain_error("phi_iterate: k < 0");
    std::uint64_t m = n;
    for (int i = 0; i < k && m > 1; ++i) m = tt.phi[m];
    return m;
}

inline std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& t) {
    if (n < 1 || n > t.limit)
        throw std::out_of_range("largest_prime_factor: n out of [1, limit]");
    if (n == 1) return 1;   // convention
    std::uint64_t p = 0;
    while (n > 1) {
        p = t.spf[n];       // spf walk visits primes in increasing order
        do { n /= p; } while (n % p == 0);
    }
    return p;
}

}  // namespace phismooth
