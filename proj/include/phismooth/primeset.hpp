#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sieve.hpp"

namespace phismooth {

// Membership structure over the primes <= limit. Carries the full prime list
// so that set operations (correction factors, prime-counting ratios) need no
// extra sieve argument.
struct PrimeSet {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;        // all primes <= limit, increasing
    std::vector<std::uint8_t> member;         // member[i] != 0 iff primes[i] is in the set
    std::vector<std::uint64_t> member_prefix; // member_prefix[i] = members among primes[0..i)

    std::uint64_t prime_count() const { return primes.size(); }
    std::uint64_t member_count() const { return member_prefix.empty() ? 0 : member_prefix.back(); }

    // number of primes <= t
    std::uint64_t primes_upto(std::uint64_t t) const {
        return std::upper_bound(primes.begin(), primes.end(), t) - primes.begin();
    }
    // number of set members <= t
    std::uint64_t members_upto(std::uint64_t t) const {
        return member_prefix[primes_upto(t)];
    }
    bool contains(std::uint64_t p) const {
        auto it = std::lower_bound(primes.begin(), primes.end(), p);
        if (it == primes.end() || *it != p) return false;
        return member[it - primes.begin()] != 0;
    }
    void rebuild_prefix() {
        member_prefix.assign(primes.size() + 1, 0);
        for (std::size_t i = 0; i < primes.size(); ++i)
            member_prefix[i + 1] = member_prefix[i] + (member[i] ? 1 : 0);
    }
    // dense integer-indexed membership bitmap, for O(1) factor tests
    std::vector<std::uint8_t> bitmap() const {
        std::vector<std::uint8_t> b(limit + 1, 0);
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (member[i]) b[primes[i]] = 1;
        return b;
    }
};

inline PrimeSet make_prime_set(const SpfTable& t, std::uint64_t limit,
                               const std::function<bool(std::uint64_t)>& pred) {
    if (limit > t.limit)
        throw std::out_of_range("make_prime_set: limit exceeds sieve");
    PrimeSet s;
    s.limit = limit;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (t.is_prime(n)) {
            s.primes.push_back(n);
            s.member.push_back(pred(n) ? 1 : 0);
        }
    s.rebuild_prefix();
    return s;
}

// P = {p <= y}, carried over the prime universe [2, limit]
inline PrimeSet prime_set_upto(const SpfTable& t, std::uint64_t limit, std::uint64_t y) {
    return make_prime_set(t, limit, [y](std::uint64_t p) { return p <= y; });
}

inline PrimeSet prime_set_all(const SpfTable& t, std::uint64_t limit) {
    return make_prime_set(t, limit, [](std::uint64_t) { return true; });
}

inline PrimeSet prime_set_empty(const SpfTable& t, std::uint64_t limit) {
    return make_prime_set(t, limit, [](std::uint64_t) { return false; });
}

inline PrimeSet prime_set_from_members(const SpfTable& t, std::uint64_t limit,
                                       const std::vector<std::uint64_t>& members) {
    for (std::uint64_t p : members) {
        if (p > limit) throw std::out_of_range("prime_set_from_members: member exceeds limit");
        if (!t.is_prime(p)) throw std::domain_error("prime_set_from_members: member not prime");
    }
    std::vector<std::uint64_t> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    std::size_t j = 0;
    PrimeSet s;
    s.limit = limit;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (t.is_prime(n)) {
            while (j < sorted.size() && sorted[j] < n) ++j;
            s.primes.push_back(n);
            s.member.push_back(j < sorted.size() && sorted[j] == n ? 1 : 0);
        }
    s.rebuild_prefix();
    return s;
}

}  // namespace phismooth
