#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "sieve.hpp"

namespace phismooth {

namespace detail {

inline std::vector<std::uint64_t> distinct_primes_of(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            do { n /= p; } while (n % p == 0);
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline int mobius_of(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    if (n > 1) sign = -sign;
    return sign;
}

inline std::uint64_t totient_of(std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p : distinct_primes_of(n)) r -= r / p;
    return r;
}

inline std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace detail

// both sides of the Moebius divisor-sum identity
//   sum_{r<=x, d|r|m} mu(r)/r = mu(d) * sum_{n>=1, d|n, rad(n)|rad(d)} (1/n) sum_{r<=x/n, r|m} mu(r)/r
// the n-sum is finite: terms with n > x have empty inner sums
inline std::pair<Rational, Rational> lemma32_sides(std::uint64_t m, std::uint64_t d,
                                                   std::uint64_t x) {
    if (m < 1 || detail::mobius_of(m) == 0)
        throw std::domain_error("lemma32_sides: m must be squarefree");
    if (d < 1 || m % d != 0)
        throw std::domain_error("lemma32_sides: d must divide m");
    if (x < 1)
        throw std::domain_error("lemma32_sides: x must be >= 1");

    std::vector<std::uint64_t> divs = detail::divisors_of(m);

    Rational lhs(0);
    for (std::uint64_t r : divs)
        if (r <= x && r % d == 0)
            lhs = lhs + Rational(detail::mobius_of(r), (std::int64_t)r);

    // inner sum S(z) with z = x/n, i.e. r*n <= x
    auto inner = [&](std::uint64_t n) {
        Rational s(0);
        for (std::uint64_t r : divs)
            if (r * n <= x) s = s + Rational(detail::mobius_of(r), (std::int64_t)r);
        return s;
    };

    std::vector<std::uint64_t> dps = detail::distinct_primes_of(d);
    Rational rhs(0);
    for (std::uint64_t n = d; n <= x; n += d) {
        std::uint64_t t = n;
        for (std::uint64_t p : dps)
            while (t % p == 0) t /= p;
        if (t != 1) continue;   // n has a prime factor outside d
        rhs = rhs + Rational(1, (std::int64_t)n) * inner(n);
    }
    rhs = Rational(detail::mobius_of(d)) * rhs;
    return {lhs, rhs};
}

// truncated LHS and closed-form RHS of
//   sum_{k|n, rad(n)|rad(k)} log(n)/n = (sum_{p|k} log(p)/(p-1) + log(k)) / phi(k)
inline std::pair<double, double> lemma33_sides(std::uint64_t k, std::uint64_t N) {
    if (k < 2) throw std::domain_error("lemma33_sides: k must be >= 2");

    std::vector<std::uint64_t> ps = detail::distinct_primes_of(k);
    std::uint64_t cap = N / k;   // n = k*m with rad(m) | rad(k), m <= cap

    std::vector<std::uint64_t> ms{1};
    for (std::uint64_t p : ps) {
        std::size_t cur = ms.size();
        for (std::size_t i = 0; i < cur; ++i) {
            std::uint64_t v = ms[i];
            while (v <= cap / p) {
                v *= p;
                ms.push_back(v);
            }
        }
    }
    std::sort(ms.begin(), ms.end());

    double lhs = 0.0;
    for (std::uint64_t mv : ms) {
        double n = double(k) * double(mv);
        lhs += std::log(n) / n;
    }

    double rhs = 0.0;
    for (std::uint64_t p : ps) rhs += std::log(double(p)) / double(p - 1);
    rhs = (rhs + std::log(double(k))) / double(detail::totient_of(k));
    return {lhs, rhs};
}

// sum of 1/q_k over chains r < q_1 < ... < q_k <= x with r | q_1 - 1 and q_i | q_{i+1} - 1
inline double chain_sum_R(std::uint64_t r, int k, std::uint64_t x, const SpfTable& t,
                          std::uint64_t node_budget = 10000000) {
    if (r < 1) throw std::domain_error("chain_sum_R: r must be >= 1");
    if (k < 1) throw std::domain_error("chain_sum_R: k must be >= 1");
    if (x < 1 || x > t.limit)
        throw std::out_of_range("chain_sum_R: x out of [1, limit]");
    if (r > x) return 0.0;

    std::uint64_t nodes = 0;
    double sum = 0.0;
    auto dfs = [&](auto&& self, std::uint64_t cur, int depth) -> void {
        for (std::uint64_t q = cur + 1; q <= x; q += cur) {
            if (++nodes > node_budget)
                throw std::length_error("chain_sum_R: node budget exceeded");
            if (!t.is_prime(q)) continue;
            if (depth == k)
                sum += 1.0 / double(q);
            else
                self(self, q, depth + 1);
        }
    };
    dfs(dfs, r, 1);
    return sum;
}

struct SuiteResult {
    std::string name;
    bool ok = true;
    double worst = 0.0;
    std::string worst_case;
    std::uint64_t cases = 0;
};

// exact equality sweep: squarefree m <= 210, every d | m, x <= 100
inline SuiteResult lemma32_suite() {
    SuiteResult res;
    res.name = "lemma32";
    for (std::uint64_t m = 1; m <= 210; ++m) {
        if (detail::mobius_of(m) == 0) continue;
        for (std::uint64_t d : detail::divisors_of(m))
            for (std::uint64_t x = 1; x <= 100; ++x) {
                auto [lhs, rhs] = lemma32_sides(m, d, x);
                ++res.cases;
                if (lhs != rhs) {
                    res.ok = false;
                    double dev = std::fabs(lhs.to_double() - rhs.to_double());
                    if (dev >= res.worst) {
                        res.worst = dev;
                        res.worst_case = "m=" + std::to_string(m) + ";d=" + std::to_string(d) +
                                         ";x=" + std::to_string(x);
                    }
                }
            }
    }
    return res;
}

// truncation N = 10^16 keeps every tail below 1e-12 for k <= 100
inline SuiteResult lemma33_suite(std::uint64_t kmax = 100,
                                 std::uint64_t N = 10000000000000000ULL,
                                 double tol = 1e-9) {
    SuiteResult res;
    res.name = "lemma33";
    for (std::uint64_t k = 2; k <= kmax; ++k) {
        auto [lhs, rhs] = lemma33_sides(k, N);
        double dev = std::fabs(lhs - rhs);
        ++res.cases;
        if (dev >= res.worst) {
            res.worst = dev;
            res.worst_case = "k=" + std::to_string(k);
        }
        if (dev > tol) res.ok = false;
    }
    return res;
}

// bound ratio sweep: chain_sum_R(r,k,x) * r / (log x + 1)^k <= 1
inline SuiteResult lemma42_suite(const SpfTable& t) {
    SuiteResult res;
    res.name = "lemma42";
    const std::uint64_t xs[] = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
    for (std::uint64_t r = 1; r <= 50; ++r)
        for (int k = 1; k <= 3; ++k)
            for (std::uint64_t x : xs) {
                double bound = std::pow(std::log(double(x)) + 1.0, double(k)) / double(r);
                double ratio = chain_sum_R(r, k, x, t) / bound;
                ++res.cases;
                if (ratio >= res.worst) {
                    res.worst = ratio;
                    res.worst_case = "r=" + std::to_string(r) + ";k=" + std::to_string(k) +
                                     ";x=" + std::to_string(x);
                }
                if (ratio > 1.0) res.ok = false;
            }
    return res;
}

}  // namespace phismooth
