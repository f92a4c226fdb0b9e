#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "phismooth/volterra.hpp"

using namespace phismooth;

TEST_CASE("indicator grids") {
    auto g = indicator_chi(3.0, 1.0 / 16);
    REQUIRE(g.size() == 49);
    REQUIRE(g.compact_support);
    REQUIRE(g.umax() == 3.0);
    for (auto v : g.values) REQUIRE(v == 1.0);
    REQUIRE(g.support_end() == 48);
    REQUIRE_THROWS_AS(indicator_chi(0.5, 0.25), std::domain_error);
    REQUIRE_THROWS_AS(indicator_chi(1.3, 0.25), std::domain_error);
    REQUIRE_THROWS_AS(indicator_chi(1.0, 0.0), std::domain_error);
}

TEST_CASE("grid interpolation and range handling") {
    GridFunction g;
    g.h = 0.5;
    g.values = {1.0, 1.0, 0.5, 0.0};
    g.compact_support = true;
    REQUIRE(g(0.25) == 1.0);
    REQUIRE(g(1.0) == 0.5);
    REQUIRE(g(0.75) == 0.75);
    REQUIRE(g(1.25) == 0.25);
    REQUIRE(g(5.0) == 0.0);
    REQUIRE_THROWS_AS(g(-0.1), std::domain_error);
    g.compact_support = false;
    REQUIRE_THROWS_AS(g(5.0), std::out_of_range);
}

TEST_CASE("chi validation") {
    GridFunction g;
    g.h = 0.25;
    g.values = {1, 1, 1, 1, 1, 0.5, 0.25};
    REQUIRE_NOTHROW(validate_chi(g));
    g.values[3] = 0.9;
    REQUIRE_THROWS_AS(validate_chi(g), std::domain_error);
    g.values[3] = 1.0;
    g.values[6] = 1.5;
    REQUIRE_THROWS_AS(validate_chi(g), std::domain_error);
    g.values = {1.0};
    REQUIRE_THROWS_AS(validate_chi(g), std::domain_error);
}

TEST_CASE("solver parameter checks") {
    REQUIRE_THROWS_AS(dickman_rho(10.0, 1.0 / 8), std::domain_error);
    REQUIRE_THROWS_AS(dickman_rho(10.0, 0.03), std::domain_error);
    REQUIRE_THROWS_AS(dickman_rho(0.5, 1.0 / 16), std::domain_error);
    REQUIRE_THROWS_AS(dickman_rho(1.013, 1.0 / 16), std::domain_error);
    REQUIRE_THROWS_AS(iterate_sigma(-1, 5.0, 1.0 / 16), std::domain_error);
}

TEST_CASE("kernel equal to one everywhere gives the constant solution") {
    GridFunction chi;
    chi.h = 1.0 / 16;
    chi.values.assign(65, 1.0);
    auto s = solve_sigma(chi, 4.0, 1.0 / 16);
    REQUIRE(s.size() == 65);
    for (auto v : s.values) REQUIRE(v == 1.0);
}

TEST_CASE("unit indicator kernel reproduces the dedicated solver") {
    auto a = solve_sigma(indicator_chi(1.0, 1.0 / 32), 6.0, 1.0 / 32);
    auto b = dickman_rho(6.0, 1.0 / 32);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.values[i] == b.values[i]);
}

TEST_CASE("dickman values against analytic pieces") {
    auto r = dickman_rho(3.0, 1.0 / 256);
    REQUIRE(r(1.0) == 1.0);
    REQUIRE(r(1.5) == Catch::Approx(1.0 - std::log(1.5)).margin(1e-6));
    REQUIRE(std::fabs(r(2.0) - (1.0 - std::log(2.0))) <= 1e-6);
    auto r2 = dickman_rho(3.0, 1.0 / 512);
    REQUIRE(std::fabs(r2(2.0) - (1.0 - std::log(2.0))) <=
            std::fabs(r(2.0) - (1.0 - std::log(2.0))));
}

TEST_CASE("width-2 indicator solution is the half-argument dickman function") {
    auto s = solve_sigma(indicator_chi(2.0, 1.0 / 16), 8.0, 1.0 / 16);
    auto r = dickman_rho(4.0, 1.0 / 32);
    REQUIRE(s.size() == r.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        worst = std::max(worst, std::fabs(s.values[i] - r.values[i]));
    REQUIRE(worst <= 1e-12);
}

TEST_CASE("solutions are probabilities and non-increasing") {
    auto sigs = iterate_sigma(3, 10.0, 1.0 / 64);
    REQUIRE(sigs.size() == 4);
    for (auto& s : sigs) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            REQUIRE(s.values[i] >= 0.0);
            REQUIRE(s.values[i] <= 1.0);
            if (i > 0) REQUIRE(s.values[i] <= s.values[i - 1]);
            if (double(i) * s.h <= 1.0 + 1e-12) REQUIRE(s.values[i] == 1.0);
        }
    }
}

TEST_CASE("each iterate dominates the previous one") {
    auto sigs = iterate_sigma(3, 10.0, 1.0 / 64);
    for (std::size_t j = 0; j + 1 < sigs.size(); ++j)
        for (std::size_t i = 0; i < sigs[j].size(); ++i)
            REQUIRE(sigs[j + 1].values[i] >= sigs[j].values[i]);
}

TEST_CASE("iterated solution spot values") {
    auto sigs = iterate_sigma(3, 15.0, 1.0 / 256);
    REQUIRE(sigs[1](2.0) == Catch::Approx(0.759773823558).margin(1e-11));
    REQUIRE(sigs[1](15.0) == Catch::Approx(2.65729796239e-07).epsilon(1e-9));
    REQUIRE(sigs[2](15.0) == Catch::Approx(0.00150727841177).epsilon(1e-9));
    REQUIRE(sigs[3](15.0) == Catch::Approx(0.055219667404).epsilon(1e-9));
    auto fine = iterate_sigma(1, 2.0, 1.0 / 512);
    REQUIRE(fine[1](2.0) == Catch::Approx(0.7597735756704063).margin(1e-12));
}

TEST_CASE("defect of the discrete solution stays bounded") {
    auto sigs = iterate_sigma(3, 15.0, 1.0 / 64);
    GridFunction ind = indicator_chi(1.0, 1.0 / 64);
    REQUIRE(residual_C(sigs[0], ind) <= 10.0);
    for (std::size_t j = 0; j + 1 < sigs.size(); ++j)
        REQUIRE(residual_C(sigs[j + 1], sigs[j]) <= 10.0);
}

TEST_CASE("halving the step shrinks the error like the square of the step") {
    double a = dickman_rho(3.0, 1.0 / 64)(3.0);
    double b = dickman_rho(3.0, 1.0 / 128)(3.0);
    double c = dickman_rho(3.0, 1.0 / 256)(3.0);
    double q = (a - b) / (b - c);
    REQUIRE(q >= 3.5);
    REQUIRE(q <= 4.5);
    auto s64 = iterate_sigma(1, 10.0, 1.0 / 64)[1](10.0);
    auto s128 = iterate_sigma(1, 10.0, 1.0 / 128)[1](10.0);
    auto s256 = iterate_sigma(1, 10.0, 1.0 / 256)[1](10.0);
    double q2 = (s64 - s128) / (s128 - s256);
    REQUIRE(q2 >= 3.5);
    REQUIRE(q2 <= 4.5);
}

TEST_CASE("kernel step mismatch is rejected unless resampling is allowed") {
    auto chi = indicator_chi(2.0, 1.0 / 16);
    REQUIRE_THROWS_AS(solve_sigma(chi, 6.0, 1.0 / 32), std::domain_error);
    SigmaOptions opt;
    opt.allow_resample = true;
    auto s = solve_sigma(chi, 6.0, 1.0 / 32, opt);
    auto native = solve_sigma(indicator_chi(2.0, 1.0 / 32), 6.0, 1.0 / 32);
    REQUIRE(s(5.0) == Catch::Approx(native(5.0)).epsilon(1e-9));
}

TEST_CASE("a kernel without compact support must cover the whole range") {
    GridFunction chi;
    chi.h = 1.0 / 16;
    chi.values.assign(33, 1.0);
    REQUIRE_NOTHROW(solve_sigma(chi, 2.0, 1.0 / 16));
    REQUIRE_THROWS_AS(solve_sigma(chi, 4.0, 1.0 / 16), std::domain_error);
}

TEST_CASE("log companion activates below the underflow threshold") {
    auto s = dickman_rho(130.0, 1.0 / 16);
    REQUIRE(!s.logv.empty());
    REQUIRE(s.logv.size() == s.values.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.values[i] > 1e-300)
            REQUIRE(s.logv[i] ==
                    Catch::Approx(std::log(s.values[i])).margin(1e-9 * (1.0 + std::fabs(std::log(s.values[i])))));
        if (double(i) * s.h > 1.0)
            REQUIRE(s.logv[i] < s.logv[i - 1]);
        REQUIRE(std::isfinite(s.logv[i]));
    }
    REQUIRE(s.log_value(s.size() - 1) < -690.0);
    REQUIRE(s.log_at(129.97) < -690.0);
}

TEST_CASE("forced log companion matches the linear solution") {
    SigmaOptions opt;
    opt.force_log = true;
    auto s = solve_sigma(indicator_chi(1.0, 1.0 / 16), 5.0, 1.0 / 16, opt);
    REQUIRE(!s.logv.empty());
    for (std::size_t i = 0; i < s.size(); ++i)
        REQUIRE(std::exp(s.logv[i]) == Catch::Approx(s.values[i]).epsilon(1e-12));
}

TEST_CASE("grid csv writes a header and round-trips") {
    auto r = dickman_rho(3.0, 1.0 / 16);
    std::ostringstream os;
    write_grid_csv(r, os);
    std::string text = os.str();
    REQUIRE(text.substr(0, 8) == "u,value\n");
    REQUIRE(text.substr(8, 4) == "0,1\n");
    std::istringstream is(text);
    auto back = read_grid_csv(is);
    REQUIRE(back.size() == r.size());
    REQUIRE(back.h == Catch::Approx(r.h).epsilon(1e-12));
    for (std::size_t i = 0; i < r.size(); ++i)
        REQUIRE(back.values[i] == Catch::Approx(r.values[i]).epsilon(1e-10).margin(1e-12));
}

TEST_CASE("grid csv rejects malformed input") {
    auto feed = [](const std::string& s) {
        std::istringstream is(s);
        return read_grid_csv(is);
    };
    REQUIRE_THROWS_AS(feed(""), std::invalid_argument);
    REQUIRE_THROWS_AS(feed("value,u\n0,1\n0.5,1\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(feed("u,value\n0.5,1\n1,1\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(feed("u,value\n0,1\n0.5,1\n0.7,1\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(feed("u,value\n0,1\nx,1\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(feed("u,value\n0,1\n"), std::invalid_argument);
}

TEST_CASE("resampling a grid keeps shared nodes") {
    auto r = dickman_rho(3.0, 1.0 / 16);
    auto f = resample_grid(r, 1.0 / 32);
    REQUIRE(f.h == 1.0 / 32);
    REQUIRE(f.size() == 2 * r.size() - 1);
    for (std::size_t i = 0; i < r.size(); ++i) REQUIRE(f.values[2 * i] == r.values[i]);
    REQUIRE_THROWS_AS(resample_grid(r, 0.7), std::domain_error);
}
