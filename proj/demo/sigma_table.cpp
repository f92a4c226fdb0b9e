// tabulates the first four iterated delay-equation solutions on one grid and
// compares the first iterate against its closed-form log-scale estimate,
// printing nan where the nested logarithms are not yet defined
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "phismooth/phismooth.hpp"

int main() {
    using namespace phismooth;
    const double h = 1.0 / 256.0;
    const double U = 40.0;
    std::vector<GridFunction> sigma;
    sigma.push_back(dickman_rho(U, h));
    for (int k = 1; k <= 3; ++k) sigma.push_back(solve_sigma(sigma.back(), U, h));

    const HSpec hs = hspec_log_product(1);
    const double ln10 = std::log(10.0);
    std::cout << "u,sigma_0,sigma_1,sigma_2,sigma_3,log10_sigma_1,prop4_k1_log10\n";
    for (int u = 1; u <= 40; ++u) {
        double p4 = std::numeric_limits<double>::quiet_NaN();
        try {
            p4 = prop4_sigma(hs, (double)u) / ln10;
        } catch (const std::domain_error&) {
        }
        std::cout << u;
        for (int k = 0; k <= 3; ++k) std::cout << ',' << format_sig(sigma[k]((double)u));
        std::cout << ',' << format_sig(sigma[1].log_at((double)u) / ln10) << ','
                  << format_sig(p4) << "\n";
    }
    return 0;
}
