// scans empirical smooth / iterated-totient densities against the solver and
// closed-form predictions across three decades of x
#include <iostream>

#include "phismooth/phismooth.hpp"

int main() {
    using namespace phismooth;
    ExperimentConfig cfg;
    cfg.x_list = {10000, 100000, 1000000};
    cfg.u = 2.0;
    cfg.jobs = 2;
    for (int k = 0; k <= 2; ++k) {
        cfg.k = k;
        std::cout << "# k = " << k << "\n";
        cmd_compare(cfg, std::cout);
    }
    return 0;
}
