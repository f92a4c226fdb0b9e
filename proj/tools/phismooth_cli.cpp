#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phismooth/phismooth.hpp"

namespace {

using namespace phismooth;

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    return file;
}

GridFunction load_chi(const std::string& path) {
    GridFunction g = read_grid_csv(path);
    validate_chi(g);
    return g;
}

// CSV with header `p`, one prime per row
std::vector<std::uint64_t> read_prime_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open prime set file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("prime set file: empty");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line != "p") throw std::invalid_argument("prime set file: missing `p` header");
    std::vector<std::uint64_t> ps;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        try {
            ps.push_back(std::stoull(line));
        } catch (const std::exception&) {
            throw std::invalid_argument("prime set file: non-integer row");
        }
    }
    return ps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smooth-density toolkit: exact counts, delay-equation solver, "
                 "saddle-point asymptotics"};
    app.require_subcommand(1);

    double rho_u = 20.0, rho_step = 1.0 / 256;
    CLI::App* rho = app.add_subcommand("rho", "Dickman rho grid on [0,u] as CSV");
    rho->add_option("--u", rho_u, "grid horizon")->required();
    rho->add_option("--step", rho_step, "grid step (default 1/256)");

    int sig_k = 0;
    double sig_umax = 20.0, sig_step = 1.0 / 256;
    std::string sig_chi;
    CLI::App* sigma = app.add_subcommand("sigma", "iterated sigma_k grid as CSV");
    sigma->add_option("--k", sig_k, "iteration depth")->required();
    sigma->add_option("--umax", sig_umax, "grid horizon")->required();
    sigma->add_option("--step", sig_step, "grid step (default 1/256)");
    sigma->add_option("--chi", sig_chi, "base kernel grid CSV (default: indicator of [0,1])");

    double xi_u = 0.0, xi_T = 0.0;
    std::string xi_chi;
    CLI::App* xi = app.add_subcommand("xi", "saddle point xi(u) as CSV");
    xi->add_option("--u", xi_u, "target u")->required();
    CLI::Option* xi_chi_opt = xi->add_option("--chi", xi_chi, "kernel grid CSV");
    CLI::Option* xi_ind_opt = xi->add_option("--indicator", xi_T, "indicator kernel [0,T]");
    xi_chi_opt->excludes(xi_ind_opt);
    xi_ind_opt->excludes(xi_chi_opt);

    std::uint64_t cnt_x = 0, cnt_y = 0;
    int cnt_k = 0;
    CLI::App* count = app.add_subcommand("count", "exact counts for (x, y, k) as CSV");
    count->add_option("--x", cnt_x)->required();
    count->add_option("--y", cnt_y)->required();
    count->add_option("--k", cnt_k, "tower / totient depth (default 0)");

    std::uint64_t ps_x = 0, ps_y = 0;
    int ps_k = 0;
    CLI::App* pset = app.add_subcommand("pset", "members of the tower set P_k as CSV");
    pset->add_option("--x", ps_x)->required();
    pset->add_option("--y", ps_y)->required();
    pset->add_option("--k", ps_k, "tower depth (default 0)");

    ExperimentConfig cfg;
    CLI::App* compare = app.add_subcommand("compare", "empirical vs predicted densities as CSV");
    compare->add_option("--x", cfg.x_list, "x values (repeatable)")->required();
    compare->add_option("--u", cfg.u, "y = round(x^(1/u)) (default 2)");
    compare->add_option("--y", cfg.y_override, "fixed y overriding the u-derivation");
    compare->add_option("--k", cfg.k, "iteration depth (default 0)");
    compare->add_option("--step", cfg.h, "solver step (default 1/256)");
    compare->add_option("--U", cfg.U, "solver horizon (default 20)");
    compare->add_option("--jobs", cfg.jobs, "parallel rows (default 1)");
    compare->add_option("--cap", cfg.cap, "sieve cap");
    compare->add_option("--out", cfg.out_path, "output path (default stdout)");

    std::uint64_t c1_x = 0, c1_y = 0;
    std::string c1_pset;
    CLI::App* conj = app.add_subcommand("conjecture1", "shifted-prime vs smooth densities as CSV");
    conj->add_option("--x", c1_x)->required();
    conj->add_option("--y", c1_y)->required();
    conj->add_option("--pset", c1_pset, "prime set file (CSV header `p`)");

    std::uint64_t eh_x = 0;
    double eh_eps = 0.5;
    CLI::App* eh = app.add_subcommand("eh", "progression discrepancy statistic as CSV");
    eh->add_option("--x", eh_x)->required();
    eh->add_option("--epsilon", eh_eps)->required();

    CLI::App* idents = app.add_subcommand("identities", "run the identity sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (rho->parsed()) {
            write_grid_csv(dickman_rho(rho_u, rho_step), std::cout);
        } else if (sigma->parsed()) {
            GridFunction base =
                sig_chi.empty() ? indicator_chi(1.0, sig_step) : load_chi(sig_chi);
            SigmaOptions opt;
            opt.allow_resample = true;
            GridFunction g = solve_sigma(base, sig_umax, sig_step, opt);
            for (int j = 0; j < sig_k; ++j) g = solve_sigma(g, sig_umax, sig_step);
            write_grid_csv(g, std::cout);
        } else if (xi->parsed()) {
            GridFunction chi;
            if (!xi_chi.empty())
                chi = load_chi(xi_chi);
            else if (xi_ind_opt->count() > 0)
                chi = indicator_chi(xi_T, 1.0 / 256);
            else
                throw std::invalid_argument("xi: pass either --chi FILE or --indicator T");
            XiResult r = solve_xi(chi, xi_u);
            std::cout << XiResult::csv_header() << "\n" << r.csv_row() << "\n";
        } else if (count->parsed()) {
            SpfTable t = build_spf(cnt_x);
            TotientTable tt = build_totient(t);
            std::vector<PrimeSet> tower =
                build_pk_tower(cnt_x, std::min(cnt_y, cnt_x), cnt_k, t);
            std::cout << CountRecord::csv_header() << "\n";
            std::cout << psi_smooth(cnt_x, cnt_y, t).csv_row() << "\n";
            std::cout << pi_smooth_shifted(cnt_x, cnt_y, t).csv_row() << "\n";
            CountRecord phik = phi_k_smooth_count(cnt_x, cnt_y, cnt_k, t, tt);
            phik.k = cnt_k;
            std::cout << phik.csv_row() << "\n";
            CountRecord tow = psi_set(cnt_x, tower.back(), t);
            tow.k = cnt_k;
            std::cout << tow.csv_row() << "\n";
            CountRecord pit = pi_set(cnt_x, tower.back(), t);
            pit.k = cnt_k;
            std::cout << pit.csv_row() << "\n";
        } else if (pset->parsed()) {
            SpfTable t = build_spf(ps_x);
            std::vector<PrimeSet> tower =
                build_pk_tower(ps_x, std::min(ps_y, ps_x), ps_k, t);
            const PrimeSet& P = tower.back();
            std::cout << "p\n";
            for (std::size_t i = 0; i < P.primes.size(); ++i)
                if (P.member[i]) std::cout << P.primes[i] << "\n";
        } else if (compare->parsed()) {
            std::ofstream file;
            std::ostream& out = open_out(cfg.out_path, file);
            cmd_compare(cfg, out);
        } else if (conj->parsed()) {
            if (c1_pset.empty()) {
                cmd_conjecture1(c1_x, c1_y, nullptr, std::cout);
            } else {
                SpfTable t = build_spf(c1_x);
                PrimeSet P = prime_set_from_members(t, c1_x, read_prime_list(c1_pset));
                cmd_conjecture1(c1_x, c1_y, &P, std::cout);
            }
        } else if (eh->parsed()) {
            cmd_eh(eh_x, eh_eps, std::cout);
        } else if (idents->parsed()) {
            return cmd_identities(std::cout) ? 0 : 2;
        }
        return 0;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
