// Compares the serial reference Monte Carlo kernel against the OpenMP one on
// a two-agent uniform scenario and reports throughput plus agreement.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "cva/montecarlo.hpp"

using namespace cva;
using clk = std::chrono::steady_clock;

int main(int argc, char** argv) {
    std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000ULL;
    Distribution F = Distribution::uniform(0, 1);
    Scenario sc{0.4, {{F, 0.08}, {F, 0.08}}};
    std::vector<Distribution> profile{F, F};

    auto t0 = clk::now();
    McResult serial = simulate_fam_serial(sc, profile, TieRule::LowestIndex, n, 42);
    auto t1 = clk::now();
    McResult parallel = simulate_fam(sc, profile, TieRule::LowestIndex, n, 42);
    auto t2 = clk::now();

    double ts = std::chrono::duration<double>(t1 - t0).count();
    double tp = std::chrono::duration<double>(t2 - t1).count();
    bool identical = serial.payoff_mean == parallel.payoff_mean &&
                     serial.win_prob == parallel.win_prob;

    std::printf("samples            %llu\n", static_cast<unsigned long long>(n));
    std::printf("serial             %.3f s  (%.2f Msamples/s)\n", ts, n / ts / 1e6);
    std::printf("openmp             %.3f s  (%.2f Msamples/s)\n", tp, n / tp / 1e6);
    std::printf("speedup            %.2fx\n", ts / tp);
    std::printf("payoff estimate    %.6f +- %.6f\n", parallel.payoff_mean, parallel.payoff_se);
    std::printf("bit-identical      %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
