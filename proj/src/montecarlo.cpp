#include "cva/montecarlo.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cva {

namespace {

constexpr std::uint64_t kChunk = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct ChunkAccum {
    std::vector<double> wins;
    double payoff_sum = 0.0;
    double payoff_sumsq = 0.0;
};

ChunkAccum run_chunk(const Scenario& sc, const std::vector<Distribution>& profile,
                     const FavoredAgentMechanism& fam, std::uint64_t seed,
                     std::uint64_t chunk, std::uint64_t count) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(chunk)));
    size_t I = profile.size();
    ChunkAccum acc;
    acc.wins.assign(I + 1, 0.0);
    std::vector<double> s(I);
    for (std::uint64_t k = 0; k < count; ++k) {
        for (size_t i = 0; i < I; ++i) s[i] = profile[i].sample(rng);
        FamResult r = run_fam(fam, sc, s, &rng);
        acc.wins[static_cast<size_t>(r.winner)] += 1.0;
        acc.payoff_sum += r.principal_value;
        acc.payoff_sumsq += r.principal_value * r.principal_value;
    }
    return acc;
}

McResult reduce(std::vector<ChunkAccum>& parts, size_t I, std::uint64_t n) {
    McResult res;
    res.samples = n;
    res.win_prob.assign(I + 1, 0.0);
    res.win_se.assign(I + 1, 0.0);
    double psum = 0.0, psumsq = 0.0;
    for (const ChunkAccum& a : parts) {
        for (size_t k = 0; k <= I; ++k) res.win_prob[k] += a.wins[k];
        psum += a.payoff_sum;
        psumsq += a.payoff_sumsq;
    }
    double dn = static_cast<double>(n);
    for (size_t k = 0; k <= I; ++k) {
        double p = res.win_prob[k] / dn;
        res.win_prob[k] = p;
        res.win_se[k] = std::sqrt(std::max(0.0, p * (1.0 - p) / dn));
    }
    res.payoff_mean = psum / dn;
    double var = std::max(0.0, psumsq / dn - res.payoff_mean * res.payoff_mean);
    res.payoff_se = std::sqrt(var / dn);
    return res;
}

}  // namespace

McResult simulate_fam(const Scenario& sc, const std::vector<Distribution>& profile,
                      TieRule tie, std::uint64_t n_samples, std::uint64_t seed,
                      int n_threads) {
    FavoredAgentMechanism fam = favored_agent_mechanism(sc, profile, tie);
    std::uint64_t nchunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<ChunkAccum> parts(nchunks);
#ifdef _OPENMP
    if (n_threads > 0) omp_set_num_threads(n_threads);
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
        std::uint64_t cnt = std::min(kChunk, n_samples - lo);
        parts[static_cast<size_t>(c)] =
            run_chunk(sc, profile, fam, seed, static_cast<std::uint64_t>(c), cnt);
    }
    return reduce(parts, profile.size(), n_samples);
}

McResult simulate_fam_serial(const Scenario& sc, const std::vector<Distribution>& profile,
                             TieRule tie, std::uint64_t n_samples, std::uint64_t seed) {
    FavoredAgentMechanism fam = favored_agent_mechanism(sc, profile, tie);
    std::uint64_t nchunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<ChunkAccum> parts(nchunks);
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        std::uint64_t lo = c * kChunk;
        std::uint64_t cnt = std::min(kChunk, n_samples - lo);
        parts[static_cast<size_t>(c)] = run_chunk(sc, profile, fam, seed, c, cnt);
    }
    return reduce(parts, profile.size(), n_samples);
}

}  // namespace cva
