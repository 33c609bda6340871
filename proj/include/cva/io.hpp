#pragma once

#include <cstdint>
#include <string>

#include "cva/multi.hpp"

namespace cva {

// Schema: {lo, hi, atoms: [[loc, mass], ...], pieces: [[a, b, [c0,c1,c2,c3]], ...]}
// Doubles round-trip bit-stably for exactly representable values.
std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const std::string& text);

struct ScenarioOptions {
    TieRule tie = TieRule::LowestIndex;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t mc_seed = 1;
    int grid_n = 200;
};

struct ScenarioConfig {
    Scenario scenario;
    ScenarioOptions options;
};

// Throws std::invalid_argument naming the offending field on any problem;
// unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

// Fixed-width significant-digit formatting for CSV output.
std::string format_sig(double v, int digits = 12);

}  // namespace cva
