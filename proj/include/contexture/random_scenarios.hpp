#pragma once

#include <cstdint>

#include "contexture/scenario.hpp"

namespace contexture {

// Seeded stream of no-signaling scenarios on the rational grid with
// denominator denominator_bound. Identical specs yield identical streams.
struct RandomSpec {
    ScenarioKind kind = ScenarioKind::EprBell4;
    int count = 1;
    uint64_t seed = 0;
    int denominator_bound = 64;
};

// The index-th scenario of the stream (index 0-based). Marginals are sampled
// uniformly on the grid, then each table's p(+,+) uniformly on the grid
// intersected with the Frechet window [max(0, a+b-1), min(a, b)], which makes
// every stream element no-signaling by construction.
Scenario random_scenario(const RandomSpec& spec, int index);

}  // namespace contexture
