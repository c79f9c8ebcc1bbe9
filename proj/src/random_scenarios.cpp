#include "contexture/random_scenarios.hpp"

#include <algorithm>
#include <stdexcept>

#include "contexture/splitmix.hpp"

namespace contexture {

Scenario random_scenario(const RandomSpec& spec, int index) {
    if (spec.count < 1) throw std::invalid_argument("random_scenario: count must be >= 1");
    if (spec.denominator_bound < 2)
        throw std::invalid_argument("random_scenario: denominator_bound must be >= 2");
    if (index < 0 || index >= spec.count)
        throw std::invalid_argument("random_scenario: index out of range");

    Scenario s = spec.kind == ScenarioKind::LeggettGarg3 ? make_leggett_garg() : make_epr_bell();
    if (spec.kind == ScenarioKind::GenericPairwise)
        throw std::invalid_argument("random_scenario: generic scenarios have no fixed shape");

    // Each scenario owns an independent subsequence keyed by (seed, index).
    SplitMix64 rng(spec.seed ^ (0x5851f42d4c957f2dULL * static_cast<uint64_t>(index + 1)));
    const uint64_t d = static_cast<uint64_t>(spec.denominator_bound);

    std::map<std::string, uint64_t> marg;  // property -> numerator of Pr[X=+1]
    for (const auto& prop : s.properties) marg[prop] = rng.next_below(d);

    for (auto& t : s.tables) {
        const uint64_t ka = marg.at(t.left.property);
        const uint64_t kb = marg.at(t.right.property);
        const uint64_t lo = ka + kb > d ? ka + kb - d : 0;  // max(0, a+b-1) on the grid
        const uint64_t hi = std::min(ka, kb);
        const uint64_t kp = lo + rng.next_below(hi - lo);
        const Rational dd(static_cast<unsigned long>(d));
        t.probs[0] = Rational(static_cast<unsigned long>(kp)) / dd;
        t.probs[1] = Rational(static_cast<unsigned long>(ka - kp)) / dd;
        t.probs[2] = Rational(static_cast<unsigned long>(kb - kp)) / dd;
        t.probs[3] = Rational(static_cast<unsigned long>(d - ka - kb + kp)) / dd;
    }
    s.validate();
    return s;
}

}  // namespace contexture
