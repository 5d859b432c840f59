#pragma once

#include "pnembed/lts.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pnembed {

/// Effect F - B per label. Valid effects are orthogonal to the cycle base.
using EffectVector = IntVector;

/// A region (R, B, F): `tokens` is R over states, `consume` is B and
/// `produce` is F over labels. For every edge s -t-> s':
/// R(s) >= B(t) and R(s') = R(s) - B(t) + F(t).
struct Region {
    IntVector tokens;
    IntVector consume;
    IntVector produce;

    EffectVector effect() const { return produce - consume; }
};

/// Tree, cycle base and integer effect basis of one LTS, computed once.
struct RegionAnalysis {
    SpanningTree tree;
    CycleBase cycles;
    std::vector<EffectVector> effects;
};

RegionAnalysis analyze(const Lts& lts);

/// Integer basis of { E : cycle_base * E = 0 }.
std::vector<EffectVector> effect_space(const Lts& lts);

/// Coordinates (E_j . P(s)) of s against each basis vector.
RatVector state_signature(const Lts& lts, const std::vector<EffectVector>& basis, StateId s);
RatVector state_signature(const RegionAnalysis& analysis, StateId s);

/// An effect whose region separates s and s', or nullopt when P(s) - P(s')
/// lies in the cycle space (the pair is identified by every region).
std::optional<EffectVector> ssp_solvable(const Lts& lts, StateId s, StateId s2);
std::optional<EffectVector> ssp_solvable(const RegionAnalysis& analysis, StateId s, StateId s2);

struct EmbeddabilityReport {
    bool embeddable = false;
    std::vector<RatVector> signatures;                    // when embeddable
    std::optional<std::pair<StateId, StateId>> witness;   // when not; first < second
};

/// Decides embeddability by signature injectivity. The reported witness is
/// the earliest later state colliding with an earlier one.
EmbeddabilityReport is_embeddable(const Lts& lts);
EmbeddabilityReport is_embeddable(const RegionAnalysis& analysis, const Lts& lts);

/// Throws std::invalid_argument if `e` is not cycle-consistent.
Region region_from_effect(const Lts& lts, const EffectVector& e);
Region region_from_effect(const Lts& lts, const RegionAnalysis& analysis, const EffectVector& e);

/// Checks both region conditions on every edge.
bool is_region(const Lts& lts, const Region& r);

class NotEmbeddable : public std::runtime_error {
public:
    NotEmbeddable(std::string first, std::string second);

    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }

private:
    std::string first_;
    std::string second_;
};

/// One region per effect-basis vector; throws NotEmbeddable otherwise.
std::vector<Region> separating_regions(const Lts& lts);

} // namespace pnembed
