#include "pnembed/regions.hpp"

#include <algorithm>
#include <map>

namespace pnembed {

namespace {

bool is_cycle_consistent(const CycleBase& cycles, const EffectVector& e)
{
    if (cycles.basis.rows() == 0)
        return true;
    const RatVector prod = cycles.basis * to_rational_vector(e);
    return (prod.array() == Rational(0)).all();
}

std::vector<Rational> to_key(const RatVector& v)
{
    return std::vector<Rational>(v.data(), v.data() + v.size());
}

} // namespace

RegionAnalysis analyze(const Lts& lts)
{
    RegionAnalysis a;
    a.tree = spanning_tree(lts);
    a.cycles = cycle_base(lts, a.tree);
    for (const RatVector& v : nullspace_basis(a.cycles.basis))
        a.effects.push_back(clear_denominators(v));
    return a;
}

std::vector<EffectVector> effect_space(const Lts& lts)
{
    return analyze(lts).effects;
}

RatVector state_signature(const Lts& lts, const std::vector<EffectVector>& basis, StateId s)
{
    const IntVector p = state_parikh(spanning_tree(lts), s);
    RatVector sig(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        sig(static_cast<Eigen::Index>(j)) = Rational(checked_dot(basis[j], p));
    return sig;
}

RatVector state_signature(const RegionAnalysis& analysis, StateId s)
{
    const IntVector p = state_parikh(analysis.tree, s);
    RatVector sig(static_cast<Eigen::Index>(analysis.effects.size()));
    for (std::size_t j = 0; j < analysis.effects.size(); ++j)
        sig(static_cast<Eigen::Index>(j)) = Rational(checked_dot(analysis.effects[j], p));
    return sig;
}

std::optional<EffectVector> ssp_solvable(const RegionAnalysis& analysis, StateId s, StateId s2)
{
    if (s == s2)
        throw std::invalid_argument("ssp_solvable: a state separation problem needs two distinct states");
    const IntVector diff = state_parikh(analysis.tree, s) - state_parikh(analysis.tree, s2);
    for (const EffectVector& e : analysis.effects)
        if (checked_dot(e, diff) != 0)
            return e;
    return std::nullopt;
}

std::optional<EffectVector> ssp_solvable(const Lts& lts, StateId s, StateId s2)
{
    return ssp_solvable(analyze(lts), s, s2);
}

EmbeddabilityReport is_embeddable(const RegionAnalysis& analysis, const Lts& lts)
{
    EmbeddabilityReport report;
    std::map<std::vector<Rational>, StateId> seen;
    std::vector<RatVector> sigs;
    sigs.reserve(lts.num_states());
    for (StateId s = 0; s < lts.num_states(); ++s) {
        sigs.push_back(state_signature(analysis, s));
        auto [it, inserted] = seen.emplace(to_key(sigs.back()), s);
        if (!inserted) {
            report.witness = std::make_pair(it->second, s);
            return report;
        }
    }
    report.embeddable = true;
    report.signatures = std::move(sigs);
    return report;
}

EmbeddabilityReport is_embeddable(const Lts& lts)
{
    return is_embeddable(analyze(lts), lts);
}

Region region_from_effect(const Lts& lts, const RegionAnalysis& analysis, const EffectVector& e)
{
    if (e.size() != static_cast<Eigen::Index>(lts.num_labels()))
        throw std::invalid_argument("region_from_effect: effect has wrong dimension");
    if (!is_cycle_consistent(analysis.cycles, e))
        throw std::invalid_argument("region_from_effect: effect is not orthogonal to the cycle base");

    const auto n = static_cast<Eigen::Index>(lts.num_states());
    IntVector walk_effect(n);
    for (Eigen::Index s = 0; s < n; ++s)
        walk_effect(s) = checked_dot(e, state_parikh(analysis.tree, static_cast<StateId>(s)));

    std::int64_t anchor = 0;
    for (Eigen::Index s = 0; s < n; ++s)
        anchor = std::max(anchor, -walk_effect(s));

    Region r;
    r.tokens = (walk_effect.array() + anchor).matrix();
    r.consume = (-e).cwiseMax(0);
    r.produce = e + r.consume;
    return r;
}

Region region_from_effect(const Lts& lts, const EffectVector& e)
{
    return region_from_effect(lts, analyze(lts), e);
}

bool is_region(const Lts& lts, const Region& r)
{
    if (r.tokens.size() != static_cast<Eigen::Index>(lts.num_states()) ||
        r.consume.size() != static_cast<Eigen::Index>(lts.num_labels()) ||
        r.produce.size() != static_cast<Eigen::Index>(lts.num_labels()))
        return false;
    if ((r.tokens.array() < 0).any() || (r.consume.array() < 0).any() || (r.produce.array() < 0).any())
        return false;
    for (const Edge& edge : lts.edges()) {
        const auto s = static_cast<Eigen::Index>(edge.source);
        const auto t = static_cast<Eigen::Index>(edge.label);
        const auto d = static_cast<Eigen::Index>(edge.target);
        if (r.tokens(s) < r.consume(t))
            return false;
        if (r.tokens(d) != r.tokens(s) - r.consume(t) + r.produce(t))
            return false;
    }
    return true;
}

NotEmbeddable::NotEmbeddable(std::string first, std::string second)
    : std::runtime_error("not embeddable: states " + first + " and " + second +
                         " are identified by every region"),
      first_(std::move(first)),
      second_(std::move(second))
{
}

std::vector<Region> separating_regions(const Lts& lts)
{
    const RegionAnalysis analysis = analyze(lts);
    const auto report = is_embeddable(analysis, lts);
    if (!report.embeddable)
        throw NotEmbeddable(lts.states()[report.witness->first], lts.states()[report.witness->second]);
    std::vector<Region> regions;
    regions.reserve(analysis.effects.size());
    for (const EffectVector& e : analysis.effects)
        regions.push_back(region_from_effect(lts, analysis, e));
    return regions;
}

} // namespace pnembed
