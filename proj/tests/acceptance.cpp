// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "pnembed/petri.hpp"
#include "pnembed/reduction.hpp"
#include "pnembed/regions.hpp"
#include "pnembed/splitting.hpp"

#include "test_support.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace pnembed;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && seconds > limit_seconds) {
        out.ok = false;
        out.detail = "took longer than " + std::to_string(limit_seconds) + " s";
    }
    failures += out.ok ? 0 : 1;
    std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << seconds << " s)";
    if (!out.detail.empty())
        std::cout << " -- " << out.detail;
    std::cout << std::endl;
}

Outcome example_fixtures()
{
    Outcome o;
    const Lts fig1 = test::load_lts("fig1-right.lts");
    const auto r1 = is_embeddable(fig1);
    o.require(!r1.embeddable && r1.witness && fig1.states()[r1.witness->first] == "s2" &&
                  fig1.states()[r1.witness->second] == "s5",
              "fig1-right should be not-embeddable with witness (s2,s5)");

    const Lts left = test::load_lts("fig2-left.lts");
    const Lts middle = test::load_lts("fig2-middle.lts");
    o.require(is_embeddable(left).embeddable, "fig2-left should be embeddable");
    o.require(is_embeddable(middle).embeddable, "fig2-middle should be embeddable");

    const CycleBase base = cycle_base(middle, spanning_tree(middle));
    o.require(base.size() == 1 && RatVector(base.basis.row(0).transpose()) == to_rational_vector(IntVector::Ones(3)),
              "fig2-middle cycle base should be {a+b+c}");

    const PetriNet net = test::load_net("fig2.net");
    const auto rg = reachability_graph(net, 100);
    o.require(std::holds_alternative<Lts>(rg) && std::get<Lts>(rg).num_states() == 8,
              "fig2 net reachability graph should have 8 states");
    o.require(verify_embedding(left, net).embeds, "fig2-left should embed into the fig2 net");
    o.require(verify_embedding(middle, net).embeds, "fig2-middle should embed into the fig2 net");
    return o;
}

Outcome optimal_splitting()
{
    Outcome o;
    const Lts lts = test::load_lts("fig1-right.lts");
    const Optimum best = optimize(lts);
    o.require(best.status == SplitOutcome::Status::Found && best.q_star == 3, "optimize should give q* = 3");
    o.require(best.splitting && is_embeddable(apply(lts, *best.splitting)).embeddable,
              "optimal witness should make the LTS embeddable");
    o.require(decide(lts, 2).status == SplitOutcome::Status::NotFound, "decide at q = 2 should be not-found");
    return o;
}

Outcome synthesis_round_trip()
{
    Outcome o;
    std::mt19937 rng(2024);
    int done = 0;
    int drawn = 0;
    while (done < 200 && drawn < 100000) {
        ++drawn;
        const Lts lts = test::random_lts(rng, {.max_states = 8, .max_labels = 4});
        if (!is_embeddable(lts).embeddable)
            continue;
        ++done;
        const auto check = verify_embedding(lts, synthesize(lts));
        o.require(check.embeds, "round trip failed (" + check.reason + ") on\n" + format_lts(lts));
    }
    o.require(done == 200, "could not draw 200 embeddable LTSs");
    o.detail = o.ok ? std::to_string(done) + " embeddable LTSs" : o.detail;
    return o;
}

Outcome criterion_cross_validation()
{
    Outcome o;
    std::mt19937 rng(4048);
    std::size_t pairs = 0;
    for (int i = 0; i < 200; ++i) {
        const Lts lts = test::random_lts(rng, {.max_states = 8, .max_labels = 4});
        const RegionAnalysis a = analyze(lts);
        for (StateId s = 0; s < lts.num_states(); ++s)
            for (StateId t = s + 1; t < lts.num_states(); ++t) {
                ++pairs;
                const bool by_signature = state_signature(a, s) != state_signature(a, t);
                const bool by_span = !in_span(
                    a.cycles.basis, to_rational_vector(IntVector(state_parikh(a.tree, s) - state_parikh(a.tree, t))));
                const bool by_ssp = ssp_solvable(a, s, t).has_value();
                o.require(by_signature == by_span && by_span == by_ssp,
                          "criteria disagree on (" + lts.states()[s] + "," + lts.states()[t] + ") in\n" +
                              format_lts(lts));
            }
    }
    o.detail = o.ok ? std::to_string(pairs) + " state pairs" : o.detail;
    return o;
}

Outcome search_completeness()
{
    Outcome o;
    std::mt19937 rng(8096);
    std::size_t queries = 0;
    for (int i = 0; i < 50; ++i) {
        const Lts lts = test::random_lts(
            rng, {.max_states = 7, .max_labels = 3, .max_extra_edges = 6, .max_edges = 8});
        for (std::size_t q = std::max<std::size_t>(1, lts.num_labels()); q <= lts.num_edges(); ++q) {
            ++queries;
            o.require(decide(lts, q).found() == test::brute_force_split_exists(lts, q),
                      "decide disagrees with enumeration at q = " + std::to_string(q) + " on\n" + format_lts(lts));
        }
    }
    o.detail = o.ok ? std::to_string(queries) + " queries, 0 discrepancies" : o.detail;
    return o;
}

Outcome subset_sum_equivalence()
{
    Outcome o;
    const SearchOptions options{.node_budget = 2'000'000};
    std::size_t instances = 0;
    std::size_t over_budget = 0;
    std::size_t over_budget_small = 0;
    std::size_t solvable = 0;

    std::vector<std::vector<std::uint64_t>> tuples;
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<std::uint64_t> c(n, 1);
        for (;;) {
            tuples.push_back(c);
            std::size_t i = n;
            while (i > 0 && c[i - 1] == 6)
                --i;
            if (i == 0)
                break;
            ++c[i - 1];
            for (std::size_t j = i; j < n; ++j)
                c[j] = c[i - 1];
        }
    }

    for (const auto& c : tuples)
        for (std::uint64_t b = 1; b <= 8; ++b) {
            const SubsetSumInstance inst{b, c};
            const std::string name = format_subset_sum(inst);
            ++instances;
            const Lts gadget = build_lts(inst);
            const std::size_t q = params(inst).q;
            const bool expected = subset_sum_brute(inst).has_value();
            solvable += expected;

            const SplitOutcome at_q = decide(gadget, q, options);
            const SplitOutcome below = decide(gadget, q - 1, options);
            if (at_q.status == SplitOutcome::Status::BudgetExhausted ||
                below.status == SplitOutcome::Status::BudgetExhausted) {
                ++over_budget;
                over_budget_small += c.size() <= 2;
                std::cout << "  over node budget: " << name << std::flush;
                continue;
            }
            o.require(at_q.found() == expected, "decide at q disagrees with the oracle on " + name);
            o.require(!below.found(), "decide at q-1 succeeded on " + name);
            if (at_q.found()) {
                std::uint64_t sum = 0;
                for (std::size_t i : extract_solution(inst, *at_q.splitting))
                    sum += c[i - 1];
                o.require(sum == b, "extracted solution does not sum to b on " + name);
            }
        }
    o.require(instances >= 40, "sweep too small");
    o.require(over_budget_small == 0, "n <= 2 instances exceeded the node budget");
    if (o.ok)
        o.detail = std::to_string(instances) + " instances (" + std::to_string(solvable) + " solvable), " +
                   std::to_string(over_budget) + " over budget";
    return o;
}

Outcome gadget_calibration()
{
    Outcome o;
    const SubsetSumInstance inst{2, {2}};
    const auto solution = subset_sum_brute(inst);
    o.require(solution && *solution == IndexSet{1}, "oracle should solve (1,2,[2]) with {1}");
    if (!o.ok)
        return o;
    const Lts gadget = build_lts(inst);
    const Lts split = apply(gadget, splitting_for(inst, gadget, *solution));
    const RegionAnalysis a = analyze(split);

    // Solve for an effect-space vector with the prescribed coordinates.
    const std::vector<std::pair<std::string, std::int64_t>> wanted{
        {"u0", 1}, {"o", 9}, {"O", -18}, {"alpha", 2}, {"beta", 4}, {"gamma1", 2}};
    const auto dim = static_cast<Eigen::Index>(a.effects.size());
    RatMatrix system(static_cast<Eigen::Index>(wanted.size()), dim + 1);
    for (std::size_t r = 0; r < wanted.size(); ++r) {
        const auto label = static_cast<Eigen::Index>(split.label(wanted[r].first));
        for (Eigen::Index j = 0; j < dim; ++j)
            system(static_cast<Eigen::Index>(r), j) = Rational(a.effects[static_cast<std::size_t>(j)](label));
        system(static_cast<Eigen::Index>(r), dim) = Rational(wanted[r].second);
    }
    const RatMatrix lhs = system.leftCols(dim);
    o.require(rank(lhs) == rank(system), "no effect-space vector has the calibrated values");
    return o;
}

} // namespace

int main()
{
    criterion(1, "example fixtures", 1.0, example_fixtures);
    criterion(2, "optimal splitting of fig1-right", 1.0, optimal_splitting);
    criterion(3, "synthesis round trip on 200 random embeddable LTSs", 30.0, synthesis_round_trip);
    criterion(4, "three embeddability criteria agree on 200 random LTSs", 60.0, criterion_cross_validation);
    criterion(5, "decide matches exhaustive enumeration on 50 random LTSs", 300.0, search_completeness);
    criterion(6, "gadget splitting decides subset sum", 900.0, subset_sum_equivalence);
    criterion(7, "gadget effect calibration", 1.0, gadget_calibration);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
