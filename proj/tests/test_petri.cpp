#include "pnembed/petri.hpp"
#include "pnembed/text_format.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace pnembed;
using test::load_lts;
using test::load_net;

namespace {

Marking marking(std::initializer_list<std::int64_t> values)
{
    Marking m(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (auto x : values)
        m(i++) = x;
    return m;
}

Lts rg_or_fail(const PetriNet& net, std::size_t bound = default_state_bound)
{
    auto result = reachability_graph(net, bound);
    if (!std::holds_alternative<Lts>(result))
        throw std::runtime_error("bound exceeded");
    return std::get<Lts>(result);
}

} // namespace

TEST(Firing, Fig2Net)
{
    const PetriNet net = load_net("fig2.net");
    const Marking m0 = net.initial_marking();
    EXPECT_EQ(m0, marking({5, 1, 0, 0}));
    EXPECT_TRUE(enabled(net, m0, net.transition("a")));
    EXPECT_FALSE(enabled(net, m0, net.transition("c")));
    EXPECT_EQ(fire(net, m0, net.transition("a")), marking({3, 0, 1, 0}));
    EXPECT_EQ(fire(net, m0, net.transition("b")), marking({4, 1, 0, 1}));
    try {
        fire(net, m0, net.transition("c"));
        FAIL() << "expected NotEnabled";
    } catch (const NotEnabled& e) {
        EXPECT_EQ(e.transition(), "c");
        EXPECT_EQ(e.blocking_place(), "p3");
    }
}

TEST(Firing, NoInputArcsAlwaysEnabled)
{
    PetriNet net;
    const auto p = net.add_place("p", 0);
    const auto t = net.add_transition("t");
    net.set_output(t, p, 1);
    EXPECT_TRUE(enabled(net, marking({0}), t));
    EXPECT_EQ(fire(net, marking({0}), t), marking({1}));
}

TEST(Firing, UnknownTransitionThrows)
{
    const PetriNet net = load_net("fig2.net");
    EXPECT_THROW(enabled(net, net.initial_marking(), 7), std::out_of_range);
    EXPECT_THROW(net.transition("zz"), std::out_of_range);
}

TEST(MarkingName, Format)
{
    const PetriNet net = load_net("fig2.net");
    EXPECT_EQ(marking_name(net, net.initial_marking()), "p1:5,p2:1,p3:0,p4:0");
    EXPECT_EQ(marking_name(PetriNet{}, Marking(0)), "empty");
}

TEST(ReachabilityGraph, Fig2NetMatchesMiddleLts)
{
    const PetriNet net = load_net("fig2.net");
    const Lts rg = rg_or_fail(net, 100);
    EXPECT_EQ(rg.num_states(), 8u);
    EXPECT_TRUE(validate(rg).empty());
    EXPECT_TRUE(test::isomorphic(load_lts("fig2-middle.lts"), rg));
    EXPECT_EQ(rg.states()[rg.initial()], "p1:5,p2:1,p3:0,p4:0");
}

TEST(ReachabilityGraph, NoPlacesGivesSelfLoop)
{
    PetriNet net;
    net.add_transition("t");
    const Lts rg = rg_or_fail(net);
    ASSERT_EQ(rg.num_states(), 1u);
    ASSERT_EQ(rg.num_edges(), 1u);
    EXPECT_EQ(rg.edges()[0].source, rg.edges()[0].target);
}

TEST(ReachabilityGraph, UnboundedCounterExceedsCap)
{
    PetriNet net;
    const auto p = net.add_place("p", 0);
    net.set_output(net.add_transition("t"), p, 1);
    const auto result = reachability_graph(net, 3);
    ASSERT_TRUE(std::holds_alternative<BoundExceeded>(result));
    EXPECT_EQ(std::get<BoundExceeded>(result).max_states, 3u);
}

TEST(ReachabilityGraph, ZeroBoundRejected)
{
    EXPECT_THROW(reachability_graph(load_net("fig2.net"), 0), std::invalid_argument);
}

TEST(ReachabilityGraph, EdgesReplayThroughFire)
{
    std::mt19937 rng(71);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 60; ++i) {
        const Lts lts = test::random_lts(rng);
        if (!is_embeddable(lts).embeddable)
            continue;
        const PetriNet net = synthesize(lts);
        auto result = reachability_graph(net, 500);
        if (!std::holds_alternative<Lts>(result))
            continue;
        ++checked;
        const Lts rg = std::get<Lts>(result);
        EXPECT_TRUE(validate(rg).empty());
        // Markings are recoverable from the state names; replay each edge.
        std::map<std::string, Marking> by_name;
        std::vector<Marking> frontier{net.initial_marking()};
        by_name[marking_name(net, net.initial_marking())] = net.initial_marking();
        while (!frontier.empty()) {
            const Marking m = frontier.back();
            frontier.pop_back();
            for (TransitionId t = 0; t < net.num_transitions(); ++t)
                if (enabled(net, m, t)) {
                    const Marking next = fire(net, m, t);
                    if (by_name.emplace(marking_name(net, next), next).second)
                        frontier.push_back(next);
                }
        }
        ASSERT_EQ(by_name.size(), rg.num_states());
        for (const Edge& e : rg.edges()) {
            const Marking& from = by_name.at(rg.states()[e.source]);
            const Marking to = fire(net, from, net.transition(rg.labels()[e.label]));
            EXPECT_EQ(marking_name(net, to), rg.states()[e.target]);
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Synthesize, Fig2Middle)
{
    const Lts lts = load_lts("fig2-middle.lts");
    const PetriNet net = synthesize(lts);
    EXPECT_EQ(net.num_places(), 2u);
    EXPECT_EQ(net.transitions(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_TRUE(verify_embedding(lts, net).embeds);
}

TEST(Synthesize, Fig1RightNotEmbeddable)
{
    try {
        synthesize(load_lts("fig1-right.lts"));
        FAIL() << "expected NotEmbeddable";
    } catch (const NotEmbeddable& e) {
        EXPECT_EQ(e.first(), "s2");
        EXPECT_EQ(e.second(), "s5");
    }
}

TEST(Synthesize, SingleStateLts)
{
    const PetriNet net = synthesize(Lts({"s0"}, {}, {}, 0));
    EXPECT_EQ(net.num_places(), 0u);
    EXPECT_EQ(rg_or_fail(net).num_states(), 1u);
}

TEST(Synthesize, PlaceNamesAvoidLabels)
{
    const Lts lts = LtsBuilder("s0").edge("s0", "p1", "s1").build();
    const PetriNet net = synthesize(lts);
    for (const auto& p : net.places())
        EXPECT_NE(p, "p1");
    EXPECT_TRUE(verify_embedding(lts, net).embeds);
}

TEST(Synthesize, RoundTripOnRandomLts)
{
    std::mt19937 rng(73);
    int embeddable = 0;
    for (int i = 0; i < 300; ++i) {
        const Lts lts = test::random_lts(rng, {.max_labels = 4});
        if (!is_embeddable(lts).embeddable)
            continue;
        ++embeddable;
        const auto check = verify_embedding(lts, synthesize(lts));
        EXPECT_TRUE(check.embeds) << check.reason << "\n" << format_lts(lts);
    }
    EXPECT_GT(embeddable, 50);
}

TEST(VerifyEmbedding, Fig2LtsIntoFig2Net)
{
    const PetriNet net = load_net("fig2.net");
    EXPECT_TRUE(verify_embedding(load_lts("fig2-middle.lts"), net).embeds);
    EXPECT_TRUE(verify_embedding(load_lts("fig2-left.lts"), net).embeds);
}

TEST(VerifyEmbedding, MarkingMapEqualsRgStates)
{
    const PetriNet net = load_net("fig2.net");
    const auto check = verify_embedding(load_lts("fig2-middle.lts"), net);
    ASSERT_TRUE(check.embeds);
    std::set<std::string> from_map;
    for (const Marking& m : check.markings)
        from_map.insert(marking_name(net, m));
    const Lts rg = rg_or_fail(net);
    EXPECT_EQ(from_map, std::set<std::string>(rg.states().begin(), rg.states().end()));
}

TEST(VerifyEmbedding, ZeroPlaceNetIsNotInjective)
{
    const Lts lts = LtsBuilder("s0").edge("s0", "a", "s1").build();
    PetriNet net;
    net.add_transition("a");
    const auto check = verify_embedding(lts, net);
    EXPECT_FALSE(check.embeds);
    EXPECT_EQ(check.reason.rfind("not-injective", 0), 0u) << check.reason;
}

TEST(VerifyEmbedding, NegativeMarkingAndDisabledEdge)
{
    const Lts lts = LtsBuilder("s0").edge("s0", "a", "s1").build();
    PetriNet net;
    const auto p = net.add_place("p", 0);
    const auto a = net.add_transition("a");
    net.set_input(p, a, 1);
    EXPECT_EQ(verify_embedding(lts, net).reason.rfind("negative-marking", 0), 0u);

    PetriNet loop;
    const auto q = loop.add_place("q", 0);
    const auto r = loop.add_place("r", 0);
    const auto b = loop.add_transition("a");
    loop.set_input(q, b, 1);
    loop.set_output(b, q, 1);
    loop.set_output(b, r, 1);
    EXPECT_EQ(verify_embedding(lts, loop).reason.rfind("not-enabled", 0), 0u);
}

TEST(VerifyEmbedding, UnknownLabelThrows)
{
    const Lts lts = LtsBuilder("s0").edge("s0", "x", "s1").build();
    EXPECT_THROW(verify_embedding(lts, load_net("fig2.net")), std::invalid_argument);
}

TEST(NetFormat, RoundTrip)
{
    const PetriNet net = load_net("fig2.net");
    EXPECT_EQ(parse_net(format_net(net)), net);
    std::mt19937 rng(79);
    for (int i = 0; i < 50; ++i) {
        const Lts lts = test::random_lts(rng);
        if (!is_embeddable(lts).embeddable)
            continue;
        const PetriNet synth = synthesize(lts);
        EXPECT_EQ(parse_net(format_net(synth)), synth);
    }
}

TEST(NetFormat, Errors)
{
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_net(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("lts\n"), 1u);
    EXPECT_EQ(line_of("net\nplace p 1\ntrans t\narc p q 1\n"), 4u);
    EXPECT_EQ(line_of("net\nplace p x\n"), 2u);
    EXPECT_EQ(line_of("net\nplace p 1\nplace p 2\n"), 3u);
    EXPECT_EQ(line_of("net\nplace p 1\ntrans t\narc p t 1\narc p t 2\n"), 5u);
    EXPECT_EQ(line_of("net\nplace p 1\nplace q 1\narc p q 1\n"), 4u);
    // Arcs may reference nodes declared later.
    EXPECT_EQ(line_of("net\narc p t 1\nplace p 1\ntrans t\n"), 0u);
}
