#include "pnembed/petri.hpp"

#include "pnembed/text_format.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace pnembed {

PlaceId PetriNet::add_place(const std::string& name, std::int64_t initial_tokens)
{
    if (initial_tokens < 0)
        throw std::invalid_argument("place " + name + ": negative initial marking");
    if (find_place(name) || find_transition(name))
        throw std::invalid_argument("duplicate net node id '" + name + "'");
    const auto p = static_cast<Eigen::Index>(places_.size());
    places_.push_back(name);
    consume_.conservativeResize(p + 1, consume_.cols());
    produce_.conservativeResize(p + 1, produce_.cols());
    consume_.row(p).setZero();
    produce_.row(p).setZero();
    initial_.conservativeResize(p + 1);
    initial_(p) = initial_tokens;
    return static_cast<PlaceId>(p);
}

TransitionId PetriNet::add_transition(const std::string& name)
{
    if (find_place(name) || find_transition(name))
        throw std::invalid_argument("duplicate net node id '" + name + "'");
    const auto t = static_cast<Eigen::Index>(transitions_.size());
    transitions_.push_back(name);
    consume_.conservativeResize(consume_.rows(), t + 1);
    produce_.conservativeResize(produce_.rows(), t + 1);
    consume_.col(t).setZero();
    produce_.col(t).setZero();
    return static_cast<TransitionId>(t);
}

void PetriNet::set_input(PlaceId p, TransitionId t, std::int64_t weight)
{
    if (p >= places_.size() || t >= transitions_.size() || weight < 0)
        throw std::invalid_argument("set_input: bad place, transition or weight");
    consume_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(t)) = weight;
}

void PetriNet::set_output(TransitionId t, PlaceId p, std::int64_t weight)
{
    if (p >= places_.size() || t >= transitions_.size() || weight < 0)
        throw std::invalid_argument("set_output: bad place, transition or weight");
    produce_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(t)) = weight;
}

std::optional<PlaceId> PetriNet::find_place(std::string_view name) const
{
    for (PlaceId p = 0; p < places_.size(); ++p)
        if (places_[p] == name)
            return p;
    return std::nullopt;
}

std::optional<TransitionId> PetriNet::find_transition(std::string_view name) const
{
    for (TransitionId t = 0; t < transitions_.size(); ++t)
        if (transitions_[t] == name)
            return t;
    return std::nullopt;
}

TransitionId PetriNet::transition(std::string_view name) const
{
    if (auto t = find_transition(name))
        return *t;
    throw std::out_of_range("unknown transition '" + std::string(name) + "'");
}

NotEnabled::NotEnabled(std::string transition, std::string place)
    : std::runtime_error("transition " + transition + " is not enabled: place " + place +
                         " has too few tokens"),
      transition_(std::move(transition)),
      place_(std::move(place))
{
}

namespace {

std::optional<PlaceId> blocking_place(const PetriNet& net, const Marking& m, TransitionId t)
{
    if (t >= net.num_transitions())
        throw std::out_of_range("unknown transition index " + std::to_string(t));
    if (m.size() != static_cast<Eigen::Index>(net.num_places()))
        throw std::invalid_argument("marking has wrong number of places");
    const auto col = static_cast<Eigen::Index>(t);
    for (Eigen::Index p = 0; p < m.size(); ++p)
        if (m(p) < net.consume()(p, col))
            return static_cast<PlaceId>(p);
    return std::nullopt;
}

} // namespace

bool enabled(const PetriNet& net, const Marking& m, TransitionId t)
{
    return !blocking_place(net, m, t).has_value();
}

Marking fire(const PetriNet& net, const Marking& m, TransitionId t)
{
    if (auto p = blocking_place(net, m, t))
        throw NotEnabled(net.transitions()[t], net.places()[*p]);
    const auto col = static_cast<Eigen::Index>(t);
    Marking out = m;
    for (Eigen::Index p = 0; p < m.size(); ++p) {
        std::int64_t v = 0;
        if (__builtin_add_overflow(m(p) - net.consume()(p, col), net.produce()(p, col), &v))
            throw std::overflow_error("marking overflows 64 bits");
        out(p) = v;
    }
    return out;
}

std::string marking_name(const PetriNet& net, const Marking& m)
{
    if (net.num_places() == 0)
        return "empty";
    std::string out;
    for (std::size_t p = 0; p < net.num_places(); ++p) {
        if (p > 0)
            out += ',';
        out += net.places()[p];
        out += ':';
        out += std::to_string(m(static_cast<Eigen::Index>(p)));
    }
    return out;
}

std::variant<Lts, BoundExceeded> reachability_graph(const PetriNet& net, std::size_t max_states)
{
    if (max_states < 1)
        throw std::invalid_argument("reachability_graph: the state bound must be at least 1");

    using Key = std::vector<std::int64_t>;
    auto key_of = [](const Marking& m) { return Key(m.data(), m.data() + m.size()); };

    std::vector<Marking> markings{net.initial_marking()};
    std::map<Key, StateId> index{{key_of(net.initial_marking()), 0}};
    std::vector<Edge> edges;

    for (StateId s = 0; s < markings.size(); ++s) {
        for (TransitionId t = 0; t < net.num_transitions(); ++t) {
            if (!enabled(net, markings[s], t))
                continue;
            Marking next = fire(net, markings[s], t);
            auto [it, inserted] = index.emplace(key_of(next), markings.size());
            if (inserted) {
                if (markings.size() == max_states)
                    return BoundExceeded{max_states};
                markings.push_back(std::move(next));
            }
            edges.push_back({s, t, it->second});
        }
    }

    std::vector<std::string> names;
    names.reserve(markings.size());
    for (const Marking& m : markings)
        names.push_back(marking_name(net, m));
    return Lts(std::move(names), net.transitions(), std::move(edges), 0);
}

PetriNet synthesize(const Lts& lts)
{
    const std::vector<Region> regions = separating_regions(lts);

    PetriNet net;
    std::set<std::string> taken(lts.labels().begin(), lts.labels().end());
    std::vector<PlaceId> places;
    std::size_t counter = 0;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        std::string name;
        do {
            name = "p" + std::to_string(++counter);
        } while (taken.count(name) > 0);
        taken.insert(name);
        places.push_back(net.add_place(name, regions[i].tokens(static_cast<Eigen::Index>(lts.initial()))));
    }
    for (const std::string& label : lts.labels())
        net.add_transition(label);
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (TransitionId t = 0; t < lts.num_labels(); ++t) {
            const auto ti = static_cast<Eigen::Index>(t);
            net.set_input(places[i], t, regions[i].consume(ti));
            net.set_output(t, places[i], regions[i].produce(ti));
        }
    }
    return net;
}

EmbeddingCheck verify_embedding(const Lts& lts, const PetriNet& net)
{
    std::vector<TransitionId> to_transition;
    for (const std::string& label : lts.labels()) {
        auto t = net.find_transition(label);
        if (!t)
            throw std::invalid_argument("label " + label + " is not a transition of the net");
        to_transition.push_back(*t);
    }

    // Incidence restricted to the LTS labels, in label order.
    const auto np = static_cast<Eigen::Index>(net.num_places());
    IntMatrix incidence(np, static_cast<Eigen::Index>(lts.num_labels()));
    for (std::size_t l = 0; l < to_transition.size(); ++l) {
        const auto t = static_cast<Eigen::Index>(to_transition[l]);
        incidence.col(static_cast<Eigen::Index>(l)) = net.produce().col(t) - net.consume().col(t);
    }

    const SpanningTree tree = spanning_tree(lts);
    EmbeddingCheck check;
    std::vector<Marking> markings;
    markings.reserve(lts.num_states());
    for (StateId s = 0; s < lts.num_states(); ++s) {
        const IntVector p = state_parikh(tree, s);
        Marking m = net.initial_marking();
        for (Eigen::Index place = 0; place < np; ++place)
            m(place) += checked_dot(incidence.row(place).transpose(), p);
        if ((m.array() < 0).any()) {
            check.reason = "negative-marking " + lts.states()[s];
            return check;
        }
        markings.push_back(std::move(m));
    }

    std::map<std::vector<std::int64_t>, StateId> seen;
    for (StateId s = 0; s < markings.size(); ++s) {
        std::vector<std::int64_t> key(markings[s].data(), markings[s].data() + markings[s].size());
        auto [it, inserted] = seen.emplace(std::move(key), s);
        if (!inserted) {
            check.reason = "not-injective " + lts.states()[it->second] + " " + lts.states()[s];
            return check;
        }
    }

    for (EdgeId e = 0; e < lts.num_edges(); ++e) {
        const Edge& edge = lts.edges()[e];
        const TransitionId t = to_transition[edge.label];
        const std::string where =
            lts.states()[edge.source] + " " + lts.labels()[edge.label] + " " + lts.states()[edge.target];
        if (!enabled(net, markings[edge.source], t)) {
            check.reason = "not-enabled " + where;
            return check;
        }
        if (fire(net, markings[edge.source], t) != markings[edge.target]) {
            check.reason = "wrong-target " + where;
            return check;
        }
    }

    check.embeds = true;
    check.markings = std::move(markings);
    return check;
}

PetriNet parse_net(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens != std::vector<std::string>{"net"})
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected header line 'net'");

    PetriNet net;
    struct PendingArc {
        std::size_t line;
        std::string from;
        std::string to;
        std::int64_t weight;
    };
    std::vector<PendingArc> arcs;

    auto to_int = [](const TokenLine& tl, const std::string& tok, const char* what) {
        const std::uint64_t v = parse_count(tl, tok, what);
        if (v > static_cast<std::uint64_t>(INT64_MAX))
            throw ParseError(tl.number, std::string(what) + " is too large");
        return static_cast<std::int64_t>(v);
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tl = lines[i];
        const std::string& kw = tl.tokens[0];
        try {
            if (kw == "place") {
                if (tl.tokens.size() != 3)
                    throw ParseError(tl.number, "expected 'place <id> <initial-tokens>'");
                net.add_place(tl.tokens[1], to_int(tl, tl.tokens[2], "initial tokens"));
            } else if (kw == "trans") {
                if (tl.tokens.size() != 2)
                    throw ParseError(tl.number, "expected 'trans <id>'");
                net.add_transition(tl.tokens[1]);
            } else if (kw == "arc") {
                if (tl.tokens.size() != 4)
                    throw ParseError(tl.number, "expected 'arc <from> <to> <weight>'");
                arcs.push_back({tl.number, tl.tokens[1], tl.tokens[2], to_int(tl, tl.tokens[3], "arc weight")});
            } else {
                throw ParseError(tl.number, "unknown directive '" + kw + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(tl.number, e.what());
        }
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (const PendingArc& arc : arcs) {
        if (!seen.emplace(arc.from, arc.to).second)
            throw ParseError(arc.line, "duplicate arc " + arc.from + " -> " + arc.to);
        const auto p_from = net.find_place(arc.from);
        const auto t_from = net.find_transition(arc.from);
        const auto p_to = net.find_place(arc.to);
        const auto t_to = net.find_transition(arc.to);
        if (p_from && t_to)
            net.set_input(*p_from, *t_to, arc.weight);
        else if (t_from && p_to)
            net.set_output(*t_from, *p_to, arc.weight);
        else
            throw ParseError(arc.line, "arc " + arc.from + " -> " + arc.to +
                                           " must connect a declared place and a declared transition");
    }
    return net;
}

std::string format_net(const PetriNet& net)
{
    std::ostringstream out;
    out << "net\n";
    for (std::size_t p = 0; p < net.num_places(); ++p)
        out << "place " << net.places()[p] << ' ' << net.initial_marking()(static_cast<Eigen::Index>(p)) << '\n';
    for (const std::string& t : net.transitions())
        out << "trans " << t << '\n';
    for (std::size_t p = 0; p < net.num_places(); ++p) {
        for (std::size_t t = 0; t < net.num_transitions(); ++t) {
            const auto pi = static_cast<Eigen::Index>(p);
            const auto ti = static_cast<Eigen::Index>(t);
            if (net.consume()(pi, ti) != 0)
                out << "arc " << net.places()[p] << ' ' << net.transitions()[t] << ' ' << net.consume()(pi, ti)
                    << '\n';
            if (net.produce()(pi, ti) != 0)
                out << "arc " << net.transitions()[t] << ' ' << net.places()[p] << ' ' << net.produce()(pi, ti)
                    << '\n';
        }
    }
    return out.str();
}

} // namespace pnembed
