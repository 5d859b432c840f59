#include "pnembed/lts.hpp"

#include "pnembed/text_format.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pnembed {

Lts::Lts(std::vector<std::string> states, std::vector<std::string> labels, std::vector<Edge> edges,
         StateId initial)
    : states_(std::move(states)),
      labels_(std::move(labels)),
      edges_(std::move(edges)),
      initial_(initial),
      out_(states_.size())
{
    for (StateId s = 0; s < states_.size(); ++s)
        if (!state_index_.emplace(states_[s], s).second)
            throw std::invalid_argument("duplicate state name '" + states_[s] + "'");
    for (LabelId t = 0; t < labels_.size(); ++t)
        if (!label_index_.emplace(labels_[t], t).second)
            throw std::invalid_argument("duplicate label name '" + labels_[t] + "'");
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const Edge& edge = edges_[e];
        if (edge.source < states_.size() && edge.target < states_.size() && edge.label < labels_.size())
            out_[edge.source].push_back(e);
    }
}

std::span<const EdgeId> Lts::out_edges(StateId s) const
{
    return out_.at(s);
}

std::optional<StateId> Lts::find_state(std::string_view name) const
{
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<LabelId> Lts::find_label(std::string_view name) const
{
    auto it = label_index_.find(std::string(name));
    if (it == label_index_.end())
        return std::nullopt;
    return it->second;
}

StateId Lts::state(std::string_view name) const
{
    if (auto s = find_state(name))
        return *s;
    throw std::out_of_range("unknown state '" + std::string(name) + "'");
}

LabelId Lts::label(std::string_view name) const
{
    if (auto t = find_label(name))
        return *t;
    throw std::out_of_range("unknown label '" + std::string(name) + "'");
}

LtsBuilder::LtsBuilder(std::string initial)
{
    intern_state(initial);
}

LtsBuilder& LtsBuilder::edge(const std::string& source, const std::string& label, const std::string& target)
{
    const StateId s = intern_state(source);
    const LabelId t = intern_label(label);
    const StateId d = intern_state(target);
    edges_.push_back({s, t, d});
    return *this;
}

Lts LtsBuilder::build() const
{
    return Lts(states_, labels_, edges_, 0);
}

StateId LtsBuilder::intern_state(const std::string& name)
{
    auto [it, inserted] = state_index_.emplace(name, states_.size());
    if (inserted)
        states_.push_back(name);
    return it->second;
}

LabelId LtsBuilder::intern_label(const std::string& name)
{
    auto [it, inserted] = label_index_.emplace(name, labels_.size());
    if (inserted)
        labels_.push_back(name);
    return it->second;
}

std::string Violation::describe() const
{
    switch (kind) {
    case Kind::Nondeterministic:
        return "nondeterministic: state " + state + " has several '" + label + "' edges";
    case Kind::Unreachable:
        return "unreachable state " + state;
    case Kind::DanglingReference:
        return "edge " + std::to_string(edge.value_or(0)) + " references an undeclared state or label";
    }
    return {};
}

std::vector<Violation> validate(const Lts& lts)
{
    std::vector<Violation> out;
    const auto& edges = lts.edges();

    if (lts.initial() >= lts.num_states()) {
        out.push_back({Violation::Kind::DanglingReference, "", "", std::nullopt});
        return out;
    }

    std::map<std::pair<StateId, LabelId>, EdgeId> seen;
    for (EdgeId e = 0; e < edges.size(); ++e) {
        const Edge& edge = edges[e];
        if (edge.source >= lts.num_states() || edge.target >= lts.num_states() ||
            edge.label >= lts.num_labels()) {
            out.push_back({Violation::Kind::DanglingReference, "", "", e});
            continue;
        }
        auto [it, inserted] = seen.emplace(std::make_pair(edge.source, edge.label), e);
        if (!inserted)
            out.push_back({Violation::Kind::Nondeterministic, lts.states()[edge.source],
                           lts.labels()[edge.label], e});
    }

    std::vector<bool> reached(lts.num_states(), false);
    std::deque<StateId> queue{lts.initial()};
    reached[lts.initial()] = true;
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        for (EdgeId e : lts.out_edges(s)) {
            const StateId t = edges[e].target;
            if (!reached[t]) {
                reached[t] = true;
                queue.push_back(t);
            }
        }
    }
    for (StateId s = 0; s < lts.num_states(); ++s)
        if (!reached[s])
            out.push_back({Violation::Kind::Unreachable, lts.states()[s], "", std::nullopt});
    return out;
}

std::size_t SpanningTree::num_tree_edges() const
{
    std::size_t n = 0;
    for (bool b : is_tree_edge)
        n += b ? 1 : 0;
    return n;
}

SpanningTree spanning_tree(const Lts& lts)
{
    const auto& edges = lts.edges();
    SpanningTree tree;
    tree.parent_edge.assign(lts.num_states(), std::nullopt);
    tree.is_tree_edge.assign(edges.size(), false);
    tree.parikh = IntMatrix::Zero(static_cast<Eigen::Index>(lts.num_states()),
                                  static_cast<Eigen::Index>(lts.num_labels()));

    std::vector<bool> reached(lts.num_states(), false);
    std::deque<StateId> queue{lts.initial()};
    reached[lts.initial()] = true;
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        for (EdgeId e : lts.out_edges(s)) {
            const Edge& edge = edges[e];
            if (reached[edge.target])
                continue;
            reached[edge.target] = true;
            tree.parent_edge[edge.target] = e;
            tree.is_tree_edge[e] = true;
            const auto row = static_cast<Eigen::Index>(edge.target);
            tree.parikh.row(row) = tree.parikh.row(static_cast<Eigen::Index>(s));
            tree.parikh(row, static_cast<Eigen::Index>(edge.label)) += 1;
            queue.push_back(edge.target);
        }
    }
    for (StateId s = 0; s < lts.num_states(); ++s)
        if (!reached[s])
            throw std::invalid_argument("spanning_tree: state " + lts.states()[s] + " is unreachable");
    return tree;
}

IntVector state_parikh(const SpanningTree& tree, StateId s)
{
    if (s >= tree.parent_edge.size())
        throw std::out_of_range("state_parikh: unknown state");
    return tree.parikh.row(static_cast<Eigen::Index>(s)).transpose();
}

IntVector edge_parikh(const Lts& lts, const SpanningTree& tree, EdgeId e)
{
    if (e >= lts.num_edges())
        throw std::out_of_range("edge_parikh: unknown edge");
    const Edge& edge = lts.edges()[e];
    IntVector v = state_parikh(tree, edge.source) - state_parikh(tree, edge.target);
    v(static_cast<Eigen::Index>(edge.label)) += 1;
    return v;
}

CycleBase cycle_base(const Lts& lts, const SpanningTree& tree)
{
    std::vector<EdgeId> chords;
    for (EdgeId e = 0; e < lts.num_edges(); ++e)
        if (!tree.is_tree_edge[e])
            chords.push_back(e);

    RatMatrix generators(static_cast<Eigen::Index>(chords.size()),
                         static_cast<Eigen::Index>(lts.num_labels()));
    for (std::size_t i = 0; i < chords.size(); ++i)
        generators.row(static_cast<Eigen::Index>(i)) =
            to_rational_vector(edge_parikh(lts, tree, chords[i])).transpose();
    return CycleBase{row_basis(generators)};
}

Lts parse_lts(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens != std::vector<std::string>{"lts"})
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected header line 'lts'");
    if (lines.size() < 2 || lines[1].tokens.size() != 2 || lines[1].tokens[0] != "initial")
        throw ParseError(lines.size() < 2 ? lines[0].number + 1 : lines[1].number,
                         "expected 'initial <state>'");

    LtsBuilder builder(lines[1].tokens[1]);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& tl = lines[i];
        if (tl.tokens[0] != "edge")
            throw ParseError(tl.number, "unknown directive '" + tl.tokens[0] + "'");
        if (tl.tokens.size() != 4)
            throw ParseError(tl.number, "expected 'edge <source> <label> <target>'");
        builder.edge(tl.tokens[1], tl.tokens[2], tl.tokens[3]);
    }
    return builder.build();
}

std::string format_lts(const Lts& lts)
{
    std::ostringstream out;
    out << "lts\n";
    out << "initial " << lts.states().at(lts.initial()) << '\n';
    for (const Edge& e : lts.edges())
        out << "edge " << lts.states()[e.source] << ' ' << lts.labels()[e.label] << ' '
            << lts.states()[e.target] << '\n';
    return out.str();
}

} // namespace pnembed
