#pragma once

#include "pnembed/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pnembed {

using StateId = std::size_t;
using LabelId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
    StateId source = 0;
    LabelId label = 0;
    StateId target = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Labelled transition system (S, Sigma, E, s0). States and labels are
/// indexed by insertion order; the label index is the Parikh coordinate.
/// The structure is immutable once built.
class Lts {
public:
    Lts() = default;
    Lts(std::vector<std::string> states, std::vector<std::string> labels, std::vector<Edge> edges,
        StateId initial);

    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    StateId initial() const noexcept { return initial_; }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_labels() const noexcept { return labels_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    /// Outgoing edge indices of `s`, in edge-list order. Edges with
    /// out-of-range endpoints are not indexed.
    std::span<const EdgeId> out_edges(StateId s) const;

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<LabelId> find_label(std::string_view name) const;
    StateId state(std::string_view name) const;   // throws std::out_of_range
    LabelId label(std::string_view name) const;   // throws std::out_of_range

    friend bool operator==(const Lts& a, const Lts& b)
    {
        return a.states_ == b.states_ && a.labels_ == b.labels_ && a.edges_ == b.edges_ &&
               a.initial_ == b.initial_;
    }

private:
    std::vector<std::string> states_;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    StateId initial_ = 0;
    std::vector<std::vector<EdgeId>> out_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, LabelId> label_index_;
};

/// Builds an Lts by name; states and labels are declared on first use,
/// the initial state first.
class LtsBuilder {
public:
    explicit LtsBuilder(std::string initial);

    LtsBuilder& edge(const std::string& source, const std::string& label, const std::string& target);
    Lts build() const;

private:
    StateId intern_state(const std::string& name);
    LabelId intern_label(const std::string& name);

    std::vector<std::string> states_;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, LabelId> label_index_;
};

struct Violation {
    enum class Kind { Nondeterministic, Unreachable, DanglingReference };
    Kind kind;
    std::string state;  // source state, or the unreachable state
    std::string label;  // Nondeterministic only
    std::optional<EdgeId> edge;

    std::string describe() const;
};

/// Empty result means the LTS is deterministic, reachable and well-referenced.
std::vector<Violation> validate(const Lts& lts);

/// Breadth-first spanning tree from s0. States are dequeued in discovery
/// order and their out-edges scanned in edge-list order.
struct SpanningTree {
    std::vector<std::optional<EdgeId>> parent_edge;  // per state; empty for s0
    std::vector<bool> is_tree_edge;                  // per edge
    IntMatrix parikh;                                // row s = Parikh vector of the tree walk s0 -> s

    std::size_t num_tree_edges() const;
};

SpanningTree spanning_tree(const Lts& lts);

IntVector state_parikh(const SpanningTree& tree, StateId s);

/// P(source) + 1*label - P(target); zero exactly on tree edges and on chords
/// closing a cycle with zero net effect.
IntVector edge_parikh(const Lts& lts, const SpanningTree& tree, EdgeId e);

/// Rows: linearly independent Parikh vectors spanning all chord Parikh
/// vectors (reduced row-echelon form). At most |Sigma| rows.
struct CycleBase {
    RatMatrix basis;

    Eigen::Index size() const { return basis.rows(); }
};

CycleBase cycle_base(const Lts& lts, const SpanningTree& tree);

// Text format:
//   lts
//   initial <state>
//   edge <source> <label> <target>
Lts parse_lts(std::string_view text);
std::string format_lts(const Lts& lts);

} // namespace pnembed
