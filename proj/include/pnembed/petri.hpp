#pragma once

#include "pnembed/lts.hpp"
#include "pnembed/regions.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pnembed {

using PlaceId = std::size_t;
using TransitionId = std::size_t;

/// Tokens per place, in declared place order.
using Marking = IntVector;

/// Place/transition net N = (P, T, W, M0). Arc weights are stored as two
/// |P| x |T| matrices: `consume(p, t)` = W(p, t) and `produce(p, t)` = W(t, p).
class PetriNet {
public:
    PlaceId add_place(const std::string& name, std::int64_t initial_tokens = 0);
    TransitionId add_transition(const std::string& name);
    void set_input(PlaceId p, TransitionId t, std::int64_t weight);   // W(p, t)
    void set_output(TransitionId t, PlaceId p, std::int64_t weight);  // W(t, p)

    const std::vector<std::string>& places() const noexcept { return places_; }
    const std::vector<std::string>& transitions() const noexcept { return transitions_; }
    std::size_t num_places() const noexcept { return places_.size(); }
    std::size_t num_transitions() const noexcept { return transitions_.size(); }

    const IntMatrix& consume() const noexcept { return consume_; }
    const IntMatrix& produce() const noexcept { return produce_; }
    const Marking& initial_marking() const noexcept { return initial_; }

    std::optional<PlaceId> find_place(std::string_view name) const;
    std::optional<TransitionId> find_transition(std::string_view name) const;
    TransitionId transition(std::string_view name) const;  // throws std::out_of_range

    friend bool operator==(const PetriNet& a, const PetriNet& b)
    {
        // Equal name lists imply equal matrix shapes, so the Eigen comparisons are safe.
        return a.places_ == b.places_ && a.transitions_ == b.transitions_ && a.consume_ == b.consume_ &&
               a.produce_ == b.produce_ && a.initial_ == b.initial_;
    }

private:
    std::vector<std::string> places_;
    std::vector<std::string> transitions_;
    IntMatrix consume_;
    IntMatrix produce_;
    Marking initial_;
};

class NotEnabled : public std::runtime_error {
public:
    NotEnabled(std::string transition, std::string place);

    const std::string& transition() const noexcept { return transition_; }
    const std::string& blocking_place() const noexcept { return place_; }

private:
    std::string transition_;
    std::string place_;
};

bool enabled(const PetriNet& net, const Marking& m, TransitionId t);

/// M'(p) = M(p) - W(p, t) + W(t, p). Throws NotEnabled naming the first
/// place (in declared order) that lacks tokens.
Marking fire(const PetriNet& net, const Marking& m, TransitionId t);

/// `p1:v1,p2:v2,...` in declared place order; `empty` for a net without places.
std::string marking_name(const PetriNet& net, const Marking& m);

struct BoundExceeded {
    std::size_t max_states = 0;
};

constexpr std::size_t default_state_bound = 10000;

/// Breadth-first reachability graph. Transitions are tried in declared
/// order; states are named by marking_name. The label set is T.
std::variant<Lts, BoundExceeded> reachability_graph(const PetriNet& net,
                                                    std::size_t max_states = default_state_bound);

/// Net with one place per separating region, transitions = labels of the
/// LTS. Throws NotEmbeddable if some state pair cannot be separated.
PetriNet synthesize(const Lts& lts);

struct EmbeddingCheck {
    bool embeds = false;
    std::vector<Marking> markings;  // M(s) per state; filled on success
    std::string reason;             // filled on failure
};

/// Verifies that s -> M(s) embeds the LTS into RG(net), using the closed
/// form M(s) = M0 + C * P(s) along the spanning tree. Does not enumerate the
/// reachability graph. Throws std::invalid_argument if an LTS label is not a
/// transition of the net.
EmbeddingCheck verify_embedding(const Lts& lts, const PetriNet& net);

// Text format:
//   net
//   place <id> <initial-tokens>
//   trans <id>
//   arc <place> <trans> <weight>    (input arc)
//   arc <trans> <place> <weight>    (output arc)
PetriNet parse_net(std::string_view text);
std::string format_net(const PetriNet& net);

} // namespace pnembed
