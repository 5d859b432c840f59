#pragma once

#include "pnembed/lts.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pnembed {

/// A label splitting (Sigma', E', rho, phi) in canonical form.
///
/// `new_labels` starts with the original alphabet (same order, rho = id),
/// followed by the added labels ordered by their lowest edge index.
/// `rho[l]` is the original label of new label `l`; `edge_relabel[e]` is the
/// new label carried by edge `e` (the bijection phi is edge identity).
struct LabelSplitting {
    std::vector<std::string> new_labels;
    std::vector<LabelId> rho;
    std::vector<LabelId> edge_relabel;

    std::size_t size() const noexcept { return new_labels.size(); }

    static LabelSplitting identity(const Lts& lts);

    friend bool operator==(const LabelSplitting&, const LabelSplitting&) = default;
};

/// Builds the canonical splitting from a block index per edge, where block
/// indices are local to each original label and form a restricted growth
/// string over that label's edges in edge order. Block 0 keeps the original
/// name; block j > 0 is named `<label>#j`.
LabelSplitting splitting_from_blocks(const Lts& lts, const std::vector<std::size_t>& block_of_edge);

/// Checks the splitting invariants against `lts`; throws std::invalid_argument.
void check_splitting(const Lts& lts, const LabelSplitting& sp);

/// The relabelled LTS (S, Sigma', E', s0).
Lts apply(const Lts& lts, const LabelSplitting& sp);

struct SearchOptions {
    std::optional<std::uint64_t> node_budget;  // unlimited when empty
};

struct SplitOutcome {
    enum class Status { Found, NotFound, BudgetExhausted };
    Status status = Status::NotFound;
    std::optional<LabelSplitting> splitting;  // when Found
    std::size_t labels_used = 0;              // |Sigma'| of the witness
    std::uint64_t nodes = 0;                  // search nodes expanded

    bool found() const noexcept { return status == Status::Found; }
};

/// Is there a splitting with at most q labels whose result is embeddable?
///
/// Complete branch-and-bound over per-label set partitions in canonical
/// form. Labels are processed by decreasing edge count. A label carrying a
/// same-label two-cycle s -t-> s' -t-> s needs at least two blocks, since the
/// cycle forces E(t) = 0 and identifies s and s'; this bound and the twin
/// check prune the search. Embeddability is tested only at full assignments.
/// Requires q >= 1.
SplitOutcome decide(const Lts& lts, std::size_t q, const SearchOptions& options = {});

struct Optimum {
    SplitOutcome::Status status = SplitOutcome::Status::NotFound;
    std::size_t q_star = 0;
    std::optional<LabelSplitting> splitting;
    std::uint64_t nodes = 0;
};

/// Smallest q in |Sigma|..|E| for which decide succeeds. The node budget,
/// if any, is shared across all decide calls.
Optimum optimize(const Lts& lts, const SearchOptions& options = {});

/// Labels of `lts` (indices) that carry a same-label two-cycle between
/// distinct states.
std::vector<bool> labels_with_twin_cycles(const Lts& lts);

// Witness text format:
//   labels <count>
//   split <edge-index> <new-label>     (one line per relabelled edge)
std::string format_splitting(const Lts& lts, const LabelSplitting& sp);
LabelSplitting parse_splitting(const Lts& lts, std::string_view text);

} // namespace pnembed
