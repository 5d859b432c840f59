#include "pnembed/splitting.hpp"

#include "pnembed/regions.hpp"
#include "pnembed/text_format.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pnembed {

LabelSplitting LabelSplitting::identity(const Lts& lts)
{
    LabelSplitting sp;
    sp.new_labels = lts.labels();
    sp.rho.resize(lts.num_labels());
    std::iota(sp.rho.begin(), sp.rho.end(), LabelId{0});
    sp.edge_relabel.reserve(lts.num_edges());
    for (const Edge& e : lts.edges())
        sp.edge_relabel.push_back(e.label);
    return sp;
}

LabelSplitting splitting_from_blocks(const Lts& lts, const std::vector<std::size_t>& block_of_edge)
{
    if (block_of_edge.size() != lts.num_edges())
        throw std::invalid_argument("splitting_from_blocks: one block index per edge expected");

    LabelSplitting sp = LabelSplitting::identity(lts);
    std::set<std::string> taken(lts.labels().begin(), lts.labels().end());
    std::map<std::pair<LabelId, std::size_t>, LabelId> named;
    std::vector<std::size_t> next_block(lts.num_labels(), 1);

    for (EdgeId e = 0; e < lts.num_edges(); ++e) {
        const LabelId original = lts.edges()[e].label;
        const std::size_t block = block_of_edge[e];
        if (block == 0)
            continue;
        auto it = named.find({original, block});
        if (it == named.end()) {
            if (block != next_block[original])
                throw std::invalid_argument("splitting_from_blocks: blocks of label " + lts.labels()[original] +
                                            " are not in first-appearance order");
            ++next_block[original];
            std::string name = lts.labels()[original] + "#" + std::to_string(block);
            while (taken.count(name) > 0)
                name += '\'';
            taken.insert(name);
            it = named.emplace(std::make_pair(original, block), sp.new_labels.size()).first;
            sp.new_labels.push_back(std::move(name));
            sp.rho.push_back(original);
        }
        sp.edge_relabel[e] = it->second;
    }
    return sp;
}

void check_splitting(const Lts& lts, const LabelSplitting& sp)
{
    auto fail = [](const std::string& why) { throw std::invalid_argument("malformed label splitting: " + why); };

    if (sp.rho.size() != sp.new_labels.size())
        fail("rho must map every new label");
    if (sp.edge_relabel.size() != lts.num_edges())
        fail("every edge needs a new label");
    if (sp.new_labels.size() < lts.num_labels())
        fail("the new alphabet must contain the original one");
    for (LabelId l = 0; l < lts.num_labels(); ++l)
        if (sp.new_labels[l] != lts.labels()[l] || sp.rho[l] != l)
            fail("rho must be the identity on the original alphabet");
    std::set<std::string> names(sp.new_labels.begin(), sp.new_labels.end());
    if (names.size() != sp.new_labels.size())
        fail("duplicate label names");
    for (LabelId l = 0; l < sp.rho.size(); ++l)
        if (sp.rho[l] >= lts.num_labels())
            fail("rho maps " + sp.new_labels[l] + " outside the original alphabet");

    std::vector<bool> used(sp.new_labels.size(), false);
    for (EdgeId e = 0; e < lts.num_edges(); ++e) {
        const LabelId l = sp.edge_relabel[e];
        if (l >= sp.new_labels.size())
            fail("edge " + std::to_string(e) + " carries an undeclared label");
        if (sp.rho[l] != lts.edges()[e].label)
            fail("edge " + std::to_string(e) + " relabelled to " + sp.new_labels[l] +
                 ", which does not map back to its original label");
        used[l] = true;
    }
    for (LabelId l = lts.num_labels(); l < sp.new_labels.size(); ++l)
        if (!used[l])
            fail("label " + sp.new_labels[l] + " is not used by any edge");
}

Lts apply(const Lts& lts, const LabelSplitting& sp)
{
    check_splitting(lts, sp);
    std::vector<Edge> edges = lts.edges();
    for (EdgeId e = 0; e < edges.size(); ++e)
        edges[e].label = sp.edge_relabel[e];
    return Lts(lts.states(), sp.new_labels, std::move(edges), lts.initial());
}

namespace {

constexpr std::size_t no_twin = static_cast<std::size_t>(-1);

// Index of the reverse same-label edge s' -t-> s for each edge s -t-> s'
// with s != s' (unique by determinism), or no_twin.
std::vector<std::size_t> twin_edges(const Lts& lts)
{
    std::map<std::tuple<StateId, LabelId, StateId>, EdgeId> index;
    for (EdgeId e = 0; e < lts.num_edges(); ++e) {
        const Edge& edge = lts.edges()[e];
        index.emplace(std::make_tuple(edge.source, edge.label, edge.target), e);
    }
    std::vector<std::size_t> twin(lts.num_edges(), no_twin);
    for (EdgeId e = 0; e < lts.num_edges(); ++e) {
        const Edge& edge = lts.edges()[e];
        if (edge.source == edge.target)
            continue;
        auto it = index.find(std::make_tuple(edge.target, edge.label, edge.source));
        if (it != index.end())
            twin[e] = it->second;
    }
    return twin;
}

struct LabelPlan {
    LabelId label = 0;
    std::vector<EdgeId> edges;
    std::vector<std::size_t> twin_pos;  // position of the twin within `edges`, or no_twin
    std::size_t min_blocks = 1;
};

class PartitionSearch {
public:
    PartitionSearch(const Lts& lts, std::size_t q, std::optional<std::uint64_t> budget)
        : lts_(lts), q_(q), budget_(budget), block_of_edge_(lts.num_edges(), 0)
    {
        const auto twin = twin_edges(lts);
        std::vector<LabelPlan> by_label(lts.num_labels());
        for (LabelId l = 0; l < lts.num_labels(); ++l)
            by_label[l].label = l;
        for (EdgeId e = 0; e < lts.num_edges(); ++e)
            by_label[lts.edges()[e].label].edges.push_back(e);

        for (LabelPlan& plan : by_label) {
            if (plan.edges.empty()) {
                ++fixed_labels_;  // unused labels still belong to Sigma'
                continue;
            }
            plan.twin_pos.assign(plan.edges.size(), no_twin);
            for (std::size_t i = 0; i < plan.edges.size(); ++i) {
                const std::size_t t = twin[plan.edges[i]];
                if (t == no_twin)
                    continue;
                plan.twin_pos[i] = static_cast<std::size_t>(
                    std::find(plan.edges.begin(), plan.edges.end(), t) - plan.edges.begin());
                plan.min_blocks = 2;
            }
            plans_.push_back(std::move(plan));
        }
        std::stable_sort(plans_.begin(), plans_.end(), [](const LabelPlan& a, const LabelPlan& b) {
            return a.edges.size() > b.edges.size();
        });

        suffix_min_.assign(plans_.size() + 1, 0);
        for (std::size_t i = plans_.size(); i-- > 0;)
            suffix_min_[i] = suffix_min_[i + 1] + plans_[i].min_blocks;
    }

    SplitOutcome run()
    {
        SplitOutcome out;
        if (fixed_labels_ + suffix_min_[0] <= q_)
            step_label(0, fixed_labels_);
        out.nodes = nodes_;
        if (witness_) {
            out.status = SplitOutcome::Status::Found;
            out.labels_used = witness_->size();
            out.splitting = std::move(witness_);
        } else if (exhausted_) {
            out.status = SplitOutcome::Status::BudgetExhausted;
        }
        return out;
    }

private:
    bool stopped() const { return exhausted_ || witness_.has_value(); }

    bool charge()
    {
        ++nodes_;
        if (budget_ && nodes_ > *budget_)
            exhausted_ = true;
        return !exhausted_;
    }

    void step_label(std::size_t idx, std::size_t used)
    {
        if (stopped() || !charge())
            return;
        if (idx == plans_.size()) {
            check_leaf();
            return;
        }
        const LabelPlan& plan = plans_[idx];
        const std::size_t room = q_ - used - suffix_min_[idx + 1];
        if (room < plan.min_blocks)
            return;
        const std::size_t max_blocks = std::min(room, plan.edges.size());
        assign(idx, 0, 0, max_blocks, used);
    }

    // Restricted growth string over plan.edges: edge `pos` joins an existing
    // block or opens block `blocks`.
    void assign(std::size_t idx, std::size_t pos, std::size_t blocks, std::size_t max_blocks, std::size_t used)
    {
        if (stopped())
            return;
        const LabelPlan& plan = plans_[idx];
        if (pos == plan.edges.size()) {
            step_label(idx + 1, used + blocks);
            return;
        }
        if (!charge())
            return;
        const std::size_t limit = std::min(blocks + 1, max_blocks);
        for (std::size_t b = 0; b < limit && !stopped(); ++b) {
            const std::size_t tp = plan.twin_pos[pos];
            if (tp < pos && block_of_edge_[plan.edges[tp]] == b)
                continue;
            // Remaining edges cannot open enough blocks to reach min_blocks.
            const std::size_t opened = std::max(blocks, b + 1);
            if (opened + (plan.edges.size() - pos - 1) < plan.min_blocks)
                continue;
            block_of_edge_[plan.edges[pos]] = b;
            assign(idx, pos + 1, opened, max_blocks, used);
        }
        block_of_edge_[plan.edges[pos]] = 0;
    }

    void check_leaf()
    {
        LabelSplitting sp = splitting_from_blocks(lts_, block_of_edge_);
        if (is_embeddable(apply(lts_, sp)).embeddable)
            witness_ = std::move(sp);
    }

    const Lts& lts_;
    std::size_t q_;
    std::optional<std::uint64_t> budget_;
    std::vector<LabelPlan> plans_;
    std::vector<std::size_t> suffix_min_;
    std::size_t fixed_labels_ = 0;
    std::vector<std::size_t> block_of_edge_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::optional<LabelSplitting> witness_;
};

} // namespace

std::vector<bool> labels_with_twin_cycles(const Lts& lts)
{
    std::vector<bool> out(lts.num_labels(), false);
    const auto twin = twin_edges(lts);
    for (EdgeId e = 0; e < lts.num_edges(); ++e)
        if (twin[e] != no_twin)
            out[lts.edges()[e].label] = true;
    return out;
}

SplitOutcome decide(const Lts& lts, std::size_t q, const SearchOptions& options)
{
    if (q < 1)
        throw std::invalid_argument("decide: the label budget must be at least 1");
    return PartitionSearch(lts, q, options.node_budget).run();
}

Optimum optimize(const Lts& lts, const SearchOptions& options)
{
    std::size_t unused = 0;
    {
        std::vector<bool> used(lts.num_labels(), false);
        for (const Edge& e : lts.edges())
            used[e.label] = true;
        unused = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
    }
    // All edges carrying distinct labels is always embeddable.
    const std::size_t upper = std::max(lts.num_labels(), unused + lts.num_edges());

    Optimum best;
    std::optional<std::uint64_t> remaining = options.node_budget;
    for (std::size_t q = lts.num_labels(); q <= upper; ++q) {
        SplitOutcome out = PartitionSearch(lts, q, remaining).run();
        best.nodes += out.nodes;
        if (remaining)
            *remaining -= std::min(*remaining, out.nodes);
        if (out.status == SplitOutcome::Status::Found) {
            best.status = SplitOutcome::Status::Found;
            best.q_star = q;
            best.splitting = std::move(out.splitting);
            return best;
        }
        if (out.status == SplitOutcome::Status::BudgetExhausted) {
            best.status = SplitOutcome::Status::BudgetExhausted;
            return best;
        }
    }
    throw std::logic_error("optimize: the fully split LTS was not embeddable");
}

std::string format_splitting(const Lts& lts, const LabelSplitting& sp)
{
    check_splitting(lts, sp);
    std::ostringstream out;
    out << "labels " << sp.size() << '\n';
    for (EdgeId e = 0; e < lts.num_edges(); ++e)
        if (sp.edge_relabel[e] != lts.edges()[e].label)
            out << "split " << e << ' ' << sp.new_labels[sp.edge_relabel[e]] << '\n';
    return out.str();
}

LabelSplitting parse_splitting(const Lts& lts, std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "labels")
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected 'labels <count>'");
    const std::uint64_t count = parse_count(lines[0], lines[0].tokens[1], "label count");

    std::map<EdgeId, std::pair<std::string, std::size_t>> relabel;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tl = lines[i];
        if (tl.tokens[0] != "split" || tl.tokens.size() != 3)
            throw ParseError(tl.number, "expected 'split <edge-index> <new-label>'");
        const std::uint64_t e = parse_count(tl, tl.tokens[1], "edge index");
        if (e >= lts.num_edges())
            throw ParseError(tl.number, "edge index " + tl.tokens[1] + " out of range");
        if (!relabel.emplace(static_cast<EdgeId>(e), std::make_pair(tl.tokens[2], tl.number)).second)
            throw ParseError(tl.number, "edge " + tl.tokens[1] + " relabelled twice");
    }

    LabelSplitting sp = LabelSplitting::identity(lts);
    std::map<std::string, LabelId> added;
    for (const auto& [e, entry] : relabel) {
        const auto& [name, line] = entry;
        const LabelId original = lts.edges()[e].label;
        if (auto existing = lts.find_label(name)) {
            if (*existing != original)
                throw ParseError(line, "edge " + std::to_string(e) + " cannot take label " + name +
                                           " of a different original label");
            continue;
        }
        auto it = added.find(name);
        if (it == added.end()) {
            it = added.emplace(name, sp.new_labels.size()).first;
            sp.new_labels.push_back(name);
            sp.rho.push_back(original);
        } else if (sp.rho[it->second] != original) {
            throw ParseError(line, "label " + name + " used for edges of different original labels");
        }
        sp.edge_relabel[e] = it->second;
    }
    if (sp.size() != count)
        throw ParseError(lines[0].number, "declared " + std::to_string(count) + " labels but the splitting has " +
                                              std::to_string(sp.size()));
    return sp;
}

} // namespace pnembed
