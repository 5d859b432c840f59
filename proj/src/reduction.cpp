#include "pnembed/reduction.hpp"

#include "pnembed/text_format.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace pnembed {

void SubsetSumInstance::check() const
{
    if (b == 0)
        throw std::invalid_argument("subset sum: b must be positive");
    for (std::uint64_t ci : c)
        if (ci == 0)
            throw std::invalid_argument("subset sum: every c_i must be positive");
}

ReductionParams params(const SubsetSumInstance& inst)
{
    inst.check();
    std::uint64_t sum = 0;
    for (std::uint64_t ci : inst.c)
        if (__builtin_add_overflow(sum, ci, &sum))
            throw std::overflow_error("subset sum: sum of c_i overflows");
    std::uint64_t x = 0;
    if (__builtin_add_overflow(inst.b, sum, &x) || __builtin_mul_overflow(x, std::uint64_t{2}, &x) ||
        __builtin_add_overflow(x, std::uint64_t{1}, &x))
        throw std::overflow_error("subset sum: 1 + 2b + 2 sum c_i overflows");

    ReductionParams p;
    p.big_x = x;
    p.k = static_cast<unsigned>(std::bit_width(x) - 1);
    p.q = 2 * inst.n() + p.k + 11;
    return p;
}

std::vector<std::string> unit_word(std::uint64_t x, unsigned k)
{
    if (k < 63 && x >= (std::uint64_t{1} << (k + 1)))
        throw std::invalid_argument("unit_word: " + std::to_string(x) + " needs more than " + std::to_string(k + 1) +
                                    " bits");
    std::vector<std::string> word;
    for (unsigned i = std::min(k, 63u) + 1; i-- > 0;)
        if ((x >> i) & 1u)
            word.push_back("u" + std::to_string(i));
    return word;
}

namespace {

std::uint64_t sum_of(const std::vector<std::uint64_t>& c)
{
    std::uint64_t s = 0;
    for (std::uint64_t ci : c)
        s += ci;
    return s;
}

class Strand {
public:
    Strand(LtsBuilder& builder, int index) : builder_(builder), prefix_("h" + std::to_string(index) + ".") {}

    std::string fresh() { return prefix_ + std::to_string(next_++); }

    // Lays out `word` from `from` through fresh states; returns the last state.
    std::string path(const std::string& from, const std::vector<std::string>& word)
    {
        if (word.empty())
            throw std::logic_error("gadget strand with an empty unit word");
        std::string at = from;
        for (const std::string& label : word) {
            std::string to = fresh();
            builder_.edge(at, label, to);
            at = std::move(to);
        }
        return at;
    }

    void edge(const std::string& from, const std::string& label, const std::string& to)
    {
        builder_.edge(from, label, to);
    }

private:
    LtsBuilder& builder_;
    std::string prefix_;
    std::size_t next_ = 0;
};

std::string u(unsigned i)
{
    return "u" + std::to_string(i);
}

} // namespace

Lts build_lts(const SubsetSumInstance& inst)
{
    const ReductionParams p = params(inst);
    const unsigned k = p.k;
    const std::size_t n = inst.n();

    LtsBuilder builder("s0");
    std::vector<Strand> strands;
    std::vector<std::string> entry;
    for (int i = 1; i <= 6; ++i) {
        strands.emplace_back(builder, i);
        entry.push_back(strands.back().fresh());
        builder.edge("s0", "h" + std::to_string(i), entry.back());
    }

    {   // h1: binary units
        Strand& s = strands[0];
        std::string t = entry[0];
        for (unsigned i = 1; i <= k; ++i) {
            const std::string mid = s.fresh();
            const std::string next = s.fresh();
            s.edge(t, u(i - 1), mid);
            s.edge(mid, u(i - 1), next);
            s.edge(t, u(i), next);
            t = next;
        }
    }
    {   // h2: o = big_x units, O = -(n+1) o
        Strand& s = strands[1];
        const std::string anchor = s.path(entry[1], unit_word(p.big_x, k));
        s.edge(entry[1], "o", anchor);
        std::string at = anchor;
        for (std::size_t i = 0; i < n + 1; ++i) {
            std::string to = s.fresh();
            s.edge(at, "o", to);
            at = std::move(to);
        }
        s.edge(at, "O", anchor);
    }
    {   // h3: alpha = sum c_i units
        Strand& s = strands[2];
        const std::string end = s.path(entry[2], unit_word(sum_of(inst.c), k));
        s.edge(entry[2], "alpha", end);
    }
    {   // h4: beta = 2b units
        Strand& s = strands[3];
        const std::string end = s.path(entry[3], unit_word(2 * inst.b, k));
        s.edge(entry[3], "beta", end);
    }
    {   // h5: gamma_i twins over u(c_i)
        Strand& s = strands[4];
        std::string start = entry[4];
        for (std::size_t i = 1; i <= n; ++i) {
            const std::string gamma = "gamma" + std::to_string(i);
            const std::string next = s.path(start, unit_word(inst.c[i - 1], k));
            s.edge(start, gamma, next);
            s.edge(next, gamma, start);
            start = next;
        }
    }
    {   // h6: o alpha (o gamma_1) ... (o gamma_n) O, with beta across
        Strand& s = strands[5];
        std::vector<std::string> word{"o", "alpha"};
        for (std::size_t i = 1; i <= n; ++i) {
            word.push_back("o");
            word.push_back("gamma" + std::to_string(i));
        }
        word.push_back("O");
        const std::string end = s.path(entry[5], word);
        s.edge(entry[5], "beta", end);
    }
    return builder.build();
}

std::vector<GammaEdges> gamma_edges(const Lts& lts, std::size_t n)
{
    std::vector<GammaEdges> out(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const auto label = lts.find_label("gamma" + std::to_string(i));
        if (!label)
            throw std::invalid_argument("gamma_edges: missing label gamma" + std::to_string(i));
        std::vector<EdgeId> in_h5;
        std::vector<EdgeId> in_h6;
        for (EdgeId e = 0; e < lts.num_edges(); ++e) {
            const Edge& edge = lts.edges()[e];
            if (edge.label != *label)
                continue;
            const std::string& src = lts.states()[edge.source];
            if (src.rfind("h5.", 0) == 0)
                in_h5.push_back(e);
            else if (src.rfind("h6.", 0) == 0)
                in_h6.push_back(e);
        }
        if (in_h5.size() != 2 || in_h6.size() != 1)
            throw std::invalid_argument("gamma_edges: gamma" + std::to_string(i) + " is not laid out as in the gadget");
        const Edge& first = lts.edges()[in_h5[0]];
        const bool first_is_lower = first.source < first.target;
        out[i - 1].lower = first_is_lower ? in_h5[0] : in_h5[1];
        out[i - 1].upper = first_is_lower ? in_h5[1] : in_h5[0];
        out[i - 1].check = in_h6[0];
    }
    return out;
}

std::optional<IndexSet> subset_sum_brute(const SubsetSumInstance& inst)
{
    inst.check();
    if (inst.n() > 30)
        throw std::invalid_argument("subset_sum_brute: at most 30 numbers supported");

    // Preorder DFS over increasing index sequences visits subsets in
    // lexicographic order; partial sums only grow, so overshoot prunes.
    IndexSet current;
    std::optional<IndexSet> found;
    auto dfs = [&](auto&& self, std::size_t from, std::uint64_t sum) -> void {
        for (std::size_t i = from; i < inst.n() && !found; ++i) {
            const std::uint64_t next = sum + inst.c[i];
            if (next > inst.b)
                continue;
            current.push_back(i + 1);
            if (next == inst.b)
                found = current;
            else
                self(self, i + 1, next);
            current.pop_back();
        }
    };
    dfs(dfs, 0, 0);
    return found;
}

LabelSplitting splitting_for(const SubsetSumInstance& inst, const Lts& gadget, const IndexSet& indices)
{
    std::vector<bool> chosen(inst.n() + 1, false);
    for (std::size_t i : indices) {
        if (i < 1 || i > inst.n())
            throw std::invalid_argument("splitting_for: index " + std::to_string(i) + " out of range");
        chosen[i] = true;
    }
    std::vector<std::size_t> blocks(gadget.num_edges(), 0);
    const auto gammas = gamma_edges(gadget, inst.n());
    for (std::size_t i = 1; i <= inst.n(); ++i) {
        const GammaEdges& g = gammas[i - 1];
        // The lower edge has the smallest index and stays in block 0.
        blocks[g.upper] = 1;
        blocks[g.check] = chosen[i] ? 0 : 1;
    }
    return splitting_from_blocks(gadget, blocks);
}

IndexSet extract_solution(const SubsetSumInstance& inst, const LabelSplitting& sp)
{
    const Lts gadget = build_lts(inst);
    check_splitting(gadget, sp);
    if (sp.size() != gadget.num_labels() + inst.n())
        throw std::invalid_argument("extract_solution: splitting must add exactly one label per gamma_i");

    const auto gammas = gamma_edges(gadget, inst.n());
    std::vector<bool> is_gamma(gadget.num_edges(), false);
    IndexSet indices;
    for (std::size_t i = 1; i <= inst.n(); ++i) {
        const GammaEdges& g = gammas[i - 1];
        is_gamma[g.lower] = is_gamma[g.upper] = is_gamma[g.check] = true;
        const LabelId lower = sp.edge_relabel[g.lower];
        const LabelId upper = sp.edge_relabel[g.upper];
        const LabelId check = sp.edge_relabel[g.check];
        if (lower == upper || (check != lower && check != upper))
            throw std::invalid_argument("extract_solution: gamma" + std::to_string(i) +
                                        " twins are not split exactly once");
        if (upper != check)
            indices.push_back(i);
    }
    for (EdgeId e = 0; e < gadget.num_edges(); ++e)
        if (!is_gamma[e] && sp.edge_relabel[e] != gadget.edges()[e].label)
            throw std::invalid_argument("extract_solution: a non-gamma edge was relabelled");

    std::uint64_t sum = 0;
    for (std::size_t i : indices)
        sum += inst.c[i - 1];
    if (sum != inst.b)
        throw std::logic_error("extract_solution: extracted index set sums to " + std::to_string(sum) + ", not b = " +
                               std::to_string(inst.b));
    return indices;
}

SubsetSumInstance parse_subset_sum(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.size() != 1 || lines[0].tokens[0] != "subsetsum" || lines[0].tokens.size() < 2)
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected a single line 'subsetsum <b> <c1> ... <cn>'");
    const TokenLine& tl = lines[0];
    SubsetSumInstance inst;
    inst.b = parse_count(tl, tl.tokens[1], "b");
    for (std::size_t i = 2; i < tl.tokens.size(); ++i)
        inst.c.push_back(parse_count(tl, tl.tokens[i], "c_i"));
    try {
        inst.check();
    } catch (const std::invalid_argument& e) {
        throw ParseError(tl.number, e.what());
    }
    return inst;
}

std::string format_subset_sum(const SubsetSumInstance& inst)
{
    std::ostringstream out;
    out << "subsetsum " << inst.b;
    for (std::uint64_t ci : inst.c)
        out << ' ' << ci;
    out << '\n';
    return out.str();
}

} // namespace pnembed
