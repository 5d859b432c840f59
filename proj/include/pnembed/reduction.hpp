#pragma once

#include "pnembed/lts.hpp"
#include "pnembed/splitting.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pnembed {

/// Subset sum: is there I in {1..n} with sum_{i in I} c_i = b?
/// All numbers are positive.
struct SubsetSumInstance {
    std::uint64_t b = 1;
    std::vector<std::uint64_t> c;

    std::size_t n() const noexcept { return c.size(); }

    void check() const;  // throws std::invalid_argument
};

struct ReductionParams {
    unsigned k = 0;              // 2^k <= big_x < 2^(k+1)
    std::size_t q = 0;           // 2n + k + 11
    std::uint64_t big_x = 0;     // 1 + 2b + 2 sum c_i
};

ReductionParams params(const SubsetSumInstance& inst);

/// Binary encoding of x as a word over u0..uk, highest bit first.
/// Throws std::invalid_argument if x >= 2^(k+1).
std::vector<std::string> unit_word(std::uint64_t x, unsigned k);

/// 1-based indices, ascending.
using IndexSet = std::vector<std::size_t>;

/// Gadget LTS with six strands hanging off s0 (states `s0` and
/// `h<i>.<j>`). Labels: h1..h6, u0..uk, o, O, alpha, beta, gamma1..gamman.
///
///  h1: units, t_i -u(i-1)-> t'_i -u(i-1)-> t_(i+1) and t_i -u(i)-> t_(i+1)
///  h2: u(big_x) path with an o chord, then n+1 o-edges and one O back
///  h3: u(sum c) path with an alpha chord
///  h4: u(2b) path with a beta chord
///  h5: per i, u(c_i) path from start_i to start_(i+1) plus gamma_i both ways
///  h6: o alpha (o gamma_1) ... (o gamma_n) O with a beta chord
Lts build_lts(const SubsetSumInstance& inst);

/// Edge indices of the three gamma_i edges of a gadget LTS.
struct GammaEdges {
    EdgeId lower = 0;  // h5, start_i -> start_(i+1)
    EdgeId upper = 0;  // h5, start_(i+1) -> start_i
    EdgeId check = 0;  // h6
};

/// One entry per i = 1..n. Throws std::invalid_argument if `lts` is not a
/// gadget for an instance of that size.
std::vector<GammaEdges> gamma_edges(const Lts& lts, std::size_t n);

/// Lexicographically smallest solving index set, or nullopt.
/// Throws std::invalid_argument for n > 30.
std::optional<IndexSet> subset_sum_brute(const SubsetSumInstance& inst);

/// The canonical splitting of build_lts(inst) for index set I: the upper
/// gamma_i edge is split off for i in I, the lower one otherwise.
LabelSplitting splitting_for(const SubsetSumInstance& inst, const Lts& gadget, const IndexSet& indices);

/// I = { i : the upper gamma_i edge is not in the block of the h6 gamma_i
/// edge }. Throws std::invalid_argument unless each gamma_i pair is split
/// exactly once, and std::logic_error if the result does not sum to b.
IndexSet extract_solution(const SubsetSumInstance& inst, const LabelSplitting& sp);

// Text format: `subsetsum <b> <c1> ... <cn>`
SubsetSumInstance parse_subset_sum(std::string_view text);
std::string format_subset_sum(const SubsetSumInstance& inst);

} // namespace pnembed
