#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "boxhelly/copyset.hpp"
#include "boxhelly/instance.hpp"
#include "boxhelly/trace.hpp"

namespace boxhelly {

/// How often a single point copy may be used in a cover.
enum class CapMode {
    Multitransversal,  // each copy at most once (a set)
    KCover,            // each copy up to k times (a multiset)
};

/// Exact covering problem over trace hypergraph edges: pick copies so that
/// every edge contains at least `demand` of them.
struct CoverProblem {
    std::vector<CopySet> edges;
    std::uint64_t demand = 1;
    CapMode cap = CapMode::Multitransversal;
    std::size_t copies = 0;
};

/// Solver output. `optimum` is empty when the problem is infeasible (some
/// edge cannot reach its demand), which is a first-class outcome. The witness
/// lists chosen copy ids, with repetitions in KCover mode.
struct SolveResult {
    std::optional<std::uint64_t> optimum;
    std::vector<std::size_t> witness;
    std::uint64_t nodes_explored = 0;

    bool feasible() const { return optimum.has_value(); }
};

/// Provably optimal cover via branch and bound over classes of
/// interchangeable copies (copies grouped by identical edge membership),
/// explored in first-copy order. Deterministic.
SolveResult solve_exact(const CoverProblem& problem);

/// Greedy feasible cover; size is an upper bound on the optimum. Empty result
/// when infeasible.
std::optional<std::vector<std::size_t>> greedy_upper(const CoverProblem& problem);

/// Independent certificate check: every edge holds >= demand chosen copies
/// and the per-copy cap is respected. Shares no code with the solver.
bool verify_cover(const CoverProblem& problem, std::span<const std::size_t> witness);

/// Covering problem for one family of an instance: edges are the family's
/// box traces, demand k.
CoverProblem make_cover_problem(const Instance& instance, std::size_t family,
                                std::uint64_t k,
                                CapMode cap = CapMode::Multitransversal);

}  // namespace boxhelly
