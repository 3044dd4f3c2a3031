#include "boxhelly/cover.hpp"

#include <algorithm>
#include <unordered_map>

#include "boxhelly/errors.hpp"

namespace boxhelly {

namespace {

// Copies with identical edge membership are interchangeable, so the solver
// works on classes of copies. Class order follows the smallest copy id.
struct CopyClass {
    std::uint64_t sig = 0;          // bitmask over edges
    std::vector<std::size_t> ids;   // ascending copy ids
    std::uint64_t capacity = 0;     // units available under the cap mode
};

struct Classified {
    std::vector<CopyClass> classes;
    std::size_t edge_count = 0;
};

Classified classify(const CoverProblem& problem) {
    const std::size_t m = problem.edges.size();
    if (m > 64) throw UsageError("at most 64 edges supported");
    if (problem.demand == 0) throw UsageError("demand must be at least 1");
    for (const CopySet& e : problem.edges)
        if (e.size() != problem.copies) throw UsageError("edge universe mismatch");

    std::vector<std::uint64_t> sig(problem.copies, 0);
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t id : problem.edges[e].to_indices())
            sig[id] |= std::uint64_t{1} << e;

    Classified out;
    out.edge_count = m;
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t id = 0; id < problem.copies; ++id) {
        if (sig[id] == 0) continue;  // covers nothing, never useful
        auto [it, fresh] = index.try_emplace(sig[id], out.classes.size());
        if (fresh) out.classes.push_back({sig[id], {}, 0});
        out.classes[it->second].ids.push_back(id);
    }
    for (CopyClass& c : out.classes) {
        c.capacity = c.ids.size();
        if (problem.cap == CapMode::KCover) c.capacity *= problem.demand;
    }
    return out;
}

// greedy over classes; returns per-class unit counts, or empty on infeasible
std::optional<std::vector<std::uint64_t>> greedy_counts(const Classified& cls,
                                                        std::uint64_t demand) {
    const std::size_t m = cls.edge_count;
    std::vector<std::uint64_t> edge_cap(m, 0);
    for (const CopyClass& c : cls.classes)
        for (std::size_t e = 0; e < m; ++e)
            if (c.sig >> e & 1) edge_cap[e] += c.capacity;
    for (std::size_t e = 0; e < m; ++e)
        if (edge_cap[e] < demand) return std::nullopt;

    std::vector<std::uint64_t> deficit(m, demand);
    std::vector<std::uint64_t> remaining;
    for (const CopyClass& c : cls.classes) remaining.push_back(c.capacity);
    std::vector<std::uint64_t> counts(cls.classes.size(), 0);

    auto deficient = [&](std::uint64_t sigmask) {
        std::size_t covered = 0;
        for (std::size_t e = 0; e < m; ++e)
            if ((sigmask >> e & 1) && deficit[e] > 0) ++covered;
        return covered;
    };

    while (true) {
        bool open = false;
        for (std::size_t e = 0; e < m; ++e)
            if (deficit[e] > 0) open = true;
        if (!open) break;

        std::size_t best = cls.classes.size();
        std::size_t best_cover = 0;
        for (std::size_t t = 0; t < cls.classes.size(); ++t) {
            if (remaining[t] == 0) continue;
            const std::size_t covered = deficient(cls.classes[t].sig);
            if (covered > best_cover) {
                best_cover = covered;
                best = t;
            }
        }
        if (best == cls.classes.size()) return std::nullopt;  // cannot happen if feasible
        std::uint64_t maxdef = 0;
        for (std::size_t e = 0; e < m; ++e)
            if ((cls.classes[best].sig >> e & 1) && deficit[e] > maxdef)
                maxdef = deficit[e];
        const std::uint64_t take = std::min(remaining[best], maxdef);
        remaining[best] -= take;
        counts[best] += take;
        for (std::size_t e = 0; e < m; ++e)
            if (cls.classes[best].sig >> e & 1)
                deficit[e] = deficit[e] > take ? deficit[e] - take : 0;
    }
    return counts;
}

std::vector<std::size_t> materialize(const Classified& cls,
                                     const std::vector<std::uint64_t>& counts,
                                     const CoverProblem& problem) {
    std::vector<std::size_t> witness;
    for (std::size_t t = 0; t < cls.classes.size(); ++t) {
        std::uint64_t left = counts[t];
        if (problem.cap == CapMode::Multitransversal) {
            for (std::size_t i = 0; left > 0; ++i, --left)
                witness.push_back(cls.classes[t].ids[i]);
        } else {
            for (std::size_t id : cls.classes[t].ids) {
                const std::uint64_t take = std::min<std::uint64_t>(left, problem.demand);
                for (std::uint64_t u = 0; u < take; ++u) witness.push_back(id);
                left -= take;
                if (left == 0) break;
            }
        }
    }
    std::sort(witness.begin(), witness.end());
    return witness;
}

}  // namespace

std::optional<std::vector<std::size_t>> greedy_upper(const CoverProblem& problem) {
    const Classified cls = classify(problem);
    auto counts = greedy_counts(cls, problem.demand);
    if (!counts) return std::nullopt;
    return materialize(cls, *counts, problem);
}

SolveResult solve_exact(const CoverProblem& problem) {
    const Classified cls = classify(problem);
    const std::size_t m = cls.edge_count;
    const std::size_t nclasses = cls.classes.size();
    SolveResult result;

    if (m == 0) {
        result.optimum = 0;
        return result;
    }

    auto start = greedy_counts(cls, problem.demand);
    if (!start) return result;  // infeasible

    // suffix capacity per edge: units available among classes >= idx
    std::vector<std::vector<std::uint64_t>> suffix(nclasses + 1,
                                                   std::vector<std::uint64_t>(m, 0));
    for (std::size_t t = nclasses; t-- > 0;) {
        suffix[t] = suffix[t + 1];
        for (std::size_t e = 0; e < m; ++e)
            if (cls.classes[t].sig >> e & 1) suffix[t][e] += cls.classes[t].capacity;
    }

    // static pairwise edge disjointness (no class covers both)
    std::vector<std::uint64_t> edge_classes(m, 0);  // mask over edges ever co-covered
    for (const CopyClass& c : cls.classes)
        for (std::size_t e = 0; e < m; ++e)
            if (c.sig >> e & 1) edge_classes[e] |= c.sig;

    std::vector<std::uint64_t> deficit(m, problem.demand);
    std::vector<std::uint64_t> picked(nclasses, 0);
    std::uint64_t picked_total = 0;

    std::uint64_t best = 0;
    for (std::uint64_t c : *start) best += c;
    std::vector<std::uint64_t> best_counts = *start;

    // packing bound: sum of deficits over pairwise-disjoint deficient edges
    std::vector<std::size_t> order(m);
    auto lower_bound = [&]() {
        std::size_t open = 0;
        for (std::size_t e = 0; e < m; ++e)
            if (deficit[e] > 0) order[open++] = e;
        std::sort(order.begin(), order.begin() + open, [&](std::size_t a, std::size_t b) {
            if (deficit[a] != deficit[b]) return deficit[a] > deficit[b];
            return a < b;
        });
        std::uint64_t bound = 0;
        std::uint64_t taken_mask = 0;
        for (std::size_t i = 0; i < open; ++i) {
            const std::size_t e = order[i];
            if (edge_classes[e] & taken_mask) continue;
            taken_mask |= std::uint64_t{1} << e;
            bound += deficit[e];
        }
        return bound;
    };

    auto dfs = [&](auto&& self, std::size_t idx) -> void {
        ++result.nodes_explored;
        bool satisfied = true;
        for (std::size_t e = 0; e < m; ++e)
            if (deficit[e] > 0) {
                satisfied = false;
                break;
            }
        if (satisfied) {
            if (picked_total < best) {
                best = picked_total;
                best_counts = picked;
            }
            return;
        }
        if (idx == nclasses) return;
        for (std::size_t e = 0; e < m; ++e)
            if (deficit[e] > suffix[idx][e]) return;
        if (picked_total + lower_bound() >= best) return;

        const std::uint64_t sig = cls.classes[idx].sig;
        std::uint64_t maxdef = 0;
        for (std::size_t e = 0; e < m; ++e)
            if ((sig >> e & 1) && deficit[e] > maxdef) maxdef = deficit[e];
        const std::uint64_t xmax = std::min(cls.classes[idx].capacity, maxdef);

        std::vector<std::uint64_t> saved(m);
        for (std::uint64_t x = xmax + 1; x-- > 0;) {
            for (std::size_t e = 0; e < m; ++e) {
                saved[e] = deficit[e];
                if (sig >> e & 1) deficit[e] = deficit[e] > x ? deficit[e] - x : 0;
            }
            picked[idx] = x;
            picked_total += x;
            self(self, idx + 1);
            picked_total -= x;
            picked[idx] = 0;
            deficit = saved;
        }
    };
    dfs(dfs, 0);

    result.optimum = best;
    result.witness = materialize(cls, best_counts, problem);
    return result;
}

bool verify_cover(const CoverProblem& problem, std::span<const std::size_t> witness) {
    std::unordered_map<std::size_t, std::uint64_t> uses;
    for (std::size_t id : witness) {
        if (id >= problem.copies) return false;
        ++uses[id];
    }
    const std::uint64_t cap =
        problem.cap == CapMode::Multitransversal ? 1 : problem.demand;
    for (const auto& [id, n] : uses)
        if (n > cap) return false;
    for (const CopySet& edge : problem.edges) {
        std::uint64_t covered = 0;
        for (std::size_t id : witness)
            if (edge.test(id)) ++covered;
        if (covered < problem.demand) return false;
    }
    return true;
}

CoverProblem make_cover_problem(const Instance& instance, std::size_t family,
                                std::uint64_t k, CapMode cap) {
    if (family >= instance.families.size()) throw UsageError("family index out of range");
    const CopyIndex idx = make_copy_index(instance);
    CoverProblem problem;
    problem.demand = k;
    problem.cap = cap;
    problem.copies = static_cast<std::size_t>(idx.total);
    for (const Box& box : instance.families[family]) {
        CopySet hits(problem.copies);
        for (std::size_t p = 0; p < instance.points.size(); ++p) {
            if (!box_contains(box, instance.points[p])) continue;
            for (std::uint64_t c = 0; c < instance.points[p].multiplicity; ++c)
                hits.set(static_cast<std::size_t>(idx.offsets[p] + c));
        }
        problem.edges.push_back(std::move(hits));
    }
    return problem;
}

}  // namespace boxhelly
