#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "boxhelly/cover.hpp"
#include "boxhelly/instance.hpp"

namespace boxhelly::testing {

// deterministic test randomness, independent of the library's samplers
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % m;
    }

    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::mt19937_64 engine_;
};

inline Box box2(long xlo, long xhi, long ylo, long yhi) {
    return Box{{{Rational(xlo), Rational(xhi)}, {Rational(ylo), Rational(yhi)}}};
}

inline PointRecord point2(long x, long y, std::uint64_t mult = 1) {
    return PointRecord{{Rational(x), Rational(y)}, mult};
}

// copies shared by every listed box, counted straight off the coordinates
inline std::uint64_t meet_copies(const Instance& inst,
                                 const std::vector<BoxRef>& refs) {
    std::uint64_t total = 0;
    for (const PointRecord& p : inst.points) {
        bool everywhere = true;
        for (const BoxRef& ref : refs)
            if (!box_contains(inst.families[ref.family][ref.box], p)) {
                everywhere = false;
                break;
            }
        if (everywhere) total += p.multiplicity;
    }
    return total;
}

// Exhaustive covering oracle. Set mode enumerates all copy subsets; multiset
// mode enumerates all per-copy count vectors (keep the universe small).
inline std::optional<std::uint64_t> oracle_cover(const CoverProblem& problem) {
    const std::size_t copies = problem.copies;
    const std::size_t m = problem.edges.size();
    std::vector<std::uint64_t> edge_mask(m, 0);
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t id : problem.edges[e].to_indices())
            edge_mask[e] |= std::uint64_t{1} << id;

    if (problem.cap == CapMode::Multitransversal) {
        std::optional<std::uint64_t> best;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << copies); ++mask) {
            bool ok = true;
            for (std::size_t e = 0; e < m && ok; ++e)
                ok = static_cast<std::uint64_t>(
                         __builtin_popcountll(mask & edge_mask[e])) >= problem.demand;
            if (!ok) continue;
            const std::uint64_t size = __builtin_popcountll(mask);
            if (!best || size < *best) best = size;
        }
        return best;
    }

    std::optional<std::uint64_t> best;
    std::vector<std::uint64_t> counts(copies, 0);
    auto rec = [&](auto&& self, std::size_t at, std::uint64_t total) -> void {
        if (best && total >= *best) return;
        if (at == copies) {
            for (std::size_t e = 0; e < m; ++e) {
                std::uint64_t covered = 0;
                for (std::size_t id = 0; id < copies; ++id)
                    if (edge_mask[e] >> id & 1) covered += counts[id];
                if (covered < problem.demand) return;
            }
            best = total;
            return;
        }
        for (std::uint64_t c = 0; c <= problem.demand; ++c) {
            counts[at] = c;
            self(self, at + 1, total + c);
        }
        counts[at] = 0;
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace boxhelly::testing
