#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boxhelly/instance.hpp"

namespace boxhelly {

/// Clamp pair consumed for one eliminated axis: the box with the largest left
/// endpoint and, from a different family, the box with the smallest right
/// endpoint on that axis.
struct AxisClamp {
    std::size_t axis_original = 0;
    BoxRef left_pick;   // largest left endpoint
    BoxRef right_pick;  // smallest right endpoint
};

struct Reduction {
    std::vector<AxisClamp> clamps;
    std::vector<std::size_t> surviving_families;  // original indices
    std::vector<std::size_t> point_backmap;       // reduced point -> original point
    std::string selection_rule;                   // how clamp families were chosen
};

/// Eliminates the first t axes (in increasing index order), consuming two
/// families per axis: points are clamped to the chosen pair's intersection
/// and the axis is dropped from boxes and points. The reduced instance again
/// satisfies the colorful n-intersecting hypothesis whenever the input did,
/// and the n-multitransversal number of each surviving family can only grow.
/// t = 0 is the identity. Throws HypothesisViolated when clamping exposes a
/// transversal with a too-small trace.
std::pair<Instance, Reduction> reduce(const Instance& instance, std::uint64_t n,
                                      std::size_t t);

/// Summary of the piercing-bound pipeline for families whose subfamilies of
/// size 2d-k are trace-intersecting.
struct ReducePierceReport {
    std::size_t s = 0;
    std::size_t t = 0;
    std::size_t reduced_dimension = 0;
    std::string bound_symbol;  // symbolic constant; never computed
    std::uint64_t tau_original = 0;
    std::uint64_t tau_reduced = 0;
    bool inequality_ok = false;
    Instance reduced_instance;
    Reduction reduction;
};

/// Runs reduce with s = 2d-k slots bound to one family and
/// t = floor((2d-k-2)/2), solves the exact piercing number on both sides and
/// checks tau(original) <= tau(reduced). The resulting bound constant is
/// reported symbolically.
ReducePierceReport reduce_and_compare(std::span<const Box> family,
                                      std::span<const PointRecord> points,
                                      std::size_t d, std::size_t k);

}  // namespace boxhelly
