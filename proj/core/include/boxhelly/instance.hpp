#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "boxhelly/geometry.hpp"

namespace boxhelly {

/// One problem instance: a dimension, at least one nonempty family of boxes,
/// and a weighted point multiset. Everything is immutable after construction;
/// all operations on instances are pure.
struct Instance {
    std::size_t dimension = 0;
    std::vector<std::vector<Box>> families;
    std::vector<PointRecord> points;

    /// Checks the structural invariants (arity, nonempty families, positive
    /// multiplicities). Throws UsageError on failure.
    void validate() const;

    std::uint64_t total_copies() const;
};

/// A point with multiplicity m contributes m consecutive copy ids; copy ids
/// enumerate points in order. CopyIndex maps between points and copies.
struct CopyIndex {
    std::vector<std::uint64_t> offsets;  // offsets[i] = first copy id of point i
    std::uint64_t total = 0;

    std::size_t point_of_copy(std::uint64_t copy) const;
};

CopyIndex make_copy_index(const Instance& instance);

}  // namespace boxhelly
