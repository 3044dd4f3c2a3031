#include "boxhelly/instance.hpp"

#include <algorithm>

#include "boxhelly/errors.hpp"

namespace boxhelly {

void Instance::validate() const {
    if (dimension == 0) throw UsageError("instance dimension must be at least 1");
    if (families.empty()) throw UsageError("instance needs at least one family");
    for (std::size_t f = 0; f < families.size(); ++f) {
        if (families[f].empty())
            throw UsageError("family " + std::to_string(f) + " is empty");
        for (const Box& b : families[f]) {
            if (b.arity() != dimension) throw UsageError("box arity mismatch");
            for (const Interval& side : b.sides)
                if (side.lo > side.hi) throw UsageError("interval with lo > hi");
        }
    }
    for (const PointRecord& p : points) {
        if (p.coords.size() != dimension) throw UsageError("point arity mismatch");
        if (p.multiplicity == 0) throw UsageError("point multiplicity must be positive");
    }
}

std::uint64_t Instance::total_copies() const {
    std::uint64_t total = 0;
    for (const PointRecord& p : points) total += p.multiplicity;
    return total;
}

std::size_t CopyIndex::point_of_copy(std::uint64_t copy) const {
    auto it = std::upper_bound(offsets.begin(), offsets.end(), copy);
    return static_cast<std::size_t>(it - offsets.begin()) - 1;
}

CopyIndex make_copy_index(const Instance& instance) {
    CopyIndex idx;
    idx.offsets.reserve(instance.points.size());
    std::uint64_t at = 0;
    for (const PointRecord& p : instance.points) {
        idx.offsets.push_back(at);
        at += p.multiplicity;
    }
    idx.total = at;
    return idx;
}

}  // namespace boxhelly
