#include "boxhelly/geometry.hpp"

namespace boxhelly {

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    Rational lo = std::max(a.lo, b.lo);
    Rational hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Interval{std::move(lo), std::move(hi)};
}

Interval project(const Box& box, std::size_t axis) {
    if (axis >= box.arity()) throw UsageError("projection axis out of range");
    return box.sides[axis];
}

std::optional<Box> box_chain_intersect(std::span<const Box> boxes) {
    if (boxes.empty()) throw UsageError("box_chain_intersect needs a nonempty list");
    const std::size_t d = boxes.front().arity();
    Box out = boxes.front();
    for (const Box& b : boxes.subspan(1)) {
        if (b.arity() != d) throw UsageError("box arity mismatch");
        for (std::size_t axis = 0; axis < d; ++axis) {
            auto cut = intersect(out.sides[axis], b.sides[axis]);
            if (!cut) return std::nullopt;
            out.sides[axis] = std::move(*cut);
        }
    }
    return out;
}

bool box_contains(const Box& box, std::span<const Rational> coords) {
    if (coords.size() != box.arity()) throw UsageError("point arity mismatch");
    for (std::size_t axis = 0; axis < coords.size(); ++axis)
        if (!box.sides[axis].contains(coords[axis])) return false;
    return true;
}

bool box_contains(const Box& box, const PointRecord& point) {
    return box_contains(box, std::span<const Rational>(point.coords));
}

ExtremalPick extremal_endpoint(std::span<const Box> family, std::size_t axis,
                               EndpointSide side) {
    if (family.empty()) throw UsageError("extremal_endpoint needs a nonempty family");
    std::size_t best = 0;
    for (std::size_t i = 1; i < family.size(); ++i) {
        if (side == EndpointSide::LeftMax) {
            if (project(family[i], axis).lo > project(family[best], axis).lo)
                best = i;
        } else {
            if (project(family[i], axis).hi < project(family[best], axis).hi)
                best = i;
        }
    }
    const Interval& win = project(family[best], axis);
    return {side == EndpointSide::LeftMax ? win.lo : win.hi, best};
}

std::strong_ordering compare(const TieBreakKey& a, const TieBreakKey& b) {
    int c = cmp(a.value, b.value);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.kind != b.kind)
        return static_cast<int>(a.kind) < static_cast<int>(b.kind)
                   ? std::strong_ordering::less
                   : std::strong_ordering::greater;
    if (a.family != b.family)
        return a.family < b.family ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
    if (a.index != b.index)
        return a.index < b.index ? std::strong_ordering::less
                                 : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace boxhelly
