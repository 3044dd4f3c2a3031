#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "boxhelly/errors.hpp"
#include "boxhelly/rational.hpp"

namespace boxhelly {

/// Closed segment [lo, hi] on one axis.
struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool intersects(const Interval& other) const {
        return lo <= other.hi && other.lo <= hi;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::optional<Interval> intersect(const Interval& a, const Interval& b);

/// Axis-parallel box: one closed interval per axis.
struct Box {
    std::vector<Interval> sides;

    std::size_t arity() const { return sides.size(); }
    const Interval& side(std::size_t axis) const { return sides[axis]; }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Point site with a multiplicity (the instance point set is a multiset).
struct PointRecord {
    std::vector<Rational> coords;
    std::uint64_t multiplicity = 1;
};

/// Projection of a box onto one axis (0-based). Out-of-range axis is a usage
/// error.
Interval project(const Box& box, std::size_t axis);

/// Coordinatewise intersection of a nonempty list of boxes of equal arity;
/// nullopt when some axis ends up with lo > hi.
std::optional<Box> box_chain_intersect(std::span<const Box> boxes);

bool box_contains(const Box& box, std::span<const Rational> coords);
bool box_contains(const Box& box, const PointRecord& point);

/// Which projection endpoint an extremal query asks for.
enum class EndpointSide {
    LeftMax,   // largest left endpoint over the family
    RightMin,  // smallest right endpoint over the family
};

struct ExtremalPick {
    Rational value;
    std::size_t box = 0;
};

/// Extremal projection endpoint of a nonempty family on one axis. Ties on the
/// value are broken toward the smallest box index, so the result is a total
/// deterministic choice.
ExtremalPick extremal_endpoint(std::span<const Box> family, std::size_t axis,
                               EndpointSide side);

/// Symbolic tie-break key. Ordering refines the order on values and is a
/// strict total order as soon as (kind, family, index) distinguish the
/// sources, which they do for distinct endpoints/coordinates of an instance.
enum class KeyKind { PointCoord = 0, BoxLeft = 1, BoxRight = 2 };

struct TieBreakKey {
    Rational value;
    KeyKind kind = KeyKind::PointCoord;
    std::size_t family = 0;
    std::size_t index = 0;
};

std::strong_ordering compare(const TieBreakKey& a, const TieBreakKey& b);

inline bool operator<(const TieBreakKey& a, const TieBreakKey& b) {
    return compare(a, b) == std::strong_ordering::less;
}

}  // namespace boxhelly
