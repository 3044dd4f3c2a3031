#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boxhelly/instance.hpp"

namespace boxhelly {

/// Deterministic lower-bound instance for the colorful bound: d axis-split
/// family pairs plus d-1 nested symmetric pairs, with n copies of every
/// orthant vertex of the nested intersections. Every transversal trace has
/// exactly n copies while every family needs 2n. The generator brute-force
/// verifies the vertex-exclusion property before returning and throws
/// SelfCheckFailed otherwise. Defaults: extent = 2d, margin = 1/2.
Instance gen_colorful_lower(std::size_t d, std::uint64_t n);
Instance gen_colorful_lower(std::size_t d, std::uint64_t n,
                            const Rational& extent, const Rational& margin);

/// One family of 2d boxes (two per axis, overlapping at the origin) with 2d
/// unit-vector sites of multiplicity n; every (2d-1)-subfamily trace has
/// exactly n copies and the n-multitransversal number is
/// ceil(2dn / (2d-1)).
Instance gen_mono_lower(std::size_t d, std::uint64_t n);

/// Planar nine-box, nine-point instance whose traces pairwise intersect yet
/// need three piercing points, lifted to dimension d by a common interval on
/// the extra axes. Coordinates are frozen from a one-time exhaustive search
/// over integer boxes; the generator re-verifies both properties and throws
/// SelfCheckFailed if either fails.
Instance gen_pq_lower(std::size_t d);

struct RandomOptions {
    /// Give family i two boxes split by the hyperplane x_i = 0, producing the
    /// canonical relabeled structure.
    bool force_axis_splits = false;
    /// Half-width of the integer sampling range for box endpoints.
    long coord_range = 24;
};

/// Random instance satisfying the colorful n-intersecting hypothesis by
/// construction: boxes are sampled and grown until every transversal has a
/// positive-width intersection, then n fresh rational points are seeded
/// strictly inside each transversal's intersection, avoiding all endpoint
/// collisions. Deterministic per seed. Throws GenerationFailed after bounded
/// retries.
Instance gen_random_colorful(std::size_t d, std::uint64_t n,
                             std::span<const std::size_t> family_sizes,
                             std::uint64_t seed, const RandomOptions& options = {});

/// Random single-family instance whose every k-subfamily trace holds at
/// least n copies: boxes grown to pairwise positive-width overlap, then n
/// points seeded into every k-subset intersection. k = 2 gives the
/// pairwise-intersecting variant. Deterministic per seed.
Instance gen_random_subfamily(std::size_t d, std::uint64_t n,
                              std::size_t family_size, std::size_t k,
                              std::uint64_t seed, const RandomOptions& options = {});

}  // namespace boxhelly
