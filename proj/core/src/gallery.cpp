#include "boxhelly/gallery.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "boxhelly/cover.hpp"
#include "boxhelly/trace.hpp"

namespace boxhelly {

namespace {

Rational rat(long v) { return Rational(v); }

Box uniform_box(std::size_t d, const Rational& lo, const Rational& hi) {
    Box b;
    b.sides.assign(d, Interval{lo, hi});
    return b;
}

}  // namespace

Instance gen_colorful_lower(std::size_t d, std::uint64_t n) {
    return gen_colorful_lower(d, n, rat(static_cast<long>(2 * d)), make_rational(1, 2));
}

Instance gen_colorful_lower(std::size_t d, std::uint64_t n, const Rational& extent,
                            const Rational& margin) {
    if (d < 2 || d > 16) throw UsageError("need 2 <= d <= 16");
    if (n == 0) throw UsageError("n must be at least 1");
    if (extent < rat(static_cast<long>(2 * d)))
        throw UsageError("extent must be at least 2d");
    if (margin <= 0 || margin >= 1) throw UsageError("margin must lie in (0,1)");

    // side half-lengths of the two nested boxes in pair i, 0-based; the last
    // axis of the second table is pinned to d
    auto q = [d](std::size_t j, std::size_t i, std::size_t k) -> long {
        const long dd = static_cast<long>(d);
        if (j == 0) return k == d - 2 - i + 1 ? 1 : dd;  // k == d-1-(i+1)+1
        return k <= d - 2 - i ? dd - 1 - static_cast<long>(i) : dd;
    };

    Instance inst;
    inst.dimension = d;
    for (std::size_t i = 0; i < d; ++i) {
        Box neg = uniform_box(d, -extent, extent);
        neg.sides[i] = {-extent, -margin};
        Box pos = uniform_box(d, -extent, extent);
        pos.sides[i] = {margin, extent};
        inst.families.push_back({neg, pos});
    }
    for (std::size_t i = 0; i + 1 < d; ++i) {
        std::vector<Box> fam;
        for (std::size_t j = 0; j < 2; ++j) {
            Box b;
            for (std::size_t k = 0; k < d; ++k)
                b.sides.push_back({rat(-q(j, i, k)), rat(q(j, i, k))});
            fam.push_back(std::move(b));
        }
        inst.families.push_back(std::move(fam));
    }

    const std::size_t pair_count = d - 1;
    std::map<std::vector<long>, std::uint64_t> vertices;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << pair_count); ++s) {
        std::vector<long> profile(d);
        for (std::size_t k = 0; k < d; ++k) {
            long best = q(s & 1, 0, k);
            for (std::size_t i = 1; i < pair_count; ++i)
                best = std::min(best, q(s >> i & 1, i, k));
            profile[k] = best;
        }
        for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << d); ++eps) {
            std::vector<long> coords(d);
            for (std::size_t k = 0; k < d; ++k)
                coords[k] = (eps >> k & 1) ? -profile[k] : profile[k];
            vertices.emplace(std::move(coords), 0);
        }

        // vertex-exclusion: each vertex avoids the unselected twin boxes
        for (std::size_t i = 0; i < pair_count; ++i) {
            const std::size_t other = 1 - (s >> i & 1);
            bool escapes = false;
            for (std::size_t k = 0; k < d && !escapes; ++k)
                escapes = profile[k] > q(other, i, k);
            if (!escapes)
                throw SelfCheckFailed(
                    "a nested-pair vertex lies inside a twin box it must avoid");
        }
    }
    for (const auto& [coords, unused] : vertices) {
        PointRecord p;
        p.multiplicity = n;
        for (long c : coords) p.coords.push_back(rat(c));
        inst.points.push_back(std::move(p));
    }
    inst.validate();
    return inst;
}

Instance gen_mono_lower(std::size_t d, std::uint64_t n) {
    if (d == 0) throw UsageError("d must be at least 1");
    if (n == 0) throw UsageError("n must be at least 1");
    Instance inst;
    inst.dimension = d;
    std::vector<Box> fam;
    for (std::size_t i = 0; i < d; ++i) {
        Box low = uniform_box(d, rat(-1), rat(1));
        low.sides[i] = {rat(-1), rat(0)};
        Box high = uniform_box(d, rat(-1), rat(1));
        high.sides[i] = {rat(0), rat(1)};
        fam.push_back(std::move(low));
        fam.push_back(std::move(high));
    }
    inst.families.push_back(std::move(fam));
    for (std::size_t i = 0; i < d; ++i) {
        for (long sign : {1L, -1L}) {
            PointRecord p;
            p.multiplicity = n;
            p.coords.assign(d, rat(0));
            p.coords[i] = rat(sign);
            inst.points.push_back(std::move(p));
        }
    }
    inst.validate();
    return inst;
}

Instance gen_pq_lower(std::size_t d) {
    if (d < 2) throw UsageError("d must be at least 2");

    // frozen from a one-time exhaustive search over integer boxes on a
    // 9-point staircase in [0,8]^2
    static constexpr int kPerm[9] = {0, 1, 2, 3, 6, 8, 4, 7, 5};
    static constexpr int kBoxes[9][4] = {
        // {x_lo, x_hi, y_lo, y_hi}
        {5, 8, 5, 8}, {5, 7, 4, 8}, {4, 8, 5, 7}, {4, 6, 4, 8}, {0, 8, 0, 5},
        {0, 5, 0, 8}, {0, 7, 0, 7}, {1, 5, 1, 8}, {2, 5, 2, 8},
    };

    Instance inst;
    inst.dimension = d;
    std::vector<Box> fam;
    for (const auto& b : kBoxes) {
        Box box;
        box.sides.push_back({rat(b[0]), rat(b[1])});
        box.sides.push_back({rat(b[2]), rat(b[3])});
        for (std::size_t a = 2; a < d; ++a) box.sides.push_back({rat(0), rat(8)});
        fam.push_back(std::move(box));
    }
    inst.families.push_back(std::move(fam));
    for (int i = 0; i < 9; ++i) {
        PointRecord p;
        p.multiplicity = 1;
        p.coords.push_back(rat(i));
        p.coords.push_back(rat(kPerm[i]));
        for (std::size_t a = 2; a < d; ++a) p.coords.push_back(rat(4));
        inst.points.push_back(std::move(p));
    }
    inst.validate();

    // pairwise-intersecting traces, no one- or two-point piercing, some
    // three-point piercing; all checked by direct enumeration
    const auto& boxes = inst.families[0];
    std::vector<std::vector<bool>> in(9, std::vector<bool>(9, false));
    for (std::size_t b = 0; b < 9; ++b)
        for (std::size_t p = 0; p < 9; ++p)
            in[b][p] = box_contains(boxes[b], inst.points[p]);
    for (std::size_t b1 = 0; b1 < 9; ++b1)
        for (std::size_t b2 = b1 + 1; b2 < 9; ++b2) {
            bool shared = false;
            for (std::size_t p = 0; p < 9 && !shared; ++p)
                shared = in[b1][p] && in[b2][p];
            if (!shared) throw SelfCheckFailed("two traces do not intersect");
        }
    auto pierces_all = [&](std::initializer_list<std::size_t> picks) {
        for (std::size_t b = 0; b < 9; ++b) {
            bool hit = false;
            for (std::size_t p : picks) hit = hit || in[b][p];
            if (!hit) return false;
        }
        return true;
    };
    for (std::size_t x = 0; x < 9; ++x)
        for (std::size_t y = x; y < 9; ++y)
            if (pierces_all({x, y}))
                throw SelfCheckFailed("two points pierce all nine traces");
    bool triple = false;
    for (std::size_t x = 0; x < 9 && !triple; ++x)
        for (std::size_t y = x + 1; y < 9 && !triple; ++y)
            for (std::size_t z = y + 1; z < 9 && !triple; ++z)
                triple = pierces_all({x, y, z});
    if (!triple) throw SelfCheckFailed("no three points pierce all nine traces");
    return inst;
}

namespace {

// deterministic across platforms: raw engine draws plus rejection sampling
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % m;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::mt19937_64 engine_;
};

struct Sampler {
    Rng rng;
    long extent;  // coordinates stay within [-extent, extent]
    std::vector<std::set<Rational>> used;  // per-axis values already taken

    Sampler(std::uint64_t seed, long extent_, std::size_t d)
        : rng(seed), extent(extent_), used(d) {}

    Box random_box(std::size_t d) {
        Box b;
        for (std::size_t a = 0; a < d; ++a) {
            const long lo = rng.range(-extent, extent - 1);
            const long width = rng.range(1, extent);
            b.sides.push_back({rat(lo), rat(std::min(lo + width, extent))});
        }
        return b;
    }

    void note_endpoints(const Box& b) {
        for (std::size_t a = 0; a < b.arity(); ++a) {
            used[a].insert(b.sides[a].lo);
            used[a].insert(b.sides[a].hi);
        }
    }

    // fresh rational strictly inside (lo, hi), avoiding previous values
    Rational fresh_value(std::size_t axis, const Interval& range) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const std::uint64_t u = rng.below(std::uint64_t{1} << 16);
            Rational frac = make_rational(2 * static_cast<long>(u) + 1,
                                          2L << 16);
            Rational v = range.lo + (range.hi - range.lo) * frac;
            if (used[axis].insert(v).second) return v;
        }
        throw GenerationFailed("could not sample a collision-free coordinate");
    }
};

// grown-only repair: make every listed box tuple intersect with positive
// width on every axis
void inflate_tuples(Instance& inst, const std::vector<std::vector<BoxRef>>& tuples,
                    bool protect_splits) {
    const std::size_t d = inst.dimension;
    auto protected_box = [&](const BoxRef& ref, std::size_t axis) {
        return protect_splits && ref.family < d && ref.family == axis;
    };
    for (const auto& tuple : tuples) {
        for (int guard = 0;; ++guard) {
            if (guard > 10000) throw GenerationFailed("box repair did not converge");
            bool dirty = false;
            for (std::size_t a = 0; a < d && !dirty; ++a) {
                BoxRef lo_ref = tuple.front(), hi_ref = tuple.front();
                for (const BoxRef& ref : tuple) {
                    const Interval& side = inst.families[ref.family][ref.box].sides[a];
                    if (side.lo > inst.families[lo_ref.family][lo_ref.box].sides[a].lo)
                        lo_ref = ref;
                    if (side.hi < inst.families[hi_ref.family][hi_ref.box].sides[a].hi)
                        hi_ref = ref;
                }
                Interval& lo_side = inst.families[lo_ref.family][lo_ref.box].sides[a];
                Interval& hi_side = inst.families[hi_ref.family][hi_ref.box].sides[a];
                if (lo_side.lo < hi_side.hi) continue;  // positive width already
                if (protected_box(lo_ref, a))
                    hi_side.hi = lo_side.lo + 1;
                else
                    lo_side.lo = hi_side.hi - 1;
                dirty = true;
            }
            if (!dirty) break;
        }
    }
}

std::optional<Box> tuple_meet(const Instance& inst, const std::vector<BoxRef>& tuple) {
    std::vector<Box> boxes;
    for (const BoxRef& ref : tuple) boxes.push_back(inst.families[ref.family][ref.box]);
    return box_chain_intersect(boxes);
}

}  // namespace

Instance gen_random_colorful(std::size_t d, std::uint64_t n,
                             std::span<const std::size_t> family_sizes,
                             std::uint64_t seed, const RandomOptions& options) {
    if (d < 2) throw UsageError("d must be at least 2");
    if (n == 0) throw UsageError("n must be at least 1");
    if (family_sizes.empty()) throw UsageError("need at least one family");
    if (options.coord_range < 8) throw UsageError("coordinate range too small");
    std::uint64_t product = 1;
    for (std::size_t size : family_sizes) {
        if (size == 0) throw UsageError("families must be nonempty");
        product *= size;
        if (product > 200000) throw UsageError("too many transversals to seed");
    }
    if (options.force_axis_splits)
        for (std::size_t i = 0; i < d; ++i)
            if (i >= family_sizes.size() || family_sizes[i] < 2)
                throw UsageError("axis splits need two boxes in each of the "
                                 "first d families");

    Sampler sampler(seed, options.coord_range, d);
    Instance inst;
    inst.dimension = d;
    for (std::size_t f = 0; f < family_sizes.size(); ++f) {
        std::vector<Box> fam;
        for (std::size_t b = 0; b < family_sizes[f]; ++b)
            fam.push_back(sampler.random_box(d));
        if (options.force_axis_splits && f < d) {
            const long g = sampler.rng.range(1, std::max(2L, options.coord_range / 8));
            fam[0].sides[f] = {rat(-options.coord_range), rat(-g)};
            fam[1].sides[f] = {rat(g), rat(options.coord_range)};
            for (std::size_t b = 2; b < fam.size(); ++b) {
                const long h = sampler.rng.range(g, options.coord_range - 1);
                if (sampler.rng.below(2) == 0)
                    fam[b].sides[f] = {rat(-options.coord_range), rat(-h)};
                else
                    fam[b].sides[f] = {rat(h), rat(options.coord_range)};
            }
        }
        inst.families.push_back(std::move(fam));
    }

    std::vector<std::vector<BoxRef>> tuples;
    std::vector<std::size_t> at(family_sizes.size(), 0);
    while (true) {
        std::vector<BoxRef> tuple;
        for (std::size_t f = 0; f < at.size(); ++f) tuple.push_back({f, at[f]});
        tuples.push_back(std::move(tuple));
        std::size_t i = at.size();
        bool carried = true;
        while (i-- > 0) {
            if (++at[i] < family_sizes[i]) {
                carried = false;
                break;
            }
            at[i] = 0;
        }
        if (carried) break;
    }
    inflate_tuples(inst, tuples, options.force_axis_splits);

    for (const auto& fam : inst.families)
        for (const Box& b : fam) sampler.note_endpoints(b);
    for (const auto& tuple : tuples) {
        const std::optional<Box> meet = tuple_meet(inst, tuple);
        if (!meet) throw std::logic_error("repaired tuple is still empty");
        for (std::uint64_t i = 0; i < n; ++i) {
            PointRecord p;
            p.multiplicity = 1;
            for (std::size_t a = 0; a < d; ++a)
                p.coords.push_back(sampler.fresh_value(a, meet->sides[a]));
            inst.points.push_back(std::move(p));
        }
    }
    inst.validate();
    if (!check_colorful_n_intersecting(inst, n, product + 1).holds())
        throw std::logic_error("seeded instance fails its own hypothesis");
    return inst;
}

Instance gen_random_subfamily(std::size_t d, std::uint64_t n, std::size_t family_size,
                              std::size_t k, std::uint64_t seed,
                              const RandomOptions& options) {
    if (d == 0) throw UsageError("d must be at least 1");
    if (n == 0 || k == 0) throw UsageError("n and k must be at least 1");
    if (family_size == 0) throw UsageError("family must be nonempty");
    if (family_size > 16) throw UsageError("family too large to seed");
    if (options.coord_range < 8) throw UsageError("coordinate range too small");
    k = std::min(k, family_size);

    Sampler sampler(seed, options.coord_range, d);
    Instance inst;
    inst.dimension = d;
    std::vector<Box> fam;
    for (std::size_t b = 0; b < family_size; ++b)
        fam.push_back(sampler.random_box(d));
    inst.families.push_back(std::move(fam));

    std::vector<std::vector<BoxRef>> pairs;
    for (std::size_t b1 = 0; b1 < family_size; ++b1)
        for (std::size_t b2 = b1 + 1; b2 < family_size; ++b2)
            pairs.push_back({{0, b1}, {0, b2}});
    inflate_tuples(inst, pairs, false);
    for (const Box& b : inst.families[0]) sampler.note_endpoints(b);

    // every k-subset now has positive-width intersection; seed each one
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        std::vector<BoxRef> tuple;
        for (std::size_t i : comb) tuple.push_back({0, i});
        const std::optional<Box> meet = tuple_meet(inst, tuple);
        if (!meet) throw std::logic_error("pairwise overlap lost on a subset");
        for (std::uint64_t i = 0; i < n; ++i) {
            PointRecord p;
            p.multiplicity = 1;
            for (std::size_t a = 0; a < d; ++a)
                p.coords.push_back(sampler.fresh_value(a, meet->sides[a]));
            inst.points.push_back(std::move(p));
        }
        std::size_t i = k;
        bool done = true;
        while (i-- > 0) {
            if (comb[i] + (k - i) < family_size) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    inst.validate();
    const std::vector<TraceSet> traces = trace(inst);
    if (!check_subfamily_n_intersecting(traces, k, n).holds())
        throw std::logic_error("seeded family fails its own subset hypothesis");
    return inst;
}

}  // namespace boxhelly
