#include "boxhelly/witness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "boxhelly/cover.hpp"

namespace boxhelly {

namespace {

void check_dimension(std::size_t d) {
    if (d < 2) throw UsageError("axis sequences require dimension at least 2");
    if (d > 32) throw UsageError("dimension too large");
}

}  // namespace

std::vector<AxisSeq> all_axis_seqs(std::size_t d) {
    check_dimension(d);
    std::vector<AxisSeq> out;
    AxisSeq current;
    std::vector<bool> used(d, false);
    auto rec = [&](auto&& self) -> void {
        if (current.size() == d - 1) {
            out.push_back(current);
            return;
        }
        for (std::size_t axis = 0; axis < d; ++axis) {
            if (used[axis]) continue;
            used[axis] = true;
            for (Direction dir : {Direction::Left, Direction::Right}) {
                current.push_back({axis, dir});
                self(self);
                current.pop_back();
            }
            used[axis] = false;
        }
    };
    rec(rec);
    return out;
}

std::vector<AxisSeq> averaging_axis_seqs(std::size_t d) {
    check_dimension(d);
    std::vector<AxisSeq> out;
    for (std::size_t missing = 0; missing < d; ++missing) {
        std::vector<std::size_t> axes;
        for (std::size_t a = 0; a < d; ++a)
            if (a != missing) axes.push_back(a);
        const std::size_t len = d - 1;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            for (std::size_t shift = 0; shift < len; ++shift) {
                AxisSeq seq;
                for (std::size_t s = 0; s < len; ++s) {
                    const std::size_t pos = (s + shift) % len;
                    seq.push_back({axes[pos], (bits >> pos & 1) ? Direction::Right
                                                                : Direction::Left});
                }
                out.push_back(std::move(seq));
            }
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::logic_error("averaging sequences must be distinct");
    return out;
}

std::size_t free_axis(const AxisSeq& seq, std::size_t d) {
    check_dimension(d);
    if (seq.size() != d - 1) throw UsageError("axis sequence must have d-1 steps");
    std::vector<bool> used(d, false);
    for (const AxisStep& step : seq) {
        if (step.axis >= d || used[step.axis])
            throw UsageError("axis sequence must use distinct axes below d");
        used[step.axis] = true;
    }
    for (std::size_t a = 0; a < d; ++a)
        if (!used[a]) return a;
    throw std::logic_error("unreachable");
}

std::vector<BoxRef> ExtremalSelection::pinned() const {
    std::vector<BoxRef> out = first_picks;
    out.insert(out.end(), second_picks.begin(), second_picks.end());
    return out;
}

namespace {

// Extremal box over all boxes of the allowed families; ties resolve toward
// the smallest (family, box).
BoxRef pick_extremal(const Instance& instance, const std::vector<bool>& allowed,
                     std::size_t axis, EndpointSide side) {
    bool have = false;
    BoxRef best;
    for (std::size_t f = 0; f < instance.families.size(); ++f) {
        if (!allowed[f]) continue;
        for (std::size_t b = 0; b < instance.families[f].size(); ++b) {
            const Interval& cur = instance.families[f][b].sides[axis];
            if (!have) {
                have = true;
                best = {f, b};
                continue;
            }
            const Interval& win = instance.families[best.family][best.box].sides[axis];
            if (side == EndpointSide::LeftMax ? cur.lo > win.lo : cur.hi < win.hi)
                best = {f, b};
        }
    }
    if (!have) throw std::logic_error("no family left to pick from");
    return best;
}

void require_colorful_shape(const Instance& instance) {
    instance.validate();
    if (instance.dimension < 2) throw UsageError("need dimension at least 2");
    if (instance.families.size() != 2 * instance.dimension - 1)
        throw UsageError("need exactly 2d-1 families");
}

}  // namespace

ExtremalSelection select_extremal(const Instance& instance, const AxisSeq& seq) {
    require_colorful_shape(instance);
    const std::size_t d = instance.dimension;

    ExtremalSelection sel;
    sel.seq = seq;
    sel.axis_free = free_axis(seq, d);

    std::vector<bool> allowed(instance.families.size(), true);
    for (const AxisStep& step : seq) {
        const EndpointSide side = step.dir == Direction::Left
                                      ? EndpointSide::LeftMax
                                      : EndpointSide::RightMin;
        const BoxRef pick = pick_extremal(instance, allowed, step.axis, side);
        allowed[pick.family] = false;
        sel.first_picks.push_back(pick);
    }
    for (const AxisStep& step : seq) {
        const EndpointSide side = step.dir == Direction::Left
                                      ? EndpointSide::RightMin
                                      : EndpointSide::LeftMax;
        const BoxRef pick = pick_extremal(instance, allowed, step.axis, side);
        allowed[pick.family] = false;
        sel.second_picks.push_back(pick);
    }
    std::size_t leftover = instance.families.size();
    for (std::size_t f = 0; f < instance.families.size(); ++f)
        if (allowed[f]) leftover = f;
    sel.target_family = leftover;

    const auto& target = instance.families[sel.target_family];
    sel.target_max_left =
        extremal_endpoint(target, sel.axis_free, EndpointSide::LeftMax).value;
    sel.target_min_right =
        extremal_endpoint(target, sel.axis_free, EndpointSide::RightMin).value;
    return sel;
}

namespace {

std::vector<BoxRef> full_transversal(const Instance& instance,
                                     const ExtremalSelection& sel,
                                     std::size_t target_box) {
    std::vector<BoxRef> out;
    for (std::size_t f = 0; f < instance.families.size(); ++f) out.push_back({f, 0});
    for (const BoxRef& ref : sel.first_picks) out[ref.family] = ref;
    for (const BoxRef& ref : sel.second_picks) out[ref.family] = ref;
    out[sel.target_family] = {sel.target_family, target_box};
    return out;
}

struct CoreCopy {
    Rational value;  // free-axis coordinate
    std::size_t copy = 0;
    std::size_t point = 0;
};

}  // namespace

WitnessCertificate cover_along_free_axis(const Instance& instance, const AxisSeq& seq,
                                         std::uint64_t n) {
    if (n == 0) throw UsageError("n must be at least 1");
    const ExtremalSelection sel = select_extremal(instance, seq);
    const CopyIndex idx = make_copy_index(instance);

    std::vector<Box> pinned_boxes;
    for (const BoxRef& ref : sel.pinned())
        pinned_boxes.push_back(instance.families[ref.family][ref.box]);
    const std::optional<Box> core_box = box_chain_intersect(pinned_boxes);
    if (!core_box)
        throw HypothesisViolated("pinned boxes have empty intersection",
                                 full_transversal(instance, sel, 0));

    std::vector<CoreCopy> core;
    for (std::size_t p = 0; p < instance.points.size(); ++p) {
        if (!box_contains(*core_box, instance.points[p])) continue;
        const Rational& v = instance.points[p].coords[sel.axis_free];
        for (std::uint64_t c = 0; c < instance.points[p].multiplicity; ++c)
            core.push_back({v, static_cast<std::size_t>(idx.offsets[p] + c), p});
    }
    std::sort(core.begin(), core.end(), [](const CoreCopy& a, const CoreCopy& b) {
        int c = cmp(a.value, b.value);
        return c != 0 ? c < 0 : a.copy < b.copy;
    });

    const Rational& gap_lo = sel.target_min_right;  // smallest right endpoint
    const Rational& gap_hi = sel.target_max_left;   // largest left endpoint
    const auto& target = instance.families[sel.target_family];

    std::size_t below = 0;  // core copies with value <= gap_lo
    while (below < core.size() && core[below].value <= gap_lo) ++below;
    std::size_t above_start = core.size();  // first core copy with value >= gap_hi
    while (above_start > 0 && core[above_start - 1].value >= gap_hi) --above_start;

    if (below < n) {
        const std::size_t bad =
            extremal_endpoint(target, sel.axis_free, EndpointSide::RightMin).box;
        throw HypothesisViolated(
            "fewer than n core copies at or below the smallest right endpoint",
            full_transversal(instance, sel, bad));
    }
    if (core.size() - above_start < n) {
        const std::size_t bad =
            extremal_endpoint(target, sel.axis_free, EndpointSide::LeftMax).box;
        throw HypothesisViolated(
            "fewer than n core copies at or above the largest left endpoint",
            full_transversal(instance, sel, bad));
    }

    std::set<std::size_t> chosen;
    for (std::size_t i = below - n; i < below; ++i) chosen.insert(core[i].copy);
    for (std::size_t i = above_start; i < above_start + n; ++i)
        chosen.insert(core[i].copy);
    std::uint64_t gap_copies = 0;
    if (sel.gap_open()) {
        for (const CoreCopy& c : core)
            if (c.value > gap_lo && c.value < gap_hi) {
                chosen.insert(c.copy);
                ++gap_copies;
            }
    }

    WitnessCertificate cert;
    cert.family = sel.target_family;
    cert.copies.assign(chosen.begin(), chosen.end());
    cert.gap_copies = gap_copies;
    cert.claimed_bound = 2 * n + gap_copies;
    cert.branch = sel.gap_open() ? WitnessCertificate::Branch::Averaged
                                 : WitnessCertificate::Branch::GapEmpty;
    cert.selection = sel;

    for (std::size_t b = 0; b < target.size(); ++b) {
        std::uint64_t hits = 0;
        for (std::size_t copy : cert.copies)
            if (box_contains(target[b], instance.points[idx.point_of_copy(copy)]))
                ++hits;
        if (hits < n) {
            std::uint64_t in_core = 0;
            for (const CoreCopy& c : core)
                if (box_contains(target[b], instance.points[c.point])) ++in_core;
            if (in_core < n)
                throw HypothesisViolated("a target box holds fewer than n core copies",
                                         full_transversal(instance, sel, b));
            throw std::logic_error("covering construction missed a well-fed box");
        }
        cert.per_box_hits.push_back(hits);
    }
    if (cert.copies.size() > cert.claimed_bound)
        throw std::logic_error("certificate exceeds its claimed bound");
    return cert;
}

Instance apply_relabeling(const Instance& instance, const Relabeling& rel) {
    const std::size_t d = instance.dimension;
    if (rel.family_to_original.size() != instance.families.size() ||
        rel.axis_to_original.size() != d || rel.reflect.size() != d)
        throw UsageError("relabeling shape mismatch");

    auto map_interval = [&](const Interval& side, bool flip) {
        return flip ? Interval{-side.hi, -side.lo} : side;
    };

    Instance out;
    out.dimension = d;
    for (std::size_t nf = 0; nf < instance.families.size(); ++nf) {
        std::vector<Box> fam;
        for (const Box& box : instance.families[rel.family_to_original[nf]]) {
            Box nb;
            for (std::size_t na = 0; na < d; ++na)
                nb.sides.push_back(
                    map_interval(box.sides[rel.axis_to_original[na]], rel.reflect[na]));
            fam.push_back(std::move(nb));
        }
        out.families.push_back(std::move(fam));
    }
    for (const PointRecord& p : instance.points) {
        PointRecord np;
        np.multiplicity = p.multiplicity;
        for (std::size_t na = 0; na < d; ++na) {
            Rational v = p.coords[rel.axis_to_original[na]];
            if (rel.reflect[na]) v = -v;
            np.coords.push_back(std::move(v));
        }
        out.points.push_back(std::move(np));
    }
    return out;
}

namespace {

// Cross-family disjoint box pair, extended to a transversal with empty
// intersection. Exists whenever the split structure is inconsistent.
std::vector<BoxRef> hunt_disjoint_pair(const Instance& instance) {
    for (std::size_t f1 = 0; f1 < instance.families.size(); ++f1)
        for (std::size_t f2 = f1 + 1; f2 < instance.families.size(); ++f2)
            for (std::size_t b1 = 0; b1 < instance.families[f1].size(); ++b1)
                for (std::size_t b2 = 0; b2 < instance.families[f2].size(); ++b2) {
                    const Box& x = instance.families[f1][b1];
                    const Box& y = instance.families[f2][b2];
                    bool disjoint = false;
                    for (std::size_t a = 0; a < instance.dimension && !disjoint; ++a)
                        disjoint = !x.sides[a].intersects(y.sides[a]);
                    if (!disjoint) continue;
                    std::vector<BoxRef> out;
                    for (std::size_t f = 0; f < instance.families.size(); ++f)
                        out.push_back({f, 0});
                    out[f1] = {f1, b1};
                    out[f2] = {f2, b2};
                    return out;
                }
    throw std::logic_error("split structure inconsistent without a disjoint pair");
}

}  // namespace

std::variant<Relabeling, WitnessCertificate> relabel(const Instance& instance,
                                                     std::uint64_t n) {
    require_colorful_shape(instance);
    const std::size_t d = instance.dimension;

    for (const AxisSeq& seq : all_axis_seqs(d)) {
        const ExtremalSelection sel = select_extremal(instance, seq);
        if (!sel.gap_open()) {
            WitnessCertificate cert = cover_along_free_axis(instance, seq, n);
            if (cert.branch != WitnessCertificate::Branch::GapEmpty)
                throw std::logic_error("early exit must land in the gap-empty branch");
            return cert;
        }
    }

    // every free-axis gap is open, so each axis owns at least one family whose
    // projections there have empty intersection; the structure must be a
    // perfect matching between axes and d of the families
    std::vector<std::size_t> axis_family(d);
    for (std::size_t axis = 0; axis < d; ++axis) {
        std::vector<std::size_t> empties;
        for (std::size_t f = 0; f < instance.families.size(); ++f) {
            const auto& fam = instance.families[f];
            const Rational left =
                extremal_endpoint(fam, axis, EndpointSide::LeftMax).value;
            const Rational right =
                extremal_endpoint(fam, axis, EndpointSide::RightMin).value;
            if (left > right) empties.push_back(f);
        }
        if (empties.empty())
            throw std::logic_error("open gaps everywhere but no split family on axis");
        if (empties.size() > 1)
            throw StructureViolated(
                "two families are split on axis " + std::to_string(axis),
                hunt_disjoint_pair(instance));
        axis_family[axis] = empties.front();
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            if (axis_family[a] == axis_family[b])
                throw StructureViolated(
                    "family " + std::to_string(axis_family[a]) +
                        " is split on two axes",
                    hunt_disjoint_pair(instance));

    Relabeling rel;
    rel.family_to_original = axis_family;
    std::vector<bool> taken(instance.families.size(), false);
    for (std::size_t f : axis_family) taken[f] = true;
    for (std::size_t f = 0; f < instance.families.size(); ++f)
        if (!taken[f]) rel.family_to_original.push_back(f);
    for (std::size_t a = 0; a < d; ++a) {
        rel.axis_to_original.push_back(a);
        rel.reflect.push_back(false);
    }
    return rel;
}

namespace {

struct Region {
    std::optional<Box> core_box;
    std::size_t axis = 0;
    Rational gap_lo, gap_hi;
    std::size_t underlying = 0;

    bool contains(const PointRecord& p) const {
        if (!core_box || !box_contains(*core_box, p)) return false;
        return p.coords[axis] > gap_lo && p.coords[axis] < gap_hi;
    }
};

}  // namespace

CheckReport verify_counting_inequality(const Instance& relabeled,
                                       std::span<const AxisSeq> seqs,
                                       std::span<const PointRecord> probes) {
    require_colorful_shape(relabeled);
    const std::size_t d = relabeled.dimension;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& fam = relabeled.families[i];
        if (extremal_endpoint(fam, i, EndpointSide::LeftMax).value <=
            extremal_endpoint(fam, i, EndpointSide::RightMin).value)
            throw UsageError("instance is not in relabeled split form");
    }

    std::vector<Region> regions;
    std::map<AxisSeq, std::size_t> underlying_ids;
    for (const AxisSeq& seq : seqs) {
        const ExtremalSelection sel = select_extremal(relabeled, seq);
        std::vector<Box> pinned;
        for (const BoxRef& ref : sel.pinned())
            pinned.push_back(relabeled.families[ref.family][ref.box]);
        AxisSeq key = seq;
        std::sort(key.begin(), key.end());
        auto [it, _] = underlying_ids.try_emplace(key, underlying_ids.size());
        regions.push_back({box_chain_intersect(pinned), sel.axis_free,
                           sel.target_min_right, sel.target_max_left, it->second});
    }

    std::vector<std::optional<Box>> whole;  // intersection per non-split family
    for (std::size_t f = d; f < relabeled.families.size(); ++f)
        whole.push_back(box_chain_intersect(relabeled.families[f]));

    CheckReport report;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const PointRecord& p = probes[pi];
        std::size_t lhs = 0;
        std::set<std::size_t> sets_hit;
        for (std::size_t ri = 0; ri < regions.size(); ++ri) {
            ++report.tuples_examined;
            if (!regions[ri].contains(p)) continue;
            ++lhs;
            sets_hit.insert(regions[ri].underlying);
            if (sets_hit.size() > 1) {
                report.verdict = CheckReport::Verdict::Fails;
                report.note = "regions of two underlying sets share probe " +
                              std::to_string(pi);
                return report;
            }
        }
        std::size_t rhs = 0;
        for (const auto& box : whole)
            if (box && box_contains(*box, p)) ++rhs;
        if (lhs > rhs) {
            report.verdict = CheckReport::Verdict::Fails;
            report.note = "counting inequality fails at probe " + std::to_string(pi) +
                          " (lhs " + std::to_string(lhs) + " > rhs " +
                          std::to_string(rhs) + ")";
            return report;
        }
    }
    report.verdict = CheckReport::Verdict::Holds;
    return report;
}

std::uint64_t colorful_bound(std::size_t d, std::uint64_t n) {
    check_dimension(d);
    if (n == 0) throw UsageError("n must be at least 1");
    const std::uint64_t denom = d * (std::uint64_t{1} << (d - 1));
    return 2 * n + (n - 1) / denom;
}

namespace {

std::vector<BoxRef> remap_transversal(const std::vector<BoxRef>& refs,
                                      const Relabeling& rel) {
    std::vector<BoxRef> out;
    for (const BoxRef& r : refs) out.push_back({rel.original_family(r.family), r.box});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

WitnessCertificate witness_colorful(const Instance& instance, std::uint64_t n) {
    require_colorful_shape(instance);
    if (n == 0) throw UsageError("n must be at least 1");
    const std::size_t d = instance.dimension;
    const CopyIndex idx = make_copy_index(instance);

    // rich core: a whole family already shares n copies
    for (std::size_t f = 0; f < instance.families.size(); ++f) {
        const std::optional<Box> core = box_chain_intersect(instance.families[f]);
        if (!core) continue;
        std::vector<std::size_t> inside;
        for (std::size_t p = 0; p < instance.points.size(); ++p) {
            if (!box_contains(*core, instance.points[p])) continue;
            for (std::uint64_t c = 0;
                 c < instance.points[p].multiplicity && inside.size() < n; ++c)
                inside.push_back(static_cast<std::size_t>(idx.offsets[p] + c));
            if (inside.size() >= n) break;
        }
        if (inside.size() < n) continue;
        WitnessCertificate cert;
        cert.family = f;
        cert.copies = std::move(inside);
        cert.claimed_bound = n;
        cert.branch = WitnessCertificate::Branch::RichCore;
        cert.per_box_hits.assign(instance.families[f].size(), n);
        if (!certificate_valid(instance, cert, n))
            throw std::logic_error("rich-core certificate failed validation");
        return cert;
    }

    auto outcome = relabel(instance, n);
    if (auto* cert = std::get_if<WitnessCertificate>(&outcome)) {
        if (!certificate_valid(instance, *cert, n))
            throw std::logic_error("early-exit certificate failed validation");
        return *cert;
    }
    const Relabeling rel = std::get<Relabeling>(outcome);
    const Instance relabeled = apply_relabeling(instance, rel);

    // averaged branch: scan the averaging subfamily for the thinnest gap slab
    const std::vector<AxisSeq> mprime = averaging_axis_seqs(d);
    std::optional<std::uint64_t> best_weight;
    const AxisSeq* best_seq = nullptr;
    for (const AxisSeq& seq : mprime) {
        const ExtremalSelection sel = select_extremal(relabeled, seq);
        std::vector<Box> pinned;
        for (const BoxRef& ref : sel.pinned())
            pinned.push_back(relabeled.families[ref.family][ref.box]);
        const std::optional<Box> core_box = box_chain_intersect(pinned);
        std::uint64_t weight = 0;
        if (core_box) {
            for (const PointRecord& p : relabeled.points) {
                if (!box_contains(*core_box, p)) continue;
                const Rational& v = p.coords[sel.axis_free];
                if (v > sel.target_min_right && v < sel.target_max_left)
                    weight += p.multiplicity;
            }
        }
        if (!best_weight || weight < *best_weight) {
            best_weight = weight;
            best_seq = &seq;
        }
    }

    WitnessCertificate cert;
    try {
        cert = cover_along_free_axis(relabeled, *best_seq, n);
    } catch (const HypothesisViolated& e) {
        throw HypothesisViolated(e.what(), remap_transversal(e.transversal(), rel));
    }
    cert.family = rel.original_family(cert.family);
    if (cert.selection) {
        for (BoxRef& r : cert.selection->first_picks)
            r.family = rel.original_family(r.family);
        for (BoxRef& r : cert.selection->second_picks)
            r.family = rel.original_family(r.family);
        cert.selection->target_family = cert.family;
    }

    if (cert.copies.size() > colorful_bound(d, n)) {
        // only possible when the hypothesis fails; find the evidence
        auto pair_or_null = [&]() -> std::optional<std::vector<BoxRef>> {
            try {
                return hunt_disjoint_pair(instance);
            } catch (const std::logic_error&) {
                return std::nullopt;
            }
        }();
        if (pair_or_null)
            throw HypothesisViolated("certificate exceeded the theorem bound",
                                     *pair_or_null);
        const CheckReport full = check_colorful_n_intersecting(instance, n, UINT64_MAX);
        if (!full.holds())
            throw HypothesisViolated("certificate exceeded the theorem bound",
                                     full.witness);
        throw std::logic_error("bound exceeded on a hypothesis-satisfying instance");
    }
    if (!certificate_valid(instance, cert, n))
        throw std::logic_error("averaged certificate failed validation");
    return cert;
}

WitnessCertificate witness_monochromatic(std::span<const Box> family,
                                         std::span<const PointRecord> points,
                                         std::uint64_t n, std::size_t d) {
    check_dimension(d);
    if (family.empty()) throw UsageError("family must be nonempty");

    Instance inst;
    inst.dimension = d;
    inst.families.assign(2 * d - 1, std::vector<Box>(family.begin(), family.end()));
    inst.points.assign(points.begin(), points.end());

    auto dedupe = [](const std::vector<BoxRef>& refs) {
        std::set<std::size_t> boxes;
        for (const BoxRef& r : refs) boxes.insert(r.box);
        std::vector<BoxRef> out;
        for (std::size_t b : boxes) out.push_back({0, b});
        return out;
    };

    WitnessCertificate cert;
    try {
        cert = witness_colorful(inst, n);
    } catch (const HypothesisViolated& e) {
        throw HypothesisViolated(e.what(), dedupe(e.transversal()));
    } catch (const StructureViolated& e) {
        throw HypothesisViolated(e.what(), dedupe(e.transversal()));
    }

    if (cert.branch == WitnessCertificate::Branch::Averaged)
        throw std::logic_error("monochromatic witness reached the averaged branch");
    if (cert.copies.size() > 2 * n)
        throw std::logic_error("monochromatic certificate exceeds 2n");
    cert.family = 0;
    if (cert.selection) {
        for (BoxRef& r : cert.selection->first_picks) r.family = 0;
        for (BoxRef& r : cert.selection->second_picks) r.family = 0;
        cert.selection->target_family = 0;
    }
    return cert;
}

bool certificate_valid(const Instance& instance, const WitnessCertificate& cert,
                       std::uint64_t n) {
    if (cert.family >= instance.families.size()) return false;
    const CoverProblem problem =
        make_cover_problem(instance, cert.family, n, CapMode::Multitransversal);
    return verify_cover(problem, cert.copies);
}

}  // namespace boxhelly
