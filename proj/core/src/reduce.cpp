#include "boxhelly/reduce.hpp"

#include <algorithm>

#include "boxhelly/cover.hpp"
#include "boxhelly/trace.hpp"

namespace boxhelly {

namespace {

// Extremal box over all boxes of the listed families on one axis; ties toward
// the smallest (family, box). Families are original indices into `instance`.
BoxRef pick_over(const Instance& instance, const std::vector<std::size_t>& families,
                 std::size_t skip_family, std::size_t axis, bool left_max) {
    bool have = false;
    BoxRef best;
    for (std::size_t f : families) {
        if (f == skip_family) continue;
        for (std::size_t b = 0; b < instance.families[f].size(); ++b) {
            const Interval& cur = instance.families[f][b].sides[axis];
            if (!have) {
                have = true;
                best = {f, b};
                continue;
            }
            const Interval& win = instance.families[best.family][best.box].sides[axis];
            if (left_max ? cur.lo > win.lo : cur.hi < win.hi) best = {f, b};
        }
    }
    if (!have) throw UsageError("not enough families to clamp");
    return best;
}

Box drop_axis(const Box& box, std::size_t axis) {
    Box out;
    for (std::size_t a = 0; a < box.arity(); ++a)
        if (a != axis) out.sides.push_back(box.sides[a]);
    return out;
}

}  // namespace

std::pair<Instance, Reduction> reduce(const Instance& instance, std::uint64_t n,
                                      std::size_t t) {
    instance.validate();
    if (n == 0) throw UsageError("n must be at least 1");
    const std::size_t s = instance.families.size();
    const std::size_t d = instance.dimension;
    if (t > 0 && (d < t + 1 || s < 2 * t + 1))
        throw UsageError("need d - t >= 1 and s - 2t >= 1");

    Reduction info;
    info.selection_rule = "per-axis greedy, direction L (largest left then "
                          "smallest right endpoint)";
    info.point_backmap.resize(instance.points.size());
    for (std::size_t p = 0; p < instance.points.size(); ++p) info.point_backmap[p] = p;

    Instance current = instance;
    std::vector<std::size_t> alive;  // original family index per current slot
    for (std::size_t f = 0; f < s; ++f) alive.push_back(f);

    for (std::size_t step = 0; step < t; ++step) {
        // current axis 0 is original axis `step`
        std::vector<std::size_t> slots(current.families.size());
        for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;

        const BoxRef left = pick_over(current, slots, SIZE_MAX, 0, true);
        const BoxRef right = pick_over(current, slots, left.family, 0, false);

        const Box& lbox = current.families[left.family][left.box];
        const Box& rbox = current.families[right.family][right.box];
        const std::optional<Box> clamp = box_chain_intersect(
            std::vector<Box>{lbox, rbox});
        if (!clamp) {
            std::vector<BoxRef> witness;
            for (std::size_t f = 0; f < s; ++f) witness.push_back({f, 0});
            witness[alive[left.family]] = {alive[left.family], left.box};
            witness[alive[right.family]] = {alive[right.family], right.box};
            throw HypothesisViolated("clamp boxes are disjoint", witness);
        }
        info.clamps.push_back(
            {step, {alive[left.family], left.box}, {alive[right.family], right.box}});

        Instance next;
        next.dimension = current.dimension - 1;
        for (std::size_t f = 0; f < current.families.size(); ++f) {
            if (f == left.family || f == right.family) continue;
            std::vector<Box> fam;
            for (const Box& b : current.families[f]) fam.push_back(drop_axis(b, 0));
            next.families.push_back(std::move(fam));
        }
        std::vector<std::size_t> next_alive;
        for (std::size_t f = 0; f < current.families.size(); ++f)
            if (f != left.family && f != right.family) next_alive.push_back(alive[f]);

        std::vector<std::size_t> next_backmap;
        for (std::size_t p = 0; p < current.points.size(); ++p) {
            if (!box_contains(*clamp, current.points[p])) continue;
            PointRecord np;
            np.multiplicity = current.points[p].multiplicity;
            for (std::size_t a = 1; a < current.dimension; ++a)
                np.coords.push_back(current.points[p].coords[a]);
            next.points.push_back(std::move(np));
            next_backmap.push_back(info.point_backmap[p]);
        }
        current = std::move(next);
        alive = std::move(next_alive);
        info.point_backmap = std::move(next_backmap);
    }
    info.surviving_families = alive;

    if (t > 0) {
        const CheckReport check = check_colorful_n_intersecting(current, n);
        if (check.verdict == CheckReport::Verdict::Fails) {
            std::vector<BoxRef> witness;
            for (std::size_t f = 0; f < s; ++f) witness.push_back({f, 0});
            for (const AxisClamp& clamp : info.clamps) {
                witness[clamp.left_pick.family] = clamp.left_pick;
                witness[clamp.right_pick.family] = clamp.right_pick;
            }
            for (const BoxRef& r : check.witness)
                witness[alive[r.family]] = {alive[r.family], r.box};
            throw HypothesisViolated("reduced instance lost the hypothesis", witness);
        }
    }
    return {std::move(current), std::move(info)};
}

ReducePierceReport reduce_and_compare(std::span<const Box> family,
                                      std::span<const PointRecord> points,
                                      std::size_t d, std::size_t k) {
    if (k == 0) throw UsageError("k must be at least 1");
    if (2 * d < k + 2) throw UsageError("need 2d - k >= 2");
    const std::size_t s = 2 * d - k;
    const std::size_t t = (s - 2) / 2;

    Instance inst;
    inst.dimension = d;
    inst.families.assign(s, std::vector<Box>(family.begin(), family.end()));
    inst.points.assign(points.begin(), points.end());
    inst.validate();

    ReducePierceReport report;
    report.s = s;
    report.t = t;
    report.reduced_dimension = d - t;
    report.bound_symbol =
        k % 2 == 1 ? "N(3,3," + std::to_string(1 + (k + 1) / 2) + ")"
                   : "N(2,2," + std::to_string(1 + k / 2) + ")";

    auto [reduced, info] = reduce(inst, 1, t);

    auto empty_trace_box = [](const Instance& in) -> std::size_t {
        for (std::size_t b = 0; b < in.families[0].size(); ++b) {
            bool hit = false;
            for (const PointRecord& p : in.points)
                if (box_contains(in.families[0][b], p)) hit = true;
            if (!hit) return b;
        }
        return 0;
    };

    const SolveResult original = solve_exact(make_cover_problem(inst, 0, 1));
    if (!original.feasible())
        throw HypothesisViolated("a box traces the empty set",
                                 {{0, empty_trace_box(inst)}});
    const SolveResult smaller = solve_exact(make_cover_problem(reduced, 0, 1));
    if (!smaller.feasible())
        throw HypothesisViolated(
            "a reduced box traces the empty set",
            {{info.surviving_families.front(), empty_trace_box(reduced)}});

    report.tau_original = *original.optimum;
    report.tau_reduced = *smaller.optimum;
    report.inequality_ok = report.tau_original <= report.tau_reduced;
    report.reduced_instance = std::move(reduced);
    report.reduction = std::move(info);
    return report;
}

}  // namespace boxhelly
