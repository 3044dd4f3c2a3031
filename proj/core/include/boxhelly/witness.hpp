#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "boxhelly/instance.hpp"
#include "boxhelly/trace.hpp"

namespace boxhelly {

enum class Direction { Left, Right };

struct AxisStep {
    std::size_t axis = 0;
    Direction dir = Direction::Left;

    friend bool operator==(const AxisStep&, const AxisStep&) = default;
    friend auto operator<=>(const AxisStep&, const AxisStep&) = default;
};

/// Sequence of d-1 distinct axes with directions; the omitted axis drives the
/// final one-dimensional covering step.
using AxisSeq = std::vector<AxisStep>;

/// All d! * 2^(d-1) axis sequences, lexicographically ordered. Requires d >= 2.
std::vector<AxisSeq> all_axis_seqs(std::size_t d);

/// The averaging subfamily: for each of the d * 2^(d-1) underlying
/// (axis, direction) sets, the d-1 cyclic shifts of its ascending-axis
/// ordering. Total d * (d-1) * 2^(d-1) sequences, sorted. Requires d >= 2.
std::vector<AxisSeq> averaging_axis_seqs(std::size_t d);

/// The unique axis missing from the sequence.
std::size_t free_axis(const AxisSeq& seq, std::size_t d);

/// State of the two-stage extremal box selection for one axis sequence.
/// Per step s the first pick is extremal in the step direction (Left: largest
/// left endpoint, Right: smallest right endpoint over all boxes of the
/// not-yet-used families) and the second pick is extremal in the opposite
/// direction among the families left over after stage one. The leftover
/// family is the one the certificate will cover.
struct ExtremalSelection {
    AxisSeq seq;
    std::size_t axis_free = 0;
    std::vector<BoxRef> first_picks;
    std::vector<BoxRef> second_picks;
    std::size_t target_family = 0;
    Rational target_max_left;   // largest left endpoint of the target family
    Rational target_min_right;  // smallest right endpoint, both on axis_free

    /// True when the target family's projections on the free axis have no
    /// common point; the open gap is (target_min_right, target_max_left).
    bool gap_open() const { return target_min_right < target_max_left; }

    /// The 2d-2 pinned boxes (stage one then stage two, in step order).
    std::vector<BoxRef> pinned() const;
};

/// Runs the selection on an instance with exactly 2d-1 nonempty families.
/// Selection is total; endpoint ties resolve toward the smallest
/// (family, box) pair.
ExtremalSelection select_extremal(const Instance& instance, const AxisSeq& seq);

/// Certified small multitransversal for one family.
struct WitnessCertificate {
    enum class Branch { GapEmpty, RichCore, Averaged };

    std::size_t family = 0;
    std::vector<std::size_t> copies;  // the multitransversal S, ascending
    std::uint64_t claimed_bound = 0;
    std::vector<std::uint64_t> per_box_hits;
    Branch branch = Branch::GapEmpty;
    std::optional<ExtremalSelection> selection;
    std::uint64_t gap_copies = 0;  // copies strictly inside the gap slab
};

/// Builds a multitransversal for the leftover family of `seq` by projecting
/// the core (points inside all pinned boxes) onto the free axis and taking
/// the n largest core copies at or below the smallest right endpoint, the n
/// smallest at or above the largest left endpoint, and everything strictly
/// inside the gap. Size is at most 2n + (copies in the gap slab). Throws
/// HypothesisViolated, naming a transversal, when the core is too thin on
/// either side.
WitnessCertificate cover_along_free_axis(const Instance& instance,
                                         const AxisSeq& seq, std::uint64_t n);

/// Index renaming: family permutation plus an axis permutation with optional
/// per-axis reflections. to_original maps new indices to old ones.
struct Relabeling {
    std::vector<std::size_t> family_to_original;
    std::vector<std::size_t> axis_to_original;
    std::vector<bool> reflect;  // per new axis

    std::size_t original_family(std::size_t relabeled) const {
        return family_to_original[relabeled];
    }
};

Instance apply_relabeling(const Instance& instance, const Relabeling& rel);

/// Either the permutation realizing the canonical split structure (family i
/// is the unique family whose projections on axis i have empty intersection)
/// or an early-exit certificate produced when some sequence's target family
/// has intersecting projections on its free axis (bound 2n). Throws
/// StructureViolated when the split structure is inconsistent, which only
/// happens when the colorful hypothesis fails; the exception carries a
/// transversal with empty intersection.
std::variant<Relabeling, WitnessCertificate> relabel(const Instance& instance,
                                                     std::uint64_t n);

/// Re-verifies, on a relabeled instance, the counting inequality behind the
/// averaging step: for every probe point p, the number of averaging sequences
/// whose pinned-core-and-gap region contains p is at most the number of
/// non-split families whose whole intersection contains p. Also checks that
/// regions of sequences with distinct underlying sets never share a probe.
/// A failure indicates an implementation bug (or violated hypothesis) and is
/// reported with the offending probe and sequence in the note.
CheckReport verify_counting_inequality(const Instance& relabeled,
                                       std::span<const AxisSeq> seqs,
                                       std::span<const PointRecord> probes);

/// 2n + floor((n-1) / (d * 2^(d-1))).
std::uint64_t colorful_bound(std::size_t d, std::uint64_t n);

/// End-to-end witness for instances with exactly 2d-1 families, d >= 2:
/// some family receives a verified multitransversal of size at most
/// colorful_bound(d, n). Branches, in order: RichCore (n copies shared by one
/// whole family), GapEmpty (early exit, at most 2n), Averaged (best averaging
/// sequence, at most 2n + gap copies). Throws HypothesisViolated or
/// StructureViolated with a re-checkable transversal when the input fails
/// the colorful hypothesis.
WitnessCertificate witness_colorful(const Instance& instance, std::uint64_t n);

/// Monochromatic variant: binds all 2d-1 color slots to the same family;
/// the gap is always empty there, so the certificate size is at most 2n.
/// Violating transversals are reported as subfamilies (distinct boxes).
WitnessCertificate witness_monochromatic(std::span<const Box> family,
                                         std::span<const PointRecord> points,
                                         std::uint64_t n, std::size_t d);

/// True iff the certificate's copies give every box of its family at least
/// n hits under the original coordinates (checked through verify_cover).
bool certificate_valid(const Instance& instance, const WitnessCertificate& cert,
                       std::uint64_t n);

}  // namespace boxhelly
