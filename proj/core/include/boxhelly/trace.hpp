#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxhelly/copyset.hpp"
#include "boxhelly/instance.hpp"

namespace boxhelly {

/// Point copies captured by one box.
struct TraceSet {
    std::size_t family = 0;
    std::size_t box = 0;
    CopySet hits;
};

/// Outcome of a hypothesis check. A failing report carries a witness that can
/// be re-checked independently; checks never sample, so verdicts are
/// deterministic (first violation in lexicographic order).
struct CheckReport {
    enum class Verdict { Holds, Fails, BudgetExceeded };

    Verdict verdict = Verdict::Holds;
    std::vector<BoxRef> witness;
    std::uint64_t tuples_examined = 0;
    std::string note;

    bool holds() const { return verdict == Verdict::Holds; }
};

inline constexpr std::uint64_t kDefaultCheckBudget = 10'000'000;

/// One TraceSet per box, family-major order.
std::vector<TraceSet> trace(const Instance& instance);

/// Lexicographic stream over transversals (one box index per family).
class TransversalStream {
  public:
    explicit TransversalStream(const Instance& instance);

    /// Next tuple of box indices, or nullopt when exhausted.
    std::optional<std::vector<std::size_t>> next();

  private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> current_;
    bool done_ = false;
    bool started_ = false;
};

/// Number of transversals, saturating at uint64 max.
std::uint64_t transversal_count(const Instance& instance);

/// Holds iff every transversal trace has at least n copies (multiplicity
/// counted). Budget bounds the number of transversals examined a priori.
CheckReport check_colorful_n_intersecting(const Instance& instance,
                                          std::uint64_t n,
                                          std::uint64_t budget = kDefaultCheckBudget);

enum class SubsetMode { Exact, AtMost };

/// Holds iff every k-subset of the family (every subset of size <= k in
/// AtMost mode) has a trace intersection of at least n copies. When the
/// family has fewer than k members, subsets of size min(k, |family|) are
/// used.
CheckReport check_subfamily_n_intersecting(std::span<const TraceSet> family,
                                           std::size_t k, std::uint64_t n,
                                           std::uint64_t budget = kDefaultCheckBudget,
                                           SubsetMode mode = SubsetMode::Exact);

/// Holds iff every p-subset of the traces contains an intersecting q-subset.
/// An empty trace fails the check outright (and is flagged in the note),
/// matching the theorems' "does not contain the empty set" requirement.
CheckReport check_pq_property(std::span<const TraceSet> family, std::size_t p,
                              std::size_t q,
                              std::uint64_t budget = kDefaultCheckBudget);

}  // namespace boxhelly
