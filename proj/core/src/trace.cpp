#include "boxhelly/trace.hpp"

#include <algorithm>

#include "boxhelly/errors.hpp"

namespace boxhelly {

std::vector<TraceSet> trace(const Instance& instance) {
    instance.validate();
    const CopyIndex idx = make_copy_index(instance);
    std::vector<TraceSet> out;
    for (std::size_t f = 0; f < instance.families.size(); ++f) {
        for (std::size_t b = 0; b < instance.families[f].size(); ++b) {
            TraceSet t{f, b, CopySet(idx.total)};
            const Box& box = instance.families[f][b];
            for (std::size_t p = 0; p < instance.points.size(); ++p) {
                if (!box_contains(box, instance.points[p])) continue;
                const std::uint64_t first = idx.offsets[p];
                for (std::uint64_t c = 0; c < instance.points[p].multiplicity; ++c)
                    t.hits.set(static_cast<std::size_t>(first + c));
            }
            out.push_back(std::move(t));
        }
    }
    return out;
}

TransversalStream::TransversalStream(const Instance& instance) {
    for (const auto& fam : instance.families) {
        if (fam.empty()) throw UsageError("transversals need nonempty families");
        sizes_.push_back(fam.size());
    }
    current_.assign(sizes_.size(), 0);
}

std::optional<std::vector<std::size_t>> TransversalStream::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        return current_;
    }
    for (std::size_t i = sizes_.size(); i-- > 0;) {
        if (++current_[i] < sizes_[i]) return current_;
        current_[i] = 0;
    }
    done_ = true;
    return std::nullopt;
}

std::uint64_t transversal_count(const Instance& instance) {
    std::uint64_t product = 1;
    for (const auto& fam : instance.families) {
        const std::uint64_t size = fam.size();
        if (size != 0 && product > UINT64_MAX / size) return UINT64_MAX;
        product *= size;
    }
    return product;
}

CheckReport check_colorful_n_intersecting(const Instance& instance, std::uint64_t n,
                                          std::uint64_t budget) {
    if (n == 0) throw UsageError("n must be at least 1");
    CheckReport report;
    if (transversal_count(instance) > budget) {
        report.verdict = CheckReport::Verdict::BudgetExceeded;
        return report;
    }
    const std::vector<TraceSet> traces = trace(instance);
    // family-major offsets into the flat trace list
    std::vector<std::size_t> offset(instance.families.size() + 1, 0);
    for (std::size_t f = 0; f < instance.families.size(); ++f)
        offset[f + 1] = offset[f] + instance.families[f].size();

    TransversalStream stream(instance);
    const std::uint64_t total = instance.total_copies();
    while (auto tuple = stream.next()) {
        ++report.tuples_examined;
        CopySet meet(static_cast<std::size_t>(total));
        bool first = true;
        for (std::size_t f = 0; f < tuple->size(); ++f) {
            const CopySet& hits = traces[offset[f] + (*tuple)[f]].hits;
            if (first) {
                meet = hits;
                first = false;
            } else {
                meet &= hits;
            }
        }
        if (meet.count() < n) {
            report.verdict = CheckReport::Verdict::Fails;
            for (std::size_t f = 0; f < tuple->size(); ++f)
                report.witness.push_back({f, (*tuple)[f]});
            return report;
        }
    }
    report.verdict = CheckReport::Verdict::Holds;
    return report;
}

namespace {

// C(n, k) saturating at uint64 max
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (result > UINT64_MAX / (n - k + i)) return UINT64_MAX;
        result = result * (n - k + i) / i;
    }
    return result;
}

// Lexicographic combinations of {0..n-1} of size k; visit returns false to stop.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        if (!visit(comb)) return;
        std::size_t i = k;
        while (i-- > 0) {
            if (comb[i] + (k - i) < n) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

CopySet meet_of(std::span<const TraceSet> family, const std::vector<std::size_t>& pick) {
    CopySet meet = family[pick[0]].hits;
    for (std::size_t i = 1; i < pick.size(); ++i) meet &= family[pick[i]].hits;
    return meet;
}

}  // namespace

CheckReport check_subfamily_n_intersecting(std::span<const TraceSet> family,
                                           std::size_t k, std::uint64_t n,
                                           std::uint64_t budget, SubsetMode mode) {
    if (k == 0 || n == 0) throw UsageError("k and n must be at least 1");
    if (family.empty()) throw UsageError("empty family");
    CheckReport report;
    const std::size_t cap = std::min(k, family.size());
    const std::size_t lo = mode == SubsetMode::AtMost ? 1 : cap;

    std::uint64_t planned = 0;
    for (std::size_t size = lo; size <= cap; ++size) {
        const std::uint64_t c = binomial(family.size(), size);
        planned = planned > UINT64_MAX - c ? UINT64_MAX : planned + c;
    }
    if (planned > budget) {
        report.verdict = CheckReport::Verdict::BudgetExceeded;
        return report;
    }

    for (std::size_t size = lo; size <= cap; ++size) {
        bool violated = false;
        for_each_combination(family.size(), size, [&](const std::vector<std::size_t>& pick) {
            ++report.tuples_examined;
            if (meet_of(family, pick).count() < n) {
                for (std::size_t i : pick)
                    report.witness.push_back({family[i].family, family[i].box});
                violated = true;
                return false;
            }
            return true;
        });
        if (violated) {
            report.verdict = CheckReport::Verdict::Fails;
            return report;
        }
    }
    report.verdict = CheckReport::Verdict::Holds;
    return report;
}

CheckReport check_pq_property(std::span<const TraceSet> family, std::size_t p,
                              std::size_t q, std::uint64_t budget) {
    if (p < q || q == 0) throw UsageError("need p >= q >= 1");
    if (family.empty()) throw UsageError("empty family");
    CheckReport report;

    for (const TraceSet& t : family) {
        if (!t.hits.any()) {
            report.verdict = CheckReport::Verdict::Fails;
            report.witness.push_back({t.family, t.box});
            report.note = "trace contains the empty set";
            return report;
        }
    }

    const std::size_t pp = std::min(p, family.size());
    const std::size_t qq = std::min(q, pp);
    if (binomial(family.size(), pp) > budget) {
        report.verdict = CheckReport::Verdict::BudgetExceeded;
        return report;
    }

    bool violated = false;
    for_each_combination(family.size(), pp, [&](const std::vector<std::size_t>& pick) {
        ++report.tuples_examined;
        bool found = false;
        for_each_combination(pp, qq, [&](const std::vector<std::size_t>& inner) {
            std::vector<std::size_t> sub(inner.size());
            for (std::size_t i = 0; i < inner.size(); ++i) sub[i] = pick[inner[i]];
            if (meet_of(family, sub).any()) {
                found = true;
                return false;
            }
            return true;
        });
        if (!found) {
            for (std::size_t i : pick)
                report.witness.push_back({family[i].family, family[i].box});
            violated = true;
            return false;
        }
        return true;
    });
    report.verdict = violated ? CheckReport::Verdict::Fails : CheckReport::Verdict::Holds;
    return report;
}

}  // namespace boxhelly
