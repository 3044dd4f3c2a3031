#include "boxhelly/copyset.hpp"

#include <bit>

#include "boxhelly/errors.hpp"

namespace boxhelly {

std::size_t CopySet::count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
}

bool CopySet::any() const {
    for (std::uint64_t w : words_)
        if (w) return true;
    return false;
}

bool CopySet::intersects(const CopySet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

CopySet& CopySet::operator&=(const CopySet& other) {
    if (bits_ != other.bits_) throw UsageError("CopySet size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

std::vector<std::size_t> CopySet::to_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            out.push_back(w * 64 + bit);
            word &= word - 1;
        }
    }
    return out;
}

}  // namespace boxhelly
