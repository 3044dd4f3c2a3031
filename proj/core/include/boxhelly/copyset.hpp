#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace boxhelly {

/// Fixed-size bitset over point-copy ids.
class CopySet {
  public:
    CopySet() = default;
    explicit CopySet(std::size_t bits)
        : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    std::size_t count() const;
    bool any() const;
    bool intersects(const CopySet& other) const;

    CopySet& operator&=(const CopySet& other);

    friend CopySet operator&(CopySet a, const CopySet& b) {
        a &= b;
        return a;
    }

    /// Ascending list of set bits.
    std::vector<std::size_t> to_indices() const;

    friend bool operator==(const CopySet&, const CopySet&) = default;

  private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace boxhelly
