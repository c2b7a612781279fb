#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pathquery {

/// Dense square boolean matrix stored as 64-bit row blocks.
class BitMatrix {
  public:
    BitMatrix() = default;
    explicit BitMatrix(int n)
        : n_(n), words_(static_cast<std::size_t>((n + 63) / 64)),
          bits_(static_cast<std::size_t>(n) * words_, 0) {}

    int size() const { return n_; }

    bool get(int r, int c) const {
        return (bits_[row(r) + static_cast<std::size_t>(c) / 64] >> (c % 64)) & 1u;
    }

    void set(int r, int c) {
        bits_[row(r) + static_cast<std::size_t>(c) / 64] |= std::uint64_t{1} << (c % 64);
    }

    /// rows[dst] |= rows[src]; returns true if dst changed.
    bool or_row_into(int src, int dst) {
        bool changed = false;
        const std::size_t s = row(src), d = row(dst);
        for (std::size_t w = 0; w < words_; ++w) {
            const std::uint64_t merged = bits_[d + w] | bits_[s + w];
            changed |= merged != bits_[d + w];
            bits_[d + w] = merged;
        }
        return changed;
    }

    std::size_t count_row(int r) const {
        std::size_t total = 0;
        for (std::size_t w = 0; w < words_; ++w)
            total += static_cast<std::size_t>(__builtin_popcountll(bits_[row(r) + w]));
        return total;
    }

    bool operator==(const BitMatrix&) const = default;

  private:
    std::size_t row(int r) const { return static_cast<std::size_t>(r) * words_; }

    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

} // namespace pathquery
