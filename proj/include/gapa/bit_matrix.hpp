#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace gapa {

// Dense square boolean matrix backed by 64-bit words, row-major.
// Used both as an adjacency matrix and as the reachability closure.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n) : n_(n), words_per_row_((n + 63) / 64), data_(static_cast<std::size_t>(n) * words_per_row_, 0) {}

    int size() const { return n_; }
    int words_per_row() const { return words_per_row_; }

    bool get(int r, int c) const {
        return (data_[row_offset(r) + static_cast<std::size_t>(c >> 6)] >> (c & 63)) & 1u;
    }
    void set(int r, int c) {
        data_[row_offset(r) + static_cast<std::size_t>(c >> 6)] |= std::uint64_t{1} << (c & 63);
    }
    void clear(int r, int c) {
        data_[row_offset(r) + static_cast<std::size_t>(c >> 6)] &= ~(std::uint64_t{1} << (c & 63));
    }

    std::span<std::uint64_t> row(int r) { return {data_.data() + row_offset(r), static_cast<std::size_t>(words_per_row_)}; }
    std::span<const std::uint64_t> row(int r) const { return {data_.data() + row_offset(r), static_cast<std::size_t>(words_per_row_)}; }

    void zero_row(int r) {
        auto w = row(r);
        for (auto& x : w) x = 0;
    }
    void zero_column(int c) {
        const std::size_t word = static_cast<std::size_t>(c >> 6);
        const std::uint64_t mask = ~(std::uint64_t{1} << (c & 63));
        for (int r = 0; r < n_; ++r) data_[row_offset(r) + word] &= mask;
    }

    // dst |= src, both rows of this matrix or external spans.
    static void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
    }

    int row_popcount(int r) const {
        int total = 0;
        for (std::uint64_t w : row(r)) total += std::popcount(w);
        return total;
    }

    std::int64_t popcount() const {
        std::int64_t total = 0;
        for (std::uint64_t w : data_) total += std::popcount(w);
        return total;
    }

    int degree(int r) const { return row_popcount(r); }

    // Calls fn(column) for every set bit in row r, ascending.
    template <typename Fn>
    void for_each_in_row(int r, Fn&& fn) const {
        auto w = row(r);
        for (std::size_t wi = 0; wi < w.size(); ++wi) {
            std::uint64_t bits = w[wi];
            while (bits) {
                const int b = std::countr_zero(bits);
                fn(static_cast<int>(wi * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const BitMatrix& other) const {
        return n_ == other.n_ && data_ == other.data_;
    }

    bool is_symmetric() const {
        for (int r = 0; r < n_; ++r)
            for (int c = r + 1; c < n_; ++c)
                if (get(r, c) != get(c, r)) return false;
        return true;
    }

    bool diagonal_is_zero() const {
        for (int r = 0; r < n_; ++r)
            if (get(r, r)) return false;
        return true;
    }

private:
    std::size_t row_offset(int r) const { return static_cast<std::size_t>(r) * words_per_row_; }

    int n_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> data_;
};

}  // namespace gapa
