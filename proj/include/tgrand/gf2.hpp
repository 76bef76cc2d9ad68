#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgrand/rng.hpp"

namespace tgrand {

/// Packed binary vector. Bits beyond size() in the last word are kept zero,
/// so word-wise equality and XOR are exact.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector random(std::size_t size, RngStream& rng);
    static BitVector from_string(std::string_view bits);  // e.g. "01011"

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool is_zero() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector&) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    template <typename F>
    void for_each_set_bit(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                const int bit = __builtin_ctzll(word);
                f(w * 64 + static_cast<std::size_t>(bit));
                word &= word - 1;
            }
        }
    }

    std::string to_string() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Strictly increasing set of row indices into a BitMatrix.
class RowIndexSet {
public:
    RowIndexSet() = default;
    explicit RowIndexSet(std::vector<std::size_t> indices);

    static RowIndexSet complement_of(const RowIndexSet& s, std::size_t row_count);

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    const std::vector<std::size_t>& indices() const { return indices_; }
    bool contains(std::size_t i) const;

    RowIndexSet united_with(const RowIndexSet& other) const;

    bool operator==(const RowIndexSet&) const = default;

private:
    std::vector<std::size_t> indices_;
};

/// Dense matrix over GF(2), row-major with 64-bit packed rows. Padding bits
/// beyond cols() in each row stay zero.
class BitMatrix {
public:
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v)
            data_[r * wpr_ + (c >> 6)] |= mask;
        else
            data_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    std::uint64_t* row_words(std::size_t r) { return data_.data() + r * wpr_; }
    const std::uint64_t* row_words(std::size_t r) const { return data_.data() + r * wpr_; }

    BitVector row(std::size_t r) const;
    BitVector column(std::size_t c) const;
    void set_row(std::size_t r, const BitVector& v);

    /// rows[i] ^= rows[j]
    void xor_rows(std::size_t i, std::size_t j);

    BitMatrix transposed() const;
    bool is_zero() const;

    BitMatrix& operator^=(const BitMatrix& other);
    friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
    bool operator==(const BitMatrix&) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

/// C = A·B over GF(2). Throws std::invalid_argument on dimension mismatch.
BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);

/// Matrix-vector product A·x over GF(2).
BitVector matvec(const BitMatrix& a, const BitVector& x);

std::size_t rank(const BitMatrix& a);

/// Unique Z with A·Z = B, which exists iff rank(A) == A.cols() and the system
/// is consistent. Returns std::nullopt otherwise.
std::optional<BitMatrix> solve(const BitMatrix& a, const BitMatrix& b);

/// Lazily yields every x with A·x = b (particular solution plus null-space
/// span); empty if the system is inconsistent.
class SolutionEnumerator {
public:
    SolutionEnumerator(const BitMatrix& a, const BitVector& b);

    std::optional<BitVector> next();

    std::uint64_t solution_count() const;  // 0 if inconsistent

private:
    bool consistent_ = false;
    BitVector particular_;
    std::vector<BitVector> null_basis_;
    std::uint64_t cursor_ = 0;
};

/// i.i.d. uniform bits; identical seed gives an identical matrix.
BitMatrix random_matrix(std::size_t rows, std::size_t cols, RngStream& rng);

/// Copies of the selected rows, in index order.
BitMatrix select_rows(const BitMatrix& a, const RowIndexSet& rows);

}  // namespace tgrand
