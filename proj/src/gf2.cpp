#include "tgrand/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tgrand {

namespace {

std::uint64_t tail_mask(std::size_t bits) {
    const std::size_t rem = bits & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

BitVector BitVector::random(std::size_t size, RngStream& rng) {
    if (size == 0) throw std::invalid_argument("BitVector::random: size must be >= 1");
    BitVector v(size);
    for (auto& w : v.words_) w = rng.next_u64();
    v.words_.back() &= tail_mask(size);
    return v;
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("BitVector::from_string: expected only '0'/'1'");
        v.set(i, bits[i] == '1');
    }
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool BitVector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (size_ != other.size_) throw std::invalid_argument("BitVector xor: size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

RowIndexSet::RowIndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    for (std::size_t i = 1; i < indices_.size(); ++i)
        if (indices_[i - 1] >= indices_[i])
            throw std::invalid_argument("RowIndexSet: indices must be strictly increasing");
}

RowIndexSet RowIndexSet::complement_of(const RowIndexSet& s, std::size_t row_count) {
    std::vector<std::size_t> out;
    out.reserve(row_count - s.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < row_count; ++i) {
        if (pos < s.indices_.size() && s.indices_[pos] == i)
            ++pos;
        else
            out.push_back(i);
    }
    return RowIndexSet(std::move(out));
}

bool RowIndexSet::contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

RowIndexSet RowIndexSet::united_with(const RowIndexSet& other) const {
    std::vector<std::size_t> out;
    out.reserve(size() + other.size());
    std::merge(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
               std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return RowIndexSet(std::move(out));
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("BitMatrix: rows and cols must be >= 1");
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(row_words(r), wpr_, v.words().data());
    return v;
}

BitVector BitMatrix::column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix::set_row: size mismatch");
    std::copy_n(v.words().data(), wpr_, row_words(r));
}

void BitMatrix::xor_rows(std::size_t i, std::size_t j) {
    std::uint64_t* dst = row_words(i);
    const std::uint64_t* src = row_words(j);
    for (std::size_t w = 0; w < wpr_; ++w) dst[w] ^= src[w];
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* words = row_words(r);
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = words[w];
            while (word != 0) {
                const int bit = __builtin_ctzll(word);
                t.set(w * 64 + static_cast<std::size_t>(bit), r, true);
                word &= word - 1;
            }
        }
    }
    return t;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("BitMatrix xor: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= other.data_[i];
    return *this;
}

std::string BitMatrix::to_string() const {
    std::string s;
    s.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
        s += '\n';
    }
    return s;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: A.cols must equal B.rows");
    BitMatrix c(a.rows(), b.cols());
    // C[i] = xor of B rows selected by the set bits of A[i].
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t* out = c.row_words(i);
        const std::uint64_t* arow = a.row_words(i);
        for (std::size_t w = 0; w < a.words_per_row(); ++w) {
            std::uint64_t word = arow[w];
            while (word != 0) {
                const int bit = __builtin_ctzll(word);
                const std::uint64_t* brow = b.row_words(w * 64 + static_cast<std::size_t>(bit));
                for (std::size_t k = 0; k < b.words_per_row(); ++k) out[k] ^= brow[k];
                word &= word - 1;
            }
        }
    }
    return c;
}

BitVector matvec(const BitMatrix& a, const BitVector& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("matvec: A.cols must equal x.size");
    BitVector y(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const std::uint64_t* arow = a.row_words(r);
        std::uint64_t parity = 0;
        for (std::size_t w = 0; w < a.words_per_row(); ++w)
            parity ^= arow[w] & x.words()[w];
        y.set(r, std::popcount(parity) & 1u);
    }
    return y;
}

namespace {

// Forward elimination on a working copy; pivot = first row with the leading
// set bit in the current column. Returns pivot column list.
std::vector<std::size_t> eliminate(BitMatrix& w, BitMatrix* rhs) {
    std::vector<std::size_t> pivot_cols;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < w.cols() && pivot_row < w.rows(); ++col) {
        std::size_t sel = w.rows();
        for (std::size_t r = pivot_row; r < w.rows(); ++r) {
            if (w.get(r, col)) {
                sel = r;
                break;
            }
        }
        if (sel == w.rows()) continue;
        if (sel != pivot_row) {
            for (std::size_t k = 0; k < w.words_per_row(); ++k)
                std::swap(w.row_words(sel)[k], w.row_words(pivot_row)[k]);
            if (rhs)
                for (std::size_t k = 0; k < rhs->words_per_row(); ++k)
                    std::swap(rhs->row_words(sel)[k], rhs->row_words(pivot_row)[k]);
        }
        for (std::size_t r = 0; r < w.rows(); ++r) {
            if (r != pivot_row && w.get(r, col)) {
                w.xor_rows(r, pivot_row);
                if (rhs) rhs->xor_rows(r, pivot_row);
            }
        }
        pivot_cols.push_back(col);
        ++pivot_row;
    }
    return pivot_cols;
}

}  // namespace

std::size_t rank(const BitMatrix& a) {
    BitMatrix w = a;
    return eliminate(w, nullptr).size();
}

std::optional<BitMatrix> solve(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: A and B must have the same row count");
    BitMatrix w = a;
    BitMatrix r = b;
    const std::vector<std::size_t> pivots = eliminate(w, &r);
    if (pivots.size() < a.cols()) return std::nullopt;
    // Full column rank: pivots.size() == cols, pivot i sits in row i.
    for (std::size_t row = pivots.size(); row < a.rows(); ++row) {
        for (std::size_t k = 0; k < r.words_per_row(); ++k)
            if (r.row_words(row)[k] != 0) return std::nullopt;  // inconsistent system
    }
    BitMatrix z(a.cols(), b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) z.set_row(pivots[i], r.row(i));
    return z;
}

SolutionEnumerator::SolutionEnumerator(const BitMatrix& a, const BitVector& b) {
    if (a.rows() != b.size())
        throw std::invalid_argument("SolutionEnumerator: A.rows must equal b.size");
    BitMatrix w = a;
    BitMatrix rhs(a.rows(), 1);
    for (std::size_t r = 0; r < b.size(); ++r) rhs.set(r, 0, b.get(r));
    const std::vector<std::size_t> pivots = eliminate(w, &rhs);

    for (std::size_t row = pivots.size(); row < a.rows(); ++row) {
        if (rhs.get(row, 0)) return;  // 0 = 1: inconsistent
    }
    consistent_ = true;

    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    particular_ = BitVector(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) particular_.set(pivots[i], rhs.get(i, 0));

    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVector basis(a.cols());
        basis.set(free_col, true);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (w.get(i, free_col)) basis.set(pivots[i], true);
        null_basis_.push_back(std::move(basis));
    }
    if (null_basis_.size() > 62)
        throw std::invalid_argument("SolutionEnumerator: null space too large to enumerate");
}

std::optional<BitVector> SolutionEnumerator::next() {
    if (!consistent_) return std::nullopt;
    if (cursor_ >= (std::uint64_t{1} << null_basis_.size())) return std::nullopt;
    BitVector x = particular_;
    for (std::size_t i = 0; i < null_basis_.size(); ++i)
        if ((cursor_ >> i) & 1u) x ^= null_basis_[i];
    ++cursor_;
    return x;
}

std::uint64_t SolutionEnumerator::solution_count() const {
    return consistent_ ? (std::uint64_t{1} << null_basis_.size()) : 0;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, RngStream& rng) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("random_matrix: rows and cols must be >= 1");
    BitMatrix m(rows, cols);
    const std::uint64_t mask = (cols & 63) == 0 ? ~std::uint64_t{0}
                                                : (std::uint64_t{1} << (cols & 63)) - 1;
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t* words = m.row_words(r);
        for (std::size_t w = 0; w < m.words_per_row(); ++w) words[w] = rng.next_u64();
        words[m.words_per_row() - 1] &= mask;
    }
    return m;
}

BitMatrix select_rows(const BitMatrix& a, const RowIndexSet& rows) {
    if (rows.empty()) throw std::invalid_argument("select_rows: empty row set");
    if (rows.indices().back() >= a.rows())
        throw std::invalid_argument("select_rows: index out of range");
    BitMatrix out(rows.size(), a.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy_n(a.row_words(rows.indices()[i]), a.words_per_row(), out.row_words(i));
    return out;
}

}  // namespace tgrand
