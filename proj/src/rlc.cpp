#include "tgrand/rlc.hpp"

#include <algorithm>
#include <stdexcept>

#include "tgrand/rng.hpp"

namespace tgrand {

Codebook build_codebook(const CodeSpec& spec) {
    if (spec.K == 0 || spec.K > spec.N || spec.B == 0)
        throw std::invalid_argument("build_codebook: need 1 <= K <= N and B >= 1");

    BitMatrix g = BitMatrix(spec.N, spec.K);
    for (std::size_t i = 0; i < spec.K; ++i) g.set(i, i, true);

    if (spec.N == spec.K) return Codebook{spec, std::move(g), std::nullopt, std::nullopt};

    RngStream rng = make_stream(spec.seed, 0, StreamRole::codebook);
    BitMatrix p = random_matrix(spec.N - spec.K, spec.K, rng);
    for (std::size_t i = 0; i < spec.N - spec.K; ++i)
        std::copy_n(p.row_words(i), p.words_per_row(), g.row_words(spec.K + i));

    // H = [P | I]^T, i.e. rows 0..K-1 of H hold P^T and the rest an identity.
    BitMatrix h(spec.N, spec.N - spec.K);
    for (std::size_t i = 0; i < spec.N - spec.K; ++i)
        for (std::size_t j = 0; j < spec.K; ++j)
            if (p.get(i, j)) h.set(j, i, true);
    for (std::size_t i = 0; i < spec.N - spec.K; ++i) h.set(spec.K + i, i, true);

    return Codebook{spec, std::move(g), std::move(p), std::move(h)};
}

BitMatrix encode(const Codebook& book, const BitMatrix& u) {
    if (u.rows() != book.spec.K || u.cols() != book.spec.B)
        throw std::invalid_argument("encode: U must be K x B");
    return matmul(book.G, u);
}

std::pair<RowIndexSet, RowIndexSet> classify(const BitMatrix& x_true, const BitMatrix& y) {
    if (x_true.rows() != y.rows() || x_true.cols() != y.cols())
        throw std::invalid_argument("classify: dimension mismatch");
    std::vector<std::size_t> good;
    std::vector<std::size_t> bad;
    for (std::size_t r = 0; r < y.rows(); ++r) {
        bool equal = true;
        for (std::size_t w = 0; w < y.words_per_row(); ++w) {
            if (x_true.row_words(r)[w] != y.row_words(r)[w]) {
                equal = false;
                break;
            }
        }
        (equal ? good : bad).push_back(r);
    }
    return {RowIndexSet(std::move(good)), RowIndexSet(std::move(bad))};
}

Reception make_reception(const Codebook& book, const BitMatrix& u, const BitMatrix& e) {
    BitMatrix x = encode(book, u);
    if (e.rows() != x.rows() || e.cols() != x.cols())
        throw std::invalid_argument("make_reception: E must be N x B");
    BitMatrix y = x ^ e;
    auto [good, bad] = classify(x, y);
    return Reception{std::move(y), std::move(good), std::move(bad), e};
}

BitMatrix syndrome(const Codebook& book, const BitMatrix& y) {
    if (!book.H.has_value())
        throw std::invalid_argument("syndrome: code has no parity rows (N == K)");
    if (y.rows() != book.spec.N || y.cols() != book.spec.B)
        throw std::invalid_argument("syndrome: Y must be N x B");
    return matmul(book.H->transposed(), y);
}

std::optional<BitMatrix> rlc_decode(const Codebook& book, const Reception& reception) {
    if (reception.good.size() < book.spec.K) return std::nullopt;
    const BitMatrix g_r = select_rows(book.G, reception.good);
    const BitMatrix y_r = select_rows(reception.Y, reception.good);
    return solve(g_r, y_r);
}

}  // namespace tgrand
