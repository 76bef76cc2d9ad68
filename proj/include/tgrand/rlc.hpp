#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "tgrand/gf2.hpp"

namespace tgrand {

/// Code dimensions plus the seed that generates the random part of the code.
struct CodeSpec {
    std::size_t K;       // source packets
    std::size_t N;       // transmitted packets, N >= K
    std::size_t B;       // packet length in bits
    std::uint64_t seed;  // shared out-of-band between encoder and decoder
};

/// Systematic code: G = [I_K ; P] stacked, H = [P | I_{N-K}]^T, so that
/// H^T G = 0. P and H are absent when N == K.
struct Codebook {
    CodeSpec spec;
    BitMatrix G;                // N x K
    std::optional<BitMatrix> P; // (N-K) x K
    std::optional<BitMatrix> H; // N x (N-K)
};

/// One received transmission plus the simulator-side ground truth.
struct Reception {
    BitMatrix Y;       // N x B received packets
    RowIndexSet good;  // rows received without error
    RowIndexSet bad;   // rows corrupted by errors
    BitMatrix E_true;  // N x B ground-truth error matrix
};

Codebook build_codebook(const CodeSpec& spec);

/// X = G U; the first K rows equal U.
BitMatrix encode(const Codebook& book, const BitMatrix& u);

/// Idealized CRC: row i is good iff it matches the transmitted row exactly.
std::pair<RowIndexSet, RowIndexSet> classify(const BitMatrix& x_true, const BitMatrix& y);

Reception make_reception(const Codebook& book, const BitMatrix& u, const BitMatrix& e);

/// S = H^T Y, which equals H^T E. Requires N > K.
BitMatrix syndrome(const Codebook& book, const BitMatrix& y);

/// Recovers U from the error-free rows when rank(G_R) = K; nullopt otherwise.
std::optional<BitMatrix> rlc_decode(const Codebook& book, const Reception& reception);

}  // namespace tgrand
