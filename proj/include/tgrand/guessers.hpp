#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tgrand/channel.hpp"
#include "tgrand/gf2.hpp"
#include "tgrand/likelihood.hpp"
#include "tgrand/rlc.hpp"

namespace tgrand {

/// Previously estimated error column: the state each of the L chains is
/// assumed to be in when the next column is guessed.
struct OriginVector {
    BitVector bits;
    std::vector<std::size_t> positions0;  // indices holding 0
    std::vector<std::size_t> positions1;  // indices holding 1

    explicit OriginVector(BitVector b);

    int L0() const { return static_cast<int>(positions0.size()); }
    int L1() const { return static_cast<int>(positions1.size()); }
};

/// Search limits for one column. `l_th` caps the transition groups the trace
/// mode examines; `max_queries` caps syndrome tests in either mode. On
/// exhaustion, `persist` stops and keeps the most likely pattern (the origin
/// for T-GRAND, the zero vector for SD) while `continue_search` ignores the
/// caps and searches the full space.
struct GuessBudget {
    enum class OnExhaustion { persist, continue_search };

    std::size_t l_th = 8;
    std::uint64_t max_queries = std::uint64_t{1} << 20;
    OnExhaustion on_exhaustion = OnExhaustion::persist;

    void validate() const;
};

enum class OrderingMode { sort, trace };

struct ColumnResult {
    BitVector estimate;
    bool resolved = false;
    std::uint64_t queries = 0;
    OpCounters ordering_ops;
};

/// Full-matrix estimation outcome. `repaired_rows` is empty until the
/// estimate has been verified by repair_and_redecode.
struct RepairOutcome {
    BitMatrix e_hat;
    RowIndexSet repaired_rows;
    std::uint64_t queries_total = 0;
    std::size_t columns_exhausted = 0;
    OpCounters ordering_ops;
};

struct RedecodeResult {
    std::optional<BitMatrix> decoded;
    std::size_t nu = 0;        // rows that passed verification
    RowIndexSet migrated;      // their packet indices
};

/// All vectors reachable from the origin by flipping exactly l0 of its zeros
/// and l1 of its ones. Zero-position subsets advance in the outer loop; both
/// subset sequences run in lexicographic index order.
class ErrVecSeq {
public:
    ErrVecSeq(const OriginVector& origin, int l0, int l1);

    std::optional<BitVector> next();

private:
    const OriginVector& origin_;
    std::vector<std::size_t> comb0_;
    std::vector<std::size_t> comb1_;
    bool done_ = false;

    bool advance();
};

/// Most likely error vector consistent with one syndrome column, searched in
/// transition-group order. h_bad_t is (N-K) x L.
ColumnResult tgrand_column(const BitMatrix& h_bad_t, const BitVector& s_col,
                           const OriginVector& origin, const ChannelParams& params,
                           OrderingMode mode, const GuessBudget& budget);

/// Column-by-column estimate of the L x B error matrix; each resolved column
/// becomes the origin of the next. h_bad is L x (N-K), s is (N-K) x B.
RepairOutcome tgrand_matrix(const BitMatrix& h_bad, const BitMatrix& s,
                            const ChannelParams& params, OrderingMode mode,
                            const GuessBudget& budget);

/// Sparsest error vector consistent with one syndrome column (weight order,
/// lexicographic within a weight).
ColumnResult sd_column(const BitMatrix& h_bad_t, const BitVector& s_col,
                       const GuessBudget& budget);

/// B independent minimum-weight column searches.
RepairOutcome sd_matrix(const BitMatrix& h_bad, const BitMatrix& s, const GuessBudget& budget);

/// Applies the estimate to the erroneous rows, migrates rows that verify
/// against the ground truth, and reattempts decoding on the enlarged system.
RedecodeResult repair_and_redecode(const Codebook& book, const Reception& reception,
                                   const BitMatrix& e_hat);

}  // namespace tgrand
