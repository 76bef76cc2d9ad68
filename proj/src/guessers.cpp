#include "tgrand/guessers.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgrand {

namespace {

// Lexicographically next k-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + 1 <= n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

// Rows of H_bad, i.e. the columns of H_bad^T; XORing the rows selected by the
// set bits of a candidate yields its syndrome.
std::vector<BitVector> parity_rows(const BitMatrix& h_bad) {
    std::vector<BitVector> rows;
    rows.reserve(h_bad.rows());
    for (std::size_t r = 0; r < h_bad.rows(); ++r) rows.push_back(h_bad.row(r));
    return rows;
}

bool syndrome_matches(const std::vector<BitVector>& rows, const BitVector& w,
                      const BitVector& s_col) {
    BitVector acc(s_col.size());
    w.for_each_set_bit([&](std::size_t i) { acc ^= rows[i]; });
    return acc == s_col;
}

struct QueryState {
    std::uint64_t queries = 0;
    bool exhausted = false;
};

// Scans one transition group; returns the first member whose syndrome
// matches. Sets `exhausted` when the query cap is hit under `persist`.
std::optional<BitVector> scan_group(const std::vector<BitVector>& rows, const BitVector& s_col,
                                    const OriginVector& origin, GroupCoord g,
                                    const GuessBudget& budget, QueryState& state) {
    ErrVecSeq seq(origin, g.l0, g.l1);
    while (auto w = seq.next()) {
        if (state.queries >= budget.max_queries &&
            budget.on_exhaustion == GuessBudget::OnExhaustion::persist) {
            state.exhausted = true;
            return std::nullopt;
        }
        ++state.queries;
        if (syndrome_matches(rows, *w, s_col)) return w;
    }
    return std::nullopt;
}

ColumnResult tgrand_column_core(const std::vector<BitVector>& rows, const BitVector& s_col,
                                const OriginVector& origin, const ChannelParams& params,
                                OrderingMode mode, const GuessBudget& budget) {
    budget.validate();
    ColumnResult result;
    QueryState state;

    if (mode == OrderingMode::sort) {
        OrderedGroups ordered = calc_prob_and_sort(params.p01, params.p10, origin.L0(),
                                                   origin.L1());
        result.ordering_ops = ordered.ops;
        for (const GroupCoord& g : ordered.coords) {
            if (auto w = scan_group(rows, s_col, origin, g, budget, state)) {
                result.estimate = std::move(*w);
                result.resolved = true;
                break;
            }
            if (state.exhausted) break;
        }
    } else {
        GroupTracer tracer(params.p01, params.p10, origin.L0(), origin.L1());
        const bool persist = budget.on_exhaustion == GuessBudget::OnExhaustion::persist;
        while (auto g = tracer.next()) {
            if (auto w = scan_group(rows, s_col, origin, *g, budget, state)) {
                result.estimate = std::move(*w);
                result.resolved = true;
                break;
            }
            if (state.exhausted) break;
            if (persist && tracer.emitted() >= budget.l_th) break;
        }
        result.ordering_ops = tracer.ops();
    }

    result.queries = state.queries;
    if (!result.resolved) result.estimate = origin.bits;
    return result;
}

ColumnResult sd_column_core(const std::vector<BitVector>& rows, const BitVector& s_col,
                            std::size_t length, const GuessBudget& budget) {
    budget.validate();
    ColumnResult result;
    QueryState state;

    for (std::size_t weight = 0; weight <= length && !result.resolved && !state.exhausted;
         ++weight) {
        std::vector<std::size_t> comb = first_combination(weight);
        do {
            if (state.queries >= budget.max_queries &&
                budget.on_exhaustion == GuessBudget::OnExhaustion::persist) {
                state.exhausted = true;
                break;
            }
            ++state.queries;
            BitVector w(length);
            for (std::size_t i : comb) w.set(i, true);
            if (syndrome_matches(rows, w, s_col)) {
                result.estimate = std::move(w);
                result.resolved = true;
                break;
            }
        } while (next_combination(comb, length));
    }

    result.queries = state.queries;
    if (!result.resolved) result.estimate = BitVector(length);
    return result;
}

void check_matrix_inputs(const BitMatrix& h_bad, const BitMatrix& s) {
    if (s.rows() != h_bad.cols())
        throw std::invalid_argument("guesser: S must have N-K rows matching H_bad columns");
}

}  // namespace

OriginVector::OriginVector(BitVector b) : bits(std::move(b)) {
    for (std::size_t i = 0; i < bits.size(); ++i)
        (bits.get(i) ? positions1 : positions0).push_back(i);
}

void GuessBudget::validate() const {
    if (l_th == 0) throw std::invalid_argument("GuessBudget: l_th must be >= 1");
    if (max_queries == 0) throw std::invalid_argument("GuessBudget: max_queries must be >= 1");
}

ErrVecSeq::ErrVecSeq(const OriginVector& origin, int l0, int l1) : origin_(origin) {
    if (l0 < 0 || l0 > origin.L0() || l1 < 0 || l1 > origin.L1())
        throw std::invalid_argument("ErrVecSeq: flip counts out of range");
    comb0_ = first_combination(static_cast<std::size_t>(l0));
    comb1_ = first_combination(static_cast<std::size_t>(l1));
}

std::optional<BitVector> ErrVecSeq::next() {
    if (done_) return std::nullopt;
    BitVector w = origin_.bits;
    for (std::size_t i : comb0_) w.flip(origin_.positions0[i]);
    for (std::size_t i : comb1_) w.flip(origin_.positions1[i]);
    done_ = !advance();
    return w;
}

bool ErrVecSeq::advance() {
    if (next_combination(comb1_, origin_.positions1.size())) return true;
    comb1_ = first_combination(comb1_.size());
    return next_combination(comb0_, origin_.positions0.size());
}

ColumnResult tgrand_column(const BitMatrix& h_bad_t, const BitVector& s_col,
                           const OriginVector& origin, const ChannelParams& params,
                           OrderingMode mode, const GuessBudget& budget) {
    if (s_col.size() != h_bad_t.rows())
        throw std::invalid_argument("tgrand_column: syndrome length mismatch");
    if (origin.bits.size() != h_bad_t.cols())
        throw std::invalid_argument("tgrand_column: origin length mismatch");
    return tgrand_column_core(parity_rows(h_bad_t.transposed()), s_col, origin, params, mode,
                              budget);
}

RepairOutcome tgrand_matrix(const BitMatrix& h_bad, const BitMatrix& s,
                            const ChannelParams& params, OrderingMode mode,
                            const GuessBudget& budget) {
    check_matrix_inputs(h_bad, s);
    const std::size_t length = h_bad.rows();
    const std::vector<BitVector> rows = parity_rows(h_bad);

    RepairOutcome outcome{BitMatrix(length, s.cols()), {}, 0, 0, {}};
    OriginVector origin{BitVector(length)};
    for (std::size_t b = 0; b < s.cols(); ++b) {
        ColumnResult col = tgrand_column_core(rows, s.column(b), origin, params, mode, budget);
        outcome.queries_total += col.queries;
        outcome.ordering_ops += col.ordering_ops;
        if (!col.resolved) ++outcome.columns_exhausted;
        for (std::size_t i = 0; i < length; ++i)
            if (col.estimate.get(i)) outcome.e_hat.set(i, b, true);
        // A persisted column equals its origin, so the chain carries on
        // from the estimate in every case.
        origin = OriginVector(std::move(col.estimate));
    }
    return outcome;
}

ColumnResult sd_column(const BitMatrix& h_bad_t, const BitVector& s_col,
                       const GuessBudget& budget) {
    if (s_col.size() != h_bad_t.rows())
        throw std::invalid_argument("sd_column: syndrome length mismatch");
    return sd_column_core(parity_rows(h_bad_t.transposed()), s_col, h_bad_t.cols(), budget);
}

RepairOutcome sd_matrix(const BitMatrix& h_bad, const BitMatrix& s, const GuessBudget& budget) {
    check_matrix_inputs(h_bad, s);
    const std::size_t length = h_bad.rows();
    const std::vector<BitVector> rows = parity_rows(h_bad);

    RepairOutcome outcome{BitMatrix(length, s.cols()), {}, 0, 0, {}};
    for (std::size_t b = 0; b < s.cols(); ++b) {
        ColumnResult col = sd_column_core(rows, s.column(b), length, budget);
        outcome.queries_total += col.queries;
        if (!col.resolved) ++outcome.columns_exhausted;
        for (std::size_t i = 0; i < length; ++i)
            if (col.estimate.get(i)) outcome.e_hat.set(i, b, true);
    }
    return outcome;
}

RedecodeResult repair_and_redecode(const Codebook& book, const Reception& reception,
                                   const BitMatrix& e_hat) {
    if (e_hat.rows() != reception.bad.size() || e_hat.cols() != reception.Y.cols())
        throw std::invalid_argument("repair_and_redecode: estimate must be |bad| x B");

    // A repaired row passes the oracle iff its estimated error row matches
    // the true one; the reconstructed packet then equals the transmitted one.
    std::vector<std::size_t> verified;
    for (std::size_t j = 0; j < reception.bad.size(); ++j) {
        const std::size_t packet = reception.bad.indices()[j];
        if (e_hat.row(j) == reception.E_true.row(packet)) verified.push_back(packet);
    }
    RedecodeResult result;
    result.migrated = RowIndexSet(std::move(verified));
    result.nu = result.migrated.size();

    const RowIndexSet enlarged = reception.good.united_with(result.migrated);
    if (enlarged.size() < book.spec.K) return result;

    BitMatrix y_repaired = reception.Y;
    for (std::size_t j = 0; j < reception.bad.size(); ++j) {
        const std::size_t packet = reception.bad.indices()[j];
        if (!result.migrated.contains(packet)) continue;
        for (std::size_t c = 0; c < y_repaired.cols(); ++c)
            if (e_hat.get(j, c)) y_repaired.set(packet, c, !y_repaired.get(packet, c));
    }
    result.decoded = solve(select_rows(book.G, enlarged), select_rows(y_repaired, enlarged));
    return result;
}

}  // namespace tgrand
