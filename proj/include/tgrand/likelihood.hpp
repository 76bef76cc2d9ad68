#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tgrand/channel.hpp"

namespace tgrand {

/// Coordinates of one transition group: l0 zeros of the origin flip to one,
/// l1 ones flip to zero. All C(L0,l0)*C(L1,l1) such vectors are equiprobable.
struct GroupCoord {
    int l0;
    int l1;
    bool operator==(const GroupCoord&) const = default;
};

/// Tallies of floating-point work done by an ordering run. `additions`
/// follows the per-column cost model of each procedure: the sort charges
/// every table and grid entry it builds; the trace charges its axis tables
/// plus one addition per emitted pair. `frontier_insertions` counts penalty
/// evaluations actually performed by the trace, which can run ahead of the
/// emitted count because corners are evaluated when they join the frontier.
struct OpCounters {
    std::uint64_t additions = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t frontier_insertions = 0;

    OpCounters& operator+=(const OpCounters& o) {
        additions += o.additions;
        comparisons += o.comparisons;
        frontier_insertions += o.frontier_insertions;
        return *this;
    }
};

/// Penalty geometry for an (L0+1) x (L1+1) group grid. alpha0/alpha1 are
/// base-2 log-likelihood ratios; the penalty of a group is
/// alpha0*l0 + alpha1*l1 and smaller penalty means higher probability.
struct GroupGrid {
    double p01;
    double p10;
    int L0;
    int L1;
    double alpha0;  // log2((1-p01)/p01)
    double alpha1;  // log2((1-p10)/p10)

    static GroupGrid make(double p01, double p10, int L0, int L1);

    double penalty(int l0, int l1) const { return alpha0 * l0 + alpha1 * l1; }
    std::size_t size() const {
        return static_cast<std::size_t>(L0 + 1) * static_cast<std::size_t>(L1 + 1);
    }
};

/// Probability that exactly l0 of L0 zeros and l1 of L1 ones transition.
double group_probability(double p01, double p10, int L0, int L1, int l0, int l1);

struct OrderedGroups {
    std::vector<GroupCoord> coords;  // penalty non-decreasing
    OpCounters ops;
};

/// Computes all (L0+1)(L1+1) penalties and heapsorts them. Ties emit the
/// smaller l0 first.
OrderedGroups calc_prob_and_sort(double p01, double p10, int L0, int L1);

/// Corners of the complement of the traced region, derived from the corners
/// of the traced region (sorted by l0 ascending). An empty region yields
/// {(0,0)}.
std::vector<GroupCoord> complement_corners(const std::vector<GroupCoord>& corners_l, int L0,
                                           int L1);

/// Frontier of the traced region for non-negative alphas. Tracks the corner
/// antichain of the traced set and a penalty-ordered queue of the complement
/// corners; step() pops the minimum-penalty candidate.
class CornerFrontier {
public:
    CornerFrontier(double alpha0, double alpha1, int L0, int L1, OpCounters& ops);

    std::optional<GroupCoord> step(OpCounters& ops);

    bool exhausted() const { return queue_.empty(); }
    const std::vector<GroupCoord>& corners() const { return corners_; }
    std::vector<GroupCoord> complement_now() const;

private:
    struct QueueEntry {
        double phi;
        GroupCoord coord;
    };

    void insert_candidate(GroupCoord c, OpCounters& ops);

    int L0_;
    int L1_;
    std::vector<double> phi0_;
    std::vector<double> phi1_;
    std::vector<GroupCoord> corners_;   // antichain, l0 strictly increasing
    std::vector<QueueEntry> queue_;     // (phi, l0) ascending
};

/// Lazy penalty-ordered stream over the group grid. Negative alphas are
/// handled by mirroring the affected axis before tracing and un-mirroring on
/// emission; a zero alpha traces unmirrored with that axis contributing a
/// constant.
class GroupTracer {
public:
    GroupTracer(double p01, double p10, int L0, int L1);

    std::optional<GroupCoord> next();

    const OpCounters& ops() const { return ops_; }
    std::size_t emitted() const { return emitted_; }
    const GroupGrid& grid() const { return grid_; }
    const CornerFrontier& frontier() const { return frontier_; }

private:
    GroupGrid grid_;
    bool mirror0_;
    bool mirror1_;
    OpCounters ops_;
    CornerFrontier frontier_;
    std::size_t emitted_ = 0;
};

}  // namespace tgrand
