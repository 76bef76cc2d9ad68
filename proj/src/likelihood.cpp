#include "tgrand/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgrand {

GroupGrid GroupGrid::make(double p01, double p10, int L0, int L1) {
    validate_params(ChannelParams{p01, p10});
    if (L0 < 0 || L1 < 0)
        throw std::invalid_argument("GroupGrid: L0 and L1 must be non-negative");
    return GroupGrid{p01, p10, L0, L1, std::log2((1.0 - p01) / p01),
                     std::log2((1.0 - p10) / p10)};
}

double group_probability(double p01, double p10, int L0, int L1, int l0, int l1) {
    validate_params(ChannelParams{p01, p10});
    if (l0 < 0 || l0 > L0 || l1 < 0 || l1 > L1)
        throw std::invalid_argument("group_probability: counts out of range");
    return std::pow(p01, l0) * std::pow(1.0 - p01, L0 - l0) * std::pow(p10, l1) *
           std::pow(1.0 - p10, L1 - l1);
}

OrderedGroups calc_prob_and_sort(double p01, double p10, int L0, int L1) {
    const GroupGrid grid = GroupGrid::make(p01, p10, L0, L1);
    OrderedGroups out;
    OpCounters& ops = out.ops;

    // Axis penalty tables, built by repeated addition.
    std::vector<double> phi0(static_cast<std::size_t>(L0) + 1, 0.0);
    for (int i = 1; i <= L0; ++i) {
        phi0[i] = phi0[i - 1] + grid.alpha0;
        ++ops.additions;
    }
    std::vector<double> phi1(static_cast<std::size_t>(L1) + 1, 0.0);
    for (int j = 1; j <= L1; ++j) {
        phi1[j] = phi1[j - 1] + grid.alpha1;
        ++ops.additions;
    }

    struct Entry {
        double phi;
        GroupCoord coord;
    };
    std::vector<Entry> entries;
    entries.reserve(grid.size());
    for (int i = 0; i <= L0; ++i) {
        for (int j = 0; j <= L1; ++j) {
            entries.push_back({phi0[i] + phi1[j], {i, j}});
            ++ops.additions;
        }
    }

    const auto less = [&ops](const Entry& a, const Entry& b) {
        ++ops.comparisons;
        if (a.phi != b.phi) return a.phi < b.phi;
        if (a.coord.l0 != b.coord.l0) return a.coord.l0 < b.coord.l0;
        return a.coord.l1 < b.coord.l1;
    };
    std::make_heap(entries.begin(), entries.end(), less);
    std::sort_heap(entries.begin(), entries.end(), less);

    out.coords.reserve(entries.size());
    for (const Entry& e : entries) out.coords.push_back(e.coord);
    return out;
}

std::vector<GroupCoord> complement_corners(const std::vector<GroupCoord>& corners_l, int L0,
                                           int L1) {
    if (corners_l.empty()) return {GroupCoord{0, 0}};
    std::vector<GroupCoord> out;
    out.reserve(corners_l.size() + 1);
    if (corners_l.front().l1 < L1) out.push_back({0, corners_l.front().l1 + 1});
    for (std::size_t i = 0; i + 1 < corners_l.size(); ++i)
        out.push_back({corners_l[i].l0 + 1, corners_l[i + 1].l1 + 1});
    if (corners_l.back().l0 < L0) out.push_back({corners_l.back().l0 + 1, 0});
    return out;
}

CornerFrontier::CornerFrontier(double alpha0, double alpha1, int L0, int L1, OpCounters& ops)
    : L0_(L0), L1_(L1) {
    if (alpha0 < 0.0 || alpha1 < 0.0)
        throw std::invalid_argument("CornerFrontier: alphas must be non-negative");
    phi0_.resize(static_cast<std::size_t>(L0) + 1, 0.0);
    for (int i = 1; i <= L0; ++i) phi0_[i] = phi0_[i - 1] + alpha0;
    phi1_.resize(static_cast<std::size_t>(L1) + 1, 0.0);
    for (int j = 1; j <= L1; ++j) phi1_[j] = phi1_[j - 1] + alpha1;
    insert_candidate({0, 0}, ops);
}

void CornerFrontier::insert_candidate(GroupCoord c, OpCounters& ops) {
    const QueueEntry entry{phi0_[c.l0] + phi1_[c.l1], c};
    ++ops.frontier_insertions;
    const auto less = [&ops](const QueueEntry& a, const QueueEntry& b) {
        ++ops.comparisons;
        if (a.phi != b.phi) return a.phi < b.phi;
        return a.coord.l0 < b.coord.l0;
    };
    queue_.insert(std::lower_bound(queue_.begin(), queue_.end(), entry, less), entry);
}

std::optional<GroupCoord> CornerFrontier::step(OpCounters& ops) {
    if (queue_.empty()) return std::nullopt;
    const GroupCoord popped = queue_.front().coord;
    queue_.erase(queue_.begin());

    // The popped candidate joins the traced region: it absorbs every corner
    // it dominates and becomes a corner itself.
    std::erase_if(corners_, [&](const GroupCoord& c) {
        return c.l0 <= popped.l0 && c.l1 <= popped.l1;
    });
    corners_.insert(std::lower_bound(corners_.begin(), corners_.end(), popped,
                                     [](const GroupCoord& a, const GroupCoord& b) {
                                         return a.l0 < b.l0;
                                     }),
                    popped);

    // Complement corners that were already queued stay valid; only the ones
    // uncovered by the new corner need a penalty and a queue slot.
    for (const GroupCoord& cand : complement_corners(corners_, L0_, L1_)) {
        const bool queued = std::any_of(queue_.begin(), queue_.end(), [&](const QueueEntry& e) {
            return e.coord == cand;
        });
        if (!queued) insert_candidate(cand, ops);
    }
    return popped;
}

std::vector<GroupCoord> CornerFrontier::complement_now() const {
    std::vector<GroupCoord> out;
    out.reserve(queue_.size());
    for (const QueueEntry& e : queue_) out.push_back(e.coord);
    std::sort(out.begin(), out.end(), [](const GroupCoord& a, const GroupCoord& b) {
        return a.l0 < b.l0;
    });
    return out;
}

GroupTracer::GroupTracer(double p01, double p10, int L0, int L1)
    : grid_(GroupGrid::make(p01, p10, L0, L1)),
      mirror0_(grid_.alpha0 < 0.0),
      mirror1_(grid_.alpha1 < 0.0),
      frontier_(mirror0_ ? -grid_.alpha0 : grid_.alpha0,
                mirror1_ ? -grid_.alpha1 : grid_.alpha1, L0, L1, ops_) {
    // Axis tables cost L0 + L1 additions, as in the sort.
    ops_.additions += static_cast<std::uint64_t>(L0) + static_cast<std::uint64_t>(L1);
}

std::optional<GroupCoord> GroupTracer::next() {
    auto popped = frontier_.step(ops_);
    if (!popped) return std::nullopt;
    ++emitted_;
    // One addition per emitted pair: a corner's penalty is charged when its
    // pair leaves the frontier, so a full trace tallies the same additions
    // as the sort while a truncated trace pays only for what it emitted.
    ++ops_.additions;
    GroupCoord out = *popped;
    if (mirror0_) out.l0 = grid_.L0 - out.l0;
    if (mirror1_) out.l1 = grid_.L1 - out.l1;
    return out;
}

}  // namespace tgrand
