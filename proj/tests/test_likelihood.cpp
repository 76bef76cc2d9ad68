#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "tgrand/likelihood.hpp"
#include "tgrand/rng.hpp"

using namespace tgrand;

namespace {

// Exhaustive reference ordering: every group probability computed directly
// and sorted in descending order.
std::vector<std::pair<double, GroupCoord>> sorted_by_probability(double p01, double p10, int L0,
                                                                 int L1) {
    std::vector<std::pair<double, GroupCoord>> v;
    for (int i = 0; i <= L0; ++i)
        for (int j = 0; j <= L1; ++j)
            v.push_back({group_probability(p01, p10, L0, L1, i, j), GroupCoord{i, j}});
    std::stable_sort(v.begin(), v.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    return v;
}

std::vector<GroupCoord> drain(GroupTracer& tracer) {
    std::vector<GroupCoord> out;
    while (auto g = tracer.next()) out.push_back(*g);
    return out;
}

double random_prob(RngStream& rng) { return 0.01 + 0.98 * rng.next_double(); }

}  // namespace

TEST_CASE("group probability values") {
    CHECK(group_probability(0.1, 0.4, 2, 3, 0, 2) == doctest::Approx(0.0778).epsilon(5e-3));
    CHECK(group_probability(0.1, 0.4, 2, 3, 0, 0) == doctest::Approx(0.17496).epsilon(1e-10));
    CHECK_THROWS_AS(group_probability(0.1, 0.4, 2, 3, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(group_probability(0.0, 0.4, 2, 3, 0, 0), std::invalid_argument);
}

TEST_CASE("group probabilities weighted by group sizes sum to one") {
    RngStream rng(17);
    for (int round = 0; round < 30; ++round) {
        const double p01 = random_prob(rng);
        const double p10 = random_prob(rng);
        const int l0 = static_cast<int>(rng.next_u64() % 8);
        const int l1 = static_cast<int>(rng.next_u64() % 8);
        double total = 0.0;
        for (int i = 0; i <= l0; ++i)
            for (int j = 0; j <= l1; ++j)
                total += oracle::binom(l0, i) * oracle::binom(l1, j) *
                         group_probability(p01, p10, l0, l1, i, j);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sort puts the documented leading groups first") {
    const OrderedGroups og = calc_prob_and_sort(0.1, 0.4, 2, 3);
    REQUIRE(og.coords.size() == 12);
    CHECK(og.coords[0] == GroupCoord{0, 0});
    CHECK(og.coords[1] == GroupCoord{0, 1});
    CHECK(og.coords[2] == GroupCoord{0, 2});
    CHECK(group_probability(0.1, 0.4, 2, 3, 0, 0) == doctest::Approx(0.1750).epsilon(5e-3));
    CHECK(group_probability(0.1, 0.4, 2, 3, 0, 1) == doctest::Approx(0.1166).epsilon(5e-3));
    CHECK(group_probability(0.1, 0.4, 2, 3, 0, 2) == doctest::Approx(0.0778).epsilon(5e-3));
}

TEST_CASE("single-cell grid") {
    const OrderedGroups og = calc_prob_and_sort(0.3, 0.3, 0, 0);
    REQUIRE(og.coords.size() == 1);
    CHECK(og.coords[0] == GroupCoord{0, 0});
    CHECK(og.ops.additions == 1);
}

TEST_CASE("sort order matches the exhaustive probability oracle up to ties") {
    RngStream rng(23);
    for (int round = 0; round < 60; ++round) {
        const double p01 = random_prob(rng);
        const double p10 = random_prob(rng);
        const OrderedGroups og = calc_prob_and_sort(p01, p10, 5, 5);
        const auto expect = sorted_by_probability(p01, p10, 5, 5);
        REQUIRE(og.coords.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            const double f = group_probability(p01, p10, 5, 5, og.coords[i].l0, og.coords[i].l1);
            CHECK(f == doctest::Approx(expect[i].first).epsilon(1e-9));
        }
    }
}

TEST_CASE("sort addition counter follows the closed form") {
    CHECK(calc_prob_and_sort(0.1, 0.4, 2, 3).ops.additions == 17);  // 3*4 + 5
    RngStream rng(29);
    for (int round = 0; round < 20; ++round) {
        const int l0 = static_cast<int>(rng.next_u64() % 10);
        const int l1 = static_cast<int>(rng.next_u64() % 10);
        const OrderedGroups og = calc_prob_and_sort(0.2, 0.3, l0, l1);
        CHECK(og.ops.additions ==
              static_cast<std::uint64_t>((l0 + 1) * (l1 + 1) + l0 + l1));
    }
}

TEST_CASE("trace follows the documented five-step path") {
    const GroupGrid grid = GroupGrid::make(0.4, 0.3, 3, 3);
    CHECK(grid.alpha0 == doctest::Approx(0.59).epsilon(2e-2));
    CHECK(grid.alpha1 == doctest::Approx(1.22).epsilon(2e-2));
    GroupTracer tracer(0.4, 0.3, 3, 3);
    const std::vector<GroupCoord> expect{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 0}};
    for (const GroupCoord& e : expect) {
        auto g = tracer.next();
        REQUIRE(g.has_value());
        CHECK(*g == e);
    }
}

TEST_CASE("first step and the alpha0-vs-alpha1 comparison") {
    GroupTracer tracer(0.2, 0.4, 4, 4);  // both alphas positive
    CHECK(tracer.ops().comparisons == 0);
    auto first = tracer.next();
    REQUIRE(first.has_value());
    CHECK(*first == GroupCoord{0, 0});
    // Ranking the two successor candidates costs exactly one comparison.
    CHECK(tracer.ops().comparisons == 1);
}

TEST_CASE("mirrored axis: alpha0 < 0 starts from l0 = L0") {
    // p01 > 1/2 makes flipping a zero more likely than keeping it.
    GroupTracer tracer(0.8, 0.3, 4, 2);
    auto first = tracer.next();
    REQUIRE(first.has_value());
    CHECK(*first == GroupCoord{4, 0});
}

TEST_CASE("zero alpha axis keeps the stream penalty-sorted") {
    GroupTracer tracer(0.3, 0.5, 3, 3);  // alpha1 == 0
    const GroupGrid grid = GroupGrid::make(0.3, 0.5, 3, 3);
    std::vector<GroupCoord> out = drain(tracer);
    CHECK(out.size() == grid.size());
    double prev = -1e300;
    for (const GroupCoord& g : out) {
        const double phi = grid.penalty(g.l0, g.l1);
        CHECK(phi >= prev - 1e-12);
        prev = std::max(prev, phi);
    }
}

TEST_CASE("complement corners from a documented antichain") {
    const std::vector<GroupCoord> corners{{0, 3}, {1, 1}, {2, 0}};
    const std::vector<GroupCoord> comp = complement_corners(corners, 4, 4);
    CHECK(comp == std::vector<GroupCoord>{{0, 4}, {1, 2}, {2, 1}, {3, 0}});

    // Omission rules at the grid edges.
    CHECK(complement_corners({{0, 4}}, 4, 4) == std::vector<GroupCoord>{{1, 0}});
    CHECK(complement_corners({{4, 0}}, 4, 4) == std::vector<GroupCoord>{{0, 1}});
    CHECK(complement_corners({{4, 4}}, 4, 4).empty());
    CHECK(complement_corners({}, 4, 4) == std::vector<GroupCoord>{{0, 0}});
}

TEST_CASE("frontier maintains the corner antichain and the complement bound") {
    OpCounters ops;
    CornerFrontier frontier(0.7, 1.1, 6, 4, ops);
    std::size_t steps = 0;
    while (auto popped = frontier.step(ops)) {
        ++steps;
        const auto& corners = frontier.corners();
        for (std::size_t i = 1; i < corners.size(); ++i) {
            CHECK(corners[i - 1].l0 < corners[i].l0);
            CHECK(corners[i - 1].l1 > corners[i].l1);
        }
        const auto comp = frontier.complement_now();
        CHECK(comp.size() <= 5);  // min(L0+1, L1+1)
        // Queue contents must equal the closed-form reconstruction.
        CHECK(comp == complement_corners(corners, 6, 4));
    }
    CHECK(steps == 35);
    CHECK(frontier.exhausted());
}

TEST_CASE("trace emits every pair exactly once") {
    RngStream rng(31);
    for (int round = 0; round < 40; ++round) {
        const int l0 = static_cast<int>(rng.next_u64() % 9);
        const int l1 = static_cast<int>(rng.next_u64() % 9);
        GroupTracer tracer(random_prob(rng), random_prob(rng), l0, l1);
        std::set<std::pair<int, int>> seen;
        std::size_t count = 0;
        while (auto g = tracer.next()) {
            ++count;
            CHECK(g->l0 >= 0);
            CHECK(g->l0 <= l0);
            CHECK(g->l1 >= 0);
            CHECK(g->l1 <= l1);
            seen.insert({g->l0, g->l1});
        }
        CHECK(count == static_cast<std::size_t>((l0 + 1) * (l1 + 1)));
        CHECK(seen.size() == count);
    }
}

TEST_CASE("trace and sort emit identical penalty sequences") {
    RngStream rng(37);
    for (int round = 0; round < 300; ++round) {
        const double p01 = random_prob(rng);
        const double p10 = random_prob(rng);
        const int l0 = static_cast<int>(rng.next_u64() % 13);
        const int l1 = static_cast<int>(rng.next_u64() % 13);
        const GroupGrid grid = GroupGrid::make(p01, p10, l0, l1);
        const OrderedGroups og = calc_prob_and_sort(p01, p10, l0, l1);
        GroupTracer tracer(p01, p10, l0, l1);
        const std::vector<GroupCoord> traced = drain(tracer);
        REQUIRE(traced.size() == og.coords.size());
        for (std::size_t i = 0; i < traced.size(); ++i) {
            const double phi_sort = grid.penalty(og.coords[i].l0, og.coords[i].l1);
            const double phi_trace = grid.penalty(traced[i].l0, traced[i].l1);
            CHECK(std::abs(phi_sort - phi_trace) <= 1e-12);
        }
        // Full consumption costs the same additions as the sort.
        CHECK(tracer.ops().additions == og.ops.additions);
    }
}

TEST_CASE("laziness: a prefix is unaffected by later consumption") {
    GroupTracer short_run(0.25, 0.4, 7, 7);
    GroupTracer long_run(0.25, 0.4, 7, 7);
    std::vector<GroupCoord> prefix;
    for (int i = 0; i < 10; ++i) prefix.push_back(*short_run.next());
    const std::vector<GroupCoord> full = drain(long_run);
    for (int i = 0; i < 10; ++i) CHECK(prefix[i] == full[i]);
    CHECK(short_run.ops().additions == 10 + 7 + 7);
}

TEST_CASE("trace addition counter equals consumed plus table cost") {
    GroupTracer tracer(0.2, 0.3, 10, 10);
    for (int i = 0; i < 8; ++i) tracer.next();
    CHECK(tracer.ops().additions == 28);  // 8 + 10 + 10

    GroupTracer full(0.2, 0.3, 10, 10);
    drain(full);
    CHECK(full.ops().additions == calc_prob_and_sort(0.2, 0.3, 10, 10).ops.additions);
}

TEST_CASE("emitted penalties are non-decreasing for any alpha signs") {
    RngStream rng(41);
    for (int round = 0; round < 100; ++round) {
        const double p01 = random_prob(rng);
        const double p10 = random_prob(rng);
        const int l0 = static_cast<int>(rng.next_u64() % 10);
        const int l1 = static_cast<int>(rng.next_u64() % 10);
        const GroupGrid grid = GroupGrid::make(p01, p10, l0, l1);
        GroupTracer tracer(p01, p10, l0, l1);
        double prev = -1e300;
        while (auto g = tracer.next()) {
            const double phi = grid.penalty(g->l0, g->l1);
            CHECK(phi >= prev - 1e-12);
            prev = std::max(prev, phi);
        }
    }
}

TEST_CASE("degenerate single-row and single-column grids") {
    GroupTracer row(0.2, 0.3, 5, 0);
    const std::vector<GroupCoord> r = drain(row);
    CHECK(r.size() == 6);
    for (int i = 0; i <= 5; ++i) CHECK(r[i] == GroupCoord{i, 0});
    CHECK(row.ops().additions == 6 + 5);

    GroupTracer col(0.2, 0.3, 0, 4);
    const std::vector<GroupCoord> c = drain(col);
    CHECK(c.size() == 5);
    for (int j = 0; j <= 4; ++j) CHECK(c[j] == GroupCoord{0, j});
}
