#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "tgrand/gf2.hpp"

using namespace tgrand;

namespace {

BitMatrix from_rows(const std::vector<std::string>& rows) {
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[0].size(); ++c) m.set(r, c, rows[r][c] == '1');
    return m;
}

}  // namespace

TEST_CASE("matmul identity and hand-computed product") {
    RngStream rng(42);
    const BitMatrix m = random_matrix(3, 7, rng);
    CHECK(matmul(BitMatrix::identity(3), m) == m);

    const BitMatrix a = from_rows({"11", "01"});
    const BitMatrix b = from_rows({"1", "1"});
    CHECK(matmul(a, b) == from_rows({"0", "1"}));
}

TEST_CASE("matmul rejects mismatched dimensions") {
    RngStream rng(1);
    const BitMatrix a = random_matrix(3, 4, rng);
    const BitMatrix b = random_matrix(5, 2, rng);
    CHECK_THROWS_AS(matmul(a, b), std::invalid_argument);
}

TEST_CASE("matmul agrees with integer oracle and is associative") {
    RngStream rng(7);
    for (int round = 0; round < 25; ++round) {
        const BitMatrix a = random_matrix(5, 9, rng);
        const BitMatrix b = random_matrix(9, 6, rng);
        const BitMatrix c = random_matrix(6, 4, rng);
        CHECK(oracle::to_ints(matmul(a, b)) == oracle::multiply(oracle::to_ints(a), oracle::to_ints(b)));
        CHECK(matmul(matmul(a, b), c) == matmul(a, matmul(b, c)));
    }
}

TEST_CASE("rank basics") {
    CHECK(rank(BitMatrix::identity(8)) == 8);
    CHECK(rank(BitMatrix(4, 4)) == 0);
}

TEST_CASE("rank matches brute-force elimination and transposition") {
    RngStream rng(11);
    for (int round = 0; round < 50; ++round) {
        const BitMatrix a = random_matrix(15, 10, rng);
        CHECK(rank(a) == oracle::rank(oracle::to_ints(a)));
        CHECK(rank(a) == rank(a.transposed()));
    }
}

TEST_CASE("solve identity, round trip, rank deficiency") {
    RngStream rng(3);
    const BitMatrix m = random_matrix(6, 5, rng);
    CHECK(solve(BitMatrix::identity(6), m) == m);

    for (int round = 0; round < 40; ++round) {
        BitMatrix a = random_matrix(12, 8, rng);
        if (rank(a) < 8) continue;
        const BitMatrix u = random_matrix(8, 16, rng);
        const BitMatrix b = matmul(a, u);
        const auto z = solve(a, b);
        REQUIRE(z.has_value());
        CHECK(*z == u);
        CHECK(matmul(a, *z) == b);
    }

    // Two identical rows cannot determine two unknowns.
    const BitMatrix deficient = from_rows({"11", "11"});
    CHECK_FALSE(solve(deficient, from_rows({"1", "1"})).has_value());
}

TEST_CASE("enumerate_solutions small systems") {
    {
        BitVector b(2);
        b.set(0, true);
        SolutionEnumerator en(BitMatrix::identity(2), b);
        auto x = en.next();
        REQUIRE(x.has_value());
        CHECK(x->to_string() == "10");
        CHECK_FALSE(en.next().has_value());
    }
    {
        const BitMatrix a = from_rows({"11"});
        SolutionEnumerator en(a, BitVector(1));
        std::set<std::string> got;
        while (auto x = en.next()) got.insert(x->to_string());
        CHECK(got == std::set<std::string>{"00", "11"});
    }
}

TEST_CASE("enumerate_solutions counts and validity on random systems") {
    RngStream rng(19);
    int consistent_seen = 0;
    for (int round = 0; round < 40; ++round) {
        const BitMatrix a = random_matrix(5, 8, rng);
        const BitVector b = BitVector::random(5, rng);
        SolutionEnumerator en(a, b);
        const auto expected = oracle::all_solutions(oracle::to_ints(a), [&] {
            std::vector<int> col(5);
            for (std::size_t i = 0; i < 5; ++i) col[i] = b.get(i) ? 1 : 0;
            return col;
        }());
        CHECK(en.solution_count() == expected.size());
        if (expected.empty()) continue;
        ++consistent_seen;
        CHECK(en.solution_count() == (std::uint64_t{1} << (8 - rank(a))));
        std::set<std::uint64_t> got;
        while (auto x = en.next()) {
            CHECK(matvec(a, *x) == b);
            got.insert(oracle::to_mask(*x));
        }
        CHECK(got == std::set<std::uint64_t>(expected.begin(), expected.end()));
    }
    CHECK(consistent_seen > 0);
}

TEST_CASE("random_matrix determinism and bit balance") {
    RngStream rng1(123);
    RngStream rng2(123);
    CHECK(random_matrix(20, 33, rng1) == random_matrix(20, 33, rng2));

    RngStream rng(555);
    int ones = 0;
    for (int i = 0; i < 10000; ++i)
        if (random_matrix(1, 1, rng).get(0, 0)) ++ones;
    const double fraction = ones / 10000.0;
    CHECK(fraction >= 0.485);
    CHECK(fraction <= 0.515);
}

TEST_CASE("zero-dimension construction is rejected") {
    RngStream rng(1);
    CHECK_THROWS_AS(random_matrix(0, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix(3, 0), std::invalid_argument);
}

TEST_CASE("row index sets validate and complement") {
    CHECK_THROWS_AS(RowIndexSet({3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(RowIndexSet({5, 2}), std::invalid_argument);
    const RowIndexSet s({1, 4});
    CHECK(RowIndexSet::complement_of(s, 6).indices() == std::vector<std::size_t>{0, 2, 3, 5});
    RngStream rng(9);
    const BitMatrix m = random_matrix(6, 10, rng);
    const BitMatrix sel = select_rows(m, s);
    CHECK(sel.rows() == 2);
    CHECK(sel.row(0) == m.row(1));
    CHECK(sel.row(1) == m.row(4));
}

TEST_CASE("padding bits stay zero through operations") {
    RngStream rng(77);
    // 65 columns forces a 2-word row with a single live bit in word 1.
    BitMatrix a = random_matrix(4, 65, rng);
    BitMatrix b = random_matrix(4, 65, rng);
    a ^= b;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const BitVector row = a.row(r);
        CHECK((row.words()[1] >> 1) == 0);
    }
    const BitMatrix t = a.transposed();
    CHECK(t.rows() == 65);
    CHECK(t.transposed() == a);
}
