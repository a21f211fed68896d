#include <doctest.h>

#include "ext2/gf2.hpp"

#include <random>

using namespace ext2::gf2;

namespace {

BitMatrix random_matrix(std::mt19937& rng, size_t m, size_t n, double density = 0.4) {
    BitMatrix a(m, n);
    std::bernoulli_distribution bit(density);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            if (bit(rng)) a.set(i, j);
    return a;
}

}  // namespace

TEST_CASE("bitvec basics") {
    BitVec v(130);
    CHECK(v.none());
    v.set(0);
    v.set(129);
    CHECK(v.get(0));
    CHECK(v.get(129));
    CHECK(!v.get(64));
    CHECK(v.popcount() == 2);
    CHECK(v.first_set() == 0);
    v.flip(0);
    CHECK(v.first_set() == 129);
    BitVec w(130);
    w.set(129);
    v ^= w;
    CHECK(v.none());
}

TEST_CASE("matrix apply and mul") {
    // A = [[1,1,0],[0,1,1]] : F2^3 -> F2^2
    BitMatrix a(2, 3);
    a.set(0, 0); a.set(0, 1); a.set(1, 1); a.set(1, 2);
    BitVec x(3);
    x.set(0); x.set(2);
    BitVec y = a.apply(x);
    CHECK(y.get(0));
    CHECK(y.get(1));

    BitMatrix b(3, 2);
    b.set(0, 0); b.set(1, 1); b.set(2, 0);
    BitMatrix ab = mul(a, b);
    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        BitVec v(2);
        for (size_t i = 0; i < 2; ++i) v.set(i, rng() & 1);
        CHECK(ab.apply(v) == a.apply(b.apply(v)));
    }
}

TEST_CASE("rank and kernel on random matrices") {
    std::mt19937 rng(12345);
    for (int it = 0; it < 40; ++it) {
        size_t m = 1 + rng() % 40, n = 1 + rng() % 40;
        BitMatrix a = random_matrix(rng, m, n);
        size_t r = rank(a);
        auto ker = kernel(a);
        CHECK(r + ker.size() == n);  // rank-nullity
        for (const auto& v : ker) CHECK(a.apply(v).none());
        // kernel vectors are independent
        Echelon e(n);
        for (const auto& v : ker) CHECK(e.insert(v));
        // rank of transpose equals rank
        CHECK(rank(a.transposed()) == r);
    }
}

TEST_CASE("solver finds solutions exactly when consistent") {
    std::mt19937 rng(999);
    for (int it = 0; it < 40; ++it) {
        size_t m = 1 + rng() % 30, n = 1 + rng() % 30;
        BitMatrix a = random_matrix(rng, m, n);
        Solver s(a);
        // b in the image: always solvable and verified
        BitVec x(n);
        for (size_t j = 0; j < n; ++j) x.set(j, rng() & 1);
        BitVec b = a.apply(x);
        auto sol = s.solve(b);
        REQUIRE(sol);
        CHECK(a.apply(*sol) == b);
        // solve is deterministic
        auto sol2 = Solver(a).solve(b);
        REQUIRE(sol2);
        CHECK(*sol == *sol2);
    }
    // inconsistent system detected
    BitMatrix a(2, 1);
    a.set(0, 0);
    BitVec b(2);
    b.set(1);
    CHECK(!Solver(a).solve(b));
}

TEST_CASE("echelon membership") {
    std::mt19937 rng(5);
    BitMatrix a = random_matrix(rng, 10, 20);
    Echelon e(20);
    for (size_t i = 0; i < a.rows(); ++i) e.insert(a.row(i));
    // any F2-combination of rows is contained
    for (int it = 0; it < 20; ++it) {
        BitVec v(20);
        for (size_t i = 0; i < a.rows(); ++i)
            if (rng() & 1) v ^= a.row(i);
        CHECK(e.contains(v));
    }
}
