#include <doctest.h>

#include "ext2/steenrod.hpp"

#include <numeric>
#include <random>

using namespace ext2;

namespace {

Element el(Algebra a, std::vector<Mono> m) { return make_element(a, std::move(m)); }

// all basis elements of a finite subalgebra, every degree
std::vector<Element> full_basis(Algebra a) {
    std::vector<Element> out;
    for (int d = 0; d <= algebra_top_degree(a); ++d)
        for (auto& e : algebra_basis(a, d)) out.push_back(e);
    return out;
}

}  // namespace

TEST_CASE("adem_reduce basic relations") {
    CHECK(adem_reduce(Algebra::A, {1, 1}).is_zero());
    CHECK(adem_reduce(Algebra::A, {5, 1}) == el(Algebra::A, {{5, 1}}));
    CHECK(adem_reduce(Algebra::A, {2, 2}) == el(Algebra::A, {{3, 1}}));
    // Sq1 Sq2 = Sq3
    CHECK(adem_reduce(Algebra::A, {1, 2}) == el(Algebra::A, {{3}}));
    // Sq2 Sq3 = Sq5 + Sq4 Sq1
    CHECK(adem_reduce(Algebra::A, {2, 3}) == el(Algebra::A, {{5}, {4, 1}}));
    // Sq3 Sq2 = 0
    CHECK(adem_reduce(Algebra::A, {3, 2}).is_zero());
    // idempotent on admissible input, all outputs admissible
    for (int a = 1; a <= 12; ++a)
        for (int b = 1; b <= 12; ++b) {
            Element e = adem_reduce(Algebra::A, {a, b});
            for (const Mono& m : e.terms) CHECK(is_admissible(m));
        }
}

TEST_CASE("adem_reduce is independent of bracketing") {
    // reducing (a,b,c) must agree with multiply(reduce(a,b), reduce(c)) etc.
    for (int a = 1; a <= 7; ++a)
        for (int b = 1; b <= 7; ++b)
            for (int c = 1; c <= 7; ++c) {
                Element whole = adem_reduce(Algebra::A, {a, b, c});
                Element left = multiply(adem_reduce(Algebra::A, {a, b}),
                                        adem_reduce(Algebra::A, {c}));
                Element right = multiply(adem_reduce(Algebra::A, {a}),
                                         adem_reduce(Algebra::A, {b, c}));
                CHECK(whole == left);
                CHECK(whole == right);
            }
}

TEST_CASE("multiply unit and small products") {
    Element s4 = sq(Algebra::A, 4);
    CHECK(multiply(unit(Algebra::A), s4) == s4);
    CHECK(multiply(s4, unit(Algebra::A)) == s4);
    CHECK(multiply(sq(Algebra::A, 1), sq(Algebra::A, 1)).is_zero());
    CHECK(multiply(sq(Algebra::A, 2), sq(Algebra::A, 2)) == el(Algebra::A, {{3, 1}}));
}

TEST_CASE("algebra_basis dimensions") {
    auto b10 = algebra_basis(Algebra::A1, 0);
    REQUIRE(b10.size() == 1);
    CHECK(b10[0] == unit(Algebra::A1));

    // total dims 2^((n+1)(n+2)/2), top degrees 1, 6, 23
    size_t tot0 = 0, tot1 = 0, tot2 = 0;
    for (int d = 0; d <= 1; ++d) tot0 += algebra_dim(Algebra::A0, d);
    for (int d = 0; d <= 6; ++d) tot1 += algebra_dim(Algebra::A1, d);
    for (int d = 0; d <= 23; ++d) tot2 += algebra_dim(Algebra::A2, d);
    CHECK(tot0 == 2);
    CHECK(tot1 == 8);
    CHECK(tot2 == 64);
    CHECK(algebra_dim(Algebra::A1, 6) == 1);
    CHECK(algebra_dim(Algebra::A1, 7) == 0);
    CHECK(algebra_dim(Algebra::A2, 23) == 1);
    CHECK(algebra_dim(Algebra::A2, 24) == 0);

    // basis elements really lie in the subalgebra
    for (const Element& e : full_basis(Algebra::A1)) CHECK(in_subalgebra(e, Algebra::A1));

    // the unique degree-5 class of A(1) is Sq5 + Sq4 Sq1 (no single admissible
    // monomial of degree 5 lies in A(1))
    auto b15 = algebra_basis(Algebra::A1, 5);
    REQUIRE(b15.size() == 1);
    CHECK(b15[0] == el(Algebra::A1, {{5}, {4, 1}}));
}

TEST_CASE("milnor_multiply examples") {
    MilnorElement sq1{Algebra::A, {{1}}};
    MilnorElement sq01{Algebra::A, {{0, 1}}};
    MilnorElement sq2{Algebra::A, {{2}}};
    CHECK(milnor_multiply(sq1, sq1).is_zero());
    CHECK(milnor_multiply(sq01, sq1) == MilnorElement{Algebra::A, {{1, 1}}});
    CHECK(milnor_multiply(sq2, sq2) == MilnorElement{Algebra::A, {{1, 1}}});
}

TEST_CASE("basis conversion round trip") {
    CHECK(to_milnor(sq(Algebra::A, 4)) == MilnorElement{Algebra::A, {{4}}});
    // Sq(0,1) = Sq3 + Sq2 Sq1
    CHECK(to_admissible(MilnorElement{Algebra::A, {{0, 1}}}) ==
          el(Algebra::A, {{3}, {2, 1}}));
    CHECK(to_admissible(to_milnor(unit(Algebra::A))) == unit(Algebra::A));
    // exhaustive round trip through degree 14
    for (int d = 0; d <= 14; ++d)
        for (const Mono& m : admissible_basis(d)) {
            Element e = el(Algebra::A, {m});
            CHECK(to_admissible(to_milnor(e)) == e);
        }
    for (int d = 0; d <= 14; ++d)
        for (const Profile& r : milnor_basis(Algebra::A, d)) {
            MilnorElement e{Algebra::A, {r}};
            CHECK(to_milnor(to_admissible(e)) == e);
        }
}

TEST_CASE("milnor and adem multiplication agree: exhaustive over A(2)") {
    auto basis = full_basis(Algebra::A2);
    REQUIRE(basis.size() == 64);
    for (const Element& x : basis)
        for (const Element& y : basis) {
            if (x.degree() + y.degree() > 23) continue;  // zero land is cheap anyway
            CHECK(to_milnor(multiply(x, y)) == milnor_multiply(to_milnor(x), to_milnor(y)));
        }
}

TEST_CASE("associativity sampled in A(2)") {
    auto basis = full_basis(Algebra::A2);
    std::mt19937 rng(42);
    for (int it = 0; it < 400; ++it) {
        const Element& x = basis[rng() % basis.size()];
        const Element& y = basis[rng() % basis.size()];
        const Element& z = basis[rng() % basis.size()];
        CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
    }
}

TEST_CASE("conjugate: small values and exhaustive involution") {
    CHECK(conjugate(sq(Algebra::A, 1)) == sq(Algebra::A, 1));
    CHECK(conjugate(sq(Algebra::A, 2)) == sq(Algebra::A, 2));
    CHECK(conjugate(sq(Algebra::A, 4)) == el(Algebra::A, {{4}, {3, 1}}));

    auto basis = full_basis(Algebra::A2);
    for (const Element& x : basis) {
        Element cx = conjugate(x);
        CHECK(in_subalgebra(cx, Algebra::A2));  // chi preserves A(2)
        CHECK(conjugate(cx) == x);              // involution
    }
    // anti-homomorphism, sampled
    std::mt19937 rng(7);
    for (int it = 0; it < 200; ++it) {
        const Element& x = basis[rng() % basis.size()];
        const Element& y = basis[rng() % basis.size()];
        CHECK(conjugate(multiply(x, y)) == multiply(conjugate(y), conjugate(x)));
    }
}

TEST_CASE("generator words expand Sq^m exactly") {
    for (int m = 1; m <= 40; ++m) {
        Element acc{Algebra::A, {}};
        for (const Word& w : generator_words(m)) {
            for (int i : w) CHECK((i & (i - 1)) == 0);  // powers of two only
            acc = add(acc, adem_reduce(Algebra::A, w));
        }
        CHECK(acc == sq(Algebra::A, m));
    }
}

TEST_CASE("dual action basics") {
    DualMono z2{{0, 1}};
    CHECK(dual_action(unit(Algebra::A2), z2) == DualPoly{z2});
    CHECK(dual_action(sq(Algebra::A2, 1), DualMono{}).empty());
    CHECK(dual_action(sq(Algebra::A2, 3), DualMono{}).empty());
    // Sq1 . zeta2 = zeta1^2, hence Sq1 . zeta1^2 = Sq1 Sq1 . zeta2 = 0:
    // the pairing coefficient of the unique degree-1 monomial is 0.
    DualPoly r2 = dual_action(sq(Algebra::A2, 1), DualMono{{0, 1}});
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == DualMono{{2}});
    CHECK(dual_action(sq(Algebra::A2, 1), DualMono{{2}}).empty());
    // Sq1 . zeta1 = 1
    DualPoly r1 = dual_action(sq(Algebra::A2, 1), DualMono{{1}});
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == DualMono{});
}

TEST_CASE("dual action probe: total conjugate square on zeta_i") {
    // (chi Sq^{2^k - 1}) . zeta_i = zeta_{i-k}^{2^k}; every other component of
    // the total action vanishes.  The k = 1 term is the "+ zeta_{i-1}^2" of
    // the one-line statement zeta_i(chi Sq) = zeta_i + zeta_{i-1}^2, which
    // omits the higher iterated squares.
    for (int i = 1; i <= 4; ++i) {
        DualMono zi{std::vector<int>(size_t(i), 0)};
        zi.e[size_t(i) - 1] = 1;
        for (int j = 1; j <= zi.degree(); ++j) {
            Element chi_sq_j = conjugate(sq(Algebra::A, j));
            DualPoly got = dual_action(chi_sq_j, zi);
            int k = -1;
            for (int kk = 1; kk <= i; ++kk)
                if (j == (1 << kk) - 1) k = kk;
            if (k >= 0) {
                DualMono want{};  // zeta_{i-k}^{2^k}
                if (i > k) {
                    want.e.assign(size_t(i - k), 0);
                    want.e[size_t(i - k) - 1] = 1 << k;
                }
                REQUIRE(got.size() == 1);
                CHECK(got[0] == want);
            } else {
                CHECK(got.empty());
            }
        }
    }
}

TEST_CASE("dual action degree and weight bookkeeping") {
    CHECK(DualMono{{0, 0, 1}}.degree() == 7);
    CHECK(DualMono{{0, 0, 1}}.weight() == 4);
    CHECK(DualMono{{4}}.degree() == 4);
    CHECK(DualMono{{4}}.weight() == 4);
    CHECK(DualMono{{1, 2, 1}}.degree() == 1 + 6 + 7);
    CHECK(DualMono{{1, 2, 1}}.weight() == 1 + 4 + 4);
}

TEST_CASE("dual action is a module action: sampled A(2) pairs, degree <= 30") {
    auto basis = full_basis(Algebra::A2);
    // deterministic sample of zeta monomials of degree <= 30
    std::vector<DualMono> monos;
    for (int e1 = 0; e1 <= 8; ++e1)
        for (int e2 = 0; e2 <= 4; ++e2)
            for (int e3 = 0; e3 <= 2; ++e3)
                for (int e4 = 0; e4 <= 1; ++e4) {
                    DualMono m{{e1, e2, e3, e4}};
                    while (!m.e.empty() && m.e.back() == 0) m.e.pop_back();
                    if (m.degree() <= 30) monos.push_back(m);
                }
    std::mt19937 rng(2026);
    for (int it = 0; it < 60; ++it) {
        const Element& x = basis[rng() % basis.size()];
        const Element& y = basis[rng() % basis.size()];
        const DualMono& m = monos[rng() % monos.size()];
        DualPoly lhs = dual_action(multiply(x, y), m);
        DualPoly rhs = dual_action(x, dual_action(y, m));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("render and parse round trip") {
    CHECK(render(el(Algebra::A, {{5, 1}})) == "Sq(5,1)");
    CHECK(render(unit(Algebra::A)) == "1");
    CHECK(render(Element{Algebra::A, {}}) == "0");
    CHECK(render(MilnorElement{Algebra::A, {{0, 1}}}) == "M(0,1)");

    auto p = parse_element(Algebra::A, "Sq(3) + Sq(2,1)");
    REQUIRE(p);
    CHECK(*p == el(Algebra::A, {{3}, {2, 1}}));
    // M terms convert to admissible
    auto q = parse_element(Algebra::A, "M(0,1)");
    REQUIRE(q);
    CHECK(*q == el(Algebra::A, {{3}, {2, 1}}));
    auto u = parse_element(Algebra::A, "1");
    REQUIRE(u);
    CHECK(*u == unit(Algebra::A));
    auto z = parse_element(Algebra::A, "0");
    REQUIRE(z);
    CHECK(z->is_zero());
    // non-admissible input reduces
    auto w = parse_element(Algebra::A, "Sq(2,2)");
    REQUIRE(w);
    CHECK(*w == el(Algebra::A, {{3, 1}}));
    CHECK(!parse_element(Algebra::A, "Sq(2,"));
    CHECK(!parse_element(Algebra::A, "bogus"));

    // round trip every A(2) basis element
    for (const Element& e : full_basis(Algebra::A2)) {
        auto back = parse_element(Algebra::A2, render(e));
        REQUIRE(back);
        CHECK(*back == e);
    }
}

TEST_CASE("mul_table matches explicit products (A(2) Milnor working basis)") {
    for (int d1 = 0; d1 <= 8; ++d1)
        for (int d2 = 0; d2 <= 8; ++d2) {
            const auto& t = mul_table(Algebra::A2, d1, d2);
            const auto& b1 = milnor_basis(Algebra::A2, d1);
            const auto& b2 = milnor_basis(Algebra::A2, d2);
            const auto& b3 = milnor_basis(Algebra::A2, d1 + d2);
            REQUIRE(t.n1 == b1.size());
            REQUIRE(t.n2 == b2.size());
            for (size_t i = 0; i < b1.size(); ++i)
                for (size_t j = 0; j < b2.size(); ++j) {
                    MilnorElement prod = milnor_multiply(MilnorElement{Algebra::A2, {b1[i]}},
                                                         MilnorElement{Algebra::A2, {b2[j]}});
                    std::vector<int> want;
                    for (const Profile& r : prod.terms)
                        want.push_back(int(milnor_index(Algebra::A2, r)));
                    std::sort(want.begin(), want.end());
                    CHECK(t.entry(i, j) == want);
                    for (int k : t.entry(i, j)) CHECK(size_t(k) < b3.size());
                }
        }
}
