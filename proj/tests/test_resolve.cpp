#include "doctest.h"
#include "ext2/resolve.hpp"

#include <map>
#include <set>

using namespace ext2;
using gf2::BitMatrix;
using gf2::BitVec;

namespace {

// closed form for Ext_{A(1)}(F2): the connective real K-theory pattern,
// periodic with period (stem 8, filtration 4)
int bo_dim(int s, int t) {
    int x = t - s;
    if (x < 0 || s < 0) return 0;
    int i = x / 8, r = x % 8;
    switch (r) {
        case 0: return s >= 4 * i ? 1 : 0;
        case 1: return s == 4 * i + 1 ? 1 : 0;
        case 2: return s == 4 * i + 2 ? 1 : 0;
        case 4: return s >= 4 * i + 3 ? 1 : 0;
        default: return 0;
    }
}

// closed form for the connective symplectic K-theory pattern, period (8,4):
// towers at stems 0 and 4 starting at filtrations 4i and 4i+1, lone classes at
// stems 8i+5, 8i+6 in filtrations 4i+2, 4i+3
int bsp_dim(int s, int t) {
    int x = t - s;
    if (x < 0 || s < 0) return 0;
    int i = x / 8, r = x % 8;
    switch (r) {
        case 0: return s >= 4 * i ? 1 : 0;
        case 4: return s >= 4 * i + 1 ? 1 : 0;
        case 5: return s == 4 * i + 2 ? 1 : 0;
        case 6: return s == 4 * i + 3 ? 1 : 0;
        default: return 0;
    }
}

FiniteModule f2_over(Algebra a) { return trivial_module(a, 0); }

// h_i action matrices Ext^{s,t} -> Ext^{s+1,t+2^i} read off the edge list
BitMatrix edge_matrix(const ExtChart& c, int kind, int s, int t) {
    int h = 1 << kind;
    BitMatrix m(size_t(c.dim(s + 1, t + h)), size_t(c.dim(s, t)));
    for (const ChartEdge& e : c.edges)
        if (e.kind == kind && e.from.s == s && e.from.t == t)
            m.set(size_t(e.to.index), size_t(e.from.index));
    return m;
}

}  // namespace

TEST_CASE("Ext_{A1}(F2) is the bo pattern through stem 24") {
    Resolution r = minimal_resolution(f2_over(Algebra::A1), 14, 38);
    ExtChart c = ext_chart(r, r);
    for (int s = 0; s <= 14; ++s)
        for (int t = 0; t <= 38; ++t)
            if (t - s <= 24)
                CHECK_MESSAGE(c.dim(s, t) == bo_dim(s, t), "s=", s, " t=", t);
    // stem 0 tower, h1 string at stems 1,2, towers at stems 4 and 8
    CHECK(c.dim(0, 0) == 1);
    CHECK(c.dim(1, 2) == 1);
    CHECK(c.dim(2, 4) == 1);
    CHECK(c.dim(3, 7) == 1);
    CHECK(c.dim(4, 12) == 1);
    // edges: h0 up the stem-0 tower, h1 off the bottom class
    auto has_edge = [&](int kind, ChartClass from, ChartClass to) {
        for (const ChartEdge& e : c.edges)
            if (e.kind == kind && e.from == from && e.to == to) return true;
        return false;
    };
    CHECK(has_edge(0, {0, 0, 0}, {1, 1, 0}));
    CHECK(has_edge(1, {0, 0, 0}, {1, 2, 0}));
    CHECK(has_edge(1, {1, 2, 0}, {2, 4, 0}));
    CHECK(has_edge(0, {3, 7, 0}, {4, 8, 0}));
    CHECK(!has_edge(1, {2, 4, 0}, {3, 6, 0}));  // h1^3 = 0 over A(1)
}

TEST_CASE("Ext_{A1}(M7) is bo plus a fourfold-suspended bsp") {
    FiniteModule m7 = restrict_algebra(paper_module("M7"), Algebra::A1);
    Resolution r = minimal_resolution(m7, 12, 40);
    for (int s = 0; s <= 12; ++s)
        for (int t = 0; t <= 40; ++t)
            if (t - s <= 28)
                CHECK_MESSAGE(r.ext_dim(s, t) == bo_dim(s, t) + bsp_dim(s, t - 4),
                              "s=", s, " t=", t);
}

TEST_CASE("Ext_{A1}(F2) satisfies the (8,4) periodicity in-window") {
    Resolution r = minimal_resolution(f2_over(Algebra::A1), 12, 32);
    for (int s = 0; s + 4 <= 12; ++s)
        for (int t = 0; t + 12 <= 32; ++t)
            if (t - s >= 0 && t - s <= 16)
                CHECK(r.ext_dim(s, t) == r.ext_dim(s + 4, t + 12));
}

TEST_CASE("minimal resolutions are minimal and differentials compose to zero") {
    Resolution r = minimal_resolution(paper_module("L"), 6, 30);
    for (int s = 1; s <= 6; ++s)
        for (size_t g = 0; g < r.gen_deg[size_t(s)].size(); ++g) {
            int t = r.gen_deg[size_t(s)][g];
            for (size_t p : r.gens_at(s - 1, t))
                CHECK(!r.d_img[size_t(s)][g].get(r.block_offset(s - 1, t, p)));
        }
    for (int s = 2; s <= 6; ++s)
        for (int t = 0; t <= 30; ++t) {
            BitMatrix dd = gf2::mul(s == 1 ? r.aug_matrix(t) : r.d_matrix(s - 1, t),
                                    r.d_matrix(s, t));
            for (size_t i = 0; i < dd.rows(); ++i) CHECK(dd.row(i).none());
        }
    // augmentation composes to zero too
    for (int t = 0; t <= 30; ++t) {
        BitMatrix dd = gf2::mul(r.aug_matrix(t), r.d_matrix(1, t));
        for (size_t i = 0; i < dd.rows(); ++i) CHECK(dd.row(i).none());
    }
}

TEST_CASE("Ext_{A2}(F2) has h0, h1, h2 and an empty (1, stem 2)") {
    Resolution r = minimal_resolution(f2_over(Algebra::A2), 4, 12);
    CHECK(r.gen_deg[0] == std::vector<int>{0});
    CHECK(r.gen_deg[1] == std::vector<int>{1, 2, 4});
    CHECK(r.ext_dim(1, 3) == 0);
    ExtChart c = ext_chart(r, r);
    CHECK(c.dim(1, 1) == 1);
    CHECK(c.dim(1, 2) == 1);
    CHECK(c.dim(1, 4) == 1);
}

TEST_CASE("resolution of L starts with the positions of the closed form") {
    FiniteModule l = paper_module("L");
    Resolution r = minimal_resolution(l, 8, 60);
    // a_{0,0}
    CHECK(r.ext_dim(0, 0) == 1);
    // h2 a_{0,0} at stem 3, filtration 1
    CHECK(r.ext_dim(1, 4) == 1);
    // a_{5,1} at stem 5, a_{9,2}, a_{14,2}, a_{17,4}, a_{31,5}, a_{39,7}
    CHECK(r.ext_dim(1, 6) == 1);
    CHECK(r.ext_dim(2, 11) == 1);
    CHECK(r.ext_dim(2, 16) == 1);
    CHECK(r.ext_dim(4, 21) == 1);
    // the bo family on a_{21,3} appears with its bottom class removed (it is
    // the kernel of the map onto the polynomial part): nothing at (3, stem 21),
    // tower resumes at filtration 4
    CHECK(r.ext_dim(3, 24) == 0);
    CHECK(r.ext_dim(4, 25) == 1);
    CHECK(r.ext_dim(5, 36) == 1);
    CHECK(r.ext_dim(7, 46) == 1);
    // v2^8 a_{0,0} at stem 48, filtration 8
    CHECK(r.ext_dim(8, 56) == 1);
}

TEST_CASE("yoneda products: unit, h2 on the bottom class of L") {
    FiniteModule l = paper_module("L");
    Resolution r = minimal_resolution(l, 4, 20);
    Resolution g = minimal_resolution(f2_over(Algebra::A2), 4, 20);
    // unit . iota0 = iota0
    BitVec u = yoneda_product(r, 0, 0, 0, g, 0, 0, 0);
    REQUIRE(u.size() == 1);
    CHECK(u.get(0));
    // iota0 . h2 lands on the unique class at (1,4)
    BitVec h2i = yoneda_product(r, 0, 0, 0, g, 1, 4, 0);
    REQUIRE(h2i.size() == 1);
    CHECK(h2i.get(0));
    // product edges agree with yoneda_product for h1 on the bottom class
    BitVec h1i = yoneda_product(r, 0, 0, 0, g, 1, 2, 0);
    ExtChart c = ext_chart(r, g);
    BitMatrix m = edge_matrix(c, 1, 0, 0);
    bool edge = m.rows() > 0 && m.get(0, 0);
    CHECK(h1i.size() == size_t(r.ext_dim(1, 2)));
    bool prod = h1i.size() > 0 && h1i.get(0);
    CHECK(edge == prod);
}

TEST_CASE("h_i h_j products commute on Ext_{A2}(F2)") {
    Resolution g = minimal_resolution(f2_over(Algebra::A2), 8, 30);
    ExtChart c = ext_chart(g, g);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int s = 0; s + 2 <= 8; ++s)
                for (int t = 0; t + (1 << i) + (1 << j) <= 30; ++t) {
                    BitMatrix a = gf2::mul(edge_matrix(c, i, s + 1, t + (1 << j)),
                                           edge_matrix(c, j, s, t));
                    BitMatrix b = gf2::mul(edge_matrix(c, j, s + 1, t + (1 << i)),
                                           edge_matrix(c, i, s, t));
                    CHECK(a == b);
                }
}

TEST_CASE("ext dims do not depend on the order of the input basis") {
    // two presentations of the same A(1)-module with swapped generator order
    FiniteModule a = direct_sum(f2_over(Algebra::A1), suspend(f2_over(Algebra::A1), 1));
    FiniteModule b = direct_sum(suspend(f2_over(Algebra::A1), 1), f2_over(Algebra::A1));
    Resolution ra = minimal_resolution(a, 8, 20);
    Resolution rb = minimal_resolution(b, 8, 20);
    for (int s = 0; s <= 8; ++s)
        for (int t = 0; t <= 20; ++t) CHECK(ra.ext_dim(s, t) == rb.ext_dim(s, t));
}

TEST_CASE("thread count does not change the resolution or its serialized chart") {
    FiniteModule l = paper_module("L");
    Resolution r1 = minimal_resolution(l, 6, 30, 1);
    Resolution r8 = minimal_resolution(l, 6, 30, 8);
    CHECK(r1.gen_deg == r8.gen_deg);
    for (int s = 1; s <= 6; ++s) CHECK(r1.d_img[size_t(s)] == r8.d_img[size_t(s)]);
    Resolution g = minimal_resolution(f2_over(Algebra::A2), 7, 34, 8);
    CHECK(chart_to_json(ext_chart(r1, g)) == chart_to_json(ext_chart(r8, g)));
}

TEST_CASE("truncated modules are rejected when the window exceeds their validity") {
    FiniteModule q = paper_module("HP1(20)");
    CHECK(q.valid_through < 60);
    CHECK_THROWS_AS(minimal_resolution(q, 4, 60), std::invalid_argument);
    CHECK_NOTHROW(minimal_resolution(q, 2, q.valid_through));
}

TEST_CASE("verify_complex certifies a small exact complex and flags mutations") {
    // ... -> Sigma^2 A(0) -> Sigma A(0) -Sq1-> A(0) -> F2 -> 0
    FiniteModule a0 = quotient_by_left_ideal(Algebra::A0, {});
    FiniteModule f2 = f2_over(Algebra::A0);
    REQUIRE(a0.total_dim() == 2);
    FiniteModule sa0 = suspend(a0, 1), s2a0 = suspend(a0, 2);
    ModuleMap aug = map_from_generator_images(a0, f2, {{0, unit_vec(1, 0)}});
    ModuleMap d1 = map_from_generator_images(sa0, a0, {{1, unit_vec(1, 0)}});
    ModuleMap d2 = map_from_generator_images(s2a0, sa0, {{2, unit_vec(1, 0)}});
    FiniteComplex c{f2, {a0, sa0, s2a0}, {aug, d1, d2}};
    VerifyReport rep = verify_complex(c, 0, 2);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.dd_zero);
    CHECK(rep.exact);
    CHECK(rep.inexact_degrees.empty());
    // zeroing a differential keeps d.d = 0 but breaks exactness
    FiniteComplex bad{f2, {a0, sa0, s2a0}, {aug, zero_map(sa0, a0), d2}};
    VerifyReport rep2 = verify_complex(bad, 0, 2);
    CHECK(rep2.dd_zero);
    CHECK(!rep2.exact);
    // over A(1), a Sq2 step after a Sq1 step gives d.d = Sq1 Sq2 != 0
    FiniteModule a1 = quotient_by_left_ideal(Algebra::A1, {});
    FiniteModule f2a1 = f2_over(Algebra::A1);
    FiniteModule sa1 = suspend(a1, 1), s3a1 = suspend(a1, 3);
    ModuleMap aug1 = map_from_generator_images(a1, f2a1, {{0, unit_vec(1, 0)}});
    ModuleMap e1 = map_from_generator_images(sa1, a1, {{1, unit_vec(1, 0)}});
    ModuleMap e2 = map_from_generator_images(s3a1, sa1, {{3, unit_vec(1, 0)}});
    FiniteComplex bad2{f2a1, {a1, sa1, s3a1}, {aug1, e1, e2}};
    VerifyReport rep3 = verify_complex(bad2, 0, 4);
    CHECK(!rep3.dd_zero);
}

namespace {
ModuleMap hand_map(const FiniteModule& src, const FiniteModule& tgt,
                   std::map<int, BitMatrix> mats) {
    ModuleMap f;
    f.source = src;
    f.target = tgt;
    f.mats.resize(src.names.size());
    for (int d = src.min_deg; d <= src.max_deg(); ++d) {
        auto it = mats.find(d);
        f.mats[size_t(d - src.min_deg)] =
            it != mats.end() ? it->second : BitMatrix(tgt.dim(d), src.dim(d));
    }
    return f;
}
}  // namespace

TEST_CASE("connecting_hom of the A(0) extension is the h0-periodicity isomorphism") {
    FiniteModule a0 = quotient_by_left_ideal(Algebra::A0, {});
    FiniteModule bot = f2_over(Algebra::A0);
    FiniteModule top = trivial_module(Algebra::A0, 1);
    // 0 -> Sigma F2 -> A(0) -> F2 -> 0
    BitMatrix one(1, 1);
    one.set(0, 0);
    ModuleMap i = hand_map(top, a0, {{1, one}});
    ModuleMap p = hand_map(a0, bot, {{0, one}});
    ShortExact ses{i, p};
    REQUIRE(check_ses(ses).ok);
    Resolution ra = minimal_resolution(top, 8, 10);
    Resolution rc = minimal_resolution(bot, 9, 10);
    ChartMap delta = connecting_hom(ses, ra, rc);
    // Ext^{s,s+1}(Sigma F2) = F2 maps isomorphically to Ext^{s+1,s+1}(F2)
    for (int s = 0; s <= 8; ++s) {
        REQUIRE(ra.ext_dim(s, s + 1) == 1);
        REQUIRE(rc.ext_dim(s + 1, s + 1) == 1);
        BitMatrix m = delta.matrix(s, s + 1, 1, 1);
        CHECK(m.get(0, 0));
    }
    LesReport les = les_check(ses, ra, minimal_resolution(a0, 8, 10), rc, 7, 9);
    for (const auto& f : les.failures) MESSAGE(f);
    CHECK(les.ok);
}

TEST_CASE("induced map of the identity is the identity on Ext") {
    FiniteModule m7 = restrict_algebra(paper_module("M7"), Algebra::A1);
    Resolution r = minimal_resolution(m7, 6, 20);
    ChartMap id = induced_map(identity_map(m7), r, r);
    for (int s = 0; s <= 6; ++s)
        for (int t = 0; t <= 20; ++t) {
            size_t n = size_t(r.ext_dim(s, t));
            if (!n) continue;
            BitMatrix m = id.matrix(s, t, n, n);
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) CHECK(m.get(a, b) == (a == b));
        }
    // zero map induces zero
    ChartMap z = induced_map(zero_map(m7, m7), r, r);
    for (const auto& [st, mat] : z.mats)
        for (size_t a = 0; a < mat.rows(); ++a) CHECK(mat.row(a).none());
}

TEST_CASE("empty window gives an empty chart") {
    Resolution r = minimal_resolution(f2_over(Algebra::A1), 0, -1);
    ExtChart c = ext_chart_dims_only(r);
    CHECK(c.dims.empty());
}
