// Library of the specific modules the computations run on.  Everything is
// built from constructors (presentations, tensor, quotient, dual) rather than
// hand-entered action tables wherever a construction is available.
#include "ext2/gmod.hpp"

#include <sstream>
#include <stdexcept>

namespace ext2 {

namespace {

FiniteModule from_text(const std::string& text) {
    std::istringstream in(text);
    std::string err;
    auto m = read_module(in, &err);
    if (!m) throw std::logic_error("internal module table: " + err);
    return *m;
}

// three-cell complex with Sq2 then Sq1 from the bottom
FiniteModule x3_module(Algebra a) {
    FiniteModule m = from_text(
        "algebra A\n"
        "basis x0:0 x2:2 x3:3\n"
        "sq 2 x0 = x2\n"
        "sq 1 x2 = x3\n");
    if (a != Algebra::A) m = restrict_algebra(m, a);
    return m;
}

FiniteModule m7_module(Algebra a) {
    FiniteModule m = from_text(
        "algebra A\n"
        "basis a0:0 a4:4 a6:6 a7:7\n"
        "sq 4 a0 = a4\n"
        "sq 2 a4 = a6\n"
        "sq 1 a6 = a7\n");
    if (a != Algebra::A) m = restrict_algebra(m, a);
    return m;
}

// 9-cell module of the smash-quotient construction: tensor X3 with M7 and
// divide by the image of the three-cell module mapping in on
// (0,6)+(2,4), (0,7)+(3,4), (2,7)+(3,6)
FiniteModule y_module() {
    FiniteModule t = tensor(x3_module(Algebra::A), m7_module(Algebra::A));
    auto coord = [&](int d, const std::string& name) {
        gf2::BitVec v(t.dim(d));
        int deg = 0;
        int i = basis_index_by_name(t, name, &deg);
        if (i < 0 || deg != d) throw std::logic_error("missing tensor class " + name);
        v.set(size_t(i));
        return v;
    };
    auto pair_sum = [&](int d, const std::string& a, const std::string& b) {
        gf2::BitVec v = coord(d, a);
        v ^= coord(d, b);
        return v;
    };
    auto q = quotient_by_span(t, {{6, pair_sum(6, "x0.a6", "x2.a4")},
                                  {7, pair_sum(7, "x0.a7", "x3.a4")},
                                  {9, pair_sum(9, "x2.a7", "x3.a6")}});
    return q.module;
}

// extension of the weight-<=8 dual span by a single degree-17 class; the only
// undetermined entry (Sq4 on the degree-13 class) is fixed by the validator
FiniteModule b_module() {
    FiniteModule base = dualize(bo_homology_negated(2, Algebra::A2));
    FiniteModule b = direct_sum(base, trivial_module(Algebra::A2, 17));
    // Sq2 sends the top class of the base (degree 15) to the new class
    b.gen_act[1][15].set(0, 0);
    FiniteModule chosen;
    int nvalid = 0;
    for (int bit = 0; bit < 2; ++bit) {
        FiniteModule cand = b;
        cand.gen_act[2][13].set(0, 0, bit != 0);
        cand.finalize();
        if (validate(cand).ok) {
            chosen = cand;
            ++nvalid;
        }
    }
    if (nvalid != 1)
        throw std::logic_error("extension class table not uniquely determined");
    return chosen;
}

}  // namespace

bool b_extends_to_a3() {
    FiniteModule b = paper_module("B");
    b.alg = Algebra::A3;
    b.num_gens = 4;
    b.gen_act.resize(4);
    b.finalize();
    // free Sq8 entries: the degree pairs (d, d+8) with cells on both sides
    std::vector<int> sources;
    for (int d = b.min_deg; d <= b.max_deg(); ++d)
        if (b.dim(d) && b.dim(d + 8)) sources.push_back(d);
    for (unsigned mask = 0; mask < (1u << sources.size()); ++mask) {
        FiniteModule cand = b;
        for (size_t i = 0; i < sources.size(); ++i)
            cand.gen_act[3][size_t(sources[i] - b.min_deg)].set(0, 0,
                                                               (mask >> i) & 1);
        cand.finalize();
        if (validate(cand).ok) return true;
    }
    return false;
}

FiniteModule paper_module(const std::string& name) {
    Algebra a2 = Algebra::A2;
    if (name == "M7") return m7_module(a2);
    if (name == "M421")
        return restrict_algebra(from_text("algebra A\n"
                                          "basis b0:0 b1:1 b3:3 b7:7\n"
                                          "sq 1 b0 = b1\n"
                                          "sq 2 b1 = b3\n"
                                          "sq 4 b3 = b7\n"),
                                a2);
    if (name == "X3") return x3_module(a2);
    if (name == "Y") return y_module();
    if (name == "DY") return dualize(y_module());
    if (name == "DX_summands")
        return direct_sum(suspend(dualize(y_module()), -4),
                          trivial_module(Algebra::A, 0));
    if (name == "L")
        return quotient_by_left_ideal(
            a2, {sq(a2, 4), multiply(sq(a2, 5), sq(a2, 1))});
    if (name == "A2modA1")
        return quotient_by_left_ideal(a2, {sq(a2, 1), sq(a2, 2)});
    if (name == "A2modSq1Sq5")
        return quotient_by_left_ideal(a2, {sq(a2, 1), sq(a2, 5)});
    if (name == "A2modSq1")
        return quotient_by_left_ideal(a2, {sq(a2, 1)});
    if (name == "A2modSq3")
        return quotient_by_left_ideal(a2, {sq(a2, 3)});
    if (name == "C25_26") {
        Presentation p;
        p.alg = a2;
        p.gen_degrees = {25, 26};
        p.relators = {{{sq(a2, 1), 0}},
                      {{sq(a2, 3), 0}, {sq(a2, 2), 1}}};
        return presented_module(p);
    }
    if (name == "B") return b_module();
    if (name == "bo2_cohomology") return dualize(bo_homology_negated(2, a2));
    if (name.rfind("HP1(", 0) == 0 || name.rfind("Q(", 0) == 0) {
        size_t open = name.find('(');
        int d = std::stoi(name.substr(open + 1, name.size() - open - 2));
        return truncated_projective(
            name[0] == 'H' ? StuntedKind::P1 : StuntedKind::Q, d);
    }
    throw std::invalid_argument("unknown module name '" + name + "'");
}

}  // namespace ext2
