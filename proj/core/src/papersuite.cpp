#include "ext2/papersuite.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <array>
#include <optional>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ext2 {

using gf2::BitMatrix;
using gf2::BitVec;
using json = nlohmann::ordered_json;

// ---- closed-form Ext dimension patterns ------------------------------------

int bo_pattern_dim(int stem, int s) {
    if (stem < 0 || s < 0) return 0;
    int i = stem / 8, r = stem % 8;
    switch (r) {
        case 0: return s >= 4 * i ? 1 : 0;
        case 1: return s == 4 * i + 1 ? 1 : 0;
        case 2: return s == 4 * i + 2 ? 1 : 0;
        case 4: return s >= 4 * i + 3 ? 1 : 0;
        default: return 0;
    }
}

int bsp_pattern_dim(int stem, int s) {
    if (stem < 0 || s < 0) return 0;
    int i = stem / 8, r = stem % 8;
    switch (r) {
        case 0: return s >= 4 * i ? 1 : 0;
        case 4: return s >= 4 * i + 1 ? 1 : 0;
        case 5: return s == 4 * i + 2 ? 1 : 0;
        case 6: return s == 4 * i + 3 ? 1 : 0;
        default: return 0;
    }
}

int closed_form_L_dim(int s, int t) {
    if (s < 0) return 0;
    int x = t - s;
    if (x < 0) return 0;
    int d = 0;
    // polynomial part on eight generators, 48-periodic
    static const int gens[8][2] = {{0, 0},  {3, 1},  {14, 2}, {15, 3},
                                   {17, 3}, {31, 5}, {34, 6}, {39, 7}};
    for (auto& g : gens)
        for (int k = 0; g[0] + 48 * k <= x; ++k)
            if (x == g[0] + 48 * k && s == g[1] + 8 * k) ++d;
    // bo families on 24-periodic translates of (5,1) and (21,3) ...
    for (int j = 0; 5 + 24 * j <= x; ++j)
        d += bo_pattern_dim(x - (5 + 24 * j), s - (1 + 4 * j));
    for (int j = 0; 21 + 24 * j <= x; ++j)
        d += bo_pattern_dim(x - (21 + 24 * j), s - (3 + 4 * j));
    // ... minus one bottom class per 48-period in the 21-stem family
    for (int k = 0; 21 + 48 * k <= x; ++k)
        if (x == 21 + 48 * k && s == 3 + 8 * k) --d;
    // bsp families on 24-periodic translates of (9,2) and (17,4)
    for (int j = 0; 9 + 24 * j <= x; ++j)
        d += bsp_pattern_dim(x - (9 + 24 * j), s - (2 + 4 * j));
    for (int j = 0; 17 + 24 * j <= x; ++j)
        d += bsp_pattern_dim(x - (17 + 24 * j), s - (4 + 4 * j));
    return d;
}

// ---- small module/map utilities --------------------------------------------

gf2::BitVec generator_vector(const FiniteModule& m, size_t g) {
    if (!m.cover) throw std::invalid_argument("generator_vector: module has no cover");
    int t = m.cover->gen_degrees.at(g);
    const auto& fb = m.cover->free_basis.at(size_t(t - m.min_deg));
    const BitMatrix& proj = m.cover->proj.at(size_t(t - m.min_deg));
    for (size_t i = 0; i < fb.size(); ++i)
        if (fb[i].first == 0 && fb[i].second == int(g)) return proj.column(i);
    throw std::logic_error("generator_vector: generator not found in free basis");
}

size_t tensor_block_offset(const FiniteModule& a, const FiniteModule& b, int d, int da) {
    size_t off = 0;
    for (int x = a.min_deg; x < da; ++x) off += a.dim(x) * b.dim(d - x);
    return off;
}

ModuleMap tensor_map_right(const ModuleMap& f, const FiniteModule& m) {
    ModuleMap g;
    g.source = tensor(f.source, m);
    g.target = tensor(f.target, m);
    g.mats.resize(g.source.names.size());
    for (int d = g.source.min_deg; d <= g.source.max_deg(); ++d) {
        BitMatrix mat(g.target.dim(d), g.source.dim(d));
        for (int da = f.source.min_deg; da <= f.source.max_deg(); ++da) {
            int db = d - da;
            size_t bd = m.dim(db);
            if (bd == 0 || f.source.dim(da) == 0) continue;
            size_t col0 = tensor_block_offset(f.source, m, d, da);
            size_t row0 = tensor_block_offset(f.target, m, d, da);
            BitMatrix fm = f.matrix(da);
            for (size_t i = 0; i < f.source.dim(da); ++i)
                for (size_t i2 = 0; i2 < fm.rows(); ++i2) {
                    if (!fm.get(i2, i)) continue;
                    for (size_t j = 0; j < bd; ++j)
                        mat.set(row0 + i2 * bd + j, col0 + i * bd + j);
                }
        }
        g.mats[size_t(d - g.source.min_deg)] = std::move(mat);
    }
    return g;
}

ModuleMap tensor_map_left(const FiniteModule& m, const ModuleMap& f) {
    ModuleMap g;
    g.source = tensor(m, f.source);
    g.target = tensor(m, f.target);
    g.mats.resize(g.source.names.size());
    for (int d = g.source.min_deg; d <= g.source.max_deg(); ++d) {
        BitMatrix mat(g.target.dim(d), g.source.dim(d));
        for (int da = m.min_deg; da <= m.max_deg(); ++da) {
            int db = d - da;
            size_t sd = f.source.dim(db);
            if (sd == 0 || m.dim(da) == 0) continue;
            size_t col0 = tensor_block_offset(m, f.source, d, da);
            size_t row0 = tensor_block_offset(m, f.target, d, da);
            size_t td = f.target.dim(db);
            BitMatrix fm = f.matrix(db);
            for (size_t i = 0; i < m.dim(da); ++i)
                for (size_t j = 0; j < sd; ++j)
                    for (size_t j2 = 0; j2 < fm.rows(); ++j2)
                        if (fm.get(j2, j)) mat.set(row0 + i * td + j2, col0 + i * sd + j);
        }
        g.mats[size_t(d - g.source.min_deg)] = std::move(mat);
    }
    return g;
}

ModuleMap corestrict(const SubmoduleResult& sub, const ModuleMap& f) {
    ModuleMap g;
    g.source = f.source;
    g.target = sub.module;
    g.mats.resize(f.source.names.size());
    for (int d = f.source.min_deg; d <= f.source.max_deg(); ++d) {
        BitMatrix inc = sub.inclusion.matrix(d);
        gf2::Solver sol(inc);
        BitMatrix mat(sub.module.dim(d), f.source.dim(d));
        BitMatrix fm = f.matrix(d);
        for (size_t j = 0; j < f.source.dim(d); ++j) {
            auto x = sol.solve(fm.column(j));
            if (!x) throw std::invalid_argument("corestrict: image escapes submodule");
            mat.add_column(j, *x);
        }
        g.mats[size_t(d - f.source.min_deg)] = std::move(mat);
    }
    return g;
}

ModuleMap factor_through_quotient(const QuotientResult& q, const ModuleMap& f) {
    ModuleMap g;
    g.source = q.module;
    g.target = f.target;
    g.mats.resize(q.module.names.size());
    for (int d = q.module.min_deg; d <= q.module.max_deg(); ++d) {
        // a section of the projection, then f on representatives
        BitMatrix proj = q.projection.matrix(d);
        gf2::Solver sol(proj);
        BitMatrix fm = f.matrix(d);
        BitMatrix mat(f.target.dim(d), q.module.dim(d));
        for (size_t j = 0; j < q.module.dim(d); ++j) {
            auto rep = sol.solve(unit_vec(q.module.dim(d), j));
            if (!rep) throw std::invalid_argument("factor_through_quotient: projection not onto");
            mat.add_column(j, fm.apply(*rep));
        }
        g.mats[size_t(d - q.module.min_deg)] = std::move(mat);
    }
    // well-definedness: f must kill ker(projection)
    ModuleMap recomposed = compose(g, q.projection);
    for (int d = f.source.min_deg; d <= f.source.max_deg(); ++d)
        if (!(recomposed.matrix(d) == f.matrix(d)))
            throw std::invalid_argument("factor_through_quotient: map does not kill the kernel");
    return g;
}

ModuleMap sum_into(const FiniteModule& ab, const ModuleMap& f, const ModuleMap& g) {
    if (!(f.target.names == g.target.names) && f.target.total_dim() != g.target.total_dim())
        throw std::invalid_argument("sum_into: target mismatch");
    ModuleMap h;
    h.source = ab;
    h.target = f.target;
    h.mats.resize(ab.names.size());
    for (int d = ab.min_deg; d <= ab.max_deg(); ++d) {
        size_t na = f.source.dim(d), nb = g.source.dim(d);
        if (na + nb != ab.dim(d))
            throw std::invalid_argument("sum_into: summand dimensions do not add up");
        BitMatrix mat(h.target.dim(d), ab.dim(d));
        BitMatrix fm = f.matrix(d), gm = g.matrix(d);
        for (size_t j = 0; j < na; ++j) mat.add_column(j, fm.column(j));
        for (size_t j = 0; j < nb; ++j) mat.add_column(na + j, gm.column(j));
        h.mats[size_t(d - ab.min_deg)] = std::move(mat);
    }
    return h;
}

// ---- shared algebra elements ------------------------------------------------

namespace {

Element sq_word(Algebra a, std::initializer_list<int> is) {
    Element e = unit(a);
    for (int i : is) e = multiply(e, sq(a, i));
    return e;
}

// apply a sum of words to a vector in degree d
BitVec act(const FiniteModule& m, const Element& e, int d, const BitVec& v) {
    return m.apply_element(e, d, v);
}

FiniteModule presented(Algebra a, std::vector<int> gens,
                       std::vector<std::vector<std::pair<Element, int>>> rels,
                       int max_degree = -1) {
    Presentation p;
    p.alg = a;
    p.gen_degrees = std::move(gens);
    p.relators = std::move(rels);
    return presented_module(p, max_degree);
}

}  // namespace

// ---- the eight-step exact complex resolving L -------------------------------

FiniteComplex eight_step_complex() {
    const Algebra A = Algebra::A2;
    Element s1 = sq(A, 1), s2 = sq(A, 2), s3 = sq(A, 3), s4 = sq(A, 4), s5 = sq(A, 5),
            s6 = sq(A, 6), s7 = sq(A, 7);

    FiniteModule L = paper_module("L");
    FiniteModule C0 = presented(A, {0}, {});
    FiniteModule C1 = presented(A, {4, 6}, {{{s1, 1}}, {{s2, 1}}});
    FiniteModule C2 = presented(A, {11, 16}, {{{s1, 0}}, {{s5, 0}}});
    FiniteModule C3 = presented(A, {18, 20}, {{{s3, 0}}});
    FiniteModule C4 = paper_module("C25_26");
    FiniteModule C5 = presented(A, {34, 36}, {{{s1, 0}}, {{s2, 0}}, {{s3, 1}}});
    FiniteModule C6 = presented(A, {40}, {});
    FiniteModule C7 = presented(A, {46, 52}, {{{s3, 0}}, {{s1, 1}}, {{s2, 1}}});
    FiniteModule C8 = presented(A, {56}, {{{s4, 0}}, {{sq_word(A, {5, 1}), 0}}});

    auto gv = [&](const FiniteModule& m, size_t g) { return generator_vector(m, g); };

    ModuleMap aug = map_from_generator_images(C0, L, {{0, gv(L, 0)}});
    ModuleMap d1 = map_from_generator_images(
        C1, C0,
        {{4, act(C0, s4, 0, gv(C0, 0))}, {6, act(C0, sq_word(A, {5, 1}), 0, gv(C0, 0))}});
    ModuleMap d2 = map_from_generator_images(
        C2, C1,
        {{11, act(C1, s7, 4, gv(C1, 0))},
         {16, gf2::BitVec(act(C1, add(sq_word(A, {6, 6}), sq_word(A, {7, 5})), 4, gv(C1, 0)) ^=
                          act(C1, sq_word(A, {4, 6}), 6, gv(C1, 1)))}});
    ModuleMap d3 = map_from_generator_images(
        C3, C2,
        {{18, gf2::BitVec(act(C2, s2, 16, gv(C2, 1)) ^= act(C2, s7, 11, gv(C2, 0)))},
         {20, gf2::BitVec(act(C2, s4, 16, gv(C2, 1)) ^=
                          act(C2, sq_word(A, {6, 3}), 11, gv(C2, 0)))}});
    ModuleMap d4 = map_from_generator_images(
        C4, C3,
        {{25, gf2::BitVec(act(C3, s7, 18, gv(C3, 0)) ^= act(C3, s5, 20, gv(C3, 1)))},
         {26, gf2::BitVec(act(C3, sq_word(A, {7, 1}), 18, gv(C3, 0)) ^=
                          act(C3, s6, 20, gv(C3, 1)))}});
    ModuleMap d5 = map_from_generator_images(
        C5, C4,
        {{34, act(C4, sq_word(A, {2, 7}), 25, gv(C4, 0))},
         {36, gf2::BitVec(act(C4, add(sq_word(A, {5, 6}), sq_word(A, {6, 5})), 25, gv(C4, 0)) ^=
                          act(C4, sq_word(A, {4, 6}), 26, gv(C4, 1)))}});
    ModuleMap d6 = map_from_generator_images(
        C6, C5,
        {{40, gf2::BitVec(act(C5, s4, 36, gv(C5, 1)) ^= act(C5, s6, 34, gv(C5, 0)))}});
    ModuleMap d7 = map_from_generator_images(
        C7, C6,
        {{46, act(C6, s6, 40, gv(C6, 0))}, {52, act(C6, sq_word(A, {7, 5}), 40, gv(C6, 0))}});
    ModuleMap d8 = map_from_generator_images(
        C8, C7,
        {{56, gf2::BitVec(act(C7, s4, 52, gv(C7, 1)) ^=
                          act(C7, add(sq_word(A, {4, 6}), sq_word(A, {6, 3, 1})), 46,
                              gv(C7, 0)))}});

    FiniteComplex c;
    c.target = L;
    c.terms = {C0, C1, C2, C3, C4, C5, C6, C7, C8};
    c.maps = {aug, d1, d2, d3, d4, d5, d6, d7, d8};
    return c;
}

FiniteComplex tensor_complex_with(const FiniteComplex& c, const FiniteModule& m) {
    FiniteComplex t;
    t.target = tensor(c.target, m);
    for (const auto& term : c.terms) t.terms.push_back(tensor(term, m));
    for (const auto& f : c.maps) t.maps.push_back(tensor_map_right(f, m));
    return t;
}

namespace {

// greedy minimal generators of `mod`, ascending degree, preferring Sq1-killed
// representatives whenever one exists outside the part already generated
std::vector<std::pair<int, gf2::BitVec>> greedy_generators(const FiniteModule& mod) {
    Element s1 = sq(mod.alg, 1);
    std::vector<std::pair<int, gf2::BitVec>> seeds;
    for (int d = mod.min_deg; d <= mod.max_deg(); ++d) {
        if (!mod.dim(d)) continue;
        for (;;) {
            size_t have = 0;
            gf2::Echelon ech(mod.dim(d));
            if (!seeds.empty()) {
                SubmoduleResult span = submodule_closure(mod, seeds);
                gf2::BitMatrix inc = span.inclusion.matrix(d);
                for (size_t j = 0; j < inc.cols(); ++j)
                    if (ech.insert(inc.column(j))) ++have;
            }
            if (have == mod.dim(d)) break;
            bool found = false;
            for (const gf2::BitVec& k : gf2::kernel(mod.action_sq(1, d)))
                if (!ech.contains(k)) {
                    seeds.emplace_back(d, k);
                    found = true;
                    break;
                }
            if (!found)
                for (size_t i = 0; i < mod.dim(d); ++i) {
                    gf2::BitVec e(mod.dim(d));
                    e.set(i);
                    if (!ech.contains(e)) {
                        seeds.emplace_back(d, e);
                        break;
                    }
                }
        }
    }
    return seeds;
}

}  // namespace

FiniteComplex mixed_cover_resolution(const FiniteModule& m, int steps,
                                     std::vector<std::vector<std::pair<int, bool>>>* shapes) {
    if (shapes) shapes->clear();
    const Algebra A = m.alg;
    Element s1 = sq(A, 1);
    FiniteComplex c;
    c.target = m;
    for (int step = 0; step <= steps; ++step) {
        const FiniteModule& prev = step ? c.terms.back() : m;
        std::vector<std::pair<int, gf2::BitVec>> seeds;
        std::optional<SubmoduleResult> K;
        if (step) {
            K = kernel_module(c.maps.back());
            seeds = greedy_generators(K->module);
        } else {
            seeds = greedy_generators(m);
        }
        Presentation p;
        p.alg = A;
        std::vector<std::pair<int, gf2::BitVec>> images;
        std::vector<std::pair<int, bool>> shape;
        for (size_t g = 0; g < seeds.size(); ++g) {
            auto [d, v] = seeds[g];
            gf2::BitVec w = K ? K->inclusion.apply(d, v) : v;
            bool sq1_kills = prev.apply_element(s1, d, w).none();
            p.gen_degrees.push_back(d);
            if (sq1_kills) p.relators.push_back({{s1, int(g)}});
            images.emplace_back(d, w);
            shape.emplace_back(d, sq1_kills);
        }
        FiniteModule F = presented_module(p);
        c.maps.push_back(map_from_generator_images(F, prev, images));
        c.terms.push_back(std::move(F));
        if (shapes) shapes->push_back(std::move(shape));
    }
    return c;
}

// ---- case framework ---------------------------------------------------------

namespace {

struct CaseDef {
    std::string id;
    std::string anchor;
    std::function<void(CaseResult&, int threads)> run;
};

void note_diff(CaseResult& r, std::string line) { r.diffs.push_back(std::move(line)); }

std::string bidegree(int s, int t) {
    return "(s=" + std::to_string(s) + ", t=" + std::to_string(t) + ")";
}

// compare resolution dims against an expected-dimension function over a window
void check_dims(CaseResult& r, const Resolution& res, int s_max, int t_max,
                const std::function<int(int, int)>& expected, const std::string& label,
                int stem_cap = -1) {
    for (int s = 0; s <= s_max; ++s)
        for (int t = res.module.min_deg + s; t <= t_max; ++t) {
            if (stem_cap >= 0 && t - s > stem_cap) continue;
            int got = res.ext_dim(s, t), want = expected(s, t);
            if (got != want)
                note_diff(r, label + " " + bidegree(s, t) + ": computed " +
                                 std::to_string(got) + ", expected " + std::to_string(want));
        }
}

void add_chart_artifact(CaseResult& r, const std::string& name, const ExtChart& c) {
    r.artifacts.emplace_back(name, chart_to_json(c));
}

// ---- case 1: the eight-step complex is exact --------------------------------

// single-term corrections d_s(gen) += theta * gen' that repair a failed
// verification, reported (not applied); empty unless verification failed
std::vector<std::string> erratum_candidates(const FiniteComplex& c, int t_min, int t_max) {
    std::vector<std::string> out;
    for (size_t s = 1; s < c.maps.size(); ++s) {
        const FiniteModule& src = c.terms[s];
        const FiniteModule& tgt = c.terms[s - 1];
        if (!src.cover || !tgt.cover) continue;
        for (size_t g = 0; g < src.cover->gen_degrees.size(); ++g) {
            int dg = src.cover->gen_degrees[g];
            std::vector<std::pair<int, BitVec>> base;
            for (size_t h = 0; h < src.cover->gen_degrees.size(); ++h)
                base.emplace_back(src.cover->gen_degrees[h],
                                  c.maps[s].apply(src.cover->gen_degrees[h],
                                                  generator_vector(src, h)));
            for (size_t g2 = 0; g2 < tgt.cover->gen_degrees.size(); ++g2) {
                int need = dg - tgt.cover->gen_degrees[g2];
                if (need < 0) continue;
                for (const Element& theta : algebra_basis(src.alg, need)) {
                    auto images = base;
                    images[g].second ^=
                        act(tgt, theta, tgt.cover->gen_degrees[g2], generator_vector(tgt, g2));
                    FiniteComplex mod = c;
                    try {
                        mod.maps[s] = map_from_generator_images(src, tgt, images);
                    } catch (const std::exception&) {
                        continue;
                    }
                    VerifyReport vr = verify_complex(mod, t_min, t_max);
                    if (vr.dd_zero && vr.exact)
                        out.push_back("ERRATUM-CANDIDATE: add " + render(theta) +
                                      " * (generator at " + std::to_string(
                                          tgt.cover->gen_degrees[g2]) +
                                      ") to d_" + std::to_string(s) + "(generator at " +
                                      std::to_string(dg) + ")");
                }
            }
        }
    }
    return out;
}

void case_resolution_exactness(CaseResult& r, int) {
    FiniteComplex c = eight_step_complex();
    VerifyReport vr = verify_complex(c, 0, 79);
    if (!vr.dd_zero || !vr.exact) {
        for (const auto& f : vr.failures) note_diff(r, f);
        for (auto& e : erratum_candidates(c, 0, 79)) note_diff(r, e);
    }
}

// ---- case 2: Ext over A(2) of L against the closed form ---------------------

void case_thm24_chart(CaseResult& r, int threads) {
    Resolution res = minimal_resolution(paper_module("L"), 16, 64, threads);
    Resolution f2 = minimal_resolution(trivial_module(Algebra::A2), 16, 64, threads);
    check_dims(r, res, 16, 64, closed_form_L_dim, "Ext(L)", 48);
    ExtChart chart = ext_chart(res, f2);
    chart.module = "L";
    add_chart_artifact(r, "ext_A2_L", chart);
}

// ---- case 3: 48-fold periodicity of the chart -------------------------------

// classes of the bo/bsp families with translate index j in {0,1}: these have
// no preimage under the (8,56) shift, so the shift is injective but fails to
// be onto exactly here
int family_entry_dim(int s, int t) {
    int x = t - s, d = 0;
    for (int j = 0; j <= 1; ++j) {
        d += bo_pattern_dim(x - (5 + 24 * j), s - (1 + 4 * j));
        d += bo_pattern_dim(x - (21 + 24 * j), s - (3 + 4 * j));
        d += bsp_pattern_dim(x - (9 + 24 * j), s - (2 + 4 * j));
        d += bsp_pattern_dim(x - (17 + 24 * j), s - (4 + 4 * j));
    }
    if (x == 21 && s == 3) --d;  // the kernel summand removes this bottom class
    return d;
}

void case_v2_periodicity(CaseResult& r, int threads) {
    Resolution res = minimal_resolution(paper_module("L"), 16, 104, threads);
    // the whole wide window against the (24,4)/(48,8)-periodic closed form
    check_dims(r, res, 16, 104, closed_form_L_dim, "Ext(L) wide", 96);
    for (int s = 0; s <= 8; ++s)
        for (int t = s; t <= s + 40 && t <= 48; ++t) {
            int a = res.ext_dim(s, t), b = res.ext_dim(s + 8, t + 56);
            int entries = family_entry_dim(s + 8, t + 56);
            if (b - a != entries)
                note_diff(r, "periodicity " + bidegree(s, t) + ": dim " + std::to_string(a) +
                                 " vs dim " + std::to_string(b) + " at " +
                                 bidegree(s + 8, t + 56) + ", family entries " +
                                 std::to_string(entries));
            else if (a != b && entries == 0)
                note_diff(r, "periodicity " + bidegree(s, t) + ": unexplained defect");
        }
    ExtChart chart = ext_chart_dims_only(res);
    chart.module = "L";
    add_chart_artifact(r, "ext_A2_L_wide", chart);
}

// ---- case 4: the S-dual window over A(3) ------------------------------------

// compare resolution dims against a sparse expected table over given stems
void check_stems(CaseResult& r, const Resolution& res, const std::string& label,
                 const std::map<std::pair<int, int>, int>& expected, int x_min, int x_max,
                 int s_max) {
    for (int x = x_min; x <= x_max; ++x)
        for (int s = 0; s <= s_max; ++s) {
            int got = res.ext_dim(s, x + s);
            auto it = expected.find({x, s});
            int want = it == expected.end() ? 0 : it->second;
            if (got != want)
                note_diff(r, label + " stem " + std::to_string(x) + " filtration " +
                                 std::to_string(s) + ": computed " + std::to_string(got) +
                                 ", expected " + std::to_string(want));
        }
}

void case_dual_window(CaseResult& r, int threads) {
    // the quotient A//A(3) is 15-connected, so over modules bounded below at
    // -10 the A(3) chart agrees with the full-algebra chart for t - s <= 4;
    // the published window is exactly that range
    FiniteModule DY3 = restrict_algebra(paper_module("DY"), Algebra::A3);
    QuotientResult quo = quotient_by_span(DY3, {{0, unit_vec(DY3.dim(0), 0)}});
    FiniteModule F2 = trivial_module(Algebra::A3);
    ModuleMap inc = zero_map(F2, DY3);
    inc.mats[0].set(0, 0);
    ShortExact ses{inc, quo.projection};
    auto sr = check_ses(ses);
    if (!sr.ok)
        for (auto& f : sr.failures) note_diff(r, "ses: " + f);

    Resolution rB = minimal_resolution(DY3, 8, 12, threads);
    Resolution rC = minimal_resolution(quo.module, 8, 12, threads);
    Resolution rA = minimal_resolution(F2, 8, 12, threads);

    // decoded chart of the middle term (stems 2..4, filtrations <= 6)
    check_stems(r, rB, "Ext(DY)",
                {{{3, 1}, 1}, {{3, 2}, 2}, {{3, 3}, 2}, {{3, 4}, 2}, {{3, 5}, 1}, {{3, 6}, 1},
                 {{4, 1}, 1}, {{4, 2}, 2}, {{4, 3}, 1}},
                2, 4, 6);
    // decoded chart of the cofiber term
    check_stems(r, rC, "Ext(DY/top)",
                {{{2, 2}, 1}, {{3, 1}, 1}, {{3, 2}, 1}, {{3, 3}, 1}, {{3, 4}, 2}, {{3, 5}, 1},
                 {{3, 6}, 1}, {{4, 1}, 1}, {{4, 2}, 2}, {{4, 3}, 1}},
                2, 4, 6);
    // the sphere chart in the same window
    std::map<std::pair<int, int>, int> sphere{{{1, 1}, 1}, {{2, 2}, 1},
                                              {{3, 1}, 1}, {{3, 2}, 1}, {{3, 3}, 1}};
    for (int s = 0; s <= 6; ++s) sphere[{0, s}] = 1;
    check_stems(r, rA, "Ext(F2)", sphere, 0, 4, 6);

    // delta(nu) = B': the connecting map carries Ext^{1,4}(F2) onto Ext^{2,4}
    // of the cofiber term (the class at stem 2, filtration 2)
    ChartMap delta = connecting_hom(ses, rA, rC);
    if (gf2::rank(delta.matrix(1, 4, size_t(rC.ext_dim(2, 4)), size_t(rA.ext_dim(1, 4)))) != 1)
        note_diff(r, "delta at (s=1,t=4) is not an isomorphism onto Ext^{2,4} of the cofiber");
    // 2nu is the image of a class of the 2-dimensional Ext^{2,5}(DY); the LES
    // pins which one (the circled class), the rank-1 statement is the check
    ChartMap istar = induced_map(inc, rA, rB);
    if (rB.ext_dim(2, 5) != 2 ||
        gf2::rank(istar.matrix(2, 5, size_t(rA.ext_dim(2, 5)), size_t(rB.ext_dim(2, 5)))) != 1)
        note_diff(r, "image of Ext^{2,5}(DY) in Ext^{2,5}(F2) is not rank 1");
    auto lr = les_check(ses, rA, rB, rC, 7, 11);
    if (!lr.ok)
        for (auto& f : lr.failures) note_diff(r, "les: " + f);

    ExtChart cb = ext_chart_dims_only(rB);
    cb.module = "DY";
    add_chart_artifact(r, "ext_A3_DY", cb);
}

// ---- case 5: the A(1) charts of the S-dual summands -------------------------

void case_dx_charts(CaseResult& r, int threads) {
    FiniteModule DX = restrict_algebra(paper_module("DX_summands"), Algebra::A1);
    Resolution res = minimal_resolution(DX, 9, 12, threads);
    std::map<std::pair<int, int>, int> want;
    want[{-14, 0}] = 1;
    for (int s = 1; s <= 8; ++s) want[{-12, s}] = 1;
    want[{-8, 0}] = want[{-8, 1}] = 1;
    for (int s = 2; s <= 8; ++s) want[{-8, s}] = 2;
    want[{-7, 0}] = want[{-7, 1}] = want[{-7, 3}] = 1;
    want[{-6, 1}] = want[{-6, 2}] = want[{-6, 4}] = 1;
    want[{-4, 2}] = 1;
    want[{-4, 3}] = want[{-4, 4}] = 2;
    for (int s = 5; s <= 8; ++s) want[{-4, s}] = 3;
    want[{0, 0}] = want[{0, 1}] = want[{0, 2}] = 1;
    want[{0, 3}] = 2;
    want[{0, 4}] = want[{0, 5}] = 3;
    for (int s = 6; s <= 8; ++s) want[{0, s}] = 4;
    want[{1, 1}] = want[{1, 4}] = want[{1, 5}] = want[{1, 7}] = 1;
    want[{2, 2}] = want[{2, 5}] = want[{2, 6}] = want[{2, 8}] = 1;
    check_stems(r, res, "Ext_A1(DX)", want, -14, 2, 8);
    ExtChart c = ext_chart_dims_only(res);
    c.module = "DX";
    add_chart_artifact(r, "ext_A1_DX", c);

    // the smash square: one bo pattern from (0,0) and 15 more starting in
    // filtrations 3..12, counted by tower starts in stem 0 and cross-checked
    // against the stem-1 dots (one per tower bottom, shifted by (1,1))
    FiniteModule T = restrict_algebra(
        tensor(paper_module("DX_summands"), paper_module("DX_summands")), Algebra::A1);
    Resolution rt = minimal_resolution(T, 14, 15, threads);
    for (int x = -3; x <= -1; ++x)
        for (int s = 0; s <= 13; ++s)
            if (rt.ext_dim(s, x + s) != 0)
                note_diff(r, "square: unexpected class at stem " + std::to_string(x) +
                                 " filtration " + std::to_string(s));
    int total = 0, in_range = 0;
    std::vector<int> starts(15, 0);
    for (int s = 0; s <= 13; ++s) {
        int d = rt.ext_dim(s, s) - (s ? rt.ext_dim(s - 1, s - 1) : 0);
        if (d < 0) note_diff(r, "square: stem-0 tower count decreases at s=" + std::to_string(s));
        starts[size_t(s > 14 ? 14 : s)] = d;
        total += d;
        if (s >= 3 && s <= 12) in_range += d;
    }
    if (starts[0] != 1 || total != 16 || in_range != 15)
        note_diff(r, "square: expected 1 + 15 bo towers (starts in 3..12), found start(0)=" +
                         std::to_string(starts[0]) + ", total=" + std::to_string(total) +
                         ", in 3..12: " + std::to_string(in_range));
    if (rt.ext_dim(14, 14) != rt.ext_dim(13, 13))
        note_diff(r, "square: tower count not yet stable at the top of the window");
    for (int s = 1; s <= 13; ++s)
        if (rt.ext_dim(s, s + 1) != starts[size_t(s - 1)])
            note_diff(r, "square: stem-1 dot count at filtration " + std::to_string(s) +
                             " is " + std::to_string(rt.ext_dim(s, s + 1)) +
                             ", expected one per tower bottom = " +
                             std::to_string(starts[size_t(s - 1)]));
}

// ---- case 6: L as an extension of a cyclic piece by a shifted Y -------------

void case_cyclic_extension(CaseResult& r, int) {
    const Algebra A = Algebra::A2;
    FiniteModule L = paper_module("L");
    BitVec g = generator_vector(L, 0);
    BitVec v = act(L, sq(A, 1), 0, g);
    if (v.none()) note_diff(r, "Sq1 on the generator vanishes");

    const std::vector<std::pair<std::string, Element>> nonzero_ops = {
        {"Sq2", sq(A, 2)},        {"Sq3", sq(A, 3)},
        {"Sq4", sq(A, 4)},        {"Sq4Sq2", sq_word(A, {4, 2})},
        {"Sq5Sq2", sq_word(A, {5, 2})}, {"Sq6Sq2", sq_word(A, {6, 2})},
        {"Sq6Sq3", sq_word(A, {6, 3})}, {"Sq7Sq3", sq_word(A, {7, 3})}};
    for (const auto& [name, op] : nonzero_ops)
        if (act(L, op, 1, v).none())
            note_diff(r, name + " vanishes on Sq1(generator), expected nonzero");
    for (int k : {5, 6})
        if (!act(L, sq(A, k), 1, v).none())
            note_diff(r, "Sq" + std::to_string(k) + " nonzero on Sq1(generator), expected zero");

    // the submodule generated by Sq1(generator) is a suspension of Y
    SubmoduleResult sub = submodule_closure(L, {{1, v}});
    std::set<int> y_cells{1, 3, 4, 5, 7, 8, 9, 10, 11};
    for (int d = 0; d <= L.max_deg(); ++d) {
        size_t want = y_cells.count(d) ? 1 : 0;
        if (sub.module.dim(d) != want)
            note_diff(r, "submodule dim at degree " + std::to_string(d) + " is " +
                             std::to_string(sub.module.dim(d)) + ", expected " +
                             std::to_string(want));
    }

    // the quotient is cyclic with the seven-element coideal basis
    std::vector<std::pair<int, BitVec>> span;
    for (int d = sub.module.min_deg; d <= sub.module.max_deg(); ++d) {
        BitMatrix inc = sub.inclusion.matrix(d);
        for (size_t j = 0; j < inc.cols(); ++j) span.emplace_back(d, inc.column(j));
    }
    QuotientResult quo = quotient_by_span(L, span);
    std::set<int> coideal{0, 2, 3, 6, 7, 9, 13};
    for (int d = 0; d <= L.max_deg(); ++d) {
        size_t want = coideal.count(d) ? 1 : 0;
        if (quo.module.dim(d) != want)
            note_diff(r, "quotient dim at degree " + std::to_string(d) + " is " +
                             std::to_string(quo.module.dim(d)) + ", expected " +
                             std::to_string(want));
    }
    BitVec bottom = unit_vec(quo.module.dim(0), 0);
    SubmoduleResult cyc = submodule_closure(quo.module, {{0, bottom}});
    if (cyc.module.total_dim() != quo.module.total_dim())
        note_diff(r, "quotient is not cyclic on its bottom class");
    const std::vector<std::pair<std::string, Element>> coideal_ops = {
        {"Sq2", sq(A, 2)},
        {"Sq3", sq(A, 3)},
        {"Sq4Sq2", sq_word(A, {4, 2})},
        {"Sq4Sq3", sq_word(A, {4, 3})},
        {"Sq6Sq3", sq_word(A, {6, 3})},
        {"Sq4Sq6Sq3", sq_word(A, {4, 6, 3})}};
    for (const auto& [name, op] : coideal_ops)
        if (act(quo.module, op, 0, bottom).none())
            note_diff(r, name + " vanishes on the quotient generator, expected nonzero");
}

// ---- case 8: the kernel-module four-term sequence and ker(d2*) --------------

void case_p_sequence(CaseResult& r, int threads) {
    const Algebra A = Algebra::A2;
    Element s1 = sq(A, 1), s2 = sq(A, 2), s4 = sq(A, 4), s5 = sq(A, 5), s7 = sq(A, 7);
    FiniteComplex c = eight_step_complex();
    const FiniteModule& C1 = c.terms[1];
    SubmoduleResult P = kernel_module(c.maps[1]);

    FiniteModule Bp = presented(A, {11}, {{{s1, 0}}, {{s5, 0}}});
    BitVec w11 = C1.apply_element(s7, 4, generator_vector(C1, 0));
    ModuleMap d2P = corestrict(P, map_from_generator_images(Bp, C1, {{11, w11}}));

    // i : Sigma^24 M7 -> Sigma^11 A2/(Sq1,Sq5), bottom to (Sq6Sq7 + Sq4Sq6Sq3)
    FiniteModule M7 = suspend(paper_module("M7"), 24);
    BitVec w24 = Bp.apply_element(
        add(sq_word(A, {6, 7}), sq_word(A, {4, 6, 3})), 11, generator_vector(Bp, 0));
    ModuleMap i;
    i.source = M7;
    i.target = Bp;
    i.mats.resize(M7.names.size());
    const std::map<int, Element> chain{
        {24, unit(A)}, {28, s4}, {30, multiply(s2, s4)}, {31, multiply(s1, multiply(s2, s4))}};
    for (int d = M7.min_deg; d <= M7.max_deg(); ++d) {
        BitMatrix m(Bp.dim(d), M7.dim(d));
        if (M7.dim(d)) m.add_column(0, Bp.apply_element(chain.at(d), 24, w24));
        i.mats[size_t(d - M7.min_deg)] = std::move(m);
    }
    if (!i.check().ok) note_diff(r, "inclusion of the shifted M7 is not a module map");
    for (int d = 24; d <= 31; ++d)
        if (M7.dim(d) && gf2::rank(i.matrix(d)) != 1)
            note_diff(r, "inclusion not injective at degree " + std::to_string(d));

    // exactness of 0 -> Sigma^24 M7 -> Bp -> P -> Sigma^16 M421 -> 0
    for (const auto& m : compose(d2P, i).mats)
        for (size_t k = 0; k < m.rows(); ++k)
            if (!m.row(k).none()) note_diff(r, "d2 . i is nonzero");
    for (int d = Bp.min_deg; d <= Bp.max_deg(); ++d) {
        size_t ri = (d >= 24 && d <= 31) ? gf2::rank(i.matrix(d)) : 0;
        if (gf2::rank(d2P.matrix(d)) + ri != Bp.dim(d))
            note_diff(r, "middle exactness fails at degree " + std::to_string(d));
    }
    std::vector<std::pair<int, BitVec>> span1, span2;
    for (int d = M7.min_deg; d <= M7.max_deg(); ++d) {
        BitMatrix m = i.matrix(d);
        for (size_t j = 0; j < m.cols(); ++j) span1.emplace_back(d, m.column(j));
    }
    for (int d = Bp.min_deg; d <= Bp.max_deg(); ++d) {
        BitMatrix m = d2P.matrix(d);
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m.column(j).none()) span2.emplace_back(d, m.column(j));
    }
    QuotientResult Kq = quotient_by_span(Bp, span1);
    QuotientResult Qt = quotient_by_span(P.module, span2);
    ShortExact ses1{i, Kq.projection};
    ShortExact ses2{factor_through_quotient(Kq, d2P), Qt.projection};
    for (auto* s : {&ses1, &ses2}) {
        auto rep = check_ses(*s);
        if (!rep.ok)
            for (auto& f : rep.failures) note_diff(r, "ses: " + f);
    }
    // the cokernel is the shifted M421: cells 16, 17, 19, 23 with Sq1, Sq2Sq1,
    // Sq4Sq2Sq1 nonzero from the bottom class, hit by the stated q-image
    for (int d = 16; d <= 23; ++d) {
        size_t want = (d == 16 || d == 17 || d == 19 || d == 23) ? 1 : 0;
        if (Qt.module.dim(d) != want)
            note_diff(r, "cokernel dim at degree " + std::to_string(d) + " is " +
                             std::to_string(Qt.module.dim(d)));
    }
    BitVec bot = unit_vec(Qt.module.dim(16), 0);
    for (auto& [name, op] : std::vector<std::pair<std::string, Element>>{
             {"Sq1", s1},
             {"Sq2Sq1", multiply(s2, s1)},
             {"Sq4Sq2Sq1", multiply(s4, multiply(s2, s1))}})
        if (act(Qt.module, op, 16, bot).none())
            note_diff(r, name + " vanishes on the cokernel bottom class");
    {
        // q((Sq6Sq6 + Sq7Sq5) I4 + Sq4Sq6 I6) is the bottom generator
        BitVec v16 = C1.apply_element(add(sq_word(A, {6, 6}), sq_word(A, {7, 5})), 4,
                                      generator_vector(C1, 0));
        v16 ^= C1.apply_element(sq_word(A, {4, 6}), 6, generator_vector(C1, 1));
        gf2::Solver sol(P.inclusion.matrix(16));
        auto in_p = sol.solve(v16);
        if (!in_p)
            note_diff(r, "stated q-preimage does not lie in the kernel submodule");
        else if (Qt.projection.apply(16, *in_p).none())
            note_diff(r, "stated q-preimage maps to zero in the cokernel");
    }

    const int SM = 11, TM = 46;
    Resolution rM7 = minimal_resolution(M7, SM, TM, threads);
    Resolution rKq = minimal_resolution(Kq.module, SM, TM, threads);
    Resolution rP = minimal_resolution(P.module, SM, TM, threads);
    Resolution rQt = minimal_resolution(Qt.module, SM, TM, threads);
    Resolution rBp = minimal_resolution(Bp, SM, TM, threads);
    Resolution f2 = minimal_resolution(trivial_module(A), SM, TM, threads);
    for (auto& [label, rep] : std::vector<std::pair<const char*, LesReport>>{
             {"les1", les_check(ses1, rM7, rBp, rKq, SM - 1, TM)},
             {"les2", les_check(ses2, rKq, rP, rQt, SM - 1, TM)}})
        if (!rep.ok)
            for (auto& f : rep.failures) note_diff(r, std::string(label) + ": " + f);

    // delta(iota24) = h2^2 iota16, via the composite of the two connecting
    // maps; forced because Ext^{2,24}(P) = 0
    if (rP.ext_dim(2, 24) != 0) note_diff(r, "Ext^{2,24}(P) expected to vanish");
    ChartMap de1 = connecting_hom(ses1, rM7, rKq);
    ChartMap de2 = connecting_hom(ses2, rKq, rQt);
    BitMatrix dd = gf2::mul(de2.matrix(1, 24, size_t(rQt.ext_dim(2, 24)), size_t(rKq.ext_dim(1, 24))),
                            de1.matrix(0, 24, size_t(rKq.ext_dim(1, 24)), size_t(rM7.ext_dim(0, 24))));
    if (rQt.ext_dim(2, 24) != 1 || gf2::rank(dd) != 1)
        note_diff(r, "composite connecting map does not carry iota24 to the (2,24) class");
    if (yoneda_product(rQt, 0, 16, 0, f2, 1, 4, 0).none() ||
        yoneda_product(rQt, 1, 20, 0, f2, 1, 4, 0).none())
        note_diff(r, "the (2,24) class of the cokernel is not h2^2 times iota16");

    // d2^* surjective; ker(d2*) = shifted chart minus the removed families
    ChartMap d2s = induced_map(d2P, rBp, rP);
    for (int s = 0; s + 2 <= SM; ++s)
        for (int t = s; t <= TM; ++t) {
            size_t rows = size_t(rBp.ext_dim(s, t)), cols = size_t(rP.ext_dim(s, t));
            BitMatrix m = d2s.matrix(s, t, rows, cols);
            size_t rk = gf2::rank(m);
            if (rk != rows)
                note_diff(r, "d2* not surjective at " + bidegree(s, t));
            int xl = t - (s + 2);
            int expP = closed_form_L_dim(s + 2, t) - bo_pattern_dim(xl - 5, s + 1);
            if (rP.ext_dim(s, t) != expP)
                note_diff(r, "Ext(P) " + bidegree(s, t) + ": computed " +
                                 std::to_string(rP.ext_dim(s, t)) + ", expected " +
                                 std::to_string(expP));
            int expK = expP - bsp_pattern_dim(xl - 9, s);
            if (int(cols) - int(rk) != expK)
                note_diff(r, "ker(d2*) " + bidegree(s, t) + ": computed " +
                                 std::to_string(int(cols) - int(rk)) + ", expected " +
                                 std::to_string(expK));
        }
    ExtChart cp = ext_chart_dims_only(rP);
    cp.module = "P";
    add_chart_artifact(r, "ext_A2_P", cp);
}

// ---- case 7: chain-map liftings behind the product computations -------------

// do two maps with the same source agree in every degree of the source?
bool maps_equal(const ModuleMap& f, const ModuleMap& g, CaseResult& r,
                const std::string& label) {
    bool ok = true;
    for (int d = f.source.min_deg; d <= f.source.max_deg(); ++d)
        if (!(f.matrix(d) == g.matrix(d))) {
            note_diff(r, label + ": maps differ at degree " + std::to_string(d));
            ok = false;
        }
    return ok;
}

// [f; g] : X -> A (+) B for f : X -> A, g : X -> B, with ab = direct_sum(A, B)
ModuleMap stack_into(const FiniteModule& ab, const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h;
    h.source = f.source;
    h.target = ab;
    h.mats.resize(h.source.names.size());
    for (int d = h.source.min_deg; d <= h.source.max_deg(); ++d) {
        BitMatrix top = f.matrix(d), bot = g.matrix(d);
        BitMatrix m(ab.dim(d), h.source.dim(d));
        for (size_t j = 0; j < m.cols(); ++j) {
            BitVec col(m.rows());
            BitVec tc = top.column(j), bc = bot.column(j);
            for (size_t i = 0; i < top.rows(); ++i)
                if (tc.get(i)) col.set(i);
            for (size_t i = 0; i < bot.rows(); ++i)
                if (bc.get(i)) col.set(top.rows() + i);
            m.add_column(j, col);
        }
        h.mats[size_t(d - h.source.min_deg)] = std::move(m);
    }
    return h;
}

void case_liftings(CaseResult& r, int threads) {
    const Algebra A = Algebra::A2;
    Element s1 = sq(A, 1), s2 = sq(A, 2), s3 = sq(A, 3), s4 = sq(A, 4), s5 = sq(A, 5),
            s7 = sq(A, 7);

    // (a) the f4/f5 lifting of the degree-20 cocycle through the eight-step
    // complex, realizing the square of the (2,16) class
    FiniteComplex c = eight_step_complex();
    const FiniteModule &C3 = c.terms[3], &C4 = c.terms[4], &C5 = c.terms[5];
    FiniteModule S20C0 = presented(A, {20}, {});
    FiniteModule S20C1 = presented(A, {24, 26}, {{{s1, 1}}, {{s2, 1}}});
    FiniteModule S20C2 = presented(A, {31, 36}, {{{s1, 0}}, {{s5, 0}}});
    ModuleMap d1p = map_from_generator_images(
        S20C1, S20C0,
        {{24, S20C0.apply_element(s4, 20, generator_vector(S20C0, 0))},
         {26, S20C0.apply_element(multiply(s5, s1), 20, generator_vector(S20C0, 0))}});
    BitVec w36 = S20C1.apply_element(add(sq_word(A, {6, 6}), sq_word(A, {7, 5})), 24,
                                     generator_vector(S20C1, 0));
    w36 ^= S20C1.apply_element(sq_word(A, {4, 6}), 26, generator_vector(S20C1, 1));
    ModuleMap d2p = map_from_generator_images(
        S20C2, S20C1,
        {{31, S20C1.apply_element(s7, 24, generator_vector(S20C1, 0))}, {36, w36}});
    ModuleMap f3 = map_from_generator_images(
        C3, S20C0, {{18, BitVec(S20C0.dim(18))}, {20, generator_vector(S20C0, 0)}});
    BitVec f4i26 = S20C1.apply_element(s2, 24, generator_vector(S20C1, 0));
    f4i26 ^= generator_vector(S20C1, 1);
    ModuleMap f4 = map_from_generator_images(
        C4, S20C1,
        {{25, S20C1.apply_element(s1, 24, generator_vector(S20C1, 0))}, {26, f4i26}});
    // f5 is the identity on the degree-36 generator; its degree-34 component
    // is forced by the square and solved for here
    BitVec rhs34 = f4.apply(34, c.maps[5].apply(34, generator_vector(C5, 0)));
    auto y34sol = gf2::Solver(d2p.matrix(34)).solve(rhs34);
    if (!y34sol) note_diff(r, "no degree-34 component of f5 satisfies the square");
    ModuleMap f5 = map_from_generator_images(
        C5, S20C2,
        {{34, y34sol ? *y34sol : BitVec(S20C2.dim(34))}, {36, generator_vector(S20C2, 1)}});
    maps_equal(compose(f3, c.maps[4]), compose(d1p, f4), r, "square d1'.f4 = f3.d4");
    maps_equal(compose(f4, c.maps[5]), compose(d2p, f5), r, "square d2'.f5 = f4.d5");

    // the read-off is the coefficient of the degree-36 generator modulo
    // decomposables; it equals 1 for this lift and is invariant over every
    // valid (f4, f5), so the product class is nonzero
    gf2::Echelon dec36(S20C2.dim(36));
    for (int i = 1; i <= 5; ++i) {
        BitMatrix a = S20C2.action_sq(i, 36 - i);
        for (size_t j = 0; j < a.cols(); ++j) dec36.insert(a.column(j));
    }
    BitVec g36 = generator_vector(S20C2, 1);
    if (dec36.contains(g36)) note_diff(r, "degree-36 generator is decomposable");
    auto readoff = [&](const BitVec& v) -> int {
        if (dec36.contains(v)) return 0;
        BitVec w = v;
        w ^= g36;
        if (dec36.contains(w)) return 1;
        return -1;  // not in the generator line modulo decomposables
    };
    if (readoff(f5.apply(36, generator_vector(C5, 1))) != 1)
        note_diff(r, "read-off of the lifted cocycle is not 1");
    // homogeneous ambiguity of f5(iota36): the kernel of d2' in degree 36
    for (const BitVec& k : gf2::kernel(d2p.matrix(36)))
        if (readoff(k) != 0)
            note_diff(r, "read-off not invariant under the degree-36 cocycle ambiguity");
    // homogeneous ambiguity of f4: solutions of d1'.f4h = 0, lifted through d2'
    {
        std::vector<ModuleMap> hom = hom_space(C4, S20C1);
        std::vector<size_t> flat_sizes;
        size_t total = 0;
        for (int d = C4.min_deg; d <= C4.max_deg(); ++d) total += S20C0.dim(d) * C4.dim(d);
        BitMatrix sys(total, hom.size());
        for (size_t i = 0; i < hom.size(); ++i) {
            ModuleMap comp = compose(d1p, hom[i]);
            BitVec col(total);
            size_t pos = 0;
            for (int d = C4.min_deg; d <= C4.max_deg(); ++d) {
                BitMatrix m = comp.matrix(d);
                for (size_t rr = 0; rr < m.rows(); ++rr)
                    for (size_t cc = 0; cc < m.cols(); ++cc, ++pos)
                        if (m.get(rr, cc)) col.set(pos);
            }
            sys.add_column(i, col);
        }
        gf2::Solver d2s34(d2p.matrix(34)), d2s36(d2p.matrix(36));
        for (const BitVec& coeff : gf2::kernel(sys)) {
            ModuleMap f4h = zero_map(C4, S20C1);
            for (size_t i = 0; i < hom.size(); ++i)
                if (coeff.get(i))
                    for (size_t k = 0; k < f4h.mats.size(); ++k)
                        for (size_t rr = 0; rr < f4h.mats[k].rows(); ++rr) {
                            BitVec row = hom[i].mats[k].row(rr);
                            for (size_t cc = 0; cc < row.size(); ++cc)
                                if (row.get(cc)) f4h.mats[k].set(rr, cc,
                                                                !f4h.mats[k].get(rr, cc));
                        }
            auto y34 = d2s34.solve(f4h.apply(34, c.maps[5].apply(34, generator_vector(C5, 0))));
            auto y36 = d2s36.solve(f4h.apply(36, c.maps[5].apply(36, generator_vector(C5, 1))));
            if (!y34 || !y36)
                note_diff(r, "homogeneous f4-perturbation does not lift through d2'");
            else if (readoff(*y36) != 0)
                note_diff(r, "read-off not invariant under the f4 ambiguity");
        }
    }

    // (b) the chain-level comultiplication: the stated f0/f1/f2 lift the
    // multiplication through the tensor square of the expanded resolution
    std::vector<std::vector<std::pair<int, bool>>> cshapes;
    FiniteComplex mc2 = mixed_cover_resolution(suspend(paper_module("L"), 3), 2, &cshapes);
    if (cshapes.size() < 2 ||
        cshapes[0] != std::vector<std::pair<int, bool>>{{3, false}} ||
        cshapes[1] != std::vector<std::pair<int, bool>>{{7, false}, {9, true}})
        note_diff(r, "expanded resolution of the shifted module does not start with a "
                     "free degree-3 cover and covers on degrees 7 (free) and 9 (Sq1)");
    const FiniteModule &Cc0 = mc2.terms[0], &Cc1 = mc2.terms[1], &Cc2 = mc2.terms[2];
    const ModuleMap &dC1 = mc2.maps[1], &dC2 = mc2.maps[2];
    if (dC1.apply(7, generator_vector(Cc1, 0)) !=
            Cc0.apply_element(s4, 3, generator_vector(Cc0, 0)) ||
        dC1.apply(9, generator_vector(Cc1, 1)) !=
            Cc0.apply_element(multiply(s5, s1), 3, generator_vector(Cc0, 0)))
        note_diff(r, "d1 of the expanded resolution is not (Sq4, Sq5Sq1)");
    FiniteModule D0 = presented(A, {6}, {});
    FiniteModule D1 = presented(A, {13}, {{{s1, 0}}});
    FiniteModule D2 = presented(A, {18}, {});
    ModuleMap dD1 = map_from_generator_images(
        D1, D0, {{13, D0.apply_element(s7, 6, generator_vector(D0, 0))}});
    ModuleMap dD2 = map_from_generator_images(
        D2, D1, {{18, D1.apply_element(s5, 13, generator_vector(D1, 0))}});

    FiniteModule T0 = tensor(Cc0, Cc0);
    FiniteModule T01 = tensor(Cc0, Cc1), T10 = tensor(Cc1, Cc0);
    FiniteModule T1 = direct_sum(T01, T10);
    FiniteModule T02 = tensor(Cc0, Cc2), T11 = tensor(Cc1, Cc1), T20 = tensor(Cc2, Cc0);
    FiniteModule T2a = direct_sum(T02, T11);
    FiniteModule T2 = direct_sum(T2a, T20);
    ModuleMap dT1 = sum_into(T1, tensor_map_left(Cc0, dC1), tensor_map_right(dC1, Cc0));
    ModuleMap from02 = stack_into(T1, tensor_map_left(Cc0, dC2), zero_map(T02, T10));
    ModuleMap from11 = stack_into(T1, tensor_map_right(dC1, Cc1), tensor_map_left(Cc1, dC1));
    ModuleMap from20 = stack_into(T1, zero_map(T20, T01), tensor_map_right(dC2, Cc0));
    ModuleMap dT2 = sum_into(T2, sum_into(T2a, from02, from11), from20);

    // elementary tensors as coordinate vectors
    auto tens = [](const FiniteModule& a, const FiniteModule& b, const FiniteModule& ab,
                   int da, const BitVec& va, int db, const BitVec& vb) {
        BitVec out(ab.dim(da + db));
        size_t off = tensor_block_offset(a, b, da + db, da);
        for (size_t i = 0; i < va.size(); ++i)
            if (va.get(i))
                for (size_t j = 0; j < vb.size(); ++j)
                    if (vb.get(j)) {
                        size_t idx = off + i * b.dim(db) + j;
                        out.set(idx, !out.get(idx));
                    }
        return out;
    };
    BitVec i3 = generator_vector(Cc0, 0);
    BitVec i7 = generator_vector(Cc1, 0), i9 = generator_vector(Cc1, 1);
    auto cc1 = [&](const Element& e, int d0, const BitVec& v) {
        return Cc1.apply_element(e, d0, v);
    };
    // the four left-half terms of f1(iota13) and their transposes
    std::vector<std::tuple<int, BitVec, int, BitVec>> terms;
    terms.emplace_back(3, i3, 10, cc1(s3, 7, i7));
    BitVec m9 = cc1(s2, 7, i7);
    m9 ^= i9;
    terms.emplace_back(4, Cc0.apply_element(s1, 3, i3), 9, m9);
    terms.emplace_back(5, Cc0.apply_element(s2, 3, i3), 8, cc1(s1, 7, i7));
    terms.emplace_back(6, Cc0.apply_element(s3, 3, i3), 7, i7);
    BitVec left(T01.dim(13)), right(T10.dim(13));
    for (auto& [da, va, db, vb] : terms) {
        left ^= tens(Cc0, Cc1, T01, da, va, db, vb);
        right ^= tens(Cc1, Cc0, T10, db, vb, da, va);
    }
    BitVec f1img(T1.dim(13));
    for (size_t i = 0; i < left.size(); ++i)
        if (left.get(i)) f1img.set(i);
    for (size_t i = 0; i < right.size(); ++i)
        if (right.get(i)) f1img.set(T01.dim(13) + i);
    ModuleMap f0 = map_from_generator_images(
        D0, T0, {{6, tens(Cc0, Cc0, T0, 3, i3, 3, i3)}});
    ModuleMap f1 = map_from_generator_images(D1, T1, {{13, f1img}});
    maps_equal(compose(f0, dD1), compose(dT1, f1), r, "comultiplication square at D1");

    // dropping the iota9 term of f1 must break the lifting (the term exists
    // because Sq6 and Sq2Sq4 differ)
    {
        BitVec wrong = f1img;
        wrong ^= tens(Cc0, Cc1, T01, 4, Cc0.apply_element(s1, 3, i3), 9, i9);
        BitVec swap = tens(Cc1, Cc0, T10, 9, i9, 4, Cc0.apply_element(s1, 3, i3));
        for (size_t i = 0; i < swap.size(); ++i)
            if (swap.get(i)) wrong.set(T01.dim(13) + i, !wrong.get(T01.dim(13) + i));
        bool broke = false;
        try {
            ModuleMap f1w = map_from_generator_images(D1, T1, {{13, wrong}});
            CaseResult probe;
            broke = !maps_equal(compose(f0, dD1), compose(dT1, f1w), probe, "probe");
        } catch (const std::exception&) {
            broke = true;  // not even well-defined without the term
        }
        if (!broke) note_diff(r, "f1 without the iota9 term still lifts, contradiction");
    }

    // f2 is determined modulo lower terms: solve the square at D2 over the
    // full tensor square (including the C0 (x) C2 and C2 (x) C0 blocks the
    // displayed diagram omits) and read off the coefficient of the generator
    // iota9 (x) iota9; the claim is read-off 1, invariant over every valid
    // (f1, f2)
    // the read-off is the pairing with the product cocycle: the functional
    // on the tensor square picking the coefficient of the iota9 (x) iota9
    // coordinate in the C1 (x) C1 block (each factor dual to the degree-9
    // generator, vanishing on decomposables of C1)
    size_t idx9 = i9.first_set();
    size_t pos18 = T02.dim(18) + tensor_block_offset(Cc1, Cc1, 18, 9) +
                   idx9 * Cc1.dim(9) + idx9;
    auto readoff18 = [&](const BitVec& v) -> int { return v.get(pos18) ? 1 : 0; };
    BitVec rhs18 = f1.apply(18, D1.apply_element(s5, 13, generator_vector(D1, 0)));
    gf2::Solver dT2s(dT2.matrix(18));
    auto f2img = dT2s.solve(rhs18);
    if (!f2img)
        note_diff(r, "the comultiplication square at D2 has no solution");
    else if (readoff18(*f2img) != 1)
        note_diff(r, "f2(iota18) is not iota9 (x) iota9 modulo lower terms");
    for (const BitVec& k : gf2::kernel(dT2.matrix(18)))
        if (readoff18(k) != 0)
            note_diff(r, "read-off not invariant under the f2 ambiguity");
    {
        // f1 may change by any map with dT1 . f1h = 0; the induced change of
        // f2 must have read-off 0
        std::vector<ModuleMap> hom = hom_space(D1, T1);
        size_t total = 0;
        for (int d = D1.min_deg; d <= D1.max_deg(); ++d) total += T0.dim(d) * D1.dim(d);
        BitMatrix sys(total, hom.size());
        for (size_t i = 0; i < hom.size(); ++i) {
            ModuleMap comp = compose(dT1, hom[i]);
            BitVec col(total);
            size_t pos = 0;
            for (int d = D1.min_deg; d <= D1.max_deg(); ++d) {
                BitMatrix m = comp.matrix(d);
                for (size_t rr = 0; rr < m.rows(); ++rr)
                    for (size_t cc = 0; cc < m.cols(); ++cc, ++pos)
                        if (m.get(rr, cc)) col.set(pos);
            }
            sys.add_column(i, col);
        }
        BitVec s5gen = D1.apply_element(s5, 13, generator_vector(D1, 0));
        for (const BitVec& coeff : gf2::kernel(sys)) {
            BitVec rhs(T1.dim(18));
            for (size_t i = 0; i < hom.size(); ++i)
                if (coeff.get(i)) rhs ^= hom[i].apply(18, s5gen);
            auto y = dT2s.solve(rhs);
            if (!y)
                note_diff(r, "homogeneous f1-perturbation does not lift through dT2");
            else if (readoff18(*y) != 0)
                note_diff(r, "read-off not invariant under the f1 ambiguity");
        }
    }

    // (c) Yoneda products with the (3,15) class of the sphere: composing with
    // the classes at (1,6) and (3,16) of Ext(L) lands nonzero at (4,21) and
    // (6,31)
    FiniteModule L = paper_module("L");
    Resolution rL = minimal_resolution(L, 8, 34, threads);
    Resolution f2res = minimal_resolution(trivial_module(A), 8, 34, threads);
    if (rL.ext_dim(1, 6) != 1 || rL.ext_dim(3, 16) != 1 || f2res.ext_dim(3, 15) != 1 ||
        rL.ext_dim(4, 21) != 1 || rL.ext_dim(6, 31) != 1)
        note_diff(r, "Yoneda factor bidegrees do not all have dimension 1");
    if (yoneda_product(rL, 1, 6, 0, f2res, 3, 15, 0).none())
        note_diff(r, "product of the (1,6) class with the (3,15) sphere class vanishes");
    if (yoneda_product(rL, 3, 16, 0, f2res, 3, 15, 0).none())
        note_diff(r, "product of the (3,16) class with the (3,15) sphere class vanishes");

    // (d) the expanded resolution variant using only free and Sq1-quotient
    // covers: exact in the verified range, with the predicted first step
    std::vector<std::vector<std::pair<int, bool>>> shapes;
    FiniteComplex mc = mixed_cover_resolution(L, 4, &shapes);
    VerifyReport vr = verify_complex(mc, 0, 40);
    if (!vr.dd_zero || !vr.exact)
        for (auto& f : vr.failures) note_diff(r, "expanded resolution: " + f);
    if (shapes.size() < 2 ||
        shapes[0] != std::vector<std::pair<int, bool>>{{0, false}} ||
        shapes[1] != std::vector<std::pair<int, bool>>{{4, false}, {6, true}})
        note_diff(r, "first expanded step is not a free cover on degree 4 plus a "
                     "Sq1-quotient cover on degree 6");
}

// ---- case 9: the two connective models, their charts, and the B-sequence ----

void case_bo_models(CaseResult& r, int threads) {
    const Algebra A = Algebra::A2;
    Element s1 = sq(A, 1), s5 = sq(A, 5), s7 = sq(A, 7);

    // frozen charts of the two wedge summands in the published window
    Resolution rM7 = minimal_resolution(suspend(paper_module("M7"), 8), 8, 47, threads);
    Resolution rBo =
        minimal_resolution(suspend(paper_module("bo2_cohomology"), 16), 8, 47, threads);
    std::map<std::pair<int, int>, int> w1, w2;
    auto tower = [](std::map<std::pair<int, int>, int>& m, int x, int s0) {
        for (int s = s0; s <= 7; ++s) m[{x, s}] += 1;
    };
    auto dot = [](std::map<std::pair<int, int>, int>& m, int x, int s) { m[{x, s}] += 1; };
    for (auto [x, s0] : std::initializer_list<std::pair<int, int>>{
             {8, 0}, {12, 3}, {16, 4}, {20, 3}, {20, 7}, {24, 4}, {28, 7}, {32, 4}, {36, 7}})
        tower(w1, x, s0);
    for (auto [x, s] : std::initializer_list<std::pair<int, int>>{
             {9, 1}, {10, 2}, {17, 1}, {17, 5}, {18, 2}, {18, 6}, {20, 2}, {23, 3},
             {25, 5}, {26, 6}, {32, 4}, {33, 5}, {34, 6}, {35, 5}, {37, 5}, {38, 6}})
        dot(w1, x, s);
    for (auto [x, s0] : std::initializer_list<std::pair<int, int>>{
             {16, 0}, {20, 3}, {24, 0}, {24, 4}, {28, 3}, {28, 7}, {32, 1}, {32, 4},
             {36, 5}, {36, 7}})
        tower(w2, x, s0);
    for (auto [x, s] : std::initializer_list<std::pair<int, int>>{
             {17, 1}, {18, 2}, {25, 1}, {25, 5}, {26, 2}, {26, 6}, {33, 1}, {33, 2},
             {33, 5}, {34, 2}, {34, 3}, {34, 6}, {35, 2}, {35, 3}, {35, 4}, {36, 2},
             {36, 3}, {36, 4}, {38, 3}, {39, 3}})
        dot(w2, x, s);
    check_stems(r, rM7, "Ext(S8 M7)", w1, 8, 39, 7);
    check_stems(r, rBo, "Ext(S16 bo2)", w2, 16, 39, 7);

    // the classes g in (0,24) of the second summand and w in (3,26) of the
    // first, and the differential d3(g) = w applied to the assembled chart
    if (rBo.ext_dim(0, 24) != 1) note_diff(r, "g: Ext^{0,24} of the second summand is not 1");
    if (rM7.ext_dim(3, 26) != 1) note_diff(r, "w: Ext^{3,26} of the first summand is not 1");
    ExtChart c1 = ext_chart_dims_only(rM7), c2 = ext_chart_dims_only(rBo);
    c1.module = "S8 M7";
    c2.module = "S16 bo2";
    AssembledChart wedge = assemble({{c1, 0, 0, "S8 M7"}, {c2, 0, 0, "S16 bo2"}});
    try {
        apply_fact(wedge, {"dr", 3, 24, 0, "such that $d_3(g)=w$"});
    } catch (const std::exception& e) {
        note_diff(r, std::string("d3(g)=w not applicable: ") + e.what());
    }
    r.artifacts.emplace_back("ext_A2_bo1bo2", assembled_to_json(wedge));

    // the extension module B: the published dimensions, the Sq2-linkage of the
    // new class, the equal admissible expressions for the degree-17 product,
    // and the non-existence of an A(3)-structure
    FiniteModule B = paper_module("B");
    FiniteModule bo2 = paper_module("bo2_cohomology");
    for (int d = 0; d <= 17; ++d) {
        size_t want = (d <= bo2.max_deg() ? bo2.dim(d) : 0) + (d == 17 ? 1 : 0);
        if (B.dim(d) != want)
            note_diff(r, "B dim at degree " + std::to_string(d) + " is " +
                             std::to_string(B.dim(d)) + ", expected " + std::to_string(want));
    }
    if (B.apply_element(sq(A, 2), 15, unit_vec(B.dim(15), 0)).none())
        note_diff(r, "Sq2 of the top base class does not hit the new class");
    BitVec u = B.apply_element(sq_word(A, {4, 6, 7}), 0, unit_vec(B.dim(0), 0));
    BitVec v = B.apply_element(sq_word(A, {4, 2, 3}), 8, unit_vec(B.dim(8), 0));
    if (u.none() || u != v)
        note_diff(r, "Sq4Sq6Sq7(bottom) and Sq4Sq2Sq3(degree-8 class) are not equal nonzero");
    if (b_extends_to_a3())
        note_diff(r, "B unexpectedly admits an A(3)-module structure");

    // the extension sequence 0 -> S17 F2 -> B -> bo2 -> 0 and its LES
    FiniteModule F17 = trivial_module(A, 17);
    ModuleMap iB = zero_map(F17, B);
    iB.mats[0].set(0, 0);
    ModuleMap pB = zero_map(B, bo2);
    for (int d = 0; d <= bo2.max_deg(); ++d)
        for (size_t j = 0; j < bo2.dim(d); ++j) pB.mats[size_t(d - B.min_deg)].set(j, j);
    ShortExact sesE{iB, pB};
    auto se = check_ses(sesE);
    if (!se.ok)
        for (auto& f : se.failures) note_diff(r, "B-sequence: " + f);
    {
        Resolution ra = minimal_resolution(F17, 8, 40, threads);
        Resolution rb = minimal_resolution(B, 8, 40, threads);
        Resolution rc = minimal_resolution(bo2, 8, 40, threads);
        auto lr = les_check(sesE, ra, rb, rc, 7, 39);
        if (!lr.ok)
            for (auto& f : lr.failures) note_diff(r, "B-sequence les: " + f);
    }

    // the four-term analysis behind the wedge chart: the augmentation ideal of
    // the free cyclic module maps onto L with kernel built from K = (Sq7 iota4)
    FiniteModule A2free = presented(A, {0}, {});
    FiniteModule L = paper_module("L");
    ModuleMap projL = map_from_generator_images(A2free, L, {{0, generator_vector(L, 0)}});
    SubmoduleResult ideal = kernel_module(projL);
    Resolution ri = minimal_resolution(ideal.module, 9, 46, threads);
    check_dims(r, ri, 8, 46, [](int s, int t) { return closed_form_L_dim(s + 1, t); },
               "Ext(ideal) vs shifted Ext(L)");

    FiniteModule S4A2 = presented(A, {4}, {});
    BitVec sq7i4 = S4A2.apply_element(s7, 4, generator_vector(S4A2, 0));
    SubmoduleResult K = submodule_closure(S4A2, {{11, sq7i4}});
    std::vector<std::pair<int, BitVec>> spanK;
    for (int d = K.module.min_deg; d <= K.module.max_deg(); ++d) {
        BitMatrix m = K.inclusion.matrix(d);
        for (size_t j = 0; j < m.cols(); ++j) spanK.emplace_back(d, m.column(j));
    }
    QuotientResult R = quotient_by_span(S4A2, spanK);
    ShortExact sesK{K.inclusion, R.projection};

    // the kernel of (S11 A2/(Sq1) -> K) is a 16-fold suspension of B
    FiniteModule A2A0 = presented(A, {11}, {{{s1, 0}}});
    ModuleMap mapq =
        corestrict(K, map_from_generator_images(A2A0, S4A2, {{11, sq7i4}}));
    SubmoduleResult Bker = kernel_module(mapq);
    for (int d = Bker.module.min_deg; d <= Bker.module.max_deg(); ++d) {
        size_t want =
            (d - 16 >= B.min_deg && d - 16 <= B.max_deg()) ? B.dim(d - 16) : 0;
        if (Bker.module.dim(d) != want)
            note_diff(r, "kernel module dim at degree " + std::to_string(d) + " is " +
                             std::to_string(Bker.module.dim(d)) + ", expected " +
                             std::to_string(want) + " (suspended B)");
    }
    ShortExact sesB{Bker.inclusion, mapq};

    // the two stated generators of that kernel: Sq5 iota11 is one; the stated
    // degree-24 class Sq4Sq6Sq3 iota11 is NOT in the kernel -- the class
    // (Sq4Sq6Sq3 + Sq6Sq7) iota11 is, and together with Sq5 iota11 it
    // generates the whole kernel
    BitVec g16 = A2A0.apply_element(s5, 11, generator_vector(A2A0, 0));
    BitVec stated24 = A2A0.apply_element(sq_word(A, {4, 6, 3}), 11, generator_vector(A2A0, 0));
    BitVec fixed24 = stated24;
    fixed24 ^= A2A0.apply_element(sq_word(A, {6, 7}), 11, generator_vector(A2A0, 0));
    gf2::Solver sol16(Bker.inclusion.matrix(16)), sol24(Bker.inclusion.matrix(24));
    auto x16 = sol16.solve(g16);
    if (!x16) note_diff(r, "Sq5 iota11 is not in the kernel module");
    if (sol24.solve(stated24))
        note_diff(r, "Sq4Sq6Sq3 iota11 unexpectedly lies in the kernel module");
    else
        note_diff(r, "ERRATUM-CANDIDATE: the stated degree-24 generator Sq4Sq6Sq3 iota11 "
                     "is not in the kernel; the kernel class is "
                     "(Sq4Sq6Sq3 + Sq6Sq7) iota11, which is what the verification uses");
    auto x24 = sol24.solve(fixed24);
    if (!x24)
        note_diff(r, "(Sq4Sq6Sq3 + Sq6Sq7) iota11 is not in the kernel module");
    else if (x16) {
        SubmoduleResult gen = submodule_closure(Bker.module, {{16, *x16}, {24, *x24}});
        if (gen.module.total_dim() != Bker.module.total_dim())
            note_diff(r, "the two degree-16/24 classes do not generate the kernel module");
    }

    // the cokernel side: Sq4 embeds S4 A2 into the augmentation ideal with
    // cokernel a 6-fold suspension of M7, and image isomorphic to R
    ModuleMap m4 = map_from_generator_images(
        S4A2, A2free, {{4, A2free.apply_element(sq(A, 4), 0, generator_vector(A2free, 0))}});
    ModuleMap m4i = corestrict(ideal, m4);
    SubmoduleResult Rin = image_module(m4i);
    std::vector<std::pair<int, BitVec>> spanR;
    for (int d = S4A2.min_deg; d <= S4A2.max_deg(); ++d) {
        BitMatrix m = m4i.matrix(d);
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m.column(j).none()) spanR.emplace_back(d, m.column(j));
    }
    QuotientResult M7q = quotient_by_span(ideal.module, spanR);
    for (int d = 0; d <= ideal.module.max_deg(); ++d) {
        size_t want = (d == 6 || d == 10 || d == 12 || d == 13) ? 1 : 0;
        if (M7q.module.dim(d) != want)
            note_diff(r, "cokernel of Sq4 at degree " + std::to_string(d) + " has dim " +
                             std::to_string(M7q.module.dim(d)) + ", expected " +
                             std::to_string(want) + " (suspended M7)");
    }
    for (int d = 0; d <= S4A2.max_deg(); ++d)
        if (R.module.dim(d) != Rin.module.dim(d)) {
            note_diff(r, "R and the image of Sq4 differ in dimension at degree " +
                             std::to_string(d));
            break;
        }
    ShortExact sesF{Rin.inclusion, M7q.projection};
    for (auto* s : {&sesK, &sesB, &sesF}) {
        auto rep = check_ses(*s);
        if (!rep.ok)
            for (auto& f : rep.failures) note_diff(r, "ses: " + f);
    }

    const int SM = 9, TM = 46;
    Resolution rK = minimal_resolution(K.module, SM, TM, threads);
    Resolution rS4 = minimal_resolution(S4A2, SM, TM, threads);
    Resolution rR = minimal_resolution(R.module, SM, TM, threads);
    Resolution rBk = minimal_resolution(Bker.module, SM, TM, threads);
    Resolution rQ = minimal_resolution(A2A0, SM, TM, threads);
    Resolution rRin = minimal_resolution(Rin.module, SM, TM, threads);
    Resolution rM7q = minimal_resolution(M7q.module, SM, TM, threads);
    for (auto& [label, rep] : std::vector<std::pair<const char*, LesReport>>{
             {"lesK", les_check(sesK, rK, rS4, rR, SM - 1, TM)},
             {"lesB", les_check(sesB, rBk, rQ, rK, SM - 1, TM)},
             {"lesF", les_check(sesF, rRin, ri, rM7q, SM - 1, TM)}})
        if (!rep.ok)
            for (auto& f : rep.failures) note_diff(r, std::string(label) + ": " + f);

    // the connecting map of the K-sequence is an isomorphism for s >= 1 (the
    // middle term is free); that of the B-sequence is an isomorphism away from
    // the h0-tower of the middle term in stems 11 and 12
    ChartMap dK = connecting_hom(sesK, rK, rR);
    ChartMap dB = connecting_hom(sesB, rBk, rK);
    for (int s = 0; s <= SM - 2; ++s)
        for (int t = s; t <= TM; ++t) {
            size_t rkk = gf2::rank(
                dK.matrix(s, t, size_t(rR.ext_dim(s + 1, t)), size_t(rK.ext_dim(s, t))));
            if (s >= 1 &&
                (rkk != size_t(rK.ext_dim(s, t)) || rkk != size_t(rR.ext_dim(s + 1, t))))
                note_diff(r, "K-sequence connecting map not iso at " + bidegree(s, t));
            if (t - s == 11 || t - s == 12) continue;
            size_t rbb = gf2::rank(
                dB.matrix(s, t, size_t(rK.ext_dim(s + 1, t)), size_t(rBk.ext_dim(s, t))));
            if (rbb != size_t(rBk.ext_dim(s, t)) || rbb != size_t(rK.ext_dim(s + 1, t)))
                note_diff(r, "B-sequence connecting map not iso at " + bidegree(s, t));
        }
}

// ---- case 10: projective-space coefficients ---------------------------------

// cellwise map between modules all of whose degrees have dimension <= 1
ModuleMap cellwise_map(const FiniteModule& src, const FiniteModule& tgt,
                       const std::function<bool(int)>& hit) {
    ModuleMap f;
    f.source = src;
    f.target = tgt;
    f.mats.resize(src.names.size());
    for (int d = src.min_deg; d <= src.max_deg(); ++d) {
        BitMatrix m(tgt.dim(d), src.dim(d));
        if (src.dim(d) == 1 && tgt.dim(d) == 1 && hit(d)) m.set(0, 0);
        f.mats[size_t(d - src.min_deg)] = std::move(m);
    }
    return f;
}

// the chart of the published homotopy of the smash with the suspended
// projective space ((stem, filtration) -> dim); `smash_c` produces the
// variant for the smash with the 4-cell complex C (summands with no v2
// removed, b-classes on them removed, bottom classes added in stems 8i+3,
// filtrations decreased by 1)
std::map<std::pair<int, int>, int> projective_homotopy_chart(int x_max, bool smash_c) {
    std::map<std::pair<int, int>, int> m;
    int drop = smash_c ? 1 : 0;
    auto add = [&](int x, int s) {
        if (x <= x_max + 2 && s - drop >= 0) m[{x, s - drop}] += 1;
    };
    for (int e2 = 0; 6 * e2 <= x_max + 4; ++e2)
        for (int e1 = (e2 % 2) ? 1 : 2; 2 * e1 + 6 * e2 <= x_max + 4; e1 += 2) {
            int x = 2 * e1 + 6 * e2, m8 = e2 % 8;
            bool congr4 = ((e1 - e2) % 4 + 4) % 4 == 0;
            // the Z/2^{e1} summand, with its two published Z/8 and Z/4
            // variations, drawn as a tower of dots
            if (!(smash_c && e2 == 0)) {
                int start = congr4 ? e2 : e2 + 1, len = e1;
                if (e1 == 2 && m8 == 0) {
                    start = e2;
                    len = 3;
                } else if (e1 == 1 && (m8 == 1 || m8 == 3)) {
                    start = e2;
                    len = 2;
                }
                for (int s = start; s < start + len; ++s) add(x, s);
            }
            // eta and eta^2 dots on the tower generator
            bool eta2 = (e1 >= 5 && congr4) || (e1 == 4 && m8 == 0) || (e1 == 3 && m8 == 3);
            bool eta = eta2 || (e1 == 1 && m8 == 1) || (e1 == 4 && m8 == 4) ||
                       (e1 == 2 && m8 == 6) || (e1 == 3 && m8 == 7);
            if (!(smash_c && e2 == 0 && e1 % 4 != 0)) {
                if (eta) add(x + 1, e2 + 1);
                if (eta2) add(x + 2, e2 + 2);
            }
            // b and b' classes hanging below the towers
            bool hasb =
                (e1 >= 3 && ((e1 - e2 - 2) % 4 + 4) % 4 == 0) || (e1 == 2 && m8 == 0);
            if (hasb && !(smash_c && e2 == 0)) {
                add(x - 2, e1 + e2 - 2);
                add(x - 1, e1 + e2 - 1);
            }
            if ((e1 == 1 && m8 == 3) || (e1 == 2 && m8 == 4)) add(x - 1, e1 + e2 - 1);
        }
    // the lone x_{8i+2,1} family and the v2^8-periodic sporadic classes
    for (int i = 1; 8 * i + 2 <= x_max; ++i) add(8 * i + 2, 1);
    const int per[][2] = {{5, 1},  {6, 1},  {7, 1},  {21, 3}, {22, 4}, {23, 4},
                          {24, 4}, {36, 6}, {37, 6}, {38, 6}, {39, 7}, {40, 7}};
    for (int k = 0; 48 * k <= x_max; ++k)
        for (auto& p : per) add(p[0] + 48 * k, p[1] + 8 * k);
    if (smash_c)
        for (int i = 1; 8 * i + 3 <= x_max; ++i) m[{8 * i + 3, 0}] += 1;
    return m;
}

void case_projective(CaseResult& r, int threads) {
    const Algebra A = Algebra::A2;
    FiniteModule L = paper_module("L");

    // (a) Ext over A(1) of L in the published window: a frozen chart with
    // h0-towers at (5,1), (9,1), (9,2), (9,4), (13,0), (13,2), (13,3), (13,5)
    // and isolated dots on h1-strings
    FiniteModule L1 = restrict_algebra(L, Algebra::A1);
    Resolution r1 = minimal_resolution(L1, 28, 102, threads);
    {
        std::map<std::pair<int, int>, int> want;
        auto tower = [&](int x, int s0) {
            for (int s = s0; s <= 16; ++s) want[{x, s}] += 1;
        };
        want[{0, 0}] = 1;
        tower(5, 1);
        for (auto [x, s] : {std::pair{6, 0}, {6, 2}, {7, 0}, {7, 1}, {7, 3}})
            want[{x, s}] += 1;
        tower(9, 1);
        tower(9, 2);
        tower(9, 4);
        for (int s0 : {0, 2, 3, 5}) tower(13, s0);
        for (auto [x, s] : {std::pair{14, 1}, {14, 3}, {14, 4}, {14, 6}, {15, 2},
                            {15, 4}, {15, 5}, {15, 7}})
            want[{x, s}] += 1;
        check_stems(r, r1, "Ext_A1(L)", want, 0, 15, 16);
    }

    // (b) the Q-splitting: Ext over A(2) of L (x) Q equals the direct sum of
    // Ext over A(1) of the 8i-1 suspensions of L, checked dimensionwise
    const int D = 70, SM = 9, TM = 62;
    FiniteModule Q = paper_module("Q(" + std::to_string(D) + ")");
    FiniteModule H = paper_module("HP1(" + std::to_string(D) + ")");
    FiniteModule LQ = tensor(L, Q), LH = tensor(L, H);
    Resolution rQ = minimal_resolution(LQ, SM, TM, threads);
    for (int s = 0; s <= SM; ++s)
        for (int t = -9 + s; t <= TM; ++t) {
            int want = 0;
            for (int i = -1; 8 * i - 1 <= D; ++i) {
                int tt = t - (8 * i - 1);
                if (tt >= 0 && tt <= 102) want += r1.ext_dim(s, tt);
            }
            if (rQ.ext_dim(s, t) != want)
                note_diff(r, "Q-splitting " + bidegree(s, t) + ": computed " +
                                 std::to_string(rQ.ext_dim(s, t)) + ", sum gives " +
                                 std::to_string(want));
        }
    // the resulting tower-bottom pattern: in stem 8i+4 the splitting yields
    // h0-towers starting in every filtration 0..4i+1 except 4i
    for (int i = 0; i <= 6; ++i) {
        std::multiset<int> bottoms;
        for (int k = 0; k <= i; ++k) {
            int x = 8 * k + 5;
            for (int s = 0; s <= 26; ++s) {
                int a = r1.ext_dim(s, x + s), b = s ? r1.ext_dim(s - 1, x + s - 1) : 0;
                for (int j = 0; j < a - b; ++j) bottoms.insert(s);
            }
        }
        std::multiset<int> expect;
        for (int s = 0; s <= 4 * i + 1; ++s)
            if (s != 4 * i) expect.insert(s);
        if (bottoms != expect)
            note_diff(r, "tower bottoms in stem " + std::to_string(8 * i + 4) +
                             " do not form 0..4i+1 minus 4i");
    }

    // (c) the cell sequence 0 -> P -> Q -> (shifted M7) (+) F2 -> 0, tensored
    // with L: short exact, long exact on Ext, and restriction an isomorphism
    // in the stable window s <= 8, t - s >= 53
    FiniteModule S =
        direct_sum(suspend(paper_module("M7"), -9), suspend(trivial_module(A), -1));
    ModuleMap inc = cellwise_map(H, Q, [](int) { return true; });
    ModuleMap prj = cellwise_map(Q, S, [](int d) { return d < 0; });
    if (!inc.check().ok || !prj.check().ok)
        note_diff(r, "cellwise comparison maps are not module maps");
    ModuleMap li = tensor_map_left(L, inc), lp = tensor_map_left(L, prj);
    ShortExact ses{li, lp};
    {
        auto sr = check_ses(ses);
        if (!sr.ok)
            for (auto& f : sr.failures) note_diff(r, "cell ses: " + f);
    }
    Resolution rH = minimal_resolution(LH, 22, 65, threads);
    Resolution rS = minimal_resolution(tensor(L, S), SM, TM, threads);
    {
        auto les = les_check(ses, rH, rQ, rS, SM - 1, TM);
        if (!les.ok)
            for (auto& f : les.failures) note_diff(r, "cell les: " + f);
    }
    ChartMap rest = induced_map(li, rH, rQ);
    for (int s = 0; s <= 8; ++s)
        for (int t = s + 53; t <= TM; ++t) {
            size_t rows = size_t(rH.ext_dim(s, t)), cols = size_t(rQ.ext_dim(s, t));
            size_t rk = gf2::rank(rest.matrix(s, t, rows, cols));
            if (rk != rows || rk != cols)
                note_diff(r, "stable-range restriction not iso at " + bidegree(s, t));
        }

    // (d) Ext of L (x) M7 via the tensored step complex and the two
    // building blocks the spectral sequence uses
    FiniteModule M7 = paper_module("M7");
    {
        VerifyReport vr = verify_complex(tensor_complex_with(eight_step_complex(), M7), 0, 60);
        if (!vr.dd_zero || !vr.exact)
            for (auto& f : vr.failures) note_diff(r, "tensored complex: " + f);
        Presentation pf;
        pf.alg = A;
        pf.gen_degrees = {0};
        Resolution rfm = minimal_resolution(tensor(presented_module(pf), M7), 4, 30, threads);
        for (int s = 0; s <= 4; ++s)
            for (int t = s; t <= 30; ++t) {
                int want = (s == 0 && (t == 0 || t == 4 || t == 6 || t == 7)) ? 1 : 0;
                if (rfm.ext_dim(s, t) != want)
                    note_diff(r, "free block (x) M7 " + bidegree(s, t) + ": not four Z/2's");
            }
        Resolution rqm =
            minimal_resolution(tensor(paper_module("A2modA1"), M7), 8, 40, threads);
        Resolution r1m = minimal_resolution(restrict_algebra(M7, Algebra::A1), 8, 40, threads);
        for (int s = 0; s <= 8; ++s)
            for (int t = s; t <= 38; ++t) {
                if (rqm.ext_dim(s, t) != r1m.ext_dim(s, t))
                    note_diff(r, "A2//A1 (x) M7 vs A1-Ext of M7 differ at " + bidegree(s, t));
                if (r1m.ext_dim(s, t) != bo_pattern_dim(t - s, s) + bsp_pattern_dim(t - s - 4, s))
                    note_diff(r, "A1-Ext of M7 vs bo + shifted bsp differ at " + bidegree(s, t));
            }
    }

    // (e) the smash-C chart: the published description (homotopy chart with
    // the four listed changes) equals the computed Ext of the 4-suspension of
    // L (x) P, through stem 47 and filtration 20
    auto pcm = projective_homotopy_chart(50, true);
    for (int x = 1; x <= 47; ++x)
        for (int s = 0; s <= 20; ++s) {
            int got = rH.ext_dim(s, x + s - 4);
            auto it = pcm.find({x, s});
            int want = it == pcm.end() ? 0 : it->second;
            if (got != want)
                note_diff(r, "smash-C chart stem " + std::to_string(x) + " filtration " +
                                 std::to_string(s) + ": computed " + std::to_string(got) +
                                 ", description gives " + std::to_string(want));
        }

    // (f) assembly of the published homotopy chart in stems < 32 from the
    // filtration-shifted smash-C piece and the A(1) chart of the suspended
    // projective space, with the two recorded fact families
    ExtChart cH = restrict_window(ext_chart_dims_only(rH), 21, 0, 64);
    cH.module = "L (x) P, 4-suspension";
    cH = shift_chart(cH, 0, 4);
    FiniteModule SH1 = restrict_algebra(suspend(H, 1), Algebra::A1);
    Resolution rbo = minimal_resolution(SH1, 18, 50, threads);
    ExtChart cbo = restrict_window(ext_chart_dims_only(rbo), 17, 0, 49);
    cbo.module = "P, suspension, A(1)";
    AssembledChart asmb = assemble({{cH, 0, 1, "smash-C piece"}, {cbo, 0, 0, "ko piece"}});
    for (int i = 1; i <= 3; ++i)
        apply_fact(asmb, {"dr", 1, 8 * i + 4, 0,
                          "The content in this chart is the $d_1$-differential from "
                          "$(12,0)$ and the $\\eta$-extension from $(16,0)$"});
    for (int i = 2; i <= 3; ++i)
        apply_fact(asmb, {"extension", 1, 8 * i, 0,
                          "$\\eta \\gamma_{8i}=\\delta_*(y_{8i})\\ne0$ with $y_{8i}$ of "
                          "Adams filtration 0"});
    auto p1 = projective_homotopy_chart(34, false);
    for (int x = std::max(1, asmb.x_min); x < 32; ++x)
        for (int s = 0; s <= 16; ++s) {
            int got = asmb.dim(x, s);
            auto it = p1.find({x, s});
            int want = it == p1.end() ? 0 : it->second;
            if (got != want)
                note_diff(r, "assembled chart stem " + std::to_string(x) + " filtration " +
                                 std::to_string(s) + ": assembled " + std::to_string(got) +
                                 ", published " + std::to_string(want));
        }
    add_chart_artifact(r, "ext_A2_L_tensor_P", cH);
    r.artifacts.emplace_back("assembled_projective", assembled_to_json(asmb));
}

// ---- case 11: weight decomposition of the dual quotient algebra -------------

void case_weights(CaseResult& r, int) {
    for (int n = 0; n <= 4; ++n) {
        auto [mn, bon] = weight_decomposition(n, 40);
        if (mn != bon)
            note_diff(r, "weight-" + std::to_string(8 * n) +
                             " span and shifted Brown-Gitler span have different "
                             "Poincare series through degree 40");
    }
}

}  // namespace

// ---- registry ---------------------------------------------------------------

namespace {

const std::vector<CaseDef>& registry() {
    static const std::vector<CaseDef> defs = [] {
        std::vector<CaseDef> v;
        v.push_back({"resolution_exactness",
                     "One can verify that there is an exact sequence of $A_2$-modules",
                     case_resolution_exactness});
        v.push_back({"thm24_chart",
                     "As a bigraded abelian group, "
                     "$\\ext^{*,*}_A(A/A(\\sq^4,\\sq^5\\sq^1),\\zt)$ is isomorphic to",
                     case_thm24_chart});
        v.push_back({"dual_window",
                     "The desired class $2\\nu$ is indicated with $A$ in the diagram, "
                     "and is the image of the circled",
                     case_dual_window});
        v.push_back({"dx_charts",
                     "beginning in position (0,0) and 15 additional copies of $bo_*$ "
                     "beginning in positions $(0,s)$ for $3\\le s\\le 12$",
                     case_dx_charts});
        v.push_back({"cyclic_extension",
                     "We conclude that $H^*(C)$ is an extended cyclic $A_2$-module on a "
                     "4-dimensional generator",
                     case_cyclic_extension});
        v.push_back({"liftings",
                     "We find that $f_4(\\iota_{25})=\\sq^1\\iota_{24}$ and "
                     "$f_4(\\iota_{26})=\\sq^2\\iota_{24}+\\iota_{26}$, and then that "
                     "$f_5$ is the identity",
                     case_liftings});
        v.push_back({"p_sequence",
                     "This $\\delta$ must send $\\iota_{24}$ to $h_2^2\\iota_{16}$ since "
                     "$\\ext^{2,24}(P)=0$",
                     case_p_sequence});
        v.push_back({"bo_models",
                     "there is a class $g\\in\\ext_{A_2}^{0,24}(H^*(\\Sigma^{16}bo_2))$ and "
                     "an element $w\\in\\ext_{A_2}^{3,26}(H^*(\\Sigma^8 bo_1))$",
                     case_bo_models});
        v.push_back({"projective",
                     "$\\ext_{A_2}(\\Ct\\otimes Q)\\approx\\bigoplus_{i\\ge-1}"
                     "\\ext_{A_1}(\\Sigma^{8i-1}\\Ct)$",
                     case_projective});
        v.push_back({"weights",
                     "The image of $\\phi_n$ is $M_n$, the span of monomials of "
                     "weight $8n$",
                     case_weights});
        v.push_back({"v2_periodicity",
                     "the exact sequence could be continued periodically with the "
                     "$\\Sigma^{56}A_2/(\\sq^4,\\sq^{5,1})$",
                     case_v2_periodicity});
        return v;
    }();
    return defs;
}

}  // namespace

std::vector<std::string> suite_case_ids() {
    std::vector<std::string> ids;
    for (const auto& d : registry()) ids.push_back(d.id);
    return ids;
}

CaseResult run_case(const std::string& id, int threads) {
    for (const auto& d : registry()) {
        if (d.id != id) continue;
        CaseResult r;
        r.id = d.id;
        r.anchor = d.anchor;
        auto t0 = std::chrono::steady_clock::now();
        try {
            d.run(r, threads);
        } catch (const std::exception& e) {
            note_diff(r, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // erratum candidates and notes are reported loudly but are not
        // verification failures (the corrected statement is what got verified)
        bool hard = false;
        for (const auto& dline : r.diffs)
            if (dline.rfind("ERRATUM-CANDIDATE:", 0) != 0 && dline.rfind("note:", 0) != 0)
                hard = true;
        r.status = hard ? "fail" : "pass";
        return r;
    }
    throw std::invalid_argument("run_case: unknown case id '" + id + "'");
}

SuiteReport run_all(int threads, int case_parallel) {
    SuiteReport rep;
    auto ids = suite_case_ids();
    if (case_parallel <= 1) {
        for (const auto& id : ids) rep.cases.push_back(run_case(id, threads));
    } else {
        std::vector<std::future<CaseResult>> futs;
        size_t next = 0;
        std::mutex mu;
        auto worker = [&]() {
            std::vector<std::pair<size_t, CaseResult>> mine;
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (next >= ids.size()) break;
                    i = next++;
                }
                mine.emplace_back(i, run_case(ids[i], threads));
            }
            return mine;
        };
        std::vector<std::future<std::vector<std::pair<size_t, CaseResult>>>> workers;
        for (int w = 0; w < case_parallel; ++w)
            workers.push_back(std::async(std::launch::async, worker));
        rep.cases.resize(ids.size());
        for (auto& w : workers)
            for (auto& [i, res] : w.get()) rep.cases[i] = std::move(res);
    }
    rep.all_pass = true;
    for (const auto& c : rep.cases)
        if (c.status != "pass") rep.all_pass = false;
    return rep;
}

std::string report_to_json(const SuiteReport& r) {
    json out = json::array();
    for (const auto& c : r.cases) {
        json jc;
        jc["case"] = c.id;
        jc["status"] = c.status;
        jc["diffs"] = c.diffs;
        jc["seconds"] = c.seconds;
        jc["anchor"] = c.anchor;
        out.push_back(jc);
    }
    json top;
    top["all_pass"] = r.all_pass;
    top["cases"] = out;
    return top.dump(2) + "\n";
}

}  // namespace ext2
