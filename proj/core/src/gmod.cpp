#include "ext2/gmod.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ext2 {

using gf2::BitMatrix;
using gf2::BitVec;
using gf2::Echelon;

namespace {

// admissible form of a working-basis element, cached
const Element& working_element(Algebra a, int d, size_t i) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, size_t>, Element> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(int(a), d, i);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Element e;
    if (a == Algebra::A) {
        e = Element{a, {admissible_basis(d)[i]}};
    } else {
        e = to_admissible(MilnorElement{a, {milnor_basis(a, d)[i]}});
        e.alg = a;
    }
    return cache.emplace(key, std::move(e)).first->second;
}

// coordinates of a homogeneous element in the working basis of its degree
BitVec working_coords(Algebra a, const Element& e, int d) {
    BitVec v(algebra_dim(a, d));
    if (e.is_zero()) return v;
    if (a == Algebra::A) {
        const auto& basis = admissible_basis(d);
        for (const Mono& m : e.terms) {
            auto it = std::lower_bound(basis.begin(), basis.end(), m);
            if (it == basis.end() || *it != m)
                throw std::invalid_argument("element not admissible in degree");
            v.flip(size_t(it - basis.begin()));
        }
    } else {
        MilnorElement me = to_milnor(e);
        for (const Profile& r : me.terms) {
            size_t i = milnor_index(a, r);
            if (i == size_t(-1))
                throw std::invalid_argument("element lies outside the subalgebra");
            v.flip(i);
        }
    }
    return v;
}

std::string default_name(const char* prefix, int d, size_t i) {
    std::ostringstream os;
    os << prefix << d << "_" << i;
    return os.str();
}

}  // namespace

gf2::BitVec unit_vec(size_t n, size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
}

size_t FiniteModule::total_dim() const {
    size_t t = 0;
    for (const auto& v : names) t += v.size();
    return t;
}

int FiniteModule::degree_span() const {
    return names.empty() ? 0 : int(names.size()) - 1;
}

void FiniteModule::finalize() {
    size_t nd = names.size();
    if (num_gens == 0)
        num_gens = algebra_num_generators(alg, degree_span());
    gen_act.resize(size_t(num_gens));
    for (int k = 0; k < num_gens; ++k) {
        auto& row = gen_act[size_t(k)];
        row.resize(nd);
        for (size_t off = 0; off < nd; ++off) {
            int d = min_deg + int(off);
            size_t r = dim(d + (1 << k)), c = dim(d);
            if (row[off].rows() != r || row[off].cols() != c)
                row[off] = BitMatrix(r, c);
        }
    }
    cache_ = std::make_shared<ActionCache>();
}

BitMatrix FiniteModule::gen_action(int k, int d) const {
    if (k < num_gens && in_range(d)) return gen_act[size_t(k)][size_t(d - min_deg)];
    return BitMatrix(dim(d + (1 << k)), dim(d));
}

// graded matrices of working-basis element bd:i, derived recursively from the
// generator matrices through generator_decomposition (cache lock already held)
const std::vector<BitMatrix>& FiniteModule::basis_act_locked(int bd, size_t i) const {
    auto key = std::make_pair(bd, i);
    auto it = cache_->basis_act.find(key);
    if (it != cache_->basis_act.end()) return it->second;

    size_t nd = names.size();
    std::vector<BitMatrix> out(nd);
    if (bd == 0) {
        for (size_t off = 0; off < nd; ++off) {
            size_t n = names[off].size();
            BitMatrix id(n, n);
            for (size_t r = 0; r < n; ++r) id.set(r, r);
            out[off] = std::move(id);
        }
    } else {
        const auto& decomp = generator_decomposition(alg, bd)[i];
        for (size_t off = 0; off < nd; ++off)
            out[off] = BitMatrix(dim(min_deg + int(off) + bd), dim(min_deg + int(off)));
        for (const auto& [k, j] : decomp) {
            int rest = bd - (1 << k);
            const auto& lower = basis_act_locked(rest, size_t(j));
            for (size_t off = 0; off < nd; ++off) {
                int d = min_deg + int(off);
                if (dim(d) == 0 || dim(d + bd) == 0) continue;
                BitMatrix t = gf2::mul(gen_action(k, d + rest), lower[off]);
                for (size_t r = 0; r < t.rows(); ++r) out[off].row(r) ^= t.row(r);
            }
        }
    }
    return cache_->basis_act.emplace(key, std::move(out)).first->second;
}

BitMatrix FiniteModule::action_sq(int i, int d) const {
    if (i == 0) {
        BitMatrix id(dim(d), dim(d));
        for (size_t j = 0; j < id.rows(); ++j) id.set(j, j);
        return id;
    }
    return action_element(sq(alg, i), d);
}

BitMatrix FiniteModule::action_word(const Word& w, int d) const {
    BitMatrix cur = action_sq(0, d);
    int cd = d;
    for (size_t l = w.size(); l-- > 0;) {
        cur = gf2::mul(action_sq(w[l], cd), cur);
        cd += w[l];
    }
    return cur;
}

BitMatrix FiniteModule::action_element(const Element& e, int d) const {
    int bd = e.degree();
    BitMatrix acc(dim(d + bd), dim(d));
    if (e.is_zero() || dim(d) == 0) return acc;
    Element tagged = e;
    tagged.alg = alg;
    BitVec coords = working_coords(alg, tagged, bd);
    assert(cache_);
    std::lock_guard<std::mutex> lk(cache_->mu);
    size_t off = size_t(d - min_deg);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (!coords.get(i)) continue;
        const BitMatrix& t = basis_act_locked(bd, i)[off];
        for (size_t r = 0; r < acc.rows(); ++r) acc.row(r) ^= t.row(r);
    }
    return acc;
}

BitVec FiniteModule::apply_element(const Element& e, int d, const BitVec& v) const {
    return action_element(e, d).apply(v);
}

// ---- validation ------------------------------------------------------------
ValidationReport validate(const FiniteModule& m) {
    ValidationReport rep;
    // structural: matrices raise degree by exactly 2^k
    for (int k = 0; k < m.num_gens; ++k)
        for (int d = m.min_deg; d <= m.max_deg(); ++d) {
            BitMatrix a = m.gen_action(k, d);
            if (a.rows() != m.dim(d + (1 << k)) || a.cols() != m.dim(d)) {
                rep.ok = false;
                rep.failures.push_back("Sq" + std::to_string(1 << k) +
                                       " matrix shape wrong at degree " + std::to_string(d));
            }
        }
    if (!rep.ok) return rep;

    // relation checks: phi(Sq^{2^k}) phi(b) = phi(Sq^{2^k} b) for every
    // working-basis element b of the algebra (degree bounded by the span)
    int span = m.degree_span();
    int top = std::min(span, algebra_top_degree(m.alg));
    for (int bd = 1; bd <= top; ++bd) {
        size_t nb = algebra_dim(m.alg, bd);
        for (size_t bi = 0; bi < nb; ++bi) {
            const Element& b = working_element(m.alg, bd, bi);
            std::vector<BitMatrix> act_b(m.names.size());
            for (size_t off = 0; off < m.names.size(); ++off)
                act_b[off] = m.action_element(b, m.min_deg + int(off));
            for (int k = 0; k < m.num_gens; ++k) {
                int g = 1 << k;
                Element gb = multiply(sq(m.alg, g), b);
                for (size_t off = 0; off < m.names.size(); ++off) {
                    int d = m.min_deg + int(off);
                    if (m.dim(d) == 0) continue;
                    BitMatrix lhs = gf2::mul(m.action_sq(g, d + bd), act_b[off]);
                    // the product may vanish in the algebra; then lhs must too
                    BitMatrix rhs = gb.is_zero()
                                        ? BitMatrix(lhs.rows(), lhs.cols())
                                        : m.action_element(gb, d);
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.failures.push_back(
                            "relation Sq" + std::to_string(g) + " * (" + render(b) +
                            ") fails on degree " + std::to_string(d));
                    }
                }
            }
        }
    }
    return rep;
}

// ---- simple constructors ---------------------------------------------------
FiniteModule trivial_module(Algebra a, int degree) {
    FiniteModule m;
    m.alg = a;
    m.min_deg = degree;
    m.names = {{default_name("x", degree, 0)}};
    m.finalize();
    return m;
}

FiniteModule suspend(const FiniteModule& m, int k) {
    FiniteModule out = m;
    out.min_deg += k;
    if (out.valid_through < kNoTruncation) out.valid_through += k;
    if (m.cover) {
        auto c = std::make_shared<CoverData>(*m.cover);
        for (int& g : c->gen_degrees) g += k;
        out.cover = c;
    }
    out.finalize();
    // re-copy the action matrices (finalize only fixes shapes)
    out.gen_act = m.gen_act;
    return out;
}

FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b) {
    if (a.alg != b.alg) throw std::invalid_argument("direct_sum: algebra mismatch");
    if (a.total_dim() == 0) return b;
    if (b.total_dim() == 0) return a;
    FiniteModule m;
    m.alg = a.alg;
    m.min_deg = std::min(a.min_deg, b.min_deg);
    int maxd = std::max(a.max_deg(), b.max_deg());
    m.names.resize(size_t(maxd - m.min_deg + 1));
    std::set<std::string> used;
    for (int d = m.min_deg; d <= maxd; ++d) {
        auto& row = m.names[size_t(d - m.min_deg)];
        for (size_t i = 0; i < a.dim(d); ++i) {
            std::string n = a.names[size_t(d - a.min_deg)][i];
            while (used.count(n)) n += "'";
            used.insert(n);
            row.push_back(n);
        }
        for (size_t i = 0; i < b.dim(d); ++i) {
            std::string n = b.names[size_t(d - b.min_deg)][i];
            while (used.count(n)) n += "'";
            used.insert(n);
            row.push_back(n);
        }
    }
    m.num_gens = std::max(a.num_gens, b.num_gens);
    m.valid_through = std::min(a.valid_through, b.valid_through);
    m.finalize();
    for (int k = 0; k < m.num_gens; ++k)
        for (int d = m.min_deg; d <= maxd; ++d) {
            BitMatrix ma = a.gen_action(k, d), mb = b.gen_action(k, d);
            BitMatrix& t = m.gen_act[size_t(k)][size_t(d - m.min_deg)];
            for (size_t i = 0; i < ma.rows(); ++i)
                for (size_t j = 0; j < ma.cols(); ++j)
                    if (ma.get(i, j)) t.set(i, j);
            for (size_t i = 0; i < mb.rows(); ++i)
                for (size_t j = 0; j < mb.cols(); ++j)
                    if (mb.get(i, j)) t.set(i + ma.rows(), j + ma.cols());
        }
    return m;
}

// ---- tensor ----------------------------------------------------------------
namespace {

// pair basis of (a tensor b) in degree d: blocks by a-degree ascending
struct TensorIndex {
    const FiniteModule *a, *b;
    // offset of block (d, da); da outside a's range contributes nothing
    size_t offset(int d, int da) const {
        size_t off = 0;
        for (int x = a->min_deg; x < da; ++x) off += a->dim(x) * b->dim(d - x);
        return off;
    }
    size_t dim(int d) const {
        size_t t = 0;
        for (int x = a->min_deg; x <= a->max_deg(); ++x) t += a->dim(x) * b->dim(d - x);
        return t;
    }
};

}  // namespace

FiniteModule tensor(const FiniteModule& a, const FiniteModule& b) {
    if (a.alg != b.alg) throw std::invalid_argument("tensor: algebra mismatch");
    FiniteModule m;
    m.alg = a.alg;
    m.min_deg = a.min_deg + b.min_deg;
    int maxd = a.max_deg() + b.max_deg();
    if (a.total_dim() == 0 || b.total_dim() == 0) {
        m.finalize();
        return m;
    }
    TensorIndex ti{&a, &b};
    m.names.resize(size_t(maxd - m.min_deg + 1));
    for (int d = m.min_deg; d <= maxd; ++d) {
        auto& row = m.names[size_t(d - m.min_deg)];
        for (int da = a.min_deg; da <= a.max_deg(); ++da) {
            int db = d - da;
            if (!b.in_range(db)) continue;
            for (size_t i = 0; i < a.dim(da); ++i)
                for (size_t j = 0; j < b.dim(db); ++j)
                    row.push_back(a.names[size_t(da - a.min_deg)][i] + "." +
                                  b.names[size_t(db - b.min_deg)][j]);
        }
    }
    m.num_gens = algebra_num_generators(m.alg, maxd - m.min_deg);
    long long vt = std::min<long long>(
        {kNoTruncation, (long long)a.valid_through + b.min_deg,
         (long long)b.valid_through + a.min_deg});
    m.valid_through = int(vt);
    m.finalize();

    for (int k = 0; k < m.num_gens; ++k) {
        int g = 1 << k;
        for (int d = m.min_deg; d + g <= maxd; ++d) {
            BitMatrix& t = m.gen_act[size_t(k)][size_t(d - m.min_deg)];
            if (t.rows() == 0 || t.cols() == 0) continue;
            // Cartan: Sq^g(x@y) = sum_{p+q=g} Sq^p x @ Sq^q y
            for (int da = a.min_deg; da <= a.max_deg(); ++da) {
                int db = d - da;
                if (!b.in_range(db) || a.dim(da) == 0 || b.dim(db) == 0) continue;
                size_t col0 = ti.offset(d, da);
                for (int p = 0; p <= g; ++p) {
                    int q = g - p;
                    BitMatrix ap = a.action_sq(p, da);
                    BitMatrix bq = b.action_sq(q, db);
                    if (ap.rows() == 0 || bq.rows() == 0) continue;
                    size_t row0 = ti.offset(d + g, da + p);
                    for (size_t i = 0; i < a.dim(da); ++i)
                        for (size_t j = 0; j < b.dim(db); ++j) {
                            size_t col = col0 + i * b.dim(db) + j;
                            for (size_t i2 = 0; i2 < ap.rows(); ++i2) {
                                if (!ap.get(i2, i)) continue;
                                for (size_t j2 = 0; j2 < bq.rows(); ++j2)
                                    if (bq.get(j2, j))
                                        t.row(row0 + i2 * b.dim(d + g - (da + p)) + j2)
                                            .flip(col);
                            }
                        }
                }
            }
        }
    }
    return m;
}

FiniteModule dualize(const FiniteModule& m) {
    FiniteModule d;
    d.alg = m.alg;
    d.min_deg = -m.max_deg();
    d.num_gens = m.num_gens;
    d.names.resize(m.names.size());
    for (int deg = m.min_deg; deg <= m.max_deg(); ++deg) {
        auto& row = d.names[size_t(-deg - d.min_deg)];
        for (const auto& n : m.names[size_t(deg - m.min_deg)]) row.push_back(n + "*");
    }
    d.finalize();
    for (int k = 0; k < m.num_gens; ++k) {
        int g = 1 << k;
        // S-dual: Sq^g on D is the transpose of the chi(Sq^g)-action on m
        // (for Sq^1 and Sq^2 this is the plain transpose)
        Element chi = conjugate(sq(m.alg, g));
        for (int deg = m.min_deg; deg <= m.max_deg(); ++deg) {
            if (m.dim(deg) == 0 || m.dim(deg + g) == 0) continue;
            d.gen_act[size_t(k)][size_t(-(deg + g) - d.min_deg)] =
                m.action_element(chi, deg).transposed();
        }
    }
    return d;
}

FiniteModule restrict_algebra(const FiniteModule& m, Algebra a) {
    FiniteModule out = m;
    out.alg = a;
    out.num_gens = 0;
    out.cover.reset();
    out.gen_act.resize(size_t(algebra_num_generators(a, m.degree_span())));
    out.finalize();
    for (int k = 0; k < out.num_gens && k < m.num_gens; ++k)
        out.gen_act[size_t(k)] = m.gen_act[size_t(k)];
    return out;
}

// ---- presentations ---------------------------------------------------------
FiniteModule presented_module(const Presentation& p, int max_degree) {
    Algebra alg = p.alg;
    int mg = 0;
    for (int g : p.gen_degrees) mg = std::max(mg, g);
    bool truncated = (alg == Algebra::A);
    if (max_degree < 0) {
        if (alg == Algebra::A)
            throw std::invalid_argument("presented_module over A needs a truncation bound");
        max_degree = mg + algebra_top_degree(alg);
    } else if (alg != Algebra::A && max_degree < mg + algebra_top_degree(alg)) {
        truncated = true;
    }
    int min_deg = max_degree;
    for (int g : p.gen_degrees) min_deg = std::min(min_deg, g);
    if (p.gen_degrees.empty()) min_deg = 0;

    size_t nd = size_t(max_degree - min_deg + 1);
    auto cover = std::make_shared<CoverData>();
    cover->gen_degrees = p.gen_degrees;
    cover->free_basis.resize(nd);
    cover->proj.resize(nd);
    cover->mod_to_free.resize(nd);

    FiniteModule m;
    m.alg = alg;
    m.min_deg = min_deg;
    m.names.resize(nd);
    m.num_gens = (alg == Algebra::A) ? algebra_num_generators(alg, max_degree - min_deg)
                                     : algebra_n(alg) + 1;
    // relator vectors in free coordinates, per relator: (degree, coords)
    struct Rel {
        int deg;
        std::vector<std::pair<BitVec, int>> parts;  // per generator: coords in basis(deg - t_g)
    };
    std::vector<Rel> rels;
    for (const auto& relator : p.relators) {
        if (relator.empty()) continue;
        int deg = -1;
        std::map<int, Element> per_gen;
        for (const auto& [e, g] : relator) {
            if (e.is_zero()) continue;
            int dg = e.degree() + p.gen_degrees[size_t(g)];
            if (deg < 0) deg = dg;
            else if (deg != dg) throw std::invalid_argument("inhomogeneous relator");
            auto it = per_gen.find(g);
            if (it == per_gen.end()) per_gen.emplace(g, e);
            else it->second = add(it->second, e);
        }
        if (deg < 0) continue;
        Rel r;
        r.deg = deg;
        for (size_t g = 0; g < p.gen_degrees.size(); ++g) {
            int bd = deg - p.gen_degrees[g];
            BitVec v(bd >= 0 ? algebra_dim(alg, bd) : 0);
            auto it = per_gen.find(int(g));
            if (it != per_gen.end() && bd >= 0)
                v = working_coords(alg, it->second, bd);
            r.parts.push_back({std::move(v), int(g)});
        }
        rels.push_back(std::move(r));
    }

    for (size_t off = 0; off < nd; ++off) {
        int d = min_deg + int(off);
        // free basis in degree d
        auto& fb = cover->free_basis[off];
        std::vector<size_t> gen_off(p.gen_degrees.size() + 1, 0);
        for (size_t g = 0; g < p.gen_degrees.size(); ++g) {
            gen_off[g] = fb.size();
            int bd = d - p.gen_degrees[g];
            if (bd >= 0)
                for (size_t i = 0; i < algebra_dim(alg, bd); ++i)
                    fb.push_back({int(i), int(g)});
        }
        gen_off[p.gen_degrees.size()] = fb.size();
        size_t fdim = fb.size();

        // relation subspace: theta * relator for theta in basis(d - deg r)
        Echelon rel_span(fdim);
        for (const Rel& r : rels) {
            int td = d - r.deg;
            if (td < 0) continue;
            for (size_t ti = 0; ti < algebra_dim(alg, td); ++ti) {
                BitVec v(fdim);
                for (const auto& [coords, g] : r.parts) {
                    int bd = r.deg - p.gen_degrees[size_t(g)];
                    if (bd < 0 || coords.size() == 0) continue;
                    const MulTable& tab = mul_table(alg, td, bd);
                    for (size_t bi = 0; bi < coords.size(); ++bi) {
                        if (!coords.get(bi)) continue;
                        for (int res : tab.entry(ti, bi))
                            v.flip(gen_off[size_t(g)] + size_t(res));
                    }
                }
                rel_span.insert(v);
            }
        }
        rel_span.back_eliminate();

        // module basis: non-pivot free coordinates
        auto& m2f = cover->mod_to_free[off];
        for (size_t c = 0; c < fdim; ++c)
            if (!rel_span.is_pivot(c)) m2f.push_back(int(c));
        auto& row = m.names[off];
        for (size_t i = 0; i < m2f.size(); ++i) row.push_back(default_name("x", d, i));

        // projection: free coord -> module coords
        BitMatrix proj(m2f.size(), fdim);
        std::vector<size_t> coord_to_mod(fdim, size_t(-1));
        for (size_t i = 0; i < m2f.size(); ++i) coord_to_mod[size_t(m2f[i])] = i;
        for (size_t c = 0; c < fdim; ++c) {
            BitVec e(fdim);
            e.set(c);
            BitVec r = rel_span.reduce(e);
            for (size_t x = 0; x < fdim; ++x)
                if (r.get(x)) proj.set(coord_to_mod[x], c);
        }
        cover->proj[off] = std::move(proj);
    }

    m.finalize();
    m.cover = cover;

    // generator actions through the free cover
    for (int k = 0; k < m.num_gens; ++k) {
        int g2 = 1 << k;
        if (g2 > algebra_top_degree(alg)) continue;
        size_t sq_idx;
        if (alg == Algebra::A) {
            const auto& basis = admissible_basis(g2);
            Mono mono{g2};
            sq_idx = size_t(std::lower_bound(basis.begin(), basis.end(), mono) - basis.begin());
        } else {
            sq_idx = milnor_index(alg, Profile{g2});
            if (sq_idx == size_t(-1)) continue;
        }
        for (size_t off = 0; off < nd; ++off) {
            int d = min_deg + int(off);
            if (d + g2 > max_degree || m.dim(d) == 0) continue;
            size_t toff = size_t(d + g2 - min_deg);
            const auto& fb_t = cover->free_basis[toff];
            // index of (basis,gen) pairs in the target free basis
            std::map<std::pair<int, int>, size_t> tidx;
            for (size_t c = 0; c < fb_t.size(); ++c) tidx[fb_t[c]] = c;
            BitMatrix& act = m.gen_act[size_t(k)][off];
            const auto& m2f = cover->mod_to_free[off];
            for (size_t j = 0; j < m2f.size(); ++j) {
                auto [bi, gg] = cover->free_basis[off][size_t(m2f[j])];
                int bd = d - p.gen_degrees[size_t(gg)];
                const MulTable& tab = mul_table(alg, g2, bd);
                BitVec fv(fb_t.size());
                for (int res : tab.entry(sq_idx, size_t(bi)))
                    fv.flip(tidx.at({res, gg}));
                act.add_column(j, cover->proj[toff].apply(fv));
            }
        }
    }
    if (truncated) m.valid_through = max_degree;
    return m;
}

FiniteModule quotient_by_left_ideal(Algebra a, const std::vector<Element>& relations,
                                    int max_degree) {
    Presentation p;
    p.alg = a;
    p.gen_degrees = {0};
    for (const Element& e : relations) p.relators.push_back({{e, 0}});
    return presented_module(p, max_degree);
}

// ---- sub/quotient modules --------------------------------------------------
SubmoduleResult submodule_closure(const FiniteModule& m,
                                  const std::vector<std::pair<int, gf2::BitVec>>& seeds) {
    size_t nd = m.names.size();
    std::vector<Echelon> ech;
    for (size_t off = 0; off < nd; ++off) ech.emplace_back(m.dim(m.min_deg + int(off)));
    std::vector<std::vector<BitVec>> basis(nd);  // chosen vectors, insertion order
    std::vector<std::pair<int, size_t>> queue;   // (degree, index into basis)

    auto add_vec = [&](int d, const BitVec& v) {
        if (!m.in_range(d)) return;
        size_t off = size_t(d - m.min_deg);
        BitVec r = ech[off].reduce(v);
        if (r.none()) return;
        ech[off].insert(v);
        basis[off].push_back(ech[off].rows().back());
        queue.push_back({d, basis[off].size() - 1});
    };
    for (const auto& [d, v] : seeds) add_vec(d, v);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [d, i] = queue[qi];
        BitVec v = basis[size_t(d - m.min_deg)][i];
        for (int k = 0; k < m.num_gens; ++k)
            add_vec(d + (1 << k), m.gen_action(k, d).apply(v));
    }

    FiniteModule sub;
    sub.alg = m.alg;
    sub.min_deg = m.min_deg;
    sub.num_gens = m.num_gens;
    sub.valid_through = m.valid_through;
    sub.names.resize(nd);
    for (size_t off = 0; off < nd; ++off)
        for (size_t i = 0; i < basis[off].size(); ++i)
            sub.names[off].push_back(default_name("s", m.min_deg + int(off), i));
    sub.finalize();
    ModuleMap incl;
    incl.mats.resize(nd);
    for (size_t off = 0; off < nd; ++off) {
        int d = m.min_deg + int(off);
        BitMatrix mat(m.dim(d), basis[off].size());
        for (size_t j = 0; j < basis[off].size(); ++j) mat.add_column(j, basis[off][j]);
        incl.mats[off] = std::move(mat);
    }
    for (int k = 0; k < m.num_gens; ++k)
        for (size_t off = 0; off < nd; ++off) {
            int d = m.min_deg + int(off);
            int toff = d + (1 << k) - m.min_deg;
            if (toff < 0 || size_t(toff) >= nd) continue;
            BitMatrix& act = sub.gen_act[size_t(k)][off];
            for (size_t j = 0; j < basis[off].size(); ++j) {
                BitVec w = m.gen_action(k, d).apply(basis[off][j]);
                auto coords = ech[size_t(toff)].express(std::move(w));
                assert(coords);  // closed by construction
                act.add_column(j, *coords);
            }
        }
    incl.source = sub;
    incl.target = m;
    return {std::move(sub), std::move(incl)};
}

SubmoduleResult kernel_module(const ModuleMap& f) {
    std::vector<std::pair<int, BitVec>> seeds;
    for (int d = f.source.min_deg; d <= f.source.max_deg(); ++d)
        for (const BitVec& v : gf2::kernel(f.matrix(d))) seeds.push_back({d, v});
    return submodule_closure(f.source, seeds);
}

SubmoduleResult image_module(const ModuleMap& f) {
    std::vector<std::pair<int, BitVec>> seeds;
    for (int d = f.source.min_deg; d <= f.source.max_deg(); ++d) {
        BitMatrix mat = f.matrix(d);
        for (size_t j = 0; j < mat.cols(); ++j) seeds.push_back({d, mat.column(j)});
    }
    return submodule_closure(f.target, seeds);
}

QuotientResult quotient_by_span(const FiniteModule& m,
                                const std::vector<std::pair<int, gf2::BitVec>>& span) {
    size_t nd = m.names.size();
    std::vector<Echelon> ech;
    for (size_t off = 0; off < nd; ++off) ech.emplace_back(m.dim(m.min_deg + int(off)));
    for (const auto& [d, v] : span) {
        if (!m.in_range(d)) throw std::invalid_argument("span vector out of range");
        ech[size_t(d - m.min_deg)].insert(v);
    }
    // closure check
    for (size_t off = 0; off < nd; ++off) {
        int d = m.min_deg + int(off);
        for (int k = 0; k < m.num_gens; ++k) {
            int toff = d + (1 << k) - m.min_deg;
            for (const BitVec& r : ech[off].rows()) {
                BitVec w = m.gen_action(k, d).apply(r);
                if (w.none()) continue;
                if (toff < 0 || size_t(toff) >= nd || !ech[size_t(toff)].contains(w))
                    throw std::invalid_argument("quotient_by_span: span not action-closed");
            }
        }
    }
    for (auto& e : ech) e.back_eliminate();

    FiniteModule q;
    q.alg = m.alg;
    q.min_deg = m.min_deg;
    q.num_gens = m.num_gens;
    q.valid_through = m.valid_through;
    q.names.resize(nd);
    std::vector<std::vector<size_t>> qbasis(nd);  // non-pivot coords
    std::vector<std::vector<size_t>> coord_to_q(nd);
    for (size_t off = 0; off < nd; ++off) {
        size_t dimd = m.dim(m.min_deg + int(off));
        coord_to_q[off].assign(dimd, size_t(-1));
        for (size_t c = 0; c < dimd; ++c)
            if (!ech[off].is_pivot(c)) {
                coord_to_q[off][c] = qbasis[off].size();
                qbasis[off].push_back(c);
            }
        for (size_t i = 0; i < qbasis[off].size(); ++i)
            q.names[off].push_back(default_name("q", m.min_deg + int(off), i));
    }
    q.finalize();
    ModuleMap proj;
    proj.mats.resize(nd);
    for (size_t off = 0; off < nd; ++off) {
        size_t dimd = m.dim(m.min_deg + int(off));
        BitMatrix p(qbasis[off].size(), dimd);
        for (size_t c = 0; c < dimd; ++c) {
            BitVec e(dimd);
            e.set(c);
            BitVec r = ech[off].reduce(e);
            for (size_t x = 0; x < dimd; ++x)
                if (r.get(x)) p.set(coord_to_q[off][x], c);
        }
        proj.mats[off] = std::move(p);
    }
    for (int k = 0; k < m.num_gens; ++k)
        for (size_t off = 0; off < nd; ++off) {
            int d = m.min_deg + int(off);
            int toff = d + (1 << k) - m.min_deg;
            if (toff < 0 || size_t(toff) >= nd) continue;
            BitMatrix& act = q.gen_act[size_t(k)][off];
            for (size_t j = 0; j < qbasis[off].size(); ++j) {
                BitVec w = m.gen_action(k, d).apply(unit_vec(m.dim(d), qbasis[off][j]));
                act.add_column(j, proj.mats[size_t(toff)].apply(w));
            }
        }
    proj.source = m;
    proj.target = q;
    return {std::move(q), std::move(proj)};
}

// ---- module maps -----------------------------------------------------------
BitMatrix ModuleMap::matrix(int d) const {
    if (d >= source.min_deg && d <= source.max_deg()) {
        size_t off = size_t(d - source.min_deg);
        if (off < mats.size() && (mats[off].rows() > 0 || mats[off].cols() > 0))
            return mats[off];
    }
    return BitMatrix(target.dim(d), source.dim(d));
}

BitVec ModuleMap::apply(int d, const BitVec& v) const { return matrix(d).apply(v); }

ValidationReport ModuleMap::check() const {
    ValidationReport rep;
    if (source.alg != target.alg) {
        rep.ok = false;
        rep.failures.push_back("algebra mismatch");
        return rep;
    }
    for (int d = source.min_deg; d <= source.max_deg(); ++d) {
        BitMatrix f = matrix(d);
        if (f.rows() != target.dim(d) || f.cols() != source.dim(d)) {
            rep.ok = false;
            rep.failures.push_back("matrix shape wrong at degree " + std::to_string(d));
            continue;
        }
        for (int k = 0; k < std::max(source.num_gens, target.num_gens); ++k) {
            BitMatrix lhs = gf2::mul(target.gen_action(k, d), f);
            BitMatrix rhs = gf2::mul(matrix(d + (1 << k)), source.gen_action(k, d));
            if (!(lhs == rhs)) {
                rep.ok = false;
                rep.failures.push_back("does not commute with Sq" +
                                       std::to_string(1 << k) + " at degree " +
                                       std::to_string(d));
            }
        }
    }
    return rep;
}

ModuleMap identity_map(const FiniteModule& m) {
    ModuleMap f;
    f.source = m;
    f.target = m;
    f.mats.resize(m.names.size());
    for (size_t off = 0; off < m.names.size(); ++off) {
        size_t n = m.dim(m.min_deg + int(off));
        BitMatrix id(n, n);
        for (size_t i = 0; i < n; ++i) id.set(i, i);
        f.mats[off] = std::move(id);
    }
    return f;
}

ModuleMap zero_map(const FiniteModule& src, const FiniteModule& tgt) {
    ModuleMap f;
    f.source = src;
    f.target = tgt;
    f.mats.resize(src.names.size());
    for (size_t off = 0; off < src.names.size(); ++off) {
        int d = src.min_deg + int(off);
        f.mats[off] = BitMatrix(tgt.dim(d), src.dim(d));
    }
    return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    ModuleMap h;
    h.source = f.source;
    h.target = g.target;
    h.mats.resize(f.source.names.size());
    for (size_t off = 0; off < h.mats.size(); ++off) {
        int d = f.source.min_deg + int(off);
        h.mats[off] = gf2::mul(g.matrix(d), f.matrix(d));
    }
    return h;
}

ModuleMap map_from_generator_images(const FiniteModule& source, const FiniteModule& target,
                                    const std::vector<std::pair<int, gf2::BitVec>>& images) {
    if (!source.cover)
        throw std::invalid_argument("map_from_generator_images: source has no cover data");
    const CoverData& cov = *source.cover;
    if (images.size() != cov.gen_degrees.size())
        throw std::invalid_argument("wrong number of generator images");
    ModuleMap f;
    f.source = source;
    f.target = target;
    f.mats.resize(source.names.size());
    for (size_t off = 0; off < source.names.size(); ++off) {
        int d = source.min_deg + int(off);
        BitMatrix mat(target.dim(d), source.dim(d));
        const auto& m2f = cov.mod_to_free[off];
        for (size_t j = 0; j < m2f.size(); ++j) {
            auto [bi, g] = cov.free_basis[off][size_t(m2f[j])];
            int bd = d - cov.gen_degrees[size_t(g)];
            const Element& theta = working_element(source.alg, bd, size_t(bi));
            const auto& [img_deg, img] = images[size_t(g)];
            if (img_deg != cov.gen_degrees[size_t(g)])
                throw std::invalid_argument("generator image at wrong degree");
            mat.add_column(j, target.apply_element(theta, img_deg, img));
        }
        f.mats[off] = std::move(mat);
    }
    return f;
}

std::vector<ModuleMap> hom_space(const FiniteModule& source, const FiniteModule& target) {
    // unknowns: entries of F_d for every degree
    std::vector<size_t> block_off;
    size_t total = 0;
    for (int d = source.min_deg; d <= source.max_deg(); ++d) {
        block_off.push_back(total);
        total += source.dim(d) * target.dim(d);
    }
    auto entry_idx = [&](int d, size_t r, size_t c) {
        return block_off[size_t(d - source.min_deg)] + r * source.dim(d) + c;
    };
    std::vector<BitVec> eq_rows;
    int ng = std::max(source.num_gens, target.num_gens);
    for (int d = source.min_deg; d <= source.max_deg(); ++d)
        for (int k = 0; k < ng; ++k) {
            int dt = d + (1 << k);
            BitMatrix tk = target.gen_action(k, d);
            BitMatrix sk = source.gen_action(k, d);
            // row (r2, c): sum_r tk(r2,r) F_d(r,c) - sum_c2 F_dt(r2,c2) sk(c2,c) = 0
            for (size_t r2 = 0; r2 < target.dim(dt); ++r2)
                for (size_t c = 0; c < source.dim(d); ++c) {
                    BitVec row(total);
                    for (size_t r = 0; r < target.dim(d); ++r)
                        if (tk.get(r2, r)) row.flip(entry_idx(d, r, c));
                    if (source.in_range(dt))
                        for (size_t c2 = 0; c2 < source.dim(dt); ++c2)
                            if (sk.get(c2, c)) row.flip(entry_idx(dt, r2, c2));
                    if (!row.none()) eq_rows.push_back(std::move(row));
                }
        }
    BitMatrix eqs(eq_rows.size(), total);
    for (size_t i = 0; i < eq_rows.size(); ++i) eqs.row(i) = eq_rows[i];
    std::vector<ModuleMap> out;
    for (const BitVec& sol : gf2::kernel(eqs)) {
        ModuleMap f = zero_map(source, target);
        for (int d = source.min_deg; d <= source.max_deg(); ++d)
            for (size_t r = 0; r < target.dim(d); ++r)
                for (size_t c = 0; c < source.dim(d); ++c)
                    if (sol.get(entry_idx(d, r, c)))
                        f.mats[size_t(d - source.min_deg)].set(r, c);
        out.push_back(std::move(f));
    }
    return out;
}

ValidationReport check_ses(const ShortExact& s) {
    ValidationReport rep;
    auto merge = [&](const ValidationReport& r, const std::string& tag) {
        if (!r.ok) {
            rep.ok = false;
            for (const auto& f : r.failures) rep.failures.push_back(tag + ": " + f);
        }
    };
    merge(s.i.check(), "i");
    merge(s.p.check(), "p");
    int lo = std::min(s.i.source.min_deg, s.i.target.min_deg);
    int hi = std::max(s.i.source.max_deg(), s.i.target.max_deg());
    for (int d = lo; d <= hi; ++d) {
        size_t da = s.i.source.dim(d), db = s.i.target.dim(d), dc = s.p.target.dim(d);
        BitMatrix mi = s.i.matrix(d), mp = s.p.matrix(d);
        size_t ri = gf2::rank(mi), rp = gf2::rank(mp);
        if (ri != da)
            rep.failures.push_back("i not injective at degree " + std::to_string(d)),
                rep.ok = false;
        if (rp != dc)
            rep.failures.push_back("p not surjective at degree " + std::to_string(d)),
                rep.ok = false;
        if (ri + rp != db)
            rep.failures.push_back("not exact in the middle at degree " + std::to_string(d)),
                rep.ok = false;
        BitMatrix pi = gf2::mul(mp, mi);
        for (size_t r = 0; r < pi.rows(); ++r)
            if (!pi.row(r).none()) {
                rep.failures.push_back("p*i nonzero at degree " + std::to_string(d));
                rep.ok = false;
                break;
            }
    }
    return rep;
}

// ---- stunted projective modules --------------------------------------------
FiniteModule truncated_projective(StuntedKind kind, int max_degree, Algebra a) {
    if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
    std::vector<int> cells;
    if (kind == StuntedKind::Q)
        cells = {-9, -5, -3, -2, -1};
    for (int i = 1; i <= max_degree; ++i) cells.push_back(i);

    FiniteModule m;
    m.alg = a;
    m.min_deg = cells.front();
    m.names.resize(size_t(max_degree - m.min_deg + 1));
    std::map<int, size_t> cell_at;  // degree -> 1 if cell present
    for (int c : cells) {
        m.names[size_t(c - m.min_deg)].push_back("x" + std::to_string(c));
        cell_at[c] = 0;
    }
    m.num_gens = algebra_n(a) + 1;
    m.valid_through = max_degree;
    m.finalize();
    for (int k = 0; k < m.num_gens; ++k) {
        long long g = 1 << k;
        for (int c : cells) {
            long long t = c + g;
            if (t > max_degree || !cell_at.count(int(t))) continue;
            // binom(i, j) mod 2 via 2-adic digits (valid for negative i)
            if (((long long)c & g) == g)
                m.gen_act[size_t(k)][size_t(c - m.min_deg)].set(0, 0);
        }
    }
    return m;
}

// ---- weight decomposition --------------------------------------------------
namespace {

struct WGen {
    int degree;
    long long weight;
};

void enumerate_weighted(const std::vector<WGen>& gens, size_t gi, int deg, long long wt,
                        long long max_wt, int max_deg, std::vector<int>& series) {
    if (gi == gens.size()) {
        if (deg <= max_deg) series[size_t(deg)]++;
        return;
    }
    for (int e = 0;; ++e) {
        int nd = deg + e * gens[gi].degree;
        long long nw = wt + e * gens[gi].weight;
        if (nd > max_deg || nw > max_wt) break;
        enumerate_weighted(gens, gi + 1, nd, nw, max_wt, max_deg, series);
    }
}

std::vector<int> weighted_series(const std::vector<WGen>& gens, long long max_wt,
                                 bool exact_wt, int max_deg) {
    std::vector<int> all(size_t(max_deg) + 1, 0);
    if (!exact_wt) {
        enumerate_weighted(gens, 0, 0, 0, max_wt, max_deg, all);
        return all;
    }
    // exact weight: inclusion of <= max_wt minus <= max_wt - 1
    std::vector<int> lo(size_t(max_deg) + 1, 0);
    enumerate_weighted(gens, 0, 0, 0, max_wt, max_deg, all);
    enumerate_weighted(gens, 0, 0, 0, max_wt - 1, max_deg, lo);
    for (size_t i = 0; i < all.size(); ++i) all[i] -= lo[i];
    return all;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> weight_decomposition(int n, int max_degree) {
    // M_n: weight exactly 8n in F2[zeta1^8, zeta2^4, zeta3^2, zeta4, zeta5, ...]
    std::vector<WGen> mg = {{8, 8}, {12, 8}, {14, 8}};
    for (int i = 4; (1 << (i - 1)) <= 8 * n && ((1 << i) - 1) <= max_degree; ++i)
        mg.push_back({(1 << i) - 1, 1LL << (i - 1)});
    std::vector<int> m_series =
        n == 0 ? std::vector<int>(size_t(max_degree) + 1, 0)
               : weighted_series(mg, 8LL * n, true, max_degree);
    if (n == 0) m_series[0] = 1;

    // bo_n: weight <= 4n in F2[zeta1^4, zeta2^2, zeta3, zeta4, ...], shifted by 8n
    std::vector<WGen> bg = {{4, 4}, {6, 4}, {7, 4}};
    for (int i = 4; (1 << (i - 1)) <= 4 * n && ((1 << i) - 1) <= max_degree; ++i)
        bg.push_back({(1 << i) - 1, 1LL << (i - 1)});
    std::vector<int> bo = weighted_series(bg, 4LL * n, false, max_degree);
    std::vector<int> bo_shift(size_t(max_degree) + 1, 0);
    for (int d = 0; d <= max_degree; ++d)
        if (d + 8 * n <= max_degree) bo_shift[size_t(d + 8 * n)] = bo[size_t(d)];
    return {m_series, bo_shift};
}

FiniteModule bo_homology_negated(int n, Algebra a) {
    // monomials of weight <= 4n in zeta1^4, zeta2^2, zeta3, zeta4, ...
    std::vector<DualMono> monos;
    std::function<void(DualMono, size_t, long long)> rec = [&](DualMono cur, size_t vi,
                                                               long long wt) {
        // variable vi (0-based): zeta_{vi+1}, step exponent, weight per step
        long long step_wt = (vi < 2) ? 4 : (1LL << vi);
        int step_e = vi == 0 ? 4 : (vi == 1 ? 2 : 1);
        if (step_wt > 4LL * n) {
            monos.push_back(cur);
            return;
        }
        for (int e = 0;; ++e) {
            long long w2 = wt + e * step_wt;
            if (w2 > 4LL * n) break;
            DualMono next = cur;
            if (e > 0) {
                next.e.resize(vi + 1, 0);
                next.e[vi] = e * step_e;
            }
            rec(next, vi + 1, w2);
        }
    };
    rec(DualMono{}, 0, 0);
    std::sort(monos.begin(), monos.end(),
              [](const DualMono& x, const DualMono& y) {
                  if (x.degree() != y.degree()) return x.degree() < y.degree();
                  return x.e < y.e;
              });

    int top = 0;
    for (const auto& m : monos) top = std::max(top, m.degree());
    FiniteModule mod;
    mod.alg = a;
    mod.min_deg = -top;
    mod.names.resize(size_t(top) + 1);
    std::map<DualMono, std::pair<int, size_t>> index;  // mono -> (negated degree, i)
    for (const auto& m : monos) {
        int d = -m.degree();
        index[m] = {d, mod.names[size_t(d - mod.min_deg)].size()};
        mod.names[size_t(d - mod.min_deg)].push_back(render(m));
    }
    mod.num_gens = algebra_n(a) + 1;
    mod.finalize();
    for (const auto& m : monos) {
        auto [d, j] = index.at(m);
        for (int k = 0; k < mod.num_gens; ++k) {
            int g = 1 << k;
            DualPoly res = dual_action(sq(Algebra::A, g), m);
            for (const DualMono& r : res) {
                auto it = index.find(r);
                if (it == index.end())
                    throw std::runtime_error("weight span not closed under dual action");
                auto [d2, j2] = it->second;
                assert(d2 == d + g);
                mod.gen_act[size_t(k)][size_t(d - mod.min_deg)].set(j2, j);
            }
        }
    }
    return mod;
}

// ---- module file IO --------------------------------------------------------
namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

}  // namespace

std::optional<FiniteModule> read_module(std::istream& in, std::string* err) {
    auto fail = [&](const std::string& msg) -> std::optional<FiniteModule> {
        if (err) *err = msg;
        return std::nullopt;
    };
    std::optional<Algebra> alg;
    std::vector<std::pair<std::string, int>> basis;
    struct ActLine {
        int k;
        std::string src;
        std::vector<std::string> tgts;
    };
    std::vector<ActLine> acts;
    int valid_through = kNoTruncation;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty()) continue;
        std::string where = " (line " + std::to_string(lineno) + ")";
        if (tok[0] == "algebra") {
            if (tok.size() != 2) return fail("algebra line malformed" + where);
            alg = algebra_from_name(tok[1]);
            if (!alg) return fail("unknown algebra '" + tok[1] + "'" + where);
        } else if (tok[0] == "basis") {
            for (size_t i = 1; i < tok.size(); ++i) {
                size_t colon = tok[i].rfind(':');
                if (colon == std::string::npos || colon == 0)
                    return fail("basis entry '" + tok[i] + "' malformed" + where);
                try {
                    basis.push_back({tok[i].substr(0, colon),
                                     std::stoi(tok[i].substr(colon + 1))});
                } catch (...) {
                    return fail("basis entry '" + tok[i] + "' malformed" + where);
                }
            }
        } else if (tok[0] == "sq") {
            if (tok.size() < 5 || tok[3] != "=")
                return fail("sq line malformed" + where);
            ActLine a;
            try {
                a.k = std::stoi(tok[1]);
            } catch (...) {
                return fail("sq line malformed" + where);
            }
            a.src = tok[2];
            for (size_t i = 4; i < tok.size(); ++i) {
                if (tok[i] == "+") continue;
                if (tok[i] == "0") continue;
                a.tgts.push_back(tok[i]);
            }
            acts.push_back(std::move(a));
        } else if (tok[0] == "valid-through") {
            if (tok.size() != 2) return fail("valid-through malformed" + where);
            valid_through = std::stoi(tok[1]);
        } else {
            return fail("unknown directive '" + tok[0] + "'" + where);
        }
    }
    if (!alg) return fail("missing 'algebra' line");
    if (basis.empty()) return fail("empty basis");

    FiniteModule m;
    m.alg = *alg;
    int mind = basis[0].second, maxd = basis[0].second;
    for (auto& [n, d] : basis) {
        mind = std::min(mind, d);
        maxd = std::max(maxd, d);
    }
    m.min_deg = mind;
    m.names.resize(size_t(maxd - mind + 1));
    std::map<std::string, std::pair<int, size_t>> where_is;
    for (auto& [n, d] : basis) {
        if (where_is.count(n)) return fail("duplicate basis name '" + n + "'");
        where_is[n] = {d, m.names[size_t(d - mind)].size()};
        m.names[size_t(d - mind)].push_back(n);
    }
    m.valid_through = valid_through;
    m.finalize();
    for (const auto& a : acts) {
        if ((a.k & (a.k - 1)) != 0 || a.k <= 0)
            return fail("sq index " + std::to_string(a.k) + " is not a generator (power of two)");
        int k = 0;
        while ((1 << k) < a.k) ++k;
        if (k >= m.num_gens)
            return fail("sq index " + std::to_string(a.k) + " outside the algebra");
        auto sit = where_is.find(a.src);
        if (sit == where_is.end()) return fail("unknown basis name '" + a.src + "'");
        auto [sd, si] = sit->second;
        for (const auto& t : a.tgts) {
            auto tit = where_is.find(t);
            if (tit == where_is.end()) return fail("unknown basis name '" + t + "'");
            auto [td, tj] = tit->second;
            if (td != sd + a.k)
                return fail("action target '" + t + "' has wrong degree");
            m.gen_act[size_t(k)][size_t(sd - mind)].set(tj, si);
        }
    }
    return m;
}

std::optional<FiniteModule> read_module_file(const std::string& path, std::string* err) {
    std::ifstream in(path);
    if (!in) {
        if (err) *err = "cannot open '" + path + "'";
        return std::nullopt;
    }
    return read_module(in, err);
}

void write_module(std::ostream& out, const FiniteModule& m) {
    out << "algebra " << algebra_name(m.alg) << "\n";
    for (int d = m.min_deg; d <= m.max_deg(); ++d) {
        if (m.dim(d) == 0) continue;
        out << "basis";
        for (const auto& n : m.names[size_t(d - m.min_deg)]) out << " " << n << ":" << d;
        out << "\n";
    }
    if (m.valid_through < kNoTruncation) out << "valid-through " << m.valid_through << "\n";
    for (int k = 0; k < m.num_gens; ++k) {
        int g = 1 << k;
        for (int d = m.min_deg; d <= m.max_deg(); ++d) {
            BitMatrix a = m.gen_action(k, d);
            for (size_t j = 0; j < a.cols(); ++j) {
                BitVec col = a.column(j);
                if (col.none()) continue;
                out << "sq " << g << " " << m.names[size_t(d - m.min_deg)][j] << " =";
                bool first = true;
                for (size_t i = 0; i < a.rows(); ++i)
                    if (col.get(i)) {
                        out << (first ? " " : " + ")
                            << m.names[size_t(d + g - m.min_deg)][i];
                        first = false;
                    }
                out << "\n";
            }
        }
    }
}

std::optional<FiniteModule> read_classical_module(std::istream& in, std::string* err) {
    // classical layout: first the total dimension, then one degree per basis
    // element, then rows "i g n j1 ... jn" meaning Sq^g(e_i) = e_j1 + ... + e_jn
    // (0-based indices)
    auto fail = [&](const std::string& msg) -> std::optional<FiniteModule> {
        if (err) *err = msg;
        return std::nullopt;
    };
    size_t n;
    if (!(in >> n) || n == 0) return fail("bad dimension count");
    std::vector<int> degs(n);
    for (auto& d : degs)
        if (!(in >> d)) return fail("bad degree list");
    std::ostringstream lines;
    lines << "algebra A2\n";
    std::vector<std::string> names(n);
    int mind = *std::min_element(degs.begin(), degs.end());
    std::map<int, int> seen;
    for (size_t i = 0; i < n; ++i)
        names[i] = default_name("e", degs[i], size_t(seen[degs[i]]++));
    lines << "basis";
    for (size_t i = 0; i < n; ++i) lines << " " << names[i] << ":" << degs[i];
    lines << "\n";
    size_t i, cnt;
    int g;
    while (in >> i >> g >> cnt) {
        if (i >= n) return fail("row index out of range");
        lines << "sq " << g << " " << names[i] << " =";
        if (cnt == 0) lines << " 0";
        for (size_t c = 0; c < cnt; ++c) {
            size_t j;
            if (!(in >> j) || j >= n) return fail("action index out of range");
            lines << (c ? " + " : " ") << names[j];
        }
        lines << "\n";
    }
    (void)mind;
    std::istringstream back(lines.str());
    return read_module(back, err);
}

int basis_index_by_name(const FiniteModule& m, const std::string& name, int* degree) {
    for (int d = m.min_deg; d <= m.max_deg(); ++d) {
        const auto& row = m.names[size_t(d - m.min_deg)];
        for (size_t i = 0; i < row.size(); ++i)
            if (row[i] == name) {
                if (degree) *degree = d;
                return int(i);
            }
    }
    return -1;
}

}  // namespace ext2
