// Chain-map lifting between minimal resolutions: Yoneda products, induced
// maps on Ext, connecting homomorphisms, and long-exact-sequence checks.
#include "ext2/resolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace ext2 {

using gf2::BitMatrix;
using gf2::BitVec;

namespace {

size_t adim(Algebra a, int d) {
    if (d < 0 || d > algebra_top_degree(a)) return 0;
    return algebra_dim(a, d);
}

// propagate a chain-map value through one differential: d_img lives in the
// free coords of level s of `src` at degree t; vals[g] are the images of the
// level-s generators of src in the free coords of level k of `dst`, each at
// degree gen_deg - shift.  Returns the image of d_img at degree t - shift.
BitVec push_through(const Resolution& src, int s, int t, const BitVec& img,
                    const Resolution& dst, int k, int shift,
                    const std::vector<BitVec>& vals) {
    BitVec out(dst.free_dim(k, t - shift));
    const auto& degs = src.gen_deg[size_t(s)];
    size_t off = 0;
    for (size_t g = 0; g < degs.size(); ++g) {
        int bd = t - degs[g];
        size_t n = adim(src.alg, bd);
        for (size_t j = 0; j < n; ++j)
            if (img.get(off + j)) {
                if (vals[g].size() == 0) continue;
                if (bd == 0)
                    out ^= vals[g];
                else
                    out ^= dst.mul_free(k, degs[g] - shift, bd, j, vals[g]);
            }
        off += n;
    }
    return out;
}

}  // namespace

std::vector<std::vector<BitVec>> lift_class(const Resolution& r, int s0, int t0,
                                            size_t i0, const Resolution& g, int k_max) {
    if (g.gen_deg[0].size() != 1 || g.gen_deg[0][0] != 0)
        throw std::invalid_argument("lift_class: target must resolve F2");
    auto at = r.gens_at(s0, t0);
    if (i0 >= at.size()) throw std::invalid_argument("lift_class: no such class");
    if (s0 + k_max > r.s_max || k_max > g.s_max)
        throw std::invalid_argument("lift_class: insufficient window");
    size_t gen0 = at[i0];

    std::vector<std::vector<BitVec>> f(size_t(k_max) + 1);
    // level 0: dual-class projection onto the unit coordinate of gen0
    f[0].resize(r.gen_deg[size_t(s0)].size());
    for (size_t m = 0; m < f[0].size(); ++m) {
        int u = r.gen_deg[size_t(s0)][m];
        f[0][m] = BitVec(g.free_dim(0, u - t0));
        if (m == gen0) f[0][m].set(0);
    }
    for (int k = 1; k <= k_max; ++k) {
        f[size_t(k)].resize(r.gen_deg[size_t(s0 + k)].size());
        for (size_t m = 0; m < f[size_t(k)].size(); ++m) {
            int u = r.gen_deg[size_t(s0 + k)][m];
            if (u - t0 > g.t_max)
                throw std::invalid_argument("lift_class: insufficient target window");
            BitVec rhs = push_through(r, s0 + k - 1, u, r.d_img[size_t(s0 + k)][m], g,
                                      k - 1, t0, f[size_t(k - 1)]);
            if (rhs.none()) {
                f[size_t(k)][m] = BitVec(g.free_dim(k, u - t0));
                continue;
            }
            auto z = g.d_solver(k, u - t0).solve(rhs);
            if (!z) throw std::logic_error("lift_class: no solution (inexact target?)");
            f[size_t(k)][m] = std::move(*z);
        }
    }
    return f;
}

BitVec yoneda_product(const Resolution& r, int sa, int ta, size_t ia,
                      const Resolution& f2res, int sb, int tb, size_t ib) {
    auto bt = f2res.gens_at(sb, tb);
    if (ib >= bt.size()) throw std::invalid_argument("yoneda_product: no such class b");
    auto f = lift_class(r, sa, ta, ia, f2res, sb);
    auto out_gens = r.gens_at(sa + sb, ta + tb);
    BitVec out(out_gens.size());
    size_t unit = f2res.block_offset(sb, tb, bt[ib]);
    for (size_t i = 0; i < out_gens.size(); ++i)
        if (f[size_t(sb)][out_gens[i]].get(unit)) out.set(i);
    return out;
}

BitMatrix ChartMap::matrix(int s, int t, size_t rows, size_t cols) const {
    auto it = mats.find({s, t});
    if (it != mats.end()) return it->second;
    return BitMatrix(rows, cols);
}

ChartMap induced_map(const ModuleMap& f, const Resolution& rm, const Resolution& rn) {
    if (rm.alg != rn.alg) throw std::invalid_argument("induced_map: algebra mismatch");
    int s_top = std::min(rm.s_max, rn.s_max);
    int t_top = std::min(rm.t_max, rn.t_max);

    // chain map phi_k : F^M_k -> F^N_k covering f : M -> N
    std::vector<std::vector<BitVec>> phi(size_t(s_top) + 1);
    phi[0].resize(rm.gen_deg[0].size());
    for (size_t m = 0; m < phi[0].size(); ++m) {
        int u = rm.gen_deg[0][m];
        if (u > t_top) continue;
        BitVec img = f.apply(u, rm.aug_img[m]);
        auto z = rn.d_solver(0, u).solve(img);
        if (!z) throw std::logic_error("induced_map: augmentation not surjective");
        phi[0][m] = std::move(*z);
    }
    for (int k = 1; k <= s_top; ++k) {
        phi[size_t(k)].resize(rm.gen_deg[size_t(k)].size());
        for (size_t m = 0; m < phi[size_t(k)].size(); ++m) {
            int u = rm.gen_deg[size_t(k)][m];
            if (u > t_top) continue;
            BitVec rhs = push_through(rm, k - 1, u, rm.d_img[size_t(k)][m], rn, k - 1, 0,
                                      phi[size_t(k - 1)]);
            if (rhs.none()) {
                phi[size_t(k)][m] = BitVec(rn.free_dim(k, u));
                continue;
            }
            auto z = rn.d_solver(k, u).solve(rhs);
            if (!z) throw std::logic_error("induced_map: lift failed");
            phi[size_t(k)][m] = std::move(*z);
        }
    }

    ChartMap out;
    for (int s = 0; s <= s_top; ++s)
        for (int t = rn.module.min_deg; t <= t_top; ++t) {
            auto ng = rn.gens_at(s, t);
            auto mg = rm.gens_at(s, t);
            if (ng.empty() || mg.empty()) continue;
            BitMatrix mat(mg.size(), ng.size());
            for (size_t i = 0; i < mg.size(); ++i)
                for (size_t j = 0; j < ng.size(); ++j)
                    if (phi[size_t(s)][mg[i]].size() &&
                        phi[size_t(s)][mg[i]].get(rn.block_offset(s, t, ng[j])))
                        mat.set(i, j);
            out.mats[{s, t}] = std::move(mat);
        }
    return out;
}

ChartMap connecting_hom(const ShortExact& ses, const Resolution& ra,
                        const Resolution& rc) {
    ValidationReport v = check_ses(ses);
    if (!v.ok) throw std::invalid_argument("connecting_hom: inexact input sequence");
    const FiniteModule& b = ses.i.target;
    int s_top = std::min(ra.s_max, rc.s_max - 1);
    int t_top = std::min(ra.t_max, rc.t_max);

    // lift the C-augmentation through p, pull d back through i, then lift
    // through the A-resolution: u_{k+1} : R^C_{k+1} -> R^A_k
    std::map<int, gf2::Solver> psolve, isolve;
    auto solve_p = [&](int d, const BitVec& vec) {
        auto it = psolve.find(d);
        if (it == psolve.end()) it = psolve.emplace(d, gf2::Solver(ses.p.matrix(d))).first;
        auto z = it->second.solve(vec);
        if (!z) throw std::logic_error("connecting_hom: p not surjective");
        return *z;
    };
    auto solve_i = [&](int d, const BitVec& vec) {
        auto it = isolve.find(d);
        if (it == isolve.end()) it = isolve.emplace(d, gf2::Solver(ses.i.matrix(d))).first;
        auto z = it->second.solve(vec);
        if (!z) throw std::logic_error("connecting_hom: value outside the submodule");
        return *z;
    };

    // eps-tilde on R^C_0 generators: vectors in B
    std::vector<BitVec> eps(rc.gen_deg[0].size());
    for (size_t m = 0; m < eps.size(); ++m) {
        int u = rc.gen_deg[0][m];
        if (u > t_top) continue;
        eps[m] = solve_p(u, rc.aug_img[m]);
    }

    std::vector<std::vector<BitVec>> uu(size_t(s_top) + 2);
    // u_1 : R^C_1 -> R^A_0
    if (rc.s_max >= 1) {
        uu[1].resize(rc.gen_deg[1].size());
        for (size_t m = 0; m < uu[1].size(); ++m) {
            int u = rc.gen_deg[1][m];
            if (u > t_top) continue;
            // push d(m) through eps-tilde into B
            BitVec vb(b.dim(u));
            const auto& degs = rc.gen_deg[0];
            size_t off = 0;
            for (size_t g = 0; g < degs.size(); ++g) {
                int bd = u - degs[g];
                size_t n = adim(rc.alg, bd);
                for (size_t j = 0; j < n; ++j)
                    if (rc.d_img[1][m].get(off + j)) {
                        if (eps[g].size() == 0) continue;
                        if (bd == 0)
                            vb ^= eps[g];
                        else
                            vb ^= b.apply_element(algebra_basis(rc.alg, bd)[j], degs[g],
                                                  eps[g]);
                    }
                off += n;
            }
            BitVec wa = solve_i(u, vb);
            auto z = ra.d_solver(0, u).solve(wa);
            if (!z) throw std::logic_error("connecting_hom: A-augmentation lift failed");
            uu[1][m] = std::move(*z);
        }
    }
    for (int k = 2; k <= s_top + 1; ++k) {
        uu[size_t(k)].resize(rc.gen_deg[size_t(k)].size());
        for (size_t m = 0; m < uu[size_t(k)].size(); ++m) {
            int u = rc.gen_deg[size_t(k)][m];
            if (u > t_top) continue;
            BitVec rhs = push_through(rc, k - 1, u, rc.d_img[size_t(k)][m], ra, k - 2, 0,
                                      uu[size_t(k - 1)]);
            if (rhs.none()) {
                uu[size_t(k)][m] = BitVec(ra.free_dim(k - 1, u));
                continue;
            }
            auto z = ra.d_solver(k - 1, u).solve(rhs);
            if (!z) throw std::logic_error("connecting_hom: lift failed");
            uu[size_t(k)][m] = std::move(*z);
        }
    }

    ChartMap out;
    out.ds = 1;
    for (int s = 0; s <= s_top; ++s)
        for (int t = ra.module.min_deg; t <= t_top; ++t) {
            auto ag = ra.gens_at(s, t);
            auto cg = rc.gens_at(s + 1, t);
            if (ag.empty() || cg.empty()) continue;
            BitMatrix mat(cg.size(), ag.size());
            for (size_t i = 0; i < cg.size(); ++i)
                for (size_t j = 0; j < ag.size(); ++j)
                    if (uu[size_t(s + 1)][cg[i]].size() &&
                        uu[size_t(s + 1)][cg[i]].get(ra.block_offset(s, t, ag[j])))
                        mat.set(i, j);
            out.mats[{s, t}] = std::move(mat);
        }
    return out;
}

LesReport les_check(const ShortExact& ses, const Resolution& ra, const Resolution& rb,
                    const Resolution& rc, int s_max, int t_max) {
    LesReport rep;
    auto fail = [&](int s, int t, const std::string& what) {
        rep.ok = false;
        rep.failures.push_back(what + " at (s=" + std::to_string(s) +
                               ", t=" + std::to_string(t) + ")");
    };
    ChartMap pstar = induced_map(ses.p, rb, rc);  // Ext(C) -> Ext(B)
    ChartMap istar = induced_map(ses.i, ra, rb);  // Ext(B) -> Ext(A)
    ChartMap delta = connecting_hom(ses, ra, rc); // Ext(A) -> Ext^{+1}(C)

    for (int s = 0; s <= s_max; ++s)
        for (int t = std::min({ra.module.min_deg, rb.module.min_deg,
                               rc.module.min_deg});
             t <= t_max; ++t) {
            size_t na = size_t(ra.ext_dim(s, t));
            size_t nb = size_t(rb.ext_dim(s, t));
            size_t nc = size_t(rc.ext_dim(s, t));
            size_t nc1 = size_t(rc.ext_dim(s + 1, t));
            BitMatrix mp = pstar.matrix(s, t, nb, nc);
            BitMatrix mi = istar.matrix(s, t, na, nb);
            // composites vanish
            {
                BitMatrix ip = gf2::mul(mi, mp);
                for (size_t r = 0; r < ip.rows(); ++r)
                    if (!ip.row(r).none()) { fail(s, t, "i*p* nonzero"); break; }
            }
            // exactness at Ext^s(B)
            if (gf2::rank(mp) + gf2::rank(mi) != nb) fail(s, t, "inexact at B");
            if (s + 1 <= rc.s_max) {
                BitMatrix md = delta.matrix(s, t, nc1, na);
                {
                    BitMatrix di = gf2::mul(md, mi);
                    for (size_t r = 0; r < di.rows(); ++r)
                        if (!di.row(r).none()) { fail(s, t, "delta i* nonzero"); break; }
                }
                if (gf2::rank(mi) + gf2::rank(md) != na) fail(s, t, "inexact at A");
                if (s + 1 <= s_max) {
                    size_t nb1 = size_t(rb.ext_dim(s + 1, t));
                    BitMatrix mp1 = pstar.matrix(s + 1, t, nb1, nc1);
                    BitMatrix pd = gf2::mul(mp1, md);
                    for (size_t r = 0; r < pd.rows(); ++r)
                        if (!pd.row(r).none()) { fail(s, t, "p* delta nonzero"); break; }
                    if (gf2::rank(md) + gf2::rank(mp1) != nc1) fail(s, t, "inexact at C");
                }
            }
            // the sequence starts 0 -> Hom(C) -> Hom(B)
            if (s == 0 && gf2::rank(mp) != nc) fail(s, t, "p* not injective at s=0");
        }
    return rep;
}

}  // namespace ext2
