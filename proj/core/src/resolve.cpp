#include "ext2/resolve.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ext2 {

using gf2::BitMatrix;
using gf2::BitVec;
using gf2::Echelon;

namespace {

// algebra_basis rendered once per degree (Element construction is not free)
const std::vector<Element>& basis_elements(Algebra a, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Element>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(int(a), d);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, algebra_basis(a, d)).first;
    return it->second;
}

size_t adim(Algebra a, int d) {
    if (d < 0 || d > algebra_top_degree(a)) return 0;
    return algebra_dim(a, d);
}

}  // namespace

size_t Resolution::free_dim(int s, int t) const {
    size_t n = 0;
    for (int tg : gen_deg[size_t(s)]) n += adim(alg, t - tg);
    return n;
}

size_t Resolution::block_offset(int s, int t, size_t g) const {
    size_t n = 0;
    for (size_t i = 0; i < g; ++i) n += adim(alg, t - gen_deg[size_t(s)][i]);
    return n;
}

std::vector<size_t> Resolution::gens_at(int s, int t) const {
    std::vector<size_t> out;
    if (s < 0 || s > s_max) return out;
    for (size_t i = 0; i < gen_deg[size_t(s)].size(); ++i)
        if (gen_deg[size_t(s)][i] == t) out.push_back(i);
    return out;
}

int Resolution::ext_dim(int s, int t) const { return int(gens_at(s, t).size()); }

BitVec Resolution::mul_free(int s, int t, int theta_deg, size_t theta_idx,
                            const BitVec& v) const {
    BitVec out(free_dim(s, t + theta_deg));
    const auto& degs = gen_deg[size_t(s)];
    size_t off_in = 0, off_out = 0;
    for (size_t g = 0; g < degs.size(); ++g) {
        size_t nin = adim(alg, t - degs[g]);
        size_t nout = adim(alg, t + theta_deg - degs[g]);
        if (nin) {
            const MulTable& mt = mul_table(alg, theta_deg, t - degs[g]);
            for (size_t j = 0; j < nin; ++j)
                if (v.get(off_in + j))
                    for (int idx : mt.entry(theta_idx, j)) out.flip(off_out + size_t(idx));
        }
        off_in += nin;
        off_out += nout;
    }
    return out;
}

BitMatrix Resolution::d_matrix(int s, int t) const {
    BitMatrix m(free_dim(s - 1, t), free_dim(s, t));
    const auto& degs = gen_deg[size_t(s)];
    size_t off = 0;
    for (size_t g = 0; g < degs.size(); ++g) {
        int bd = t - degs[g];
        size_t n = adim(alg, bd);
        for (size_t j = 0; j < n; ++j) {
            if (bd == 0)
                m.add_column(off + j, d_img[size_t(s)][g]);
            else
                m.add_column(off + j, mul_free(s - 1, degs[g], bd, j, d_img[size_t(s)][g]));
        }
        off += n;
    }
    return m;
}

BitMatrix Resolution::aug_matrix(int t) const {
    BitMatrix m(module.dim(t), free_dim(0, t));
    const auto& degs = gen_deg[0];
    size_t off = 0;
    for (size_t g = 0; g < degs.size(); ++g) {
        int bd = t - degs[g];
        size_t n = adim(alg, bd);
        for (size_t j = 0; j < n; ++j) {
            BitVec img = bd == 0 ? aug_img[g]
                                 : module.apply_element(basis_elements(alg, bd)[j],
                                                        degs[g], aug_img[g]);
            m.add_column(off + j, img);
        }
        off += n;
    }
    return m;
}

const gf2::Solver& Resolution::d_solver(int s, int t) const {
    std::lock_guard<std::mutex> lock(solver_cache_->mu);
    auto key = std::make_pair(s, t);
    auto it = solver_cache_->solvers.find(key);
    if (it == solver_cache_->solvers.end()) {
        BitMatrix m = s == 0 ? aug_matrix(t) : d_matrix(s, t);
        it = solver_cache_->solvers.emplace(key, std::make_unique<gf2::Solver>(m)).first;
    }
    return *it->second;
}

namespace {

struct CellResult {
    // s = 0: augmentation images; s >= 1: kernel vectors chosen as d-images
    std::vector<BitVec> new_gens;
};

CellResult compute_cell(const Resolution& r, int s, int t) {
    CellResult out;
    if (s == 0) {
        size_t n = r.module.dim(t);
        if (n == 0) return out;
        // span of Sq^(2^k) M below t; new generators complete it minimally
        Echelon ech(n);
        for (int k = 0; k < r.module.num_gens; ++k) {
            BitMatrix a = r.module.gen_action(k, t - (1 << k));
            if (a.rows() != n) continue;
            for (size_t j = 0; j < a.cols(); ++j) ech.insert(a.column(j));
        }
        for (size_t i = 0; i < n; ++i) {
            BitVec e(n);
            e.set(i);
            if (ech.insert(e)) out.new_gens.push_back(std::move(e));
        }
        return out;
    }
    size_t n = r.free_dim(s - 1, t);
    if (n == 0) return out;
    BitMatrix prev = s == 1 ? r.aug_matrix(t) : r.d_matrix(s - 1, t);
    std::vector<BitVec> ker = gf2::kernel(prev);
    if (ker.empty()) return out;
    // span already reached by generators of F_s in lower degrees
    Echelon ech(n);
    BitMatrix cur = r.d_matrix(s, t);
    for (size_t j = 0; j < cur.cols(); ++j) ech.insert(cur.column(j));
    for (BitVec& v : ker)
        if (ech.insert(v)) out.new_gens.push_back(std::move(v));
    return out;
}

void commit_cell(Resolution& r, int s, int t, CellResult&& c) {
    for (BitVec& v : c.new_gens) {
        r.gen_deg[size_t(s)].push_back(t);
        if (s == 0)
            r.aug_img.push_back(std::move(v));
        else
            r.d_img[size_t(s)].push_back(std::move(v));
    }
}

}  // namespace

Resolution minimal_resolution(const FiniteModule& m, int s_max, int t_max, int threads) {
    if (m.alg == Algebra::A)
        throw std::invalid_argument(
            "minimal_resolution: finite subalgebra required (change-of-rings for A)");
    if (m.valid_through < t_max)
        throw std::invalid_argument(
            "minimal_resolution: window infeasible, module only valid through degree " +
            std::to_string(m.valid_through));
    if (s_max < 0) throw std::invalid_argument("minimal_resolution: negative s_max");

    Resolution r;
    r.alg = m.alg;
    r.module = m;
    r.s_max = s_max;
    r.t_max = t_max;
    r.gen_deg.assign(size_t(s_max) + 1, {});
    r.d_img.assign(size_t(s_max) + 1, {});

    int top = algebra_top_degree(m.alg);
    warm_mul_tables(m.alg, std::max(0, std::min(t_max - m.min_deg, 2 * top)));

    int t_min = m.min_deg;
    if (t_min > t_max) return r;

    // cell (s,t) needs (s-1,t) and (s,<t): anti-diagonals s+t are independent
    for (int diag = t_min; diag <= t_max + s_max; ++diag) {
        std::vector<std::pair<int, int>> cells;  // ascending s
        for (int s = 0; s <= s_max; ++s) {
            int t = diag - s;
            if (t >= t_min + s && t <= t_max) cells.emplace_back(s, t);
        }
        if (cells.empty()) continue;
        std::vector<CellResult> results(cells.size());
        if (threads <= 1 || cells.size() == 1) {
            for (size_t i = 0; i < cells.size(); ++i)
                results[i] = compute_cell(r, cells[i].first, cells[i].second);
        } else {
            std::vector<std::thread> pool;
            std::mutex mu;
            size_t next = 0;
            size_t nthreads = std::min<size_t>(size_t(threads), cells.size());
            for (size_t w = 0; w < nthreads; ++w)
                pool.emplace_back([&] {
                    for (;;) {
                        size_t i;
                        {
                            std::lock_guard<std::mutex> lock(mu);
                            if (next >= cells.size()) return;
                            i = next++;
                        }
                        results[i] = compute_cell(r, cells[i].first, cells[i].second);
                    }
                });
            for (auto& th : pool) th.join();
        }
        for (size_t i = 0; i < cells.size(); ++i)
            commit_cell(r, cells[i].first, cells[i].second, std::move(results[i]));
    }
    return r;
}

ExtChart ext_chart_dims_only(const Resolution& r) {
    ExtChart c;
    c.algebra = algebra_name(r.alg);
    c.s_max = r.s_max;
    c.t_min = std::min(r.module.min_deg, 0);
    c.t_max = r.t_max;
    for (int s = 0; s <= r.s_max; ++s) {
        std::map<int, int> counts;
        for (int t : r.gen_deg[size_t(s)]) ++counts[t];
        for (auto [t, n] : counts) c.dims[{s, t}] = n;
    }
    return c;
}

ExtChart ext_chart(const Resolution& r, const Resolution& f2res) {
    // minimality: differential entries must avoid unit coordinates
    for (int s = 1; s <= r.s_max; ++s)
        for (size_t g = 0; g < r.gen_deg[size_t(s)].size(); ++g) {
            int t = r.gen_deg[size_t(s)][g];
            for (size_t p : r.gens_at(s - 1, t))
                if (r.d_img[size_t(s)][g].get(r.block_offset(s - 1, t, p)))
                    throw std::invalid_argument("ext_chart: non-minimal resolution");
        }
    if (f2res.alg != r.alg || f2res.gen_deg[0].size() != 1 || f2res.gen_deg[0][0] != 0)
        throw std::invalid_argument("ext_chart: second argument must resolve F2");

    ExtChart c = ext_chart_dims_only(r);
    // h_i edges: coefficient of h_i x on generator m of F_{s+1} is the unit
    // coordinate of the degree-2^i generator of (F2-resolution)_1 in the
    // solution of d z = (x-block of d m)
    for (int kind = 0; kind < 3; ++kind) {
        int h = 1 << kind;
        auto hg = f2res.gens_at(1, h);
        if (hg.empty()) continue;
        for (int s = 0; s < r.s_max; ++s)
            for (size_t mi = 0; mi < r.gen_deg[size_t(s + 1)].size(); ++mi) {
                int u = r.gen_deg[size_t(s + 1)][mi];
                auto sources = r.gens_at(s, u - h);
                if (sources.empty()) continue;
                const gf2::Solver& sol = f2res.d_solver(1, h);
                // x-block of d(m) lives in degree u; as G_0 coords it has
                // degree h over the unit block of x
                for (size_t src = 0; src < sources.size(); ++src) {
                    size_t x = sources[src];
                    size_t off = r.block_offset(s, u, x);
                    size_t nb = adim(r.alg, h);
                    BitVec rhs(adim(r.alg, h));
                    for (size_t j = 0; j < nb; ++j)
                        if (r.d_img[size_t(s + 1)][mi].get(off + j)) rhs.set(j);
                    if (rhs.none()) continue;
                    auto z = sol.solve(rhs);
                    if (!z) throw std::logic_error("ext_chart: lift failed");
                    size_t unit = f2res.block_offset(1, h, hg[0]);
                    if (z->get(unit)) {
                        auto at = r.gens_at(s + 1, u);
                        int ti = int(std::find(at.begin(), at.end(), mi) - at.begin());
                        auto sa = r.gens_at(s, u - h);
                        int si = int(std::find(sa.begin(), sa.end(), x) - sa.begin());
                        c.edges.push_back({kind, {s, u - h, si}, {s + 1, u, ti}});
                    }
                }
            }
    }
    std::sort(c.edges.begin(), c.edges.end());
    return c;
}

VerifyReport verify_complex(const FiniteComplex& c, int t_min, int t_max) {
    VerifyReport rep;
    auto fail = [&](std::string msg) {
        rep.failures.push_back(std::move(msg));
    };
    for (size_t s = 0; s < c.maps.size(); ++s) {
        ValidationReport v = c.maps[s].check();
        if (!v.ok) {
            rep.dd_zero = false;
            for (auto& f : v.failures) fail("map " + std::to_string(s) + ": " + f);
        }
    }
    for (size_t s = 0; s + 1 < c.maps.size(); ++s) {
        for (int t = t_min; t <= t_max; ++t) {
            BitMatrix a = c.maps[s].matrix(t);
            BitMatrix b = c.maps[s + 1].matrix(t);
            if (a.cols() != b.rows()) continue;
            BitMatrix ab = gf2::mul(a, b);
            for (size_t i = 0; i < ab.rows(); ++i)
                if (!ab.row(i).none()) {
                    rep.dd_zero = false;
                    fail("d.d nonzero: maps " + std::to_string(s) + "," +
                         std::to_string(s + 1) + " degree " + std::to_string(t));
                    break;
                }
        }
    }
    for (int t = t_min; t <= t_max; ++t) {
        bool ok = true;
        // surjectivity onto the target
        BitMatrix a0 = c.maps[0].matrix(t);
        if (gf2::rank(a0) != c.target.dim(t)) {
            ok = false;
            fail("not surjective onto target in degree " + std::to_string(t));
        }
        // internal exactness by ranks (the last term continues past the
        // complex, so its kernel is not constrained)
        for (size_t s = 0; s + 1 < c.maps.size(); ++s) {
            BitMatrix a = c.maps[s].matrix(t);
            BitMatrix b = c.maps[s + 1].matrix(t);
            size_t ra = gf2::rank(a);
            size_t rb = gf2::rank(b);
            if (a.cols() != ra + rb) {
                ok = false;
                fail("inexact at term " + std::to_string(s) + " degree " +
                     std::to_string(t));
            }
        }
        if (!ok) {
            rep.exact = false;
            rep.inexact_degrees.push_back(t);
        }
    }
    return rep;
}

}  // namespace ext2
