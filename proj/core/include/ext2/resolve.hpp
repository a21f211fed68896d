#pragma once
// Minimal free resolutions over A(n) by degreewise GF(2) elimination, Ext
// charts with h_i product edges, chain-map lifting (products, induced maps,
// connecting homomorphisms), and exactness certification of finite complexes.
#include "ext2/charts.hpp"
#include "ext2/gmod.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ext2 {

// Minimal free resolution ... <- F_s <- F_{s+1} <- ... -> M, computed through
// a rectangular window s <= s_max, t <= t_max.  The free module F_s has one
// block per generator, in creation order (ascending t); its basis in internal
// degree t is the union of working-basis elements theta with deg theta = t - t_g.
class Resolution {
public:
    Algebra alg = Algebra::A2;
    FiniteModule module;
    int s_max = 0, t_max = 0;

    std::vector<std::vector<int>> gen_deg;        // gen_deg[s][i] = t of generator i
    // s >= 1: d(gen i of F_s) as free coordinates of F_{s-1} in degree gen_deg[s][i]
    std::vector<std::vector<gf2::BitVec>> d_img;
    std::vector<gf2::BitVec> aug_img;             // F_0 generator -> module vector

    size_t free_dim(int s, int t) const;
    size_t block_offset(int s, int t, size_t g) const;
    // generator indices of F_s in internal degree exactly t
    std::vector<size_t> gens_at(int s, int t) const;
    int ext_dim(int s, int t) const;              // generator count at (s,t)

    // v in free coords of F_s at degree t; multiply by working basis element
    // basis(theta_deg)[theta_idx] on the left
    gf2::BitVec mul_free(int s, int t, int theta_deg, size_t theta_idx,
                         const gf2::BitVec& v) const;
    gf2::BitMatrix d_matrix(int s, int t) const;  // F_{s,t} -> F_{s-1,t}, s >= 1
    gf2::BitMatrix aug_matrix(int t) const;       // F_{0,t} -> M_t

    // deterministic solver for d z = rhs at (s, t), cached
    const gf2::Solver& d_solver(int s, int t) const;

private:
    struct SolverCache {
        std::mutex mu;
        std::map<std::pair<int, int>, std::unique_ptr<gf2::Solver>> solvers;
    };
    std::shared_ptr<SolverCache> solver_cache_ = std::make_shared<SolverCache>();
};

// window infeasible (truncated module) -> throws invalid_argument
Resolution minimal_resolution(const FiniteModule& m, int s_max, int t_max,
                              int threads = 1);

// chart from generator counts; h_0, h_1, h_2 edges computed by one-step
// lifting into f2res, a resolution of the trivial module over the same algebra
ExtChart ext_chart(const Resolution& r, const Resolution& f2res);
ExtChart ext_chart_dims_only(const Resolution& r);

// value of the chain lift of class (s0, t0, i0) of r into g, at level k:
// per generator of F_{s0+k} (within window), free coords of G_k in degree
// gen_deg - t0.  Level 0 is the dual-class projection itself.
std::vector<std::vector<gf2::BitVec>> lift_class(const Resolution& r, int s0, int t0,
                                                 size_t i0, const Resolution& g,
                                                 int k_max);

// Yoneda product: class a of Ext(r.module) times class b of Ext_{A}(F2)
// (f2res), landing in Ext^{sa+sb, ta+tb}(r.module); coordinates over the
// generators of r at that bidegree
gf2::BitVec yoneda_product(const Resolution& r, int sa, int ta, size_t ia,
                           const Resolution& f2res, int sb, int tb, size_t ib);

// graded maps between Ext charts, shifting (s, t) by (ds, dt); mats keyed by
// source bidegree
struct ChartMap {
    int ds = 0, dt = 0;
    std::map<std::pair<int, int>, gf2::BitMatrix> mats;
    gf2::BitMatrix matrix(int s, int t, size_t rows, size_t cols) const;
};

// contravariant: f : M -> N induces Ext(N) -> Ext(M); rm resolves M, rn
// resolves N; matrix at (s,t) has rows = gens of rm, cols = gens of rn
ChartMap induced_map(const ModuleMap& f, const Resolution& rm, const Resolution& rn);

// delta : Ext^{s,t}(A) -> Ext^{s+1,t}(C) for 0 -> A -> B -> C -> 0
// (contravariant long exact sequence); ra resolves A, rc resolves C
ChartMap connecting_hom(const ShortExact& ses, const Resolution& ra,
                        const Resolution& rc);

// long-exact-sequence check for 0 -> A -> B -> C -> 0 over the window
struct LesReport {
    bool ok = true;
    std::vector<std::string> failures;
};
LesReport les_check(const ShortExact& ses, const Resolution& ra, const Resolution& rb,
                    const Resolution& rc, int s_max, int t_max);

// ---- finite complexes (user-supplied, certified degreewise) ----------------
// 0 <- target <- terms[0] <- terms[1] <- ... ; maps[0] : terms[0] -> target,
// maps[s] : terms[s] -> terms[s-1]
struct FiniteComplex {
    FiniteModule target;
    std::vector<FiniteModule> terms;
    std::vector<ModuleMap> maps;
};

struct VerifyReport {
    bool dd_zero = true;
    bool exact = true;
    std::vector<int> inexact_degrees;
    std::vector<std::string> failures;
};
// checks d compatibility with the module actions, d.d = 0, and exactness
// (including surjectivity onto target and injectivity at the top) for all
// internal degrees t_min..t_max
VerifyReport verify_complex(const FiniteComplex& c, int t_min, int t_max);

}  // namespace ext2
