#pragma once
// Finitely generated graded modules over A(n) (or a truncation of the full
// algebra): degreewise bases, generator action matrices, constructors
// (presentations, quotients, tensor, dual, suspension, sub/quotient modules),
// validation, module maps, and the weight-filtered dual-algebra modules.
//
// A module stores only the actions of the generators Sq^(2^k); every other
// action is derived by expanding Sq^m into generator words.  Degrees may be
// negative.  Truncated modules (quotients by the span of degrees above a
// bound) are honest modules; `valid_through` records the degree through which
// the stored module agrees with the intended untruncated one.
#include "ext2/gf2.hpp"
#include "ext2/steenrod.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace ext2 {

constexpr int kNoTruncation = 1 << 28;

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Free-cover bookkeeping kept by presentation-built modules.
struct CoverData {
    std::vector<int> gen_degrees;
    // per module degree: free basis as (index in milnor_basis(alg, d - t_g), g)
    std::vector<std::vector<std::pair<int, int>>> free_basis;
    std::vector<gf2::BitMatrix> proj;          // free coords -> module coords
    std::vector<std::vector<int>> mod_to_free; // section: module i -> free coord
};

class FiniteModule {
public:
    Algebra alg = Algebra::A2;
    int min_deg = 0;
    int num_gens = 0;  // generators Sq^(2^k), k < num_gens
    std::vector<std::vector<std::string>> names;  // per degree
    // gen_act[k][d - min_deg]: dim(d + 2^k) x dim(d); empty target => zero
    std::vector<std::vector<gf2::BitMatrix>> gen_act;
    int valid_through = kNoTruncation;
    std::shared_ptr<const CoverData> cover;

    int max_deg() const { return min_deg + int(names.size()) - 1; }
    bool in_range(int d) const { return d >= min_deg && d <= max_deg(); }
    size_t dim(int d) const { return in_range(d) ? names[size_t(d - min_deg)].size() : 0; }
    size_t total_dim() const;
    int degree_span() const;

    // action of the k-th generator from degree d (zero matrix out of range)
    gf2::BitMatrix gen_action(int k, int d) const;
    // composite actions, derived from generator matrices
    gf2::BitMatrix action_sq(int i, int d) const;       // Sq^i : M_d -> M_{d+i}
    gf2::BitMatrix action_word(const Word& w, int d) const;
    gf2::BitMatrix action_element(const Element& e, int d) const;
    gf2::BitVec apply_element(const Element& e, int d, const gf2::BitVec& v) const;

    void finalize();  // allocate missing zero matrices, set up caches

private:
    struct ActionCache {
        std::mutex mu;
        // graded action matrices of working-basis algebra elements, keyed by
        // (algebra degree, basis index); derived via generator_decomposition
        std::map<std::pair<int, size_t>, std::vector<gf2::BitMatrix>> basis_act;
    };
    std::shared_ptr<ActionCache> cache_;
    const std::vector<gf2::BitMatrix>& basis_act_locked(int bd, size_t i) const;
};

// maps are degree-preserving (apply suspend() first to shift)
struct ModuleMap {
    FiniteModule source, target;
    std::vector<gf2::BitMatrix> mats;  // per source degree

    gf2::BitMatrix matrix(int d) const;
    gf2::BitVec apply(int d, const gf2::BitVec& v) const;
    ValidationReport check() const;  // commutes with all generator actions
};

ValidationReport validate(const FiniteModule& m);

FiniteModule trivial_module(Algebra a, int degree = 0);
FiniteModule suspend(const FiniteModule& m, int k);
FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b);
FiniteModule tensor(const FiniteModule& a, const FiniteModule& b);
FiniteModule dualize(const FiniteModule& m);
// re-tag over a smaller algebra (drops generator actions beyond its range)
FiniteModule restrict_algebra(const FiniteModule& m, Algebra a);

struct Presentation {
    Algebra alg = Algebra::A2;
    std::vector<int> gen_degrees;
    // relator: sum of (coefficient element, generator index)
    std::vector<std::vector<std::pair<Element, int>>> relators;
};
// realize degreewise through max_degree (< 0: through top of a finite algebra)
FiniteModule presented_module(const Presentation& p, int max_degree = -1);
FiniteModule quotient_by_left_ideal(Algebra a, const std::vector<Element>& relations,
                                    int max_degree = -1);

// smallest submodule containing the seed vectors; returns (module, inclusion)
struct SubmoduleResult {
    FiniteModule module;
    ModuleMap inclusion;
};
SubmoduleResult submodule_closure(const FiniteModule& m,
                                  const std::vector<std::pair<int, gf2::BitVec>>& seeds);
SubmoduleResult kernel_module(const ModuleMap& f);
SubmoduleResult image_module(const ModuleMap& f);

struct QuotientResult {
    FiniteModule module;
    ModuleMap projection;
};
// quotient by the span of the given vectors, which must be action-closed
QuotientResult quotient_by_span(const FiniteModule& m,
                                const std::vector<std::pair<int, gf2::BitVec>>& span);

ModuleMap identity_map(const FiniteModule& m);
ModuleMap zero_map(const FiniteModule& src, const FiniteModule& tgt);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
// source must carry cover data; images indexed by presentation generator
ModuleMap map_from_generator_images(const FiniteModule& source, const FiniteModule& target,
                                    const std::vector<std::pair<int, gf2::BitVec>>& images);
// basis of all degree-preserving module maps source -> target (small modules)
std::vector<ModuleMap> hom_space(const FiniteModule& source, const FiniteModule& target);

struct ShortExact {
    ModuleMap i, p;  // 0 -> A -i-> B -p-> C -> 0
};
ValidationReport check_ses(const ShortExact& s);

// stunted projective space modules: basis x_i with Sq^j x_i = binom(i,j) x_{i+j}
enum class StuntedKind { P1, Q };
FiniteModule truncated_projective(StuntedKind kind, int max_degree,
                                  Algebra a = Algebra::A2);

// weight-filtered spans in the dual algebra:
// series_of(M_n) and series_of(Sigma^{8n} bo_n-homology), coefficients [0..max]
std::pair<std::vector<int>, std::vector<int>> weight_decomposition(int n, int max_degree);

// homology span of monomials of weight <= 4n in F2[zeta1^4, zeta2^2, zeta3, ...],
// realized with negated degrees so the dual action raises degree; validated.
FiniteModule bo_homology_negated(int n, Algebra a);

// the paper-derived module library; throws on unknown name
FiniteModule paper_module(const std::string& name);

// exhaustive probe: no choice of Sq8 entries makes the extension module B a
// valid A(3)-module (it is a genuine obstruction, checked by enumeration)
bool b_extends_to_a3();

// --- module file IO ---------------------------------------------------------
// Line format: `algebra A2`, `basis name:degree ...`, `sq k src = t1 + t2`,
// `valid-through D` (optional), comments with '#'.
std::optional<FiniteModule> read_module(std::istream& in, std::string* err);
std::optional<FiniteModule> read_module_file(const std::string& path, std::string* err);
void write_module(std::ostream& out, const FiniteModule& m);
// classical layout import: dimension-per-degree table followed by action rows
std::optional<FiniteModule> read_classical_module(std::istream& in, std::string* err);

// basis lookup helpers
int basis_index_by_name(const FiniteModule& m, const std::string& name, int* degree);
gf2::BitVec unit_vec(size_t n, size_t i);

}  // namespace ext2
