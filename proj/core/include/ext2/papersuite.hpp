#pragma once
// Verification suite: each case recomputes one published finite computation
// (resolutions, Ext charts, long exact sequences, chart assemblies) and
// compares the result against the quoted claim.  Cases are independent,
// deterministic, and report machine-readable diffs.
#include "ext2/resolve.hpp"

#include <string>
#include <vector>

namespace ext2 {

struct CaseResult {
    std::string id;
    std::string status;  // "pass" or "fail"
    std::vector<std::string> diffs;   // one line per mismatch / note on failure
    double seconds = 0.0;
    std::string anchor;  // verbatim quotation of the claim being checked
    // named chart artifacts (JSON), byte-stable across runs and thread counts
    std::vector<std::pair<std::string, std::string>> artifacts;
};

struct SuiteReport {
    std::vector<CaseResult> cases;
    bool all_pass = true;
};

// registered case ids, in execution/report order
std::vector<std::string> suite_case_ids();

// run one case; throws std::invalid_argument on unknown id.  `threads` is the
// worker count handed to resolution wavefronts (results are thread-invariant).
CaseResult run_case(const std::string& id, int threads = 1);

// run every case; cases themselves may run concurrently (case_parallel > 1)
// but the report order is fixed
SuiteReport run_all(int threads = 1, int case_parallel = 1);

std::string report_to_json(const SuiteReport& r);

// ---- shared building blocks (also used by the CLI and acceptance tests) ----

// the eight-step exact complex of A(2)-modules resolving L = A2/(Sq4, Sq5Sq1)
FiniteComplex eight_step_complex();

// termwise tensor (over F2, diagonal action) of a complex with a module
FiniteComplex tensor_complex_with(const FiniteComplex& c, const FiniteModule& m);

// closed-form Ext dimensions, frozen from resolution runs:
// the (s, t-s)-indexed patterns of Ext_{A(1)}(F2) and of its Sp-analogue
int bo_pattern_dim(int stem, int s);
int bsp_pattern_dim(int stem, int s);
// dim Ext_{A(2)}^{s,t}(L): eight 48-periodic generators, bo/bsp families on
// 24-periodic translates, minus one bottom class per 48-period in the 21-stem
int closed_form_L_dim(int s, int t);

// tensor-basis index helpers matching the layout produced by tensor():
// degree-d block offset of the sub-block with left factor degree da
size_t tensor_block_offset(const FiniteModule& a, const FiniteModule& b, int d, int da);
// f (x) id : tensor(f.source, m) -> tensor(f.target, m)
ModuleMap tensor_map_right(const ModuleMap& f, const FiniteModule& m);
// id (x) f : tensor(m, f.source) -> tensor(m, f.target)
ModuleMap tensor_map_left(const FiniteModule& m, const ModuleMap& f);

// for a module built from a presentation: the image of generator g in module
// coordinates (a vector in degree cover->gen_degrees[g])
gf2::BitVec generator_vector(const FiniteModule& m, size_t g);

// factor f through a submodule containing its image: the unique g with
// sub.inclusion . g = f; throws if the image escapes the submodule
ModuleMap corestrict(const SubmoduleResult& sub, const ModuleMap& f);
// factor f through a quotient that kills ker f: the unique g with
// g . q.projection = f; throws if f does not kill the quotient's kernel
ModuleMap factor_through_quotient(const QuotientResult& q, const ModuleMap& f);

// greedy resolution variant whose covers are restricted to free modules and
// Sq1-quotient modules: each step picks minimal-degree kernel generators in
// ascending order and covers a generator v by A(n)/(Sq1) exactly when
// Sq1 v = 0, and by a free module otherwise.  `shapes`, when non-null,
// receives per step the chosen (generator degree, Sq1-quotient?) pairs.
FiniteComplex mixed_cover_resolution(const FiniteModule& m, int steps,
                                     std::vector<std::vector<std::pair<int, bool>>>* shapes =
                                         nullptr);

// block maps for direct sums (summand order matches direct_sum())
ModuleMap sum_into(const FiniteModule& ab, const ModuleMap& f, const ModuleMap& g);
// [f g] : A (+) B -> C with f : A -> C, g : B -> C; `ab` must be direct_sum(A,B)

}  // namespace ext2
