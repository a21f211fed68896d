#pragma once
// Exact arithmetic in the mod-2 Steenrod algebra and its finite subalgebras
// A(n).  Admissible monomials are the storage basis for the full algebra;
// the Milnor basis Sq(r1,r2,...) is the working basis for A(n) (membership
// is a profile bound) and for the pairing with the dual algebra.
//
// Note on bases: a subalgebra A(n) is NOT spanned by the admissible
// monomials it contains (e.g. the unique degree-5 class of A(1) is
// Sq^5 + Sq^4 Sq^1).  algebra_basis(A(n), d) therefore returns the Milnor
// profile basis, rendered as admissible-basis elements on demand.
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ext2 {

enum class Algebra : int { A = -1, A0 = 0, A1 = 1, A2 = 2, A3 = 3 };

inline int algebra_n(Algebra a) { return static_cast<int>(a); }
// top nonzero degree; unbounded algebras report a huge sentinel
int algebra_top_degree(Algebra a);
// number of generators Sq^(2^k), k = 0..num-1, needed to span degrees <= span
int algebra_num_generators(Algebra a, int span);
std::string algebra_name(Algebra a);
std::optional<Algebra> algebra_from_name(const std::string& s);

using Word = std::vector<int>;     // composite Sq^{i1}...Sq^{ik}, i_j >= 1
using Mono = Word;                 // admissible monomial ({} = unit)
using Profile = std::vector<int>;  // Milnor Sq(r1,r2,...), no trailing zeros

int word_degree(const Word& w);
int profile_degree(const Profile& r);
bool is_admissible(const Mono& m);
bool profile_in(const Profile& r, Algebra a);

// Homogeneous F2 combination of admissible monomials; empty = 0.
struct Element {
    Algebra alg = Algebra::A;
    std::vector<Mono> terms;  // lex-sorted, unique

    bool is_zero() const { return terms.empty(); }
    int degree() const { return terms.empty() ? 0 : word_degree(terms[0]); }
    bool operator==(const Element&) const = default;
};

// Homogeneous F2 combination of Milnor basis elements.
struct MilnorElement {
    Algebra alg = Algebra::A;
    std::vector<Profile> terms;  // lex-sorted, unique

    bool is_zero() const { return terms.empty(); }
    int degree() const { return terms.empty() ? 0 : profile_degree(terms[0]); }
    bool operator==(const MilnorElement&) const = default;
};

Element unit(Algebra a);
Element sq(Algebra a, int i);                 // Sq^i as an element
Element make_element(Algebra a, std::vector<Mono> terms);  // sorts, cancels mod 2

Element adem_reduce(Algebra a, const Word& w);
Element add(const Element& x, const Element& y);
Element multiply(const Element& x, const Element& y);

MilnorElement milnor_multiply(const MilnorElement& x, const MilnorElement& y);
MilnorElement milnor_add(const MilnorElement& x, const MilnorElement& y);
MilnorElement to_milnor(const Element& x);
Element to_admissible(const MilnorElement& x);

Element conjugate(const Element& x);           // antipode chi
bool in_subalgebra(const Element& x, Algebra a);

// Basis enumeration.
// Admissible monomials of the full algebra in one degree, lex-sorted.
const std::vector<Mono>& admissible_basis(int degree);
// Milnor profiles of one degree: all of them (A) or profile-bounded (A(n)).
const std::vector<Profile>& milnor_basis(Algebra a, int degree);
size_t algebra_dim(Algebra a, int degree);
// index of profile within milnor_basis(a, deg), or npos
size_t milnor_index(Algebra a, const Profile& r);
// spec-facing basis: one Element per Milnor profile (A(n)) / admissible mono (A)
std::vector<Element> algebra_basis(Algebra a, int degree);

// Product table in the working basis of one algebra:
// entry(i, j) = sorted indices of basis elements of degree d1+d2 appearing in
// basis(d1)[i] * basis(d2)[j].  Working basis: Milnor for A(n), admissible
// monomials for the full algebra.
struct MulTable {
    size_t n1 = 0, n2 = 0;
    std::vector<std::vector<int>> prod;  // [i * n2 + j]
    const std::vector<int>& entry(size_t i, size_t j) const { return prod[i * n2 + j]; }
};
const MulTable& mul_table(Algebra a, int d1, int d2);
// prebuild tables for all needed degree pairs (call before parallel phases)
void warm_mul_tables(Algebra a, int max_total_degree);

// Sq^m as a sum of composites of the generators Sq^(2^k): each word consists
// of powers of two only.  Used to derive all module actions from generator
// matrices.
const std::vector<Word>& generator_words(int m);

// Each working-basis element of positive degree d, written as a sum of
// Sq^(2^k) * (working-basis element of degree d - 2^k): result[i] lists the
// (k, index) pairs.  Exists because A and every A(n) are generated by their
// Sq^(2^k); the choice is fixed deterministically.
const std::vector<std::vector<std::pair<int, int>>>& generator_decomposition(Algebra a,
                                                                             int d);

// --- dual algebra -----------------------------------------------------------
// Monomials in the conjugate generators zeta_i = chi(xi_i);
// deg zeta_i = 2^i - 1, wt zeta_i = 2^(i-1).
struct DualMono {
    std::vector<int> e;  // exponent of zeta_i at index i-1, no trailing zeros

    int degree() const;
    long long weight() const;
    bool operator==(const DualMono&) const = default;
    bool operator<(const DualMono& o) const { return e < o.e; }
};
using DualPoly = std::vector<DualMono>;  // sorted, unique; empty = 0

DualPoly dual_add(const DualPoly& x, const DualPoly& y);
// Left action (theta . f)(b) = f(chi(theta) b) through the Milnor pairing
// <Sq(R), xi^E> = delta_{R,E}; lowers degree by deg theta.
DualPoly dual_action(const Element& theta, const DualMono& m);
DualPoly dual_action(const Element& theta, const DualPoly& p);

// --- text format ------------------------------------------------------------
// Grammar: "1" | "Sq(i1,i2,...)" | "M(r1,r2,...)", "+"-separated sums.
std::string render(const Element& x);
std::string render(const MilnorElement& x);
std::string render(const DualMono& m);
// Accepts both Sq(...) and M(...) terms; M terms are converted to admissible.
std::optional<Element> parse_element(Algebra a, const std::string& text);

}  // namespace ext2
