#include "ext2/steenrod.hpp"
#include "ext2/gf2.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ext2 {

namespace {

// binom(n, k) mod 2; n may be negative (2-adic expansion via two's complement)
bool odd_binom(long long n, long long k) {
    if (k < 0) return false;
    return (n & k) == k;
}

// keep elements with odd multiplicity
template <class T>
std::vector<T> cancel_mod2(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    std::vector<T> out;
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) & 1) out.push_back(v[i]);
        i = j;
    }
    return out;
}

template <class T>
void xor_into(std::vector<T>& acc, const std::vector<T>& v) {
    acc.insert(acc.end(), v.begin(), v.end());
}

std::mutex g_mutex;  // guards all memo tables below

}  // namespace

int algebra_top_degree(Algebra a) {
    switch (a) {
        case Algebra::A: return INT_MAX / 4;
        case Algebra::A0: return 1;
        case Algebra::A1: return 6;
        case Algebra::A2: return 23;
        case Algebra::A3: return 64;
    }
    return 0;
}

int algebra_num_generators(Algebra a, int span) {
    if (a != Algebra::A) return algebra_n(a) + 1;
    int k = 0;
    while ((1 << k) <= span) ++k;
    return k < 1 ? 1 : k;
}

std::string algebra_name(Algebra a) {
    switch (a) {
        case Algebra::A: return "A";
        case Algebra::A0: return "A0";
        case Algebra::A1: return "A1";
        case Algebra::A2: return "A2";
        case Algebra::A3: return "A3";
    }
    return "?";
}

std::optional<Algebra> algebra_from_name(const std::string& s) {
    if (s == "A") return Algebra::A;
    if (s == "A0") return Algebra::A0;
    if (s == "A1") return Algebra::A1;
    if (s == "A2") return Algebra::A2;
    if (s == "A3") return Algebra::A3;
    return std::nullopt;
}

int word_degree(const Word& w) {
    int d = 0;
    for (int i : w) d += i;
    return d;
}

int profile_degree(const Profile& r) {
    int d = 0;
    for (size_t j = 0; j < r.size(); ++j) d += r[j] * ((1 << (j + 1)) - 1);
    return d;
}

bool is_admissible(const Mono& m) {
    for (size_t j = 0; j + 1 < m.size(); ++j)
        if (m[j] < 2 * m[j + 1]) return false;
    return true;
}

bool profile_in(const Profile& r, Algebra a) {
    if (a == Algebra::A) return true;
    int n = algebra_n(a);
    for (size_t j = 0; j < r.size(); ++j) {
        int jj = int(j) + 1;                      // r_j, 1-based
        if (jj > n + 1) { if (r[j] != 0) return false; continue; }
        if (r[j] >= (1 << (n + 2 - jj))) return false;
    }
    return true;
}

Element unit(Algebra a) { return Element{a, {Mono{}}}; }

Element sq(Algebra a, int i) {
    if (i == 0) return unit(a);
    return Element{a, {Mono{i}}};
}

Element make_element(Algebra a, std::vector<Mono> terms) {
    return Element{a, cancel_mod2(std::move(terms))};
}

// ---- Adem rewriting --------------------------------------------------------
namespace {

// Sq^a * (admissible monomial m) as a sorted set of admissible monomials.
const std::vector<Mono>& mul_left(int a, const Mono& m);

std::map<Word, std::vector<Mono>> g_adem_cache;

std::vector<Mono> mul_left_compute(int a, const Mono& m) {
    if (m.empty()) return {Mono{a}};
    int b = m[0];
    if (a >= 2 * b) {
        Mono r;
        r.reserve(m.size() + 1);
        r.push_back(a);
        r.insert(r.end(), m.begin(), m.end());
        return {r};
    }
    Mono tail(m.begin() + 1, m.end());
    std::vector<Mono> acc;
    for (int c = 0; c <= a / 2; ++c) {
        if (!odd_binom(b - c - 1, a - 2 * c)) continue;
        int x = a + b - c;
        // Sq^x Sq^c tail
        std::vector<Mono> inner;
        if (c == 0) inner = {tail};
        else inner = mul_left(c, tail);
        for (const Mono& t : inner) xor_into(acc, mul_left(x, t));
    }
    return cancel_mod2(std::move(acc));
}

const std::vector<Mono>& mul_left(int a, const Mono& m) {
    Word key;
    key.reserve(m.size() + 1);
    key.push_back(a);
    key.insert(key.end(), m.begin(), m.end());
    auto it = g_adem_cache.find(key);
    if (it != g_adem_cache.end()) return it->second;
    auto r = mul_left_compute(a, m);
    return g_adem_cache.emplace(std::move(key), std::move(r)).first->second;
}

std::vector<Mono> adem_reduce_terms(const Word& w) {
    std::vector<Mono> acc = {Mono{}};
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i] < 0) throw std::invalid_argument("negative Sq exponent");
        if (w[i] == 0) continue;  // Sq^0 = 1
        std::vector<Mono> next;
        for (const Mono& m : acc) xor_into(next, mul_left(w[i], m));
        acc = cancel_mod2(std::move(next));
    }
    return acc;
}

}  // namespace

Element adem_reduce(Algebra a, const Word& w) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return Element{a, adem_reduce_terms(w)};
}

Element add(const Element& x, const Element& y) {
    if (x.alg != y.alg) throw std::invalid_argument("algebra tag mismatch");
    std::vector<Mono> t = x.terms;
    xor_into(t, y.terms);
    return Element{x.alg, cancel_mod2(std::move(t))};
}

Element multiply(const Element& x, const Element& y) {
    if (x.alg != y.alg) throw std::invalid_argument("algebra tag mismatch");
    std::lock_guard<std::mutex> lk(g_mutex);
    std::vector<Mono> acc;
    for (const Mono& mx : x.terms)
        for (const Mono& my : y.terms) {
            std::vector<Mono> cur = {my};
            for (size_t i = mx.size(); i-- > 0;) {
                std::vector<Mono> next;
                for (const Mono& m : cur) xor_into(next, mul_left(mx[i], m));
                cur = cancel_mod2(std::move(next));
            }
            xor_into(acc, cur);
        }
    return Element{x.alg, cancel_mod2(std::move(acc))};
}

// ---- Milnor basis ----------------------------------------------------------
namespace {

void trim(Profile& r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
}

// product of two Milnor basis elements via allowable matrices
std::vector<Profile> milnor_mono_product(const Profile& R, const Profile& S) {
    size_t p = R.size(), q = S.size();
    std::vector<Profile> out;
    // x[i][j], i=1..p, j=1..q; x[i][0], x[0][j] are the leftovers
    std::vector<std::vector<long long>> x(p + 1, std::vector<long long>(q + 1, 0));
    std::vector<long long> rem_r(p + 1), rem_s(q + 1);
    for (size_t i = 1; i <= p; ++i) rem_r[i] = R[i - 1];
    for (size_t j = 1; j <= q; ++j) rem_s[j] = S[j - 1];

    auto emit = [&]() {
        for (size_t i = 1; i <= p; ++i) x[i][0] = rem_r[i];
        for (size_t j = 1; j <= q; ++j) x[0][j] = rem_s[j];
        Profile t(p + q, 0);
        for (size_t n = 1; n <= p + q; ++n) {
            long long acc = 0;
            long long sum = 0;
            for (size_t i = (n > q ? n - q : 0); i <= std::min(n, p); ++i) {
                size_t j = n - i;
                long long v = x[i][j];
                if (acc & v) return;  // even multinomial
                acc |= v;
                sum += v;
            }
            t[n - 1] = int(sum);
        }
        trim(t);
        out.push_back(std::move(t));
    };

    // iterate over interior cells in a fixed order
    std::vector<std::pair<size_t, size_t>> cells;
    for (size_t i = 1; i <= p; ++i)
        for (size_t j = 1; j <= q; ++j) cells.push_back({i, j});

    auto rec = [&](auto&& self, size_t c) -> void {
        if (c == cells.size()) { emit(); return; }
        auto [i, j] = cells[c];
        long long maxv = std::min(rem_r[i] >> j, rem_s[j]);
        for (long long v = 0; v <= maxv; ++v) {
            x[i][j] = v;
            rem_r[i] -= v << j;
            rem_s[j] -= v;
            self(self, c + 1);
            rem_r[i] += v << j;
            rem_s[j] += v;
        }
        x[i][j] = 0;
    };
    rec(rec, 0);
    return cancel_mod2(std::move(out));
}

std::map<Mono, std::vector<Profile>> g_milnor_of_mono;

const std::vector<Profile>& milnor_of_mono(const Mono& m) {
    auto it = g_milnor_of_mono.find(m);
    if (it != g_milnor_of_mono.end()) return it->second;
    std::vector<Profile> acc;
    if (m.empty()) acc = {Profile{}};
    else {
        acc = {Profile{m[0]}};
        for (size_t i = 1; i < m.size(); ++i) {
            std::vector<Profile> next;
            for (const Profile& r : acc)
                xor_into(next, milnor_mono_product(r, Profile{m[i]}));
            acc = cancel_mod2(std::move(next));
        }
    }
    return g_milnor_of_mono.emplace(m, std::move(acc)).first->second;
}

}  // namespace

MilnorElement milnor_add(const MilnorElement& x, const MilnorElement& y) {
    std::vector<Profile> t = x.terms;
    xor_into(t, y.terms);
    return MilnorElement{x.alg, cancel_mod2(std::move(t))};
}

MilnorElement milnor_multiply(const MilnorElement& x, const MilnorElement& y) {
    std::vector<Profile> acc;
    for (const Profile& r : x.terms)
        for (const Profile& s : y.terms)
            xor_into(acc, milnor_mono_product(r, s));
    return MilnorElement{x.alg, cancel_mod2(std::move(acc))};
}

MilnorElement to_milnor(const Element& x) {
    std::lock_guard<std::mutex> lk(g_mutex);
    std::vector<Profile> acc;
    for (const Mono& m : x.terms) xor_into(acc, milnor_of_mono(m));
    return MilnorElement{x.alg, cancel_mod2(std::move(acc))};
}

// ---- basis enumeration -----------------------------------------------------
namespace {

std::map<int, std::vector<Mono>> g_adm_basis;
std::map<std::pair<int, int>, std::vector<Profile>> g_milnor_basis;
std::map<std::pair<int, int>, std::map<Profile, size_t>> g_milnor_index;

void gen_admissible(int remaining, int cap, Mono& cur, std::vector<Mono>& out) {
    if (remaining == 0) { out.push_back(cur); return; }
    for (int i = 1; i <= std::min(cap, remaining); ++i) {
        // next letter at most i/2
        if (remaining - i > 0 && i / 2 == 0) continue;
        cur.push_back(i);
        gen_admissible(remaining - i, i / 2, cur, out);
        cur.pop_back();
    }
}

const std::vector<Mono>& admissible_basis_locked(int degree) {
    auto it = g_adm_basis.find(degree);
    if (it != g_adm_basis.end()) return it->second;
    std::vector<Mono> out;
    if (degree == 0) out = {Mono{}};
    else if (degree > 0) {
        Mono cur;
        gen_admissible(degree, degree, cur, out);
        std::sort(out.begin(), out.end());
    }
    return g_adm_basis.emplace(degree, std::move(out)).first->second;
}

void gen_profiles(Algebra a, int degree, size_t j, Profile& cur,
                  std::vector<Profile>& out) {
    if (degree == 0) {
        Profile r = cur;
        trim(r);
        out.push_back(std::move(r));
        return;
    }
    int wj = (1 << (j + 1)) - 1;  // degree of r_{j+1} slot
    if (wj > degree) return;
    int maxv = degree / wj;
    if (a != Algebra::A) {
        int n = algebra_n(a);
        int jj = int(j) + 1;
        if (jj > n + 1) return;
        maxv = std::min(maxv, (1 << (n + 2 - jj)) - 1);
    }
    cur.resize(j + 1, 0);
    for (int v = 0; v <= maxv; ++v) {
        cur[j] = v;
        gen_profiles(a, degree - v * wj, j + 1, cur, out);
    }
    cur[j] = 0;
    cur.resize(j);
}

const std::vector<Profile>& milnor_basis_locked(Algebra a, int degree) {
    auto key = std::make_pair(int(a), degree);
    auto it = g_milnor_basis.find(key);
    if (it != g_milnor_basis.end()) return it->second;
    std::vector<Profile> out;
    if (degree == 0) out = {Profile{}};
    else if (degree > 0 && degree <= algebra_top_degree(a)) {
        Profile cur;
        gen_profiles(a, degree, 0, cur, out);
        std::sort(out.begin(), out.end());
    }
    auto& slot = g_milnor_basis.emplace(key, std::move(out)).first->second;
    auto& idx = g_milnor_index[key];
    for (size_t i = 0; i < slot.size(); ++i) idx[slot[i]] = i;
    return slot;
}

}  // namespace

const std::vector<Mono>& admissible_basis(int degree) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return admissible_basis_locked(degree);
}

const std::vector<Profile>& milnor_basis(Algebra a, int degree) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return milnor_basis_locked(a, degree);
}

size_t algebra_dim(Algebra a, int degree) { return milnor_basis(a, degree).size(); }

size_t milnor_index(Algebra a, const Profile& r) {
    int d = profile_degree(r);
    std::lock_guard<std::mutex> lk(g_mutex);
    milnor_basis_locked(a, d);
    auto& idx = g_milnor_index[{int(a), d}];
    auto it = idx.find(r);
    return it == idx.end() ? size_t(-1) : it->second;
}

// ---- basis conversion ------------------------------------------------------
namespace {

// per degree: solver for (milnor coords) = C * (admissible coords)
std::map<int, gf2::Solver> g_convert;

const gf2::Solver& convert_solver(int degree) {
    auto it = g_convert.find(degree);
    if (it != g_convert.end()) return it->second;
    const auto& adm = admissible_basis_locked(degree);
    const auto& mil = milnor_basis_locked(Algebra::A, degree);
    gf2::BitMatrix c(mil.size(), adm.size());
    auto& idx = g_milnor_index[{int(Algebra::A), degree}];
    for (size_t j = 0; j < adm.size(); ++j)
        for (const Profile& r : milnor_of_mono(adm[j]))
            c.set(idx.at(r), j);
    return g_convert.emplace(degree, gf2::Solver(c)).first->second;
}

}  // namespace

Element to_admissible(const MilnorElement& x) {
    std::lock_guard<std::mutex> lk(g_mutex);
    if (x.is_zero()) return Element{x.alg, {}};
    int d = x.degree();
    const auto& mil = milnor_basis_locked(Algebra::A, d);
    auto& idx = g_milnor_index[{int(Algebra::A), d}];
    gf2::BitVec b(mil.size());
    for (const Profile& r : x.terms) b.flip(idx.at(r));
    auto sol = convert_solver(d).solve(b);
    assert(sol);
    const auto& adm = admissible_basis_locked(d);
    std::vector<Mono> terms;
    for (size_t j = 0; j < adm.size(); ++j)
        if (sol->get(j)) terms.push_back(adm[j]);
    return Element{x.alg, std::move(terms)};
}

std::vector<Element> algebra_basis(Algebra a, int degree) {
    std::vector<Element> out;
    if (a == Algebra::A) {
        for (const Mono& m : admissible_basis(degree))
            out.push_back(Element{a, {m}});
    } else {
        for (const Profile& r : milnor_basis(a, degree)) {
            Element e = to_admissible(MilnorElement{a, {r}});
            e.alg = a;
            out.push_back(std::move(e));
        }
    }
    return out;
}

// ---- antipode --------------------------------------------------------------
namespace {

std::map<int, std::vector<Mono>> g_chi_sq;

const std::vector<Mono>& chi_sq(int n) {
    auto it = g_chi_sq.find(n);
    if (it != g_chi_sq.end()) return it->second;
    std::vector<Mono> acc;
    if (n == 0) acc = {Mono{}};
    else {
        // sum_{i=0..n} Sq^i chi(Sq^{n-i}) = 0
        for (int i = 1; i <= n; ++i) {
            for (const Mono& m : chi_sq(n - i)) {
                std::vector<Mono> cur = {m};
                std::vector<Mono> next;
                for (const Mono& t : cur) xor_into(next, mul_left(i, t));
                xor_into(acc, cancel_mod2(std::move(next)));
            }
        }
        acc = cancel_mod2(std::move(acc));
    }
    return g_chi_sq.emplace(n, std::move(acc)).first->second;
}

}  // namespace

Element conjugate(const Element& x) {
    std::lock_guard<std::mutex> lk(g_mutex);
    std::vector<Mono> acc;
    for (const Mono& m : x.terms) {
        std::vector<Mono> cur = {Mono{}};
        // anti-homomorphism: chi(Sq^{i1}...Sq^{ik}) = chi(Sq^{ik})...chi(Sq^{i1}),
        // built by left-multiplying chi(Sq^{i_j}) for j = 1..k
        for (size_t i = 0; i < m.size(); ++i) {
            std::vector<Mono> next;
            for (const Mono& f : chi_sq(m[i]))
                for (const Mono& t : cur) {
                    std::vector<Mono> run = {t};
                    for (size_t k = f.size(); k-- > 0;) {
                        std::vector<Mono> step;
                        for (const Mono& u : run) xor_into(step, mul_left(f[k], u));
                        run = cancel_mod2(std::move(step));
                    }
                    xor_into(next, run);
                }
            cur = cancel_mod2(std::move(next));
        }
        xor_into(acc, cur);
    }
    return Element{x.alg, cancel_mod2(std::move(acc))};
}

bool in_subalgebra(const Element& x, Algebra a) {
    MilnorElement m = to_milnor(x);
    for (const Profile& r : m.terms)
        if (!profile_in(r, a)) return false;
    return true;
}

// ---- product tables --------------------------------------------------------
namespace {

std::map<std::tuple<int, int, int>, MulTable> g_mul_tables;

const MulTable& mul_table_locked(Algebra a, int d1, int d2) {
    auto key = std::make_tuple(int(a), d1, d2);
    auto it = g_mul_tables.find(key);
    if (it != g_mul_tables.end()) return it->second;
    MulTable t;
    if (a == Algebra::A) {
        const auto& b1 = admissible_basis_locked(d1);
        const auto& b2 = admissible_basis_locked(d2);
        const auto& b3 = admissible_basis_locked(d1 + d2);
        std::map<Mono, int> idx;
        for (size_t k = 0; k < b3.size(); ++k) idx[b3[k]] = int(k);
        t.n1 = b1.size();
        t.n2 = b2.size();
        t.prod.resize(t.n1 * t.n2);
        for (size_t i = 0; i < t.n1; ++i)
            for (size_t j = 0; j < t.n2; ++j) {
                std::vector<Mono> cur = {b2[j]};
                for (size_t k = b1[i].size(); k-- > 0;) {
                    std::vector<Mono> next;
                    for (const Mono& m : cur) xor_into(next, mul_left(b1[i][k], m));
                    cur = cancel_mod2(std::move(next));
                }
                auto& cell = t.prod[i * t.n2 + j];
                for (const Mono& m : cur) cell.push_back(idx.at(m));
                std::sort(cell.begin(), cell.end());
            }
    } else {
        const auto& b1 = milnor_basis_locked(a, d1);
        const auto& b2 = milnor_basis_locked(a, d2);
        milnor_basis_locked(a, d1 + d2);
        auto& idx = g_milnor_index[{int(a), d1 + d2}];
        t.n1 = b1.size();
        t.n2 = b2.size();
        t.prod.resize(t.n1 * t.n2);
        for (size_t i = 0; i < t.n1; ++i)
            for (size_t j = 0; j < t.n2; ++j) {
                auto& cell = t.prod[i * t.n2 + j];
                for (const Profile& r : milnor_mono_product(b1[i], b2[j]))
                    cell.push_back(int(idx.at(r)));
                std::sort(cell.begin(), cell.end());
            }
    }
    return g_mul_tables.emplace(key, std::move(t)).first->second;
}

}  // namespace

const MulTable& mul_table(Algebra a, int d1, int d2) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return mul_table_locked(a, d1, d2);
}

void warm_mul_tables(Algebra a, int max_total_degree) {
    std::lock_guard<std::mutex> lk(g_mutex);
    int top = std::min(max_total_degree, algebra_top_degree(a));
    for (int d1 = 0; d1 <= top; ++d1)
        for (int d2 = 0; d1 + d2 <= top; ++d2)
            mul_table_locked(a, d1, d2);
}

// ---- generator words -------------------------------------------------------
namespace {

std::map<int, std::vector<Word>> g_genwords;

const std::vector<Word>& generator_words_locked(int m) {
    auto it = g_genwords.find(m);
    if (it != g_genwords.end()) return it->second;
    std::vector<Word> out;
    if ((m & (m - 1)) == 0) {
        out = {Word{m}};
    } else {
        int k = 1;
        while (2 * k < m) k *= 2;  // largest power of two below m
        int a = m - k;
        auto cross = [&](const std::vector<Word>& u, const std::vector<Word>& v) {
            for (const Word& x : u)
                for (const Word& y : v) {
                    Word w = x;
                    w.insert(w.end(), y.begin(), y.end());
                    out.push_back(std::move(w));
                }
        };
        // Sq^m = Sq^a Sq^k + sum_{c>=1} binom(k-c-1, a-2c) Sq^{m-c} Sq^c
        cross(generator_words_locked(a), generator_words_locked(k));
        for (int c = 1; c <= a / 2; ++c) {
            if (!odd_binom(k - c - 1, a - 2 * c)) continue;
            cross(generator_words_locked(m - c), generator_words_locked(c));
        }
        out = cancel_mod2(std::move(out));
    }
    return g_genwords.emplace(m, std::move(out)).first->second;
}

}  // namespace

const std::vector<Word>& generator_words(int m) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return generator_words_locked(m);
}

// ---- generator decomposition -----------------------------------------------
namespace {

std::map<std::pair<int, int>, std::vector<std::vector<std::pair<int, int>>>> g_gendecomp;

// index of Sq^(2^k) in the working basis of its degree
size_t generator_index_locked(Algebra a, int g) {
    if (a == Algebra::A) {
        const auto& basis = admissible_basis_locked(g);
        Mono m{g};
        return size_t(std::lower_bound(basis.begin(), basis.end(), m) - basis.begin());
    }
    milnor_basis_locked(a, g);
    auto& idx = g_milnor_index[{int(a), g}];
    auto it = idx.find(Profile{g});
    return it == idx.end() ? size_t(-1) : it->second;
}

const std::vector<std::vector<std::pair<int, int>>>& generator_decomposition_locked(
    Algebra a, int d) {
    auto key = std::make_pair(int(a), d);
    auto it = g_gendecomp.find(key);
    if (it != g_gendecomp.end()) return it->second;

    size_t n = milnor_basis_locked(a, d).size();
    // columns: Sq^(2^k) * basis(d - 2^k)[j], k ascending then j ascending
    std::vector<std::pair<int, int>> cols;
    std::vector<gf2::BitVec> colvecs;
    int maxk = algebra_num_generators(a, d);
    for (int k = 0; k < maxk; ++k) {
        int g = 1 << k;
        if (g > d) break;
        size_t gi = generator_index_locked(a, g);
        const MulTable& tab = mul_table_locked(a, g, d - g);
        size_t lower = milnor_basis_locked(a, d - g).size();
        for (size_t j = 0; j < lower; ++j) {
            gf2::BitVec v(n);
            for (int r : tab.entry(gi, j)) v.flip(size_t(r));
            cols.push_back({k, int(j)});
            colvecs.push_back(std::move(v));
        }
    }
    gf2::BitMatrix colmat(n, colvecs.size());
    for (size_t c = 0; c < colvecs.size(); ++c) colmat.add_column(c, colvecs[c]);
    gf2::Solver solver(colmat);
    std::vector<std::vector<std::pair<int, int>>> out(n);
    for (size_t i = 0; i < n; ++i) {
        gf2::BitVec e(n);
        e.set(i);
        auto x = solver.solve(e);
        if (!x) throw std::logic_error("working basis element not generator-decomposable");
        for (size_t c = 0; c < cols.size(); ++c)
            if (x->get(c)) out[i].push_back(cols[c]);
    }
    return g_gendecomp.emplace(key, std::move(out)).first->second;
}

}  // namespace

const std::vector<std::vector<std::pair<int, int>>>& generator_decomposition(Algebra a,
                                                                             int d) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return generator_decomposition_locked(a, d);
}

// ---- dual algebra ----------------------------------------------------------
int DualMono::degree() const {
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += e[i] * ((1 << (i + 1)) - 1);
    return d;
}

long long DualMono::weight() const {
    long long w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += (long long)e[i] << i;
    return w;
}

DualPoly dual_add(const DualPoly& x, const DualPoly& y) {
    DualPoly t = x;
    t.insert(t.end(), y.begin(), y.end());
    return cancel_mod2(std::move(t));
}

namespace {

// polynomials in xi_i: monomial = exponent vector (same shape as Profile)
using XMono = std::vector<int>;
using XPoly = std::vector<XMono>;

XPoly xpoly_mul(const XPoly& a, const XPoly& b) {
    XPoly out;
    for (const XMono& x : a)
        for (const XMono& y : b) {
            XMono m(std::max(x.size(), y.size()), 0);
            for (size_t i = 0; i < x.size(); ++i) m[i] += x[i];
            for (size_t i = 0; i < y.size(); ++i) m[i] += y[i];
            out.push_back(std::move(m));
        }
    return cancel_mod2(std::move(out));
}

XPoly xpoly_square(const XPoly& a) {
    XPoly out;
    for (const XMono& x : a) {
        XMono m = x;
        for (int& v : m) v *= 2;
        out.push_back(std::move(m));
    }
    return cancel_mod2(std::move(out));  // cross terms vanish mod 2
}

std::map<int, XPoly> g_zeta_as_xi;

// zeta_n = sum_{i=1..n} zeta_{n-i}^{2^i} xi_i  (zeta_0 = 1)
const XPoly& zeta_as_xi(int n) {
    auto it = g_zeta_as_xi.find(n);
    if (it != g_zeta_as_xi.end()) return it->second;
    XPoly acc;
    if (n == 0) acc = {XMono{}};
    else {
        for (int i = 1; i <= n; ++i) {
            XPoly p = zeta_as_xi(n - i);
            for (int s = 0; s < i; ++s) p = xpoly_square(p);
            XMono xi(i, 0);
            xi[i - 1] = 1;
            p = xpoly_mul(p, XPoly{xi});
            acc.insert(acc.end(), p.begin(), p.end());
        }
        acc = cancel_mod2(std::move(acc));
    }
    return g_zeta_as_xi.emplace(n, std::move(acc)).first->second;
}

XPoly dual_mono_as_xi(const DualMono& m) {
    XPoly acc = {XMono{}};
    for (size_t i = 0; i < m.e.size(); ++i) {
        int e = m.e[i];
        XPoly p = zeta_as_xi(int(i) + 1);
        while (e > 0) {
            if (e & 1) acc = xpoly_mul(acc, p);
            e >>= 1;
            if (e) p = xpoly_square(p);
        }
    }
    return acc;
}

// exponent vectors of degree-d xi monomials coincide with Milnor profiles
std::map<int, gf2::Solver> g_zeta_solver;

const gf2::Solver& zeta_solver(int degree) {
    auto it = g_zeta_solver.find(degree);
    if (it != g_zeta_solver.end()) return it->second;
    const auto& basis = milnor_basis_locked(Algebra::A, degree);
    auto& idx = g_milnor_index[{int(Algebra::A), degree}];
    gf2::BitMatrix c(basis.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        DualMono zm{basis[j]};
        for (const XMono& x : dual_mono_as_xi(zm)) {
            Profile p = x;
            trim(p);
            c.set(idx.at(p), j);
        }
    }
    return g_zeta_solver.emplace(degree, gf2::Solver(c)).first->second;
}

// Milnor-basis product table for the full algebra, used by the pairing
std::map<std::pair<int, int>, std::vector<std::vector<int>>> g_pair_tables;

const std::vector<std::vector<int>>& pairing_table(int d1, int d2) {
    auto key = std::make_pair(d1, d2);
    auto it = g_pair_tables.find(key);
    if (it != g_pair_tables.end()) return it->second;
    const auto& b1 = milnor_basis_locked(Algebra::A, d1);
    const auto& b2 = milnor_basis_locked(Algebra::A, d2);
    milnor_basis_locked(Algebra::A, d1 + d2);
    auto& idx = g_milnor_index[{int(Algebra::A), d1 + d2}];
    std::vector<std::vector<int>> t(b1.size() * b2.size());
    for (size_t i = 0; i < b1.size(); ++i)
        for (size_t j = 0; j < b2.size(); ++j) {
            auto& cell = t[i * b2.size() + j];
            for (const Profile& r : milnor_mono_product(b1[i], b2[j]))
                cell.push_back(int(idx.at(r)));
            std::sort(cell.begin(), cell.end());
        }
    return g_pair_tables.emplace(key, std::move(t)).first->second;
}

}  // namespace

DualPoly dual_action(const Element& theta, const DualMono& m) {
    MilnorElement chi_theta = to_milnor(conjugate(theta));
    std::lock_guard<std::mutex> lk(g_mutex);
    int dt = theta.is_zero() ? 0 : word_degree(theta.terms[0]);
    int dm = m.degree();
    int dr = dm - dt;
    if (dr < 0) return {};
    if (dt == 0) {
        // unit acts trivially; zero acts as zero
        return theta.is_zero() ? DualPoly{} : DualPoly{m};
    }
    // expand the zeta monomial in xi coordinates
    const auto& src = milnor_basis_locked(Algebra::A, dm);
    auto& src_idx = g_milnor_index[{int(Algebra::A), dm}];
    gf2::BitVec mvec(src.size());
    for (const XMono& x : dual_mono_as_xi(m)) {
        Profile p = x;
        trim(p);
        mvec.flip(src_idx.at(p));
    }
    // (theta . f) = f(chi(theta) . -): pair chi(theta)*Sq(R) against each term
    const auto& tgt = milnor_basis_locked(Algebra::A, dr);
    gf2::BitVec rvec(tgt.size());
    const auto& tab = pairing_table(dt, dr);
    for (const Profile& s : chi_theta.terms) {
        size_t si = g_milnor_index[{int(Algebra::A), dt}].at(s);
        for (size_t ri = 0; ri < tgt.size(); ++ri) {
            bool hit = false;
            for (int e : tab[si * tgt.size() + ri])
                if (mvec.get(size_t(e))) hit = !hit;
            if (hit) rvec.flip(ri);
        }
    }
    // back to zeta coordinates
    auto sol = zeta_solver(dr).solve(rvec);
    assert(sol);
    DualPoly out;
    for (size_t j = 0; j < tgt.size(); ++j)
        if (sol->get(j)) out.push_back(DualMono{tgt[j]});
    std::sort(out.begin(), out.end());
    return out;
}

DualPoly dual_action(const Element& theta, const DualPoly& p) {
    DualPoly acc;
    for (const DualMono& m : p) acc = dual_add(acc, dual_action(theta, m));
    return acc;
}

// ---- text format -----------------------------------------------------------
namespace {

std::string render_tuple(const char* head, const std::vector<int>& v) {
    std::ostringstream os;
    os << head << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

}  // namespace

std::string render(const Element& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < x.terms.size(); ++i) {
        if (i) out += " + ";
        out += x.terms[i].empty() ? "1" : render_tuple("Sq", x.terms[i]);
    }
    return out;
}

std::string render(const MilnorElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < x.terms.size(); ++i) {
        if (i) out += " + ";
        out += x.terms[i].empty() ? "1" : render_tuple("M", x.terms[i]);
    }
    return out;
}

std::string render(const DualMono& m) {
    if (m.e.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += "z" + std::to_string(i + 1);
        if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
    return out.empty() ? "1" : out;
}

namespace {

bool parse_tuple(const std::string& s, size_t& pos, std::vector<int>& out) {
    if (pos >= s.size() || s[pos] != '(') return false;
    ++pos;
    while (true) {
        size_t start = pos;
        bool neg = pos < s.size() && s[pos] == '-';
        if (neg) ++pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start + (neg ? 1 : 0)) return false;
        out.push_back(std::stoi(s.substr(start, pos - start)));
        if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
        break;
    }
    if (pos >= s.size() || s[pos] != ')') return false;
    ++pos;
    return true;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::optional<Element> parse_element(Algebra a, const std::string& text) {
    Element acc{a, {}};
    std::string t = text;
    size_t pos = 0;
    bool any = false;
    while (pos <= t.size()) {
        size_t plus = t.find('+', pos);
        std::string term = strip(t.substr(pos, plus == std::string::npos
                                                   ? std::string::npos
                                                   : plus - pos));
        if (term.empty()) return std::nullopt;
        if (term == "0") {
            // zero contributes nothing
        } else if (term == "1") {
            acc = add(acc, unit(a));
        } else if (term.rfind("Sq", 0) == 0) {
            size_t p = 2;
            std::vector<int> v;
            if (!parse_tuple(term, p, v) || p != term.size()) return std::nullopt;
            for (int i : v)
                if (i <= 0) return std::nullopt;
            acc = add(acc, adem_reduce(a, v));
        } else if (term.rfind("M", 0) == 0) {
            size_t p = 1;
            std::vector<int> v;
            if (!parse_tuple(term, p, v) || p != term.size()) return std::nullopt;
            for (int i : v)
                if (i < 0) return std::nullopt;
            Profile r = v;
            while (!r.empty() && r.back() == 0) r.pop_back();
            Element e = to_admissible(MilnorElement{a, {r}});
            e.alg = a;
            acc = add(acc, e);
        } else {
            return std::nullopt;
        }
        any = true;
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    if (!any) return std::nullopt;
    return acc;
}

}  // namespace ext2
