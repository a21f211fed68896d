#pragma once
// Bit-packed linear algebra over GF(2).  All elimination uses a fixed
// column/pivot order so results are reproducible across runs and threads.
#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

namespace ext2::gf2 {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v = true) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    bool none() const {
        for (uint64_t w : w_) if (w) return false;
        return true;
    }
    // index of lowest set bit, or size() if zero
    size_t first_set() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + size_t(__builtin_ctzll(w_[i]));
        return n_;
    }
    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : w_) c += size_t(__builtin_popcountll(w));
        return c;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // lexicographic by lowest differing coordinate (coordinate 0 most significant)
    bool operator<(const BitVec& o) const {
        for (size_t i = 0; i < w_.size() && i < o.w_.size(); ++i) {
            if (w_[i] != o.w_[i]) {
                uint64_t d = w_[i] ^ o.w_[i];
                uint64_t low = d & (~d + 1);
                return w_[i] & low;  // the one with the lower bit set sorts first
            }
        }
        return false;
    }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// Dense matrix, rows stored as BitVecs.  A : F2^cols -> F2^rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool get(size_t i, size_t j) const { return r_[i].get(j); }
    void set(size_t i, size_t j, bool v = true) { r_[i].set(j, v); }
    BitVec& row(size_t i) { return r_[i]; }
    const BitVec& row(size_t i) const { return r_[i]; }

    BitVec apply(const BitVec& x) const {  // y = A x
        BitVec y(rows_);
        for (size_t i = 0; i < rows_; ++i)
            if (dot(r_[i], x)) y.set(i);
        return y;
    }
    void add_column(size_t j, const BitVec& col) {  // col has length rows()
        for (size_t i = 0; i < rows_; ++i)
            if (col.get(i)) r_[i].flip(j);
    }
    BitVec column(size_t j) const {
        BitVec c(rows_);
        for (size_t i = 0; i < rows_; ++i)
            if (r_[i].get(j)) c.set(i);
        return c;
    }
    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = r_[i].first_set(); j < cols_; ++j)
                if (r_[i].get(j)) t.r_[j].set(i);
        return t;
    }
    static bool dot(const BitVec& a, const BitVec& b) {
        const auto& wa = a.words();
        const auto& wb = b.words();
        uint64_t acc = 0;
        size_t n = wa.size() < wb.size() ? wa.size() : wb.size();
        for (size_t i = 0; i < n; ++i) acc ^= wa[i] & wb[i];
        return __builtin_popcountll(acc) & 1;
    }
    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

inline BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {  // (a*b)x = a(bx)
    BitMatrix c(a.rows(), b.cols());
    for (size_t j = 0; j < b.cols(); ++j)
        c.add_column(j, a.apply(b.column(j)));
    return c;
}

// Incremental row-echelon span with recorded pivot columns.
// insert() reduces by stored rows in order; pivots are lowest set bits.
class Echelon {
public:
    explicit Echelon(size_t dim = 0) : dim_(dim) {}

    size_t dim() const { return dim_; }
    size_t rank() const { return rows_.size(); }

    BitVec reduce(BitVec v) const {
        for (size_t k = 0; k < rows_.size(); ++k)
            if (v.get(pivots_[k])) v ^= rows_[k];
        return v;
    }
    bool contains(const BitVec& v) const { return reduce(v).none(); }
    // true if v enlarged the span
    bool insert(const BitVec& v) {
        BitVec r = reduce(v);
        size_t p = r.first_set();
        if (p == r.size()) return false;
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }
    // eliminate every pivot from all other rows (full reduction): afterwards
    // reduce(v) is supported on non-pivot coordinates only
    void back_eliminate() {
        for (size_t k = 0; k < rows_.size(); ++k)
            for (size_t l = 0; l < rows_.size(); ++l)
                if (l != k && rows_[l].get(pivots_[k])) rows_[l] ^= rows_[k];
    }
    bool is_pivot(size_t col) const {
        for (size_t p : pivots_)
            if (p == col) return true;
        return false;
    }
    // coordinates of v over rows() (in insertion order), or nullopt
    std::optional<BitVec> express(BitVec v) const {
        BitVec c(rows_.size());
        for (size_t k = 0; k < rows_.size(); ++k)
            if (v.get(pivots_[k])) { v ^= rows_[k]; c.set(k); }
        if (!v.none()) return std::nullopt;
        return c;
    }

    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

private:
    size_t dim_;
    std::vector<BitVec> rows_;
    std::vector<size_t> pivots_;
};

inline size_t rank(const BitMatrix& a) {
    Echelon e(a.cols());
    for (size_t i = 0; i < a.rows(); ++i) e.insert(a.row(i));
    return e.rank();
}

// Basis of {x : A x = 0}, deterministic: one vector per non-pivot column of
// the column-ordered reduction, ascending free column.
inline std::vector<BitVec> kernel(const BitMatrix& a) {
    size_t m = a.rows(), n = a.cols();
    // eliminate on columns: echelon of columns with tracked combinations
    std::vector<BitVec> colspace;  // echelon vectors in F2^m
    std::vector<BitVec> combo;     // corresponding combinations in F2^n
    std::vector<size_t> pivots;
    std::vector<BitVec> out;
    for (size_t j = 0; j < n; ++j) {
        BitVec v = a.column(j);
        BitVec c(n);
        c.set(j);
        for (size_t k = 0; k < colspace.size(); ++k)
            if (v.get(pivots[k])) { v ^= colspace[k]; c ^= combo[k]; }
        size_t p = v.first_set();
        if (p == m) {
            out.push_back(std::move(c));
        } else {
            colspace.push_back(std::move(v));
            combo.push_back(std::move(c));
            pivots.push_back(p);
        }
    }
    return out;
}

// Repeated-solve helper for a fixed matrix: column echelon of A with
// combination tracking.  solve(b) returns the deterministic solution with
// free coordinates zero, or nullopt if b is outside the column space.
class Solver {
public:
    Solver() = default;
    explicit Solver(const BitMatrix& a) : m_(a.rows()), n_(a.cols()) {
        for (size_t j = 0; j < n_; ++j) {
            BitVec v = a.column(j);
            BitVec c(n_);
            c.set(j);
            for (size_t k = 0; k < colspace_.size(); ++k)
                if (v.get(pivots_[k])) { v ^= colspace_[k]; c ^= combo_[k]; }
            size_t p = v.first_set();
            if (p != m_) {
                colspace_.push_back(std::move(v));
                combo_.push_back(std::move(c));
                pivots_.push_back(p);
            }
        }
    }
    size_t rank() const { return colspace_.size(); }
    std::optional<BitVec> solve(BitVec b) const {
        BitVec x(n_);
        for (size_t k = 0; k < colspace_.size(); ++k)
            if (b.get(pivots_[k])) { b ^= colspace_[k]; x ^= combo_[k]; }
        if (!b.none()) return std::nullopt;
        return x;
    }

private:
    size_t m_ = 0, n_ = 0;
    std::vector<BitVec> colspace_, combo_;
    std::vector<size_t> pivots_;
};

inline std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b) {
    return Solver(a).solve(b);
}

}  // namespace ext2::gf2
