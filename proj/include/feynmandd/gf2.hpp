#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fdd {

// Fixed-width GF(2) vector packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    bool get(int i) const {
        assert(i >= 0 && i < nbits_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(int i) {
        assert(i >= 0 && i < nbits_);
        words_[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    void set(int i, bool v) {
        if (v) set(i); else clear(i);
    }
    void clear(int i) {
        assert(i >= 0 && i < nbits_);
        words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(int i) {
        assert(i >= 0 && i < nbits_);
        words_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    BitVec& operator^=(const BitVec& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Index of the lowest set bit, -1 when the vector is zero.
    int first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return int(w * 64) + __builtin_ctzll(words_[w]);
        return -1;
    }

    // Lowest set bit at position >= from, -1 when none.
    int first_set_from(int from) const {
        if (from >= nbits_) return -1;
        std::size_t w = std::size_t(from) >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t(0) << (from & 63));
        for (;;) {
            if (cur) return int(w * 64) + __builtin_ctzll(cur);
            if (++w == words_.size()) return -1;
            cur = words_[w];
        }
    }

    int popcount() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool operator==(const BitVec& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

    std::span<const std::uint64_t> words() const { return words_; }

private:
    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix, bit-packed row-major.
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<BitVec> row;

    F2Matrix() = default;
    F2Matrix(int r, int c) : rows(r), cols(c), row(r, BitVec(c)) {}

    bool get(int r, int c) const { return row[r].get(c); }
    void set(int r, int c, bool v) { row[r].set(c, v); }

    static F2Matrix identity(int n) {
        F2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    bool is_symmetric_zero_diag() const;
};

// Basis of a row space kept in reduced row echelon form: pivots strictly
// increase and every pivot column is zero in all other basis rows.
class RrefBasis {
public:
    RrefBasis() = default;
    explicit RrefBasis(int cols) : cols_(cols) {}

    int cols() const { return cols_; }
    int rank() const { return int(rows_.size()); }
    const std::vector<BitVec>& basis_rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Reduces v against the basis and inserts the nonzero remainder,
    // keeping RREF form. Returns true when the rank grew.
    bool insert(BitVec v);

    // Projects the spanned space onto the complement of column c.
    void drop_column(int c);

    bool operator==(const RrefBasis& o) const {
        return cols_ == o.cols_ && pivots_ == o.pivots_ && rows_ == o.rows_;
    }

private:
    int cols_ = 0;
    std::vector<BitVec> rows_;
    std::vector<int> pivots_;
};

RrefBasis rref(const F2Matrix& m);
int rank(const F2Matrix& m);

// One incremental boundary step: prev spans the rows of A_[i-1]; dropping the
// column of x_i and inserting row i (restricted to the remaining columns)
// yields the RREF basis of A_[i]. new_row must already be restricted.
RrefBasis advance_boundary(const RrefBasis& prev, int drop_col, const BitVec& new_row);

// Coefficients c with v = sum c_j d_j, read off at the pivot positions.
// nullopt when v is not in the span.
std::optional<BitVec> decompose_in_basis(const RrefBasis& basis, const BitVec& v);

} // namespace fdd
