#include "feynmandd/gf2.hpp"

#include <algorithm>

namespace fdd {

bool F2Matrix::is_symmetric_zero_diag() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i) {
        if (get(i, i)) return false;
        for (int j = i + 1; j < cols; ++j)
            if (get(i, j) != get(j, i)) return false;
    }
    return true;
}

bool RrefBasis::insert(BitVec v) {
    assert(v.size() == cols_);
    for (std::size_t j = 0; j < rows_.size(); ++j)
        if (v.get(pivots_[j])) v ^= rows_[j];
    int p = v.first_set();
    if (p < 0) return false;
    for (std::size_t j = 0; j < rows_.size(); ++j)
        if (rows_[j].get(p)) rows_[j] ^= v;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    std::size_t idx = std::size_t(it - pivots_.begin());
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

void RrefBasis::drop_column(int c) {
    assert(c >= 0 && c < cols_);
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
    if (it == pivots_.end() || *it != c) {
        // Non-pivot column: pivot columns are untouched, form is preserved.
        for (auto& r : rows_) r.clear(c);
        return;
    }
    std::size_t idx = std::size_t(it - pivots_.begin());
    BitVec rest = std::move(rows_[idx]);
    rows_.erase(rows_.begin() + idx);
    pivots_.erase(it);
    rest.clear(c);
    insert(std::move(rest));
}

RrefBasis rref(const F2Matrix& m) {
    RrefBasis b(m.cols);
    for (const auto& r : m.row) b.insert(r);
    return b;
}

int rank(const F2Matrix& m) {
    return rref(m).rank();
}

RrefBasis advance_boundary(const RrefBasis& prev, int drop_col, const BitVec& new_row) {
    assert(new_row.size() == prev.cols());
    assert(!new_row.get(drop_col));
    RrefBasis next = prev;
    next.drop_column(drop_col);
    next.insert(new_row);
    return next;
}

std::optional<BitVec> decompose_in_basis(const RrefBasis& basis, const BitVec& v) {
    assert(v.size() == basis.cols());
    BitVec coeffs(basis.rank());
    BitVec rest = v;
    for (int j = 0; j < basis.rank(); ++j) {
        if (rest.get(basis.pivots()[j])) {
            coeffs.set(j);
            rest ^= basis.basis_rows()[j];
        }
    }
    if (rest.any()) return std::nullopt;
    return coeffs;
}

} // namespace fdd
