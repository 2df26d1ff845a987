#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "lqt/errors.hpp"
#include "lqt/rational.hpp"

namespace lqt {

// Sparse vector: (index, value) pairs sorted by index, no zeros stored.
using SVec = std::vector<std::pair<int, Rat>>;

inline bool svec_is_sorted(const SVec& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1].first >= v[i].first) return false;
    return true;
}

inline Rat svec_get(const SVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, int k) { return e.first < k; });
    if (it != v.end() && it->first == idx) return it->second;
    return Rat(0);
}

// r := a + c*b, merged in one pass.
inline SVec svec_add_scaled(const SVec& a, const SVec& b, const Rat& c) {
    SVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rat v = c * b[j].second;
            if (v != 0) r.emplace_back(b[j].first, v);
            ++j;
        } else {
            Rat v = a[i].second + c * b[j].second;
            if (v != 0) r.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return r;
}

inline void svec_scale(SVec& v, const Rat& c) {
    if (c == 0) {
        v.clear();
        return;
    }
    for (auto& e : v) e.second *= c;
}

inline Rat svec_dot(const SVec& a, const SVec& b) {
    Rat s(0);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            ++i;
        else if (b[j].first < a[i].first)
            ++j;
        else {
            s += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return s;
}

// Accumulator for building a sparse vector entry by entry in any order.
class SVecBuilder {
public:
    void add(int idx, const Rat& v) {
        if (v == 0) return;
        terms_.emplace_back(idx, v);
    }
    SVec take() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SVec out;
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
                if (out.back().second == 0) out.pop_back();
            } else {
                out.push_back(std::move(t));
            }
        }
        terms_.clear();
        return out;
    }

private:
    std::vector<std::pair<int, Rat>> terms_;
};

// Sparse matrix, row-major. Entries within a row sorted by column.
class SparseMat {
public:
    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {
        if (rows < 0 || cols < 0) throw StructureError("negative matrix dimension");
    }

    static SparseMat identity(int n) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rat(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const SVec& row(int r) const { return data_.at(static_cast<std::size_t>(r)); }

    void set_row(int r, SVec v) {
        check_row(r);
        for (auto& e : v) check_col(e.first);
        data_[static_cast<std::size_t>(r)] = std::move(v);
    }

    void add(int r, int c, const Rat& v) {
        check_row(r);
        check_col(c);
        if (v == 0) return;
        SVec& row = data_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int k) { return e.first < k; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (it->second == 0) row.erase(it);
        } else {
            row.insert(it, {c, v});
        }
    }

    Rat entry(int r, int c) const {
        check_row(r);
        check_col(c);
        return svec_get(data_[static_cast<std::size_t>(r)], c);
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    SparseMat transpose() const {
        SparseMat t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
                t.data_[static_cast<std::size_t>(c)].emplace_back(r, v);
        return t;
    }

    // Applies the matrix to a coordinate (column) vector.
    SVec apply(const SVec& x) const {
        // x lives in the column space: result_r = sum_c M[r][c] * x[c].
        // Work column-wise via accumulated combination of transposed access;
        // for row-major storage iterate rows and dot.
        SVec out;
        for (int r = 0; r < rows_; ++r) {
            Rat v = svec_dot(data_[static_cast<std::size_t>(r)], x);
            if (v != 0) out.emplace_back(r, v);
        }
        return out;
    }

    friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
        if (a.cols_ != b.rows_)
            throw StructureError("matrix product shape mismatch: " + std::to_string(a.cols_) +
                                 " vs " + std::to_string(b.rows_));
        SparseMat p(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r) {
            SVec acc;
            for (const auto& [k, v] : a.data_[static_cast<std::size_t>(r)])
                acc = svec_add_scaled(acc, b.data_[static_cast<std::size_t>(k)], v);
            p.data_[static_cast<std::size_t>(r)] = std::move(acc);
        }
        return p;
    }

    friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw StructureError("matrix difference shape mismatch");
        SparseMat d(a.rows_, a.cols_);
        for (int r = 0; r < a.rows_; ++r)
            d.data_[static_cast<std::size_t>(r)] =
                svec_add_scaled(a.data_[static_cast<std::size_t>(r)],
                                b.data_[static_cast<std::size_t>(r)], Rat(-1));
        return d;
    }

    friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw StructureError("matrix sum shape mismatch");
        SparseMat d(a.rows_, a.cols_);
        for (int r = 0; r < a.rows_; ++r)
            d.data_[static_cast<std::size_t>(r)] =
                svec_add_scaled(a.data_[static_cast<std::size_t>(r)],
                                b.data_[static_cast<std::size_t>(r)], Rat(1));
        return d;
    }

    friend SparseMat operator*(const Rat& c, const SparseMat& a) {
        SparseMat s(a.rows_, a.cols_);
        if (c == 0) return s;
        for (int r = 0; r < a.rows_; ++r) {
            SVec row = a.data_[static_cast<std::size_t>(r)];
            svec_scale(row, c);
            s.data_[static_cast<std::size_t>(r)] = std::move(row);
        }
        return s;
    }

    bool operator==(const SparseMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const SparseMat& o) const { return !(*this == o); }

    // Stacks b below this matrix (same column count).
    SparseMat vstack(const SparseMat& b) const {
        if (cols_ != b.cols_) throw StructureError("vstack column mismatch");
        SparseMat s(rows_ + b.rows_, cols_);
        s.data_ = data_;
        s.data_.insert(s.data_.end(), b.data_.begin(), b.data_.end());
        return s;
    }

    static SparseMat from_rows(int cols, const std::vector<SVec>& rows) {
        SparseMat m(static_cast<int>(rows.size()), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
        return m;
    }

private:
    void check_row(int r) const {
        if (r < 0 || r >= rows_) throw StructureError("row index out of range");
    }
    void check_col(int c) const {
        if (c < 0 || c >= cols_) throw StructureError("column index out of range");
    }

    int rows_, cols_;
    std::vector<SVec> data_;
};

}  // namespace lqt
