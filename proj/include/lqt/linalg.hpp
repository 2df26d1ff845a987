#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "lqt/sparse.hpp"

namespace lqt {

// Reduced row echelon form. Rows are sorted by pivot column, pivots are 1 and
// are the only nonzero entries of their columns, zero rows are dropped. This
// is the canonical representation used for subspaces: equality of spans is
// equality of Rref::mat.
struct Rref {
    SparseMat mat;            // rank x cols
    std::vector<int> pivots;  // pivot column of each row, strictly increasing
    int rank = 0;
};

namespace detail {

// Pivot choice: among live rows prefer the shortest row, inside it the column
// with the fewest live occurrences (Markowitz-style), ties broken by index so
// runs are deterministic.
inline std::pair<int, int> pick_pivot(const std::vector<SVec>& rows,
                                      const std::vector<bool>& live,
                                      const std::vector<int>& colcount) {
    int best_row = -1;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!live[r] || rows[r].empty()) continue;
        if (rows[r].size() < best_len) {
            best_len = rows[r].size();
            best_row = static_cast<int>(r);
        }
    }
    if (best_row < 0) return {-1, -1};
    int best_col = -1, best_cnt = std::numeric_limits<int>::max();
    for (const auto& [c, v] : rows[static_cast<std::size_t>(best_row)]) {
        if (colcount[static_cast<std::size_t>(c)] < best_cnt) {
            best_cnt = colcount[static_cast<std::size_t>(c)];
            best_col = c;
        }
    }
    return {best_row, best_col};
}

}  // namespace detail

// Exact rank by fraction-preserving sparse Gaussian elimination (forward
// only; no normalization pass).
inline int rank(const SparseMat& m) {
    std::vector<SVec> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    std::vector<bool> live(rows.size(), true);
    std::vector<int> colcount(static_cast<std::size_t>(m.cols()), 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++colcount[static_cast<std::size_t>(c)];

    int rk = 0;
    for (;;) {
        auto [pr, pc] = detail::pick_pivot(rows, live, colcount);
        if (pr < 0) break;
        ++rk;
        live[static_cast<std::size_t>(pr)] = false;
        const SVec& prow = rows[static_cast<std::size_t>(pr)];
        for (const auto& [c, v] : prow) --colcount[static_cast<std::size_t>(c)];
        Rat pval = svec_get(prow, pc);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!live[r]) continue;
            Rat e = svec_get(rows[r], pc);
            if (e == 0) continue;
            for (const auto& [c, v] : rows[r]) --colcount[static_cast<std::size_t>(c)];
            rows[r] = svec_add_scaled(rows[r], prow, -e / pval);
            for (const auto& [c, v] : rows[r]) ++colcount[static_cast<std::size_t>(c)];
        }
    }
    return rk;
}

inline Rref rref(const SparseMat& m) {
    std::vector<SVec> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    std::vector<bool> live(rows.size(), true);
    std::vector<int> colcount(static_cast<std::size_t>(m.cols()), 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++colcount[static_cast<std::size_t>(c)];

    std::vector<std::pair<int, int>> pivot_of;  // (col, row)
    for (;;) {
        auto [pr, pc] = detail::pick_pivot(rows, live, colcount);
        if (pr < 0) break;
        live[static_cast<std::size_t>(pr)] = false;
        for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)])
            --colcount[static_cast<std::size_t>(c)];
        {
            Rat inv = Rat(1) / svec_get(rows[static_cast<std::size_t>(pr)], pc);
            svec_scale(rows[static_cast<std::size_t>(pr)], inv);
        }
        const SVec prow = rows[static_cast<std::size_t>(pr)];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == pr) continue;
            Rat e = svec_get(rows[r], pc);
            if (e == 0) continue;
            if (live[r])
                for (const auto& [c, v] : rows[r]) --colcount[static_cast<std::size_t>(c)];
            rows[r] = svec_add_scaled(rows[r], prow, -e);
            if (live[r])
                for (const auto& [c, v] : rows[r]) ++colcount[static_cast<std::size_t>(c)];
        }
        pivot_of.emplace_back(pc, pr);
    }

    std::sort(pivot_of.begin(), pivot_of.end());
    Rref out;
    out.rank = static_cast<int>(pivot_of.size());
    out.mat = SparseMat(out.rank, m.cols());
    for (int i = 0; i < out.rank; ++i) {
        out.pivots.push_back(pivot_of[static_cast<std::size_t>(i)].first);
        out.mat.set_row(i, rows[static_cast<std::size_t>(
                               pivot_of[static_cast<std::size_t>(i)].second)]);
    }
    return out;
}

// Expresses v in terms of the rows of a canonical RREF basis. Returns the
// coefficient vector, or nullopt if v is outside the span.
inline std::optional<std::vector<Rat>> rref_express(const Rref& basis, const SVec& v) {
    std::vector<Rat> coeffs(static_cast<std::size_t>(basis.rank), Rat(0));
    SVec rest = v;
    for (int i = 0; i < basis.rank; ++i) {
        Rat c = svec_get(rest, basis.pivots[static_cast<std::size_t>(i)]);
        if (c == 0) continue;
        coeffs[static_cast<std::size_t>(i)] = c;
        rest = svec_add_scaled(rest, basis.mat.row(i), -c);
    }
    if (!rest.empty()) return std::nullopt;
    return coeffs;
}

// Residue of v modulo the row span of a canonical RREF basis.
inline SVec rref_reduce(const Rref& basis, const SVec& v) {
    SVec rest = v;
    for (int i = 0; i < basis.rank; ++i) {
        Rat c = svec_get(rest, basis.pivots[static_cast<std::size_t>(i)]);
        if (c != 0) rest = svec_add_scaled(rest, basis.mat.row(i), -c);
    }
    return rest;
}

// Basis of the right kernel, canonicalized.
inline Rref kernel_basis(const SparseMat& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<SVec> gens;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        SVecBuilder b;
        b.add(f, Rat(1));
        for (int i = 0; i < r.rank; ++i) {
            Rat e = svec_get(r.mat.row(i), f);
            if (e != 0) b.add(r.pivots[static_cast<std::size_t>(i)], -e);
        }
        gens.push_back(b.take());
    }
    return rref(SparseMat::from_rows(m.cols(), gens));
}

// Basis of the column space (vectors of length m.rows()), canonicalized.
inline Rref image_basis(const SparseMat& m) { return rref(m.transpose()); }

// Solves x_i . M = v_i for several row vectors v over the rows of M.
// Returns one coefficient vector per input, or nullopt where inconsistent.
// Requires the rows of M to be linearly independent.
inline std::vector<std::optional<std::vector<Rat>>> solve_against_rows(
    const SparseMat& m, const std::vector<SVec>& vs) {
    // Transpose and augment: [M^T | v_1^T v_2^T ...], then RREF.
    const int k = m.rows();
    SparseMat aug(m.cols(), k + static_cast<int>(vs.size()));
    for (int r = 0; r < k; ++r)
        for (const auto& [c, val] : m.row(r)) aug.add(c, r, val);
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (const auto& [c, val] : vs[j]) aug.add(c, k + static_cast<int>(j), val);
    Rref rr = rref(aug);

    std::vector<int> pivot_row_of(static_cast<std::size_t>(k), -1);
    for (int i = 0; i < rr.rank; ++i) {
        int p = rr.pivots[static_cast<std::size_t>(i)];
        if (p < k)
            pivot_row_of[static_cast<std::size_t>(p)] = i;
        else
            break;  // pivots are increasing; an augmented pivot means some v is inconsistent
    }
    std::vector<std::optional<std::vector<Rat>>> out;
    for (std::size_t j = 0; j < vs.size(); ++j) {
        int col = k + static_cast<int>(j);
        std::vector<Rat> coeff(static_cast<std::size_t>(k), Rat(0));
        bool ok = true;
        for (int i = 0; i < rr.rank; ++i) {
            int p = rr.pivots[static_cast<std::size_t>(i)];
            Rat e = svec_get(rr.mat.row(i), col);
            if (p < k) {
                coeff[static_cast<std::size_t>(p)] = e;
            } else if (e != 0 || p == col) {
                // a pivot inside the augmented block: the columns there are
                // not reachable; v_j is inconsistent iff its column carries
                // a pivot or a nonzero entry in a pivot row of the block
                if (p == col) ok = false;
            }
        }
        // Verify by substitution: independence of M's rows makes the read-off
        // unique, and substitution rejects inconsistent right-hand sides.
        if (ok) {
            SVec acc;
            for (int r = 0; r < k; ++r)
                if (coeff[static_cast<std::size_t>(r)] != 0)
                    acc = svec_add_scaled(acc, m.row(r), coeff[static_cast<std::size_t>(r)]);
            SVec diff = svec_add_scaled(vs[j], acc, Rat(-1));
            if (!diff.empty()) ok = false;
        }
        if (ok)
            out.emplace_back(std::move(coeff));
        else
            out.emplace_back(std::nullopt);
    }
    return out;
}

}  // namespace lqt
