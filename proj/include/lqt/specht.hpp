#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "lqt/linalg.hpp"
#include "lqt/partitions.hpp"

namespace lqt {

// Specht module over Q, realized via polytabloids inside the tabloid
// permutation module and expressed in the standard-tableau basis. gen[i] is
// the matrix of the adjacent transposition (i+1, i+2) acting on column
// coordinate vectors.
struct SpechtModule {
    Partition shape;
    int dim = 0;
    std::vector<Tableau> tableaux;
    std::vector<SparseMat> gen;

    // Matrix of an arbitrary permutation (image form: perm[i] = sigma(i+1)-1),
    // assembled from adjacent transpositions.
    SparseMat perm_matrix(const std::vector<int>& perm) const {
        SparseMat m = SparseMat::identity(dim);
        std::vector<int> p = perm;
        // bubble-sort p; each adjacent swap applied to positions corresponds
        // to multiplying by a generator
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j + 1 < p.size(); ++j)
                if (p[j] > p[j + 1]) {
                    std::swap(p[j], p[j + 1]);
                    m = m * gen[j];
                }
        return m;
    }
};

namespace detail {

// Tabloid: assignment value -> row, with row sizes given by the shape.
using Tabloid = std::vector<int>;

inline Tabloid tabloid_of(const Tableau& t) {
    Tabloid tb(static_cast<std::size_t>(t.shape.m()));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (int v : t.rows[r]) tb[static_cast<std::size_t>(v) - 1] = static_cast<int>(r);
    return tb;
}

// All column-stabilizer elements of t as (value permutation, sign), built
// from independent permutations of each column.
inline void column_stabilizer(const Tableau& t,
                              std::vector<std::pair<std::vector<int>, int>>& out) {
    const int m = t.shape.m();
    std::vector<std::vector<int>> cols;
    for (int c = 0;; ++c) {
        std::vector<int> col;
        for (const auto& row : t.rows)
            if (c < static_cast<int>(row.size())) col.push_back(row[static_cast<std::size_t>(c)]);
        if (col.empty()) break;
        cols.push_back(col);
    }
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    out.clear();
    auto rec = [&](auto&& self, std::size_t ci, int sign) -> void {
        if (ci == cols.size()) {
            out.emplace_back(perm, sign);
            return;
        }
        std::vector<int> col = cols[ci];
        std::vector<int> idx(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) idx[i] = static_cast<int>(i);
        do {
            int s = 1;
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    if (idx[i] > idx[j]) s = -s;
            for (std::size_t i = 0; i < col.size(); ++i)
                perm[static_cast<std::size_t>(col[i]) - 1] =
                    col[static_cast<std::size_t>(idx[i])];
            self(self, ci + 1, sign * s);
        } while (std::next_permutation(idx.begin(), idx.end()));
        for (int v : col) perm[static_cast<std::size_t>(v) - 1] = v;  // restore
    };
    rec(rec, 0, 1);
}

}  // namespace detail

inline SpechtModule specht_module(const Partition& shape) {
    const int m = shape.m();
    if (m > 6) throw SizeError("Specht construction limited to m <= 6, got m = " + std::to_string(m));
    SpechtModule sm;
    sm.shape = shape;
    sm.tableaux = standard_tableaux(shape);
    sm.dim = static_cast<int>(sm.tableaux.size());

    if (m == 0) {
        sm.gen.clear();
        return sm;
    }

    // Index all tabloids reachable from standard tableaux under S_m.
    std::map<detail::Tabloid, int> tab_index;
    auto intern = [&](const detail::Tabloid& t) {
        auto it = tab_index.find(t);
        if (it != tab_index.end()) return it->second;
        int id = static_cast<int>(tab_index.size());
        tab_index.emplace(t, id);
        return id;
    };
    // enumerate all assignments with correct row sizes
    {
        std::vector<int> want(static_cast<std::size_t>(shape.length()));
        for (int r = 0; r < shape.length(); ++r)
            want[static_cast<std::size_t>(r)] = shape.parts[static_cast<std::size_t>(r)];
        detail::Tabloid t(static_cast<std::size_t>(m));
        std::vector<int> used(static_cast<std::size_t>(shape.length()), 0);
        auto rec = [&](auto&& self, int v) -> void {
            if (v == m) {
                intern(t);
                return;
            }
            for (int r = 0; r < shape.length(); ++r) {
                if (used[static_cast<std::size_t>(r)] == want[static_cast<std::size_t>(r)]) continue;
                t[static_cast<std::size_t>(v)] = r;
                ++used[static_cast<std::size_t>(r)];
                self(self, v + 1);
                --used[static_cast<std::size_t>(r)];
            }
        };
        rec(rec, 0);
    }
    const int ntab = static_cast<int>(tab_index.size());
    std::vector<detail::Tabloid> tabloid_by_id(static_cast<std::size_t>(ntab));
    for (const auto& [key, id] : tab_index) tabloid_by_id[static_cast<std::size_t>(id)] = key;

    // Polytabloid vectors in tabloid coordinates.
    std::vector<SVec> poly;
    std::vector<std::pair<std::vector<int>, int>> stab;
    for (const Tableau& t : sm.tableaux) {
        detail::column_stabilizer(t, stab);
        detail::Tabloid base = detail::tabloid_of(t);
        SVecBuilder b;
        for (const auto& [perm, sign] : stab) {
            // row of q(v) in q.T equals row of v in T
            detail::Tabloid moved(base.size());
            for (int v = 1; v <= m; ++v)
                moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(v) - 1]) - 1] =
                    base[static_cast<std::size_t>(v) - 1];
            b.add(tab_index.at(moved), Rat(sign));
        }
        poly.push_back(b.take());
    }
    SparseMat basis = SparseMat::from_rows(ntab, poly);

    // Generator matrices: solve s_i . e_T in the standard polytabloid basis.
    for (int i = 0; i + 1 < m; ++i) {
        std::vector<SVec> images;
        for (const SVec& v : poly) {
            SVecBuilder b;
            for (const auto& [tid, c] : v) {
                detail::Tabloid sw = tabloid_by_id[static_cast<std::size_t>(tid)];
                std::swap(sw[static_cast<std::size_t>(i)], sw[static_cast<std::size_t>(i) + 1]);
                b.add(tab_index.at(sw), c);
            }
            images.push_back(b.take());
        }
        auto sols = solve_against_rows(basis, images);
        SparseMat g(sm.dim, sm.dim);
        for (int col = 0; col < sm.dim; ++col) {
            if (!sols[static_cast<std::size_t>(col)])
                throw InternalError("polytabloid image left the Specht span");
            const auto& co = *sols[static_cast<std::size_t>(col)];
            for (int r = 0; r < sm.dim; ++r) g.add(r, col, co[static_cast<std::size_t>(r)]);
        }
        sm.gen.push_back(std::move(g));
    }
    return sm;
}

}  // namespace lqt
