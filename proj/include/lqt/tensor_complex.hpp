#pragma once

#include <map>
#include <string>
#include <vector>

#include "lqt/graded.hpp"
#include "lqt/koszul.hpp"

namespace lqt {

// Basis element of a tensor product: one (degree, index) per factor.
using TensorTuple = std::vector<std::pair<int, int>>;

// Tensor product of chain complexes, truncated at pmax. Basis elements are
// tuples of factor basis elements; the boundary follows the graded Leibniz
// rule d(x1⊗...⊗xk) = Σ_j (-1)^(deg x1+...+deg x_{j-1}) x1⊗...⊗dx_j⊗...⊗xk.
struct TensorComplex {
    ChainComplex cx;
    std::vector<std::vector<TensorTuple>> tuples;        // [degree] -> tuples
    std::vector<std::map<TensorTuple, int>> index;       // [degree] tuple -> flat

    int flat(int p, const TensorTuple& t) const {
        const auto& m = index.at(static_cast<std::size_t>(p));
        auto it = m.find(t);
        if (it == m.end()) throw StructureError("tensor tuple not in basis");
        return it->second;
    }

    const TensorTuple& tuple(int p, int i) const {
        return tuples.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
    }
};

inline TensorComplex multi_tensor(const std::vector<const ChainComplex*>& factors, int pmax) {
    TensorComplex t;
    t.cx.space = GradedSpace(pmax);
    t.tuples.assign(static_cast<std::size_t>(pmax) + 1, {});
    t.index.assign(static_cast<std::size_t>(pmax) + 1, {});

    // Enumerate tuples in lexicographic order of (deg, idx) per factor.
    TensorTuple cur(factors.size());
    auto rec = [&](auto&& self, std::size_t j, int used) -> void {
        if (j == factors.size()) {
            auto& lbls = t.cx.space.labels[static_cast<std::size_t>(used)];
            t.index[static_cast<std::size_t>(used)][cur] =
                static_cast<int>(t.tuples[static_cast<std::size_t>(used)].size());
            t.tuples[static_cast<std::size_t>(used)].push_back(cur);
            std::string lbl;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                if (f) lbl += " (x) ";
                lbl += factors[f]->space.label(cur[f].first, cur[f].second);
            }
            lbls.push_back(lbl);
            return;
        }
        for (int d = 0; used + d <= pmax && d <= factors[j]->pmax(); ++d)
            for (int i = 0; i < factors[j]->dim(d); ++i) {
                cur[j] = {d, i};
                self(self, j + 1, used + d);
            }
    };
    rec(rec, 0, 0);

    t.cx.init_boundaries();
    for (int p = 1; p <= pmax; ++p) {
        const auto& tp = t.tuples[static_cast<std::size_t>(p)];
        for (std::size_t col = 0; col < tp.size(); ++col) {
            const TensorTuple& tup = tp[col];
            int prefix = 0;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                int dj = tup[j].first, ij = tup[j].second;
                if (dj > 0) {
                    int sign = (prefix % 2 == 0) ? 1 : -1;
                    const SparseMat& dm = factors[j]->boundary(dj);
                    // column ij of dm
                    for (int r = 0; r < dm.rows(); ++r) {
                        Rat v = dm.entry(r, ij);
                        if (v == 0) continue;
                        TensorTuple nt = tup;
                        nt[j] = {dj - 1, r};
                        t.cx.d[static_cast<std::size_t>(p)].add(
                            t.flat(p - 1, nt), static_cast<int>(col), Rat(sign) * v);
                    }
                }
                prefix += dj;
            }
        }
    }
    return t;
}

// Two-factor tensor product (the general builder handles the signs).
inline TensorComplex tensor(const ChainComplex& a, const ChainComplex& b, int pmax) {
    return multi_tensor({&a, &b}, pmax);
}

// Monomial of the graded symmetric algebra: sorted (degree, index) letters.
// Odd-degree letters are distinct, even-degree letters may repeat.
using Monomial = std::vector<std::pair<int, int>>;

struct LambdaComplex {
    ChainComplex cx;
    std::vector<std::vector<Monomial>> monomials;
    std::vector<std::map<Monomial, int>> index;

    int flat(int p, const Monomial& m) const {
        const auto& mp = index.at(static_cast<std::size_t>(p));
        auto it = mp.find(m);
        if (it == mp.end()) throw StructureError("monomial not in basis");
        return it->second;
    }
    const Monomial& monomial(int p, int i) const {
        return monomials.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
    }
};

namespace detail {

inline std::string monomial_label(const ChainComplex& gen, const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += " * ";
        s += gen.space.label(m[i].first, m[i].second);
    }
    return s;
}

}  // namespace detail

// Free graded-commutative algebra on the basis of `gen` (degrees >= 1),
// truncated at pmax, with the boundary extended as a graded derivation.
inline LambdaComplex lambda_complex(const ChainComplex& gen, int pmax) {
    if (gen.dim(0) != 0)
        throw StructureError("graded symmetric algebra needs generators in degrees >= 1");
    LambdaComplex L;
    L.cx.space = GradedSpace(pmax);
    L.monomials.assign(static_cast<std::size_t>(pmax) + 1, {});
    L.index.assign(static_cast<std::size_t>(pmax) + 1, {});

    // Generators in canonical order.
    std::vector<std::pair<int, int>> gens;
    for (int d = 1; d <= std::min(pmax, gen.pmax()); ++d)
        for (int i = 0; i < gen.dim(d); ++i) gens.emplace_back(d, i);

    Monomial cur;
    auto rec = [&](auto&& self, std::size_t next, int used) -> void {
        L.index[static_cast<std::size_t>(used)][cur] =
            static_cast<int>(L.monomials[static_cast<std::size_t>(used)].size());
        L.monomials[static_cast<std::size_t>(used)].push_back(cur);
        L.cx.space.labels[static_cast<std::size_t>(used)].push_back(
            detail::monomial_label(gen, cur));
        for (std::size_t g = next; g < gens.size(); ++g) {
            int d = gens[g].first;
            if (used + d > pmax) continue;
            bool odd = (d % 2 == 1);
            cur.push_back(gens[g]);
            // an odd letter may appear once: advance past it; even letters may repeat
            self(self, odd ? g + 1 : g, used + d);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);

    L.cx.init_boundaries();
    for (int p = 1; p <= pmax; ++p) {
        const auto& mp = L.monomials[static_cast<std::size_t>(p)];
        for (std::size_t col = 0; col < mp.size(); ++col) {
            const Monomial& m = mp[col];
            int prefix = 0;
            for (std::size_t t = 0; t < m.size(); ++t) {
                int dt = m[t].first, it = m[t].second;
                int lead = (prefix % 2 == 0) ? 1 : -1;
                const SparseMat& dm = gen.boundary(dt);
                for (int r = 0; r < dm.rows(); ++r) {
                    Rat v = dm.entry(r, it);
                    if (v == 0) continue;
                    Monomial nm = m;
                    nm[t] = {dt - 1, r};
                    int s = sort_graded(nm);
                    if (s == 0) continue;
                    L.cx.d[static_cast<std::size_t>(p)].add(
                        L.flat(p - 1, nm), static_cast<int>(col), Rat(lead * s) * v);
                }
                prefix += dt;
            }
        }
    }
    return L;
}

// Basis-only variant for a graded space without boundary data.
inline GradedSpace graded_symmetric_algebra(const GradedSpace& v, int pmax) {
    if (v.dim(0) != 0)
        throw StructureError("graded symmetric algebra needs generators in degrees >= 1");
    return lambda_complex(zero_boundary_complex(v), pmax).cx.space;
}

// Degree shift [-1]: (V[-1])_{p+1} = V_p. The boundary is reindexed without
// a sign change; the shifted degree-0 part is empty.
inline GradedSpace shift_down(const GradedSpace& v) {
    GradedSpace s(v.pmax + 1);
    for (int p = 0; p <= v.pmax; ++p)
        s.labels[static_cast<std::size_t>(p) + 1] = v.labels[static_cast<std::size_t>(p)];
    return s;
}

inline ChainComplex shift_down_complex(const ChainComplex& c) {
    ChainComplex s;
    s.space = shift_down(c.space);
    s.init_boundaries();
    for (int p = 1; p <= c.pmax(); ++p)
        s.d[static_cast<std::size_t>(p) + 1] = c.d[static_cast<std::size_t>(p)];
    return s;
}

}  // namespace lqt
