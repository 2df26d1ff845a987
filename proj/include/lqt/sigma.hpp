#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "lqt/builders.hpp"
#include "lqt/specht.hpp"
#include "lqt/tensor_complex.hpp"

namespace lqt {

// The factor T^m(C^bar A) ⊗ V^α ⊗ V^β of the comparison target, with its
// Σ_m-action: adjacent transpositions swap neighbouring bar factors with the
// Koszul sign and act on the tableau factors through the Specht matrices.
struct BarSpechtFactor {
    int m = 0;
    const BarComplex* bar = nullptr;
    SpechtModule va, vb;
    ChainComplex spec_cx;  // V^α ⊗ V^β concentrated in degree 0
    TensorComplex tc;      // bar^{⊗m} ⊗ (V^α ⊗ V^β)

    int tableau_pairs() const { return va.dim * vb.dim; }
    int pair_index(int x, int y) const { return x * vb.dim + y; }
    std::pair<int, int> pair_decode(int t) const { return {t / vb.dim, t % vb.dim}; }
};

inline BarSpechtFactor bar_specht_factor(const BarComplex& bar, const Partition& alpha,
                                         const Partition& beta, int pmax) {
    if (alpha.m() != beta.m()) throw StructureError("tableau factors need equal partition size");
    BarSpechtFactor f;
    f.m = alpha.m();
    f.bar = &bar;
    f.va = specht_module(alpha);
    f.vb = specht_module(beta);

    f.spec_cx.space = GradedSpace(0);
    for (int x = 0; x < f.va.dim; ++x)
        for (int y = 0; y < f.vb.dim; ++y)
            f.spec_cx.space.labels[0].push_back(f.va.tableaux[static_cast<std::size_t>(x)].str() +
                                                "(x)" +
                                                f.vb.tableaux[static_cast<std::size_t>(y)].str());
    f.spec_cx.init_boundaries();

    std::vector<const ChainComplex*> factors;
    for (int i = 0; i < f.m; ++i) factors.push_back(&bar.cx);
    factors.push_back(&f.spec_cx);
    f.tc = multi_tensor(factors, pmax);
    return f;
}

// Matrix of the adjacent transposition s_{i+1} = (i+1, i+2) in degree p.
inline SparseMat sigma_generator_matrix(const BarSpechtFactor& f, int i, int p) {
    const int dim = f.tc.cx.dim(p);
    SparseMat m(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const TensorTuple& t = f.tc.tuple(p, col);
        int d1 = t[static_cast<std::size_t>(i)].first;
        int d2 = t[static_cast<std::size_t>(i) + 1].first;
        int koszul = (d1 * d2 % 2 == 1) ? -1 : 1;
        TensorTuple swapped = t;
        std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(i) + 1]);
        auto [x, y] = f.pair_decode(t.back().second);
        const SparseMat& ga = f.va.gen[static_cast<std::size_t>(i)];
        const SparseMat& gb = f.vb.gen[static_cast<std::size_t>(i)];
        for (int x2 = 0; x2 < f.va.dim; ++x2) {
            Rat ca = ga.entry(x2, x);
            if (ca == 0) continue;
            for (int y2 = 0; y2 < f.vb.dim; ++y2) {
                Rat cb = gb.entry(y2, y);
                if (cb == 0) continue;
                TensorTuple nt = swapped;
                nt.back().second = f.pair_index(x2, y2);
                m.add(f.tc.flat(p, nt), col, Rat(koszul) * ca * cb);
            }
        }
    }
    return m;
}

// Matrix of an arbitrary permutation (image form, 0-based) in degree p:
// permute bar factors with the Koszul sign of the rearrangement and act on
// the Specht factors by the permutation's representation matrices.
inline SparseMat sigma_perm_matrix(const BarSpechtFactor& f, const std::vector<int>& perm,
                                   int p) {
    std::vector<int> perm1;  // 1-based image form for the Specht matrices
    for (int v : perm) perm1.push_back(v + 1);
    SparseMat ma = f.va.perm_matrix(perm1);
    SparseMat mb = f.vb.perm_matrix(perm1);
    const int dim = f.tc.cx.dim(p);
    SparseMat m(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const TensorTuple& t = f.tc.tuple(p, col);
        std::vector<int> degs;
        for (int i = 0; i < f.m; ++i) degs.push_back(t[static_cast<std::size_t>(i)].first);
        // new position j receives old factor perm^{-1}(j); build inverse
        std::vector<int> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
        int sign = koszul_sign(degs, inv);
        TensorTuple nt = t;
        for (int i = 0; i < f.m; ++i)
            nt[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(inv[static_cast<std::size_t>(i)])];
        auto [x, y] = f.pair_decode(t.back().second);
        for (int x2 = 0; x2 < f.va.dim; ++x2) {
            Rat ca = ma.entry(x2, x);
            if (ca == 0) continue;
            for (int y2 = 0; y2 < f.vb.dim; ++y2) {
                Rat cb = mb.entry(y2, y);
                if (cb == 0) continue;
                TensorTuple full = nt;
                full.back().second = f.pair_index(x2, y2);
                m.add(f.tc.flat(p, full), col, Rat(sign) * ca * cb);
            }
        }
    }
    return m;
}

// Averaging projector (1/m!) Σ_σ σ in degree p. Group elements are built
// from the generator matrices by closure, so the operator is multiplicative
// by construction.
inline SparseMat sigma_average_matrix(const BarSpechtFactor& f, int p) {
    const int dim = f.tc.cx.dim(p);
    if (f.m <= 1) return SparseMat::identity(dim);
    if (f.m > 4) throw SizeError("full-group averaging limited to m <= 4");
    std::vector<SparseMat> gens;
    for (int i = 0; i + 1 < f.m; ++i) gens.push_back(sigma_generator_matrix(f, i, p));

    std::map<std::vector<int>, SparseMat> elems;
    std::vector<int> id(static_cast<std::size_t>(f.m));
    for (int i = 0; i < f.m; ++i) id[static_cast<std::size_t>(i)] = i;
    elems.emplace(id, SparseMat::identity(dim));
    std::vector<std::vector<int>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& key : frontier)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                std::vector<int> nk = key;
                std::swap(nk[i], nk[i + 1]);
                if (elems.count(nk)) continue;
                elems.emplace(nk, gens[i] * elems.at(key));
                next.push_back(std::move(nk));
            }
        frontier = std::move(next);
    }
    SparseMat sum(dim, dim);
    for (const auto& [key, mat] : elems) sum = sum + mat;
    Rat inv_order = Rat(1) / Rat(static_cast<long>(elems.size()));
    return inv_order * sum;
}

// Image of the averaging projector: the Σ_m-invariants in degree p.
inline Subspace sigma_invariants(const BarSpechtFactor& f, int p) {
    if (f.m <= 1) return Subspace::full(f.tc.cx.dim(p));
    return image_subspace(sigma_average_matrix(f, p));
}

}  // namespace lqt
