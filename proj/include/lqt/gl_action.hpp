#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "lqt/builders.hpp"
#include "lqt/partitions.hpp"
#include "lqt/subspace.hpp"

namespace lqt {

// The gl_n(k)-action on the Chevalley-Eilenberg complex of gl_n(A):
// x.(h⊗a) = [x,h]⊗a on generators, extended as a derivation to wedge words.
// Weight spaces, highest-weight spaces, module closures and the isotypic
// decomposition all live here.
class GlAction {
public:
    explicit GlAction(const CeComplex& ce) : ce_(ce), n_(ce.g.n) {}

    const CeComplex& ce() const { return ce_; }
    int n() const { return n_; }

    // [e_ij, e_kl⊗a] = δ_jk e_il⊗a − δ_li e_kj⊗a  (coefficient untouched)
    SVec act_generator_letter(int i, int j, int g) const {
        auto [k, l, s] = ce_.g.gen_decode(g);
        SVecBuilder out;
        if (j == k) out.add(ce_.g.gen_index(i, l, s), Rat(1));
        if (l == i) out.add(ce_.g.gen_index(k, j, s), Rat(-1));
        return out.take();
    }

    // Derivation action of e_ij on a basis wedge word.
    SVec act_word(int i, int j, int p, int word_idx) const {
        const Word& w = ce_.word(p, word_idx);
        SVecBuilder out;
        for (std::size_t t = 0; t < w.size(); ++t) {
            for (const auto& [g, c] : act_generator_letter(i, j, w[t])) {
                Word nw = w;
                nw[t] = g;
                int sign = sort_antisym(nw);
                if (sign == 0) continue;
                out.add(ce_.flat(p, nw), Rat(sign) * c);
            }
        }
        return out.take();
    }

    // Matrix of e_ij acting on degree p (cached).
    const SparseMat& act_matrix(int i, int j, int p) const {
        auto key = std::make_tuple(i, j, p);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        SparseMat m(ce_.cx.dim(p), ce_.cx.dim(p));
        for (int col = 0; col < ce_.cx.dim(p); ++col)
            for (const auto& [r, v] : act_word(i, j, p, col)) m.add(r, col, v);
        return cache_.emplace(key, std::move(m)).first->second;
    }

    SVec act(int i, int j, int p, const SVec& v) const { return act_matrix(i, j, p).apply(v); }

    // Weight of a single generator: wt(e_kl ⊗ a) = ε_k − ε_l.
    std::vector<int> generator_weight(int g) const {
        auto [k, l, s] = ce_.g.gen_decode(g);
        std::vector<int> w(static_cast<std::size_t>(n_), 0);
        w[static_cast<std::size_t>(k) - 1] += 1;
        w[static_cast<std::size_t>(l) - 1] -= 1;
        return w;
    }

    std::vector<int> word_weight(int p, int idx) const {
        std::vector<int> w(static_cast<std::size_t>(n_), 0);
        for (int g : ce_.word(p, idx)) {
            auto [k, l, s] = ce_.g.gen_decode(g);
            w[static_cast<std::size_t>(k) - 1] += 1;
            w[static_cast<std::size_t>(l) - 1] -= 1;
        }
        return w;
    }

    // Simultaneous eigenspace of the diagonal operators: the kernel of the
    // stacked matrices (act(e_pp) − mu_p).
    Subspace weight_space(int p, const std::vector<int>& mu) const {
        if (static_cast<int>(mu.size()) != n_)
            throw StructureError("weight vector length must be n");
        const int dim = ce_.cx.dim(p);
        SparseMat stacked(0, dim);
        for (int q = 1; q <= n_; ++q) {
            SparseMat m = act_matrix(q, q, p);
            for (int c = 0; c < dim; ++c)
                m.add(c, c, Rat(-mu[static_cast<std::size_t>(q) - 1]));
            stacked = stacked.vstack(m);
        }
        return kernel_subspace(stacked);
    }

    // Highest-weight space M_mu: weight-mu vectors killed by every raising
    // operator. The simple roots e_{i,i+1} generate the strictly upper
    // triangular algebra, so their kernels suffice.
    Subspace highest_weight_space(int p, const WeightLabel& lbl) const {
        Subspace w = weight_space(p, lbl.vector());
        if (w.dim() == 0) return w;
        // restrict each raising matrix to the weight space before solving
        SparseMat basis_t = w.basis().transpose();
        SparseMat stacked(0, w.dim());
        for (int i = 1; i < n_; ++i)
            stacked = stacked.vstack(act_matrix(i, i + 1, p) * basis_t);
        Subspace inner = kernel_subspace(stacked);  // coordinates in w's basis
        std::vector<SVec> gens;
        for (int r = 0; r < inner.dim(); ++r) {
            SVec acc;
            for (const auto& [c, v] : inner.basis_vector(r))
                acc = svec_add_scaled(acc, w.basis_vector(c), v);
            gens.push_back(std::move(acc));
        }
        return Subspace::span(ce_.cx.dim(p), gens);
    }

    // Smallest subspace containing s and stable under all e_ij: saturation,
    // re-echelonized each round, stopping when the dimension is stable.
    Subspace module_closure(const Subspace& s, int p) const {
        Subspace cur = s;
        for (;;) {
            std::vector<SVec> gens;
            for (int r = 0; r < cur.dim(); ++r) gens.push_back(cur.basis_vector(r));
            for (int i = 1; i <= n_; ++i)
                for (int j = 1; j <= n_; ++j)
                    for (int r = 0; r < cur.dim(); ++r) {
                        SVec v = act(i, j, p, cur.basis_vector(r));
                        if (!v.empty()) gens.push_back(std::move(v));
                    }
            Subspace next = Subspace::span(ce_.cx.dim(p), gens);
            if (next.dim() == cur.dim()) return next;
            cur = std::move(next);
        }
    }

    // Labels [α,β]_n with m <= p and l(α)+l(β) <= n; highest-weight spaces of
    // labels with m > p vanish (checked separately in the test suite).
    std::vector<WeightLabel> candidate_labels(int p) const {
        std::vector<WeightLabel> out;
        for (int m = 0; m <= p; ++m)
            for (const Partition& alpha : partitions(m))
                for (const Partition& beta : partitions(m))
                    if (alpha.length() + beta.length() <= n_)
                        out.emplace_back(alpha, beta, n_);
        return out;
    }

    struct Isotype {
        WeightLabel label;
        Subspace highest_weight;
        Subspace component;  // U(gl_n k) · M
    };

    // Isotypic decomposition of degree p. Throws when the computed components
    // fail to fill the space independently (that would falsify the splitting).
    std::vector<Isotype> isotypic_decomposition(int p) const {
        std::vector<Isotype> out;
        int total = 0;
        for (const WeightLabel& lbl : candidate_labels(p)) {
            Subspace m = highest_weight_space(p, lbl);
            if (m.dim() == 0) continue;
            Subspace comp = module_closure(m, p);
            total += comp.dim();
            out.push_back({lbl, std::move(m), std::move(comp)});
        }
        if (total != ce_.cx.dim(p))
            throw InternalError("isotypic components of degree " + std::to_string(p) +
                                " sum to " + std::to_string(total) + " instead of " +
                                std::to_string(ce_.cx.dim(p)));
        Subspace sum = Subspace::zero(ce_.cx.dim(p));
        for (const auto& iso : out) sum = sum.sum(iso.component);
        if (sum.dim() != ce_.cx.dim(p))
            throw InternalError("isotypic components of degree " + std::to_string(p) +
                                " are not independent");
        return out;
    }

private:
    const CeComplex& ce_;
    int n_;
    mutable std::map<std::tuple<int, int, int>, SparseMat> cache_;
};

// Subcomplex spanned by one subspace per degree, with the induced boundary.
// Basis labels name the pivot coordinate of each echelon basis vector.
struct SubComplex {
    ChainComplex cx;
    std::vector<Subspace> inclusion;  // [degree]

    // ambient vector of a subcomplex coordinate vector
    SVec embed(int p, const SVec& v) const {
        SVec acc;
        for (const auto& [i, c] : v)
            acc = svec_add_scaled(acc, inclusion[static_cast<std::size_t>(p)].basis_vector(i), c);
        return acc;
    }
};

inline SubComplex subcomplex(const ChainComplex& parent, std::vector<Subspace> spaces) {
    if (static_cast<int>(spaces.size()) != parent.pmax() + 1)
        throw StructureError("need one subspace per degree");
    SubComplex sc;
    sc.cx.space = GradedSpace(parent.pmax());
    for (int p = 0; p <= parent.pmax(); ++p) {
        const Subspace& s = spaces[static_cast<std::size_t>(p)];
        if (s.ambient() != parent.dim(p)) throw StructureError("subspace ambient mismatch");
        for (int i = 0; i < s.dim(); ++i) {
            int pivot = s.rrefb().pivots[static_cast<std::size_t>(i)];
            sc.cx.space.labels[static_cast<std::size_t>(p)].push_back(
                "<" + parent.space.label(p, pivot) + " + ...>");
        }
    }
    sc.cx.init_boundaries();
    for (int p = 1; p <= parent.pmax(); ++p) {
        const Subspace& src = spaces[static_cast<std::size_t>(p)];
        const Subspace& tgt = spaces[static_cast<std::size_t>(p) - 1];
        for (int c = 0; c < src.dim(); ++c) {
            SVec img = parent.boundary(p).apply(src.basis_vector(c));
            auto co = tgt.coords(img);
            if (!co)
                throw StructureError("subspaces are not boundary-stable at degree " +
                                     std::to_string(p));
            for (std::size_t r = 0; r < co->size(); ++r)
                sc.cx.d[static_cast<std::size_t>(p)].add(static_cast<int>(r), c, (*co)[r]);
        }
    }
    sc.inclusion = std::move(spaces);
    return sc;
}

}  // namespace lqt
