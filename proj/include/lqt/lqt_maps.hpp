#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "lqt/gl_action.hpp"
#include "lqt/sigma.hpp"
#include "lqt/tensor_complex.hpp"

namespace lqt {

// Everything needed to assemble the comparison maps for one choice of
// (coefficient algebra, matrix size, tableau shapes, truncation degree).
struct LqtContext {
    StructAlgebra A;
    int n = 0;
    Partition alpha, beta;
    int pmax = 0;

    MatrixLieAlgebra g;
    CeComplex ce;             // C(gl_n A), degrees <= pmax
    CyclicComplex cyc;        // Connes complex, cyclic degrees <= max(pmax-1, 0)
    ChainComplex cyc_shifted; // C^λ A[-1], degrees <= pmax
    LambdaComplex lam;        // Λ(C^λ A[-1]), degrees <= pmax
    BarComplex bar;           // bar complex, degrees <= pmax
    BarSpechtFactor bsf;      // T^m(bar) ⊗ V^α ⊗ V^β, degrees <= pmax
    TensorComplex rp;         // R' = Λ(C^λ[-1]) ⊗ (T^m(bar) ⊗ V^α ⊗ V^β)

    int m() const { return alpha.m(); }
};

inline LqtContext make_lqt_context(const StructAlgebra& A, int n, const Partition& alpha,
                                   const Partition& beta, int pmax) {
    if (alpha.m() != beta.m()) throw StructureError("partitions must have equal size");
    if (alpha.length() + beta.length() > n)
        throw StructureError("label violates l(alpha)+l(beta) <= n");
    LqtContext c;
    c.A = A;
    c.n = n;
    c.alpha = alpha;
    c.beta = beta;
    c.pmax = pmax;
    c.g = matrix_lie_algebra(A, n);
    c.ce = chevalley_eilenberg(c.g, pmax);
    c.cyc = connes_complex(A, std::max(pmax - 1, 0));
    ChainComplex shifted = shift_down_complex(c.cyc.cx);
    // truncate the shifted complex at pmax
    if (shifted.pmax() > pmax) {
        GradedSpace gs(pmax);
        for (int p = 0; p <= pmax; ++p) gs.labels[static_cast<std::size_t>(p)] =
            shifted.space.labels[static_cast<std::size_t>(p)];
        ChainComplex trunc;
        trunc.space = std::move(gs);
        trunc.init_boundaries();
        for (int p = 1; p <= pmax; ++p) trunc.d[static_cast<std::size_t>(p)] =
            shifted.d[static_cast<std::size_t>(p)];
        shifted = std::move(trunc);
    }
    c.cyc_shifted = std::move(shifted);
    c.lam = lambda_complex(c.cyc_shifted, pmax);
    c.bar = bar_complex(A, pmax);
    c.bsf = bar_specht_factor(c.bar, alpha, beta, pmax);
    c.rp = multi_tensor({&c.lam.cx, &c.bsf.tc.cx}, pmax);
    return c;
}

namespace detail {

// Ordered splittings of positions 0..p-1 into nonempty parts; calls f with
// the list of parts (each ascending). parts_wanted < 0 means any count.
inline void ordered_splittings(int p, int parts_wanted,
                               const std::function<void(const std::vector<std::vector<int>>&)>& f) {
    std::vector<int> all(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) all[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<int>> parts;
    auto rec = [&](auto&& self, std::vector<int> rest) -> void {
        if (rest.empty()) {
            if (parts_wanted < 0 || static_cast<int>(parts.size()) == parts_wanted) f(parts);
            return;
        }
        if (parts_wanted >= 0 && static_cast<int>(parts.size()) == parts_wanted) return;
        const int k = static_cast<int>(rest.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> part, next;
            for (int b = 0; b < k; ++b)
                ((mask >> b) & 1u ? part : next).push_back(rest[static_cast<std::size_t>(b)]);
            parts.push_back(std::move(part));
            self(self, std::move(next));
            parts.pop_back();
        }
    };
    if (p == 0) {
        if (parts_wanted <= 0) f(parts);
        return;
    }
    rec(rec, all);
}

}  // namespace detail

// θ¹ applied to a wedge word of length ℓ >= 1: sum over permutations σ of
// (1/ℓ) sg(σ) times the cyclic class of the entry chain of the reordered
// letters. Nonzero only when the matrix indices close into a cycle.
inline SVec theta1_word(const LqtContext& c, const Word& w) {
    const int ell = static_cast<int>(w.size());
    if (ell == 0) return {};
    std::vector<std::array<int, 3>> letters;  // (i, j, s)
    for (int g : w) letters.push_back(c.g.gen_decode(g));
    std::vector<int> perm(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) perm[static_cast<std::size_t>(i)] = i;
    SVecBuilder out;
    Rat inv_len = Rat(1) / Rat(ell);
    do {
        bool chain = true;
        for (int t = 0; t < ell && chain; ++t) {
            const auto& cur = letters[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])];
            const auto& nxt =
                letters[static_cast<std::size_t>(perm[static_cast<std::size_t>((t + 1) % ell)])];
            if (cur[1] != nxt[0]) chain = false;
        }
        if (!chain) continue;
        Word cw;
        for (int t = 0; t < ell; ++t)
            cw.push_back(letters[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])][2]);
        if (auto cl = c.cyc.class_of(cw))
            out.add(cl->first, Rat(perm_sign(perm) * cl->second) * inv_len);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out.take();
}

// θ = π ∘ T(θ¹) ∘ Δ̃ on a wedge word: sum over ordered splittings into
// nonempty parts, θ¹ on each part, letters sorted into a monomial with
// Koszul signs. Returns coordinates in Λ(C^λ A[-1]) at degree |w|.
inline SVec theta_word(const LqtContext& c, const Word& w) {
    const int p = static_cast<int>(w.size());
    SVecBuilder out;
    if (p == 0) {
        out.add(c.lam.flat(0, Monomial{}), Rat(1));
        return out.take();
    }
    std::map<std::vector<int>, SVec> theta1_cache;
    auto theta1_of = [&](const std::vector<int>& positions) -> const SVec& {
        auto it = theta1_cache.find(positions);
        if (it != theta1_cache.end()) return it->second;
        Word sub;
        for (int pos : positions) sub.push_back(w[static_cast<std::size_t>(pos)]);
        return theta1_cache.emplace(positions, theta1_word(c, sub)).first->second;
    };
    detail::ordered_splittings(p, -1, [&](const std::vector<std::vector<int>>& parts) {
        int base = unshuffle_sign(parts);
        // expand the tensor product of the θ¹ values of the parts
        std::vector<std::pair<Monomial, Rat>> acc{{Monomial{}, Rat(base)}};
        for (const auto& part : parts) {
            const SVec& t1 = theta1_of(part);
            if (t1.empty()) {
                acc.clear();
                break;
            }
            int deg = static_cast<int>(part.size());
            std::vector<std::pair<Monomial, Rat>> next;
            for (const auto& [mon, coeff] : acc)
                for (const auto& [idx, v] : t1) {
                    Monomial nm = mon;
                    nm.emplace_back(deg, idx);
                    next.emplace_back(std::move(nm), coeff * v);
                }
            acc = std::move(next);
        }
        for (auto& [mon, coeff] : acc) {
            int s = sort_graded(mon);
            if (s == 0) continue;
            out.add(c.lam.flat(p, mon), Rat(s) * coeff);
        }
    });
    return out.take();
}

// ε_ij on a wedge word of length ℓ >= 1: antisymmetrize the letters, collapse
// the matrix-entry chain from row i to column j. Lands in the bar complex.
inline SVec epsilon_ij_word(const LqtContext& c, int i, int j, const Word& w) {
    const int ell = static_cast<int>(w.size());
    if (ell == 0) return {};
    std::vector<std::array<int, 3>> letters;
    for (int g : w) letters.push_back(c.g.gen_decode(g));
    std::vector<int> perm(static_cast<std::size_t>(ell));
    for (int t = 0; t < ell; ++t) perm[static_cast<std::size_t>(t)] = t;
    SVecBuilder out;
    do {
        bool chain = true;
        for (int t = 0; t < ell && chain; ++t) {
            const auto& cur = letters[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])];
            if (t == 0 && cur[0] != i) chain = false;
            if (t + 1 < ell) {
                const auto& nxt =
                    letters[static_cast<std::size_t>(perm[static_cast<std::size_t>(t) + 1])];
                if (cur[1] != nxt[0]) chain = false;
            } else if (cur[1] != j) {
                chain = false;
            }
        }
        if (!chain) continue;
        Word bw;
        for (int t = 0; t < ell; ++t)
            bw.push_back(letters[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])][2]);
        out.add(c.bar.flat(ell, bw), Rat(perm_sign(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out.take();
}

// ε = Σ_{x,y} ε_{ρ(x),ρ(y)} ⊗ x ⊗ y on a wedge word, with
// ε_{ρ(x),ρ(y)} = (ε_{ρ_1(x), n+1-ρ_1(y)} ⊗ ... ) ∘ Δ^(m).
// Lands in T^m(bar) ⊗ V^α ⊗ V^β at degree |w|.
inline SVec epsilon_word(const LqtContext& c, const Word& w) {
    const int p = static_cast<int>(w.size());
    const int m = c.m();
    SVecBuilder out;
    if (m == 0) {
        if (p == 0) out.add(c.bsf.tc.flat(0, TensorTuple{{0, 0}}), Rat(1));
        return out.take();
    }
    if (p < m) return {};  // every bar factor needs at least one letter
    for (int x = 0; x < c.bsf.va.dim; ++x)
        for (int y = 0; y < c.bsf.vb.dim; ++y) {
            const Tableau& tx = c.bsf.va.tableaux[static_cast<std::size_t>(x)];
            const Tableau& ty = c.bsf.vb.tableaux[static_cast<std::size_t>(y)];
            std::vector<std::pair<int, int>> rc;  // (i_t, j_t) per factor
            for (int t = 1; t <= m; ++t)
                rc.emplace_back(tx.row_of(t), c.n + 1 - ty.row_of(t));
            detail::ordered_splittings(p, m, [&](const std::vector<std::vector<int>>& parts) {
                int base = unshuffle_sign(parts);
                std::vector<std::pair<TensorTuple, Rat>> acc{{TensorTuple{}, Rat(base)}};
                for (int t = 0; t < m && !acc.empty(); ++t) {
                    Word sub;
                    for (int pos : parts[static_cast<std::size_t>(t)])
                        sub.push_back(w[static_cast<std::size_t>(pos)]);
                    SVec ev = epsilon_ij_word(c, rc[static_cast<std::size_t>(t)].first,
                                              rc[static_cast<std::size_t>(t)].second, sub);
                    if (ev.empty()) {
                        acc.clear();
                        break;
                    }
                    int deg = static_cast<int>(sub.size());
                    std::vector<std::pair<TensorTuple, Rat>> next;
                    for (const auto& [tup, coeff] : acc)
                        for (const auto& [idx, v] : ev) {
                            TensorTuple nt = tup;
                            nt.emplace_back(deg, idx);
                            next.emplace_back(std::move(nt), coeff * v);
                        }
                    acc = std::move(next);
                }
                for (auto& [tup, coeff] : acc) {
                    tup.emplace_back(0, c.bsf.pair_index(x, y));
                    out.add(c.bsf.tc.flat(p, tup), coeff);
                }
            });
        }
    return out.take();
}

// φ' = (θ ⊗ ε) ∘ Δ on a wedge word; coordinates in R' at degree |w|.
inline SVec phi_prime_word(const LqtContext& c, const Word& w) {
    const int p = static_cast<int>(w.size());
    SVecBuilder out;
    const int k = p;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> left, right;
        for (int b = 0; b < k; ++b)
            (((mask >> b) & 1u) ? left : right).push_back(b);
        int sign = unshuffle_sign({left, right});
        Word wl, wr;
        for (int pos : left) wl.push_back(w[static_cast<std::size_t>(pos)]);
        for (int pos : right) wr.push_back(w[static_cast<std::size_t>(pos)]);
        SVec ev = epsilon_word(c, wr);
        if (ev.empty()) continue;
        SVec tv = theta_word(c, wl);
        if (tv.empty()) continue;
        int dl = static_cast<int>(wl.size()), dr = static_cast<int>(wr.size());
        for (const auto& [li, lc] : tv)
            for (const auto& [ri, rc2] : ev)
                out.add(c.rp.flat(p, TensorTuple{{dl, li}, {dr, ri}}),
                        Rat(sign) * lc * rc2);
    }
    return out.take();
}

inline SparseMat theta1_matrix(const LqtContext& c, int p) {
    SparseMat m(p >= 1 ? c.cyc.cx.dim(p - 1) : 0, c.ce.cx.dim(p));
    for (int col = 0; col < c.ce.cx.dim(p); ++col)
        for (const auto& [r, v] : theta1_word(c, c.ce.word(p, col))) m.add(r, col, v);
    return m;
}

inline SparseMat theta_matrix(const LqtContext& c, int p) {
    SparseMat m(c.lam.cx.dim(p), c.ce.cx.dim(p));
    for (int col = 0; col < c.ce.cx.dim(p); ++col)
        for (const auto& [r, v] : theta_word(c, c.ce.word(p, col))) m.add(r, col, v);
    return m;
}

inline SparseMat epsilon_ij_matrix(const LqtContext& c, int i, int j, int p) {
    SparseMat m(c.bar.cx.dim(p), c.ce.cx.dim(p));
    for (int col = 0; col < c.ce.cx.dim(p); ++col)
        for (const auto& [r, v] : epsilon_ij_word(c, i, j, c.ce.word(p, col))) m.add(r, col, v);
    return m;
}

inline SparseMat phi_prime_matrix(const LqtContext& c, int p) {
    SparseMat m(c.rp.cx.dim(p), c.ce.cx.dim(p));
    for (int col = 0; col < c.ce.cx.dim(p); ++col)
        for (const auto& [r, v] : phi_prime_word(c, c.ce.word(p, col))) m.add(r, col, v);
    return m;
}

// ---------------------------------------------------------------------------
// The reverse-direction maps.
// ---------------------------------------------------------------------------

// Wedge-valued vectors keyed by sorted generator words.
using WedgeVal = std::map<Word, Rat>;

inline void wedge_add(WedgeVal& acc, Word w, Rat coeff) {
    int s = sort_antisym(w);
    if (s == 0 || coeff == 0) return;
    Rat v = Rat(s) * coeff;
    auto it = acc.find(w);
    if (it == acc.end())
        acc.emplace(std::move(w), std::move(v));
    else {
        it->second += v;
        if (it->second == 0) acc.erase(it);
    }
}

inline WedgeVal wedge_mul(const WedgeVal& a, const WedgeVal& b) {
    WedgeVal out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            wedge_add(out, std::move(w), ca * cb);
        }
    return out;
}

// e_ij(a_1⊗...⊗a_ℓ) = Σ_{l_2..l_ℓ} e_{i,l_2}(a_1) ∧ ... ∧ e_{l_ℓ,j}(a_ℓ).
inline WedgeVal e_ij_wedge(const LqtContext& c, int i, int j, const Word& barword) {
    const int ell = static_cast<int>(barword.size());
    WedgeVal out;
    Word letters(static_cast<std::size_t>(ell));
    auto rec = [&](auto&& self, int t, int row) -> void {
        if (t == ell - 1) {
            letters[static_cast<std::size_t>(t)] =
                c.g.gen_index(row, j, barword[static_cast<std::size_t>(t)]);
            wedge_add(out, letters, Rat(1));
            return;
        }
        for (int l = 1; l <= c.n; ++l) {
            letters[static_cast<std::size_t>(t)] =
                c.g.gen_index(row, l, barword[static_cast<std::size_t>(t)]);
            self(self, t + 1, l);
        }
    };
    if (ell > 0) rec(rec, 0, i);
    return out;
}

// θ̂ on a cyclic generator: Σ_l e_{ll}(representative word).
inline WedgeVal theta_hat_letter(const LqtContext& c, int deg, int idx) {
    const Word& w = c.cyc.word(deg - 1, idx);
    WedgeVal out;
    for (int l = 1; l <= c.n; ++l)
        for (const auto& [word, coeff] : e_ij_wedge(c, l, l, w)) wedge_add(out, word, coeff);
    return out;
}

// ψ' = μ ∘ (θ̂ ⊗ ε̂) on an R' basis element; coordinates in C(gl_n A) at p.
inline SVec psi_prime_tuple(const LqtContext& c, int p, int rp_index) {
    const TensorTuple& top = c.rp.tuple(p, rp_index);
    const auto [dl, li] = top[0];
    const auto [dr, bi] = top[1];
    const Monomial& mon = c.lam.monomial(dl, li);

    WedgeVal acc;
    acc[Word{}] = Rat(1);
    for (const auto& [deg, idx] : mon) acc = wedge_mul(acc, theta_hat_letter(c, deg, idx));

    const TensorTuple& btup = c.bsf.tc.tuple(dr, bi);
    auto [x, y] = c.bsf.pair_decode(btup.back().second);
    const Tableau& tx = c.bsf.va.tableaux[static_cast<std::size_t>(x)];
    const Tableau& ty = c.bsf.vb.tableaux[static_cast<std::size_t>(y)];
    for (int t = 0; t < c.m(); ++t) {
        const auto [bdeg, bidx] = btup[static_cast<std::size_t>(t)];
        const Word& bw = c.bar.word(bdeg, bidx);
        acc = wedge_mul(acc, e_ij_wedge(c, tx.row_of(t + 1), c.n + 1 - ty.row_of(t + 1), bw));
    }

    SVecBuilder out;
    for (const auto& [word, coeff] : acc) out.add(c.ce.flat(p, word), coeff);
    return out.take();
}

inline SparseMat psi_prime_matrix(const LqtContext& c, int p) {
    SparseMat m(c.ce.cx.dim(p), c.rp.cx.dim(p));
    for (int col = 0; col < c.rp.cx.dim(p); ++col)
        for (const auto& [r, v] : psi_prime_tuple(c, p, col)) m.add(r, col, v);
    return m;
}

// θ̂ restricted to the generators C^λ A[-1] ⊂ Λ(C^λ A[-1]), as a matrix
// C^λ_{p-1} -> C_p(gl_n A). Used by the duality checks.
inline SparseMat theta_hat_gen_matrix(const LqtContext& c, int p) {
    SparseMat m(c.ce.cx.dim(p), p >= 1 ? c.cyc.cx.dim(p - 1) : 0);
    if (p < 1) return m;
    for (int col = 0; col < c.cyc.cx.dim(p - 1); ++col) {
        SVecBuilder b;
        for (const auto& [word, coeff] : theta_hat_letter(c, p, col))
            b.add(c.ce.flat(p, word), coeff);
        for (const auto& [r, v] : b.take()) m.add(r, col, v);
    }
    return m;
}

// N: scales a cyclic generator of word length ℓ by ℓ, extended as an algebra
// map. Diagonal on the monomial basis of Λ(C^λ A[-1]).
inline SparseMat n_scale_matrix(const LqtContext& c, int p) {
    SparseMat m(c.lam.cx.dim(p), c.lam.cx.dim(p));
    for (int i = 0; i < c.lam.cx.dim(p); ++i) {
        Rat f(1);
        for (const auto& [deg, idx] : c.lam.monomial(p, i)) f *= Rat(deg);
        m.add(i, i, f);
    }
    return m;
}

// (N ⊗ 1) on R'.
inline SparseMat n_tensor_one_matrix(const LqtContext& c, int p) {
    SparseMat m(c.rp.cx.dim(p), c.rp.cx.dim(p));
    for (int i = 0; i < c.rp.cx.dim(p); ++i) {
        const TensorTuple& t = c.rp.tuple(p, i);
        Rat f(1);
        for (const auto& [deg, idx] : c.lam.monomial(t[0].first, t[0].second)) f *= Rat(deg);
        m.add(i, i, f);
    }
    return m;
}

// The unshuffle coproduct of a wedge word: Δ(w) = Σ ± w_S ⊗ w_{S^c}.
inline std::vector<std::tuple<Word, Word, int>> coproduct_word(const Word& w) {
    const int p = static_cast<int>(w.size());
    std::vector<std::tuple<Word, Word, int>> out;
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
        std::vector<int> left, right;
        for (int b = 0; b < p; ++b) (((mask >> b) & 1u) ? left : right).push_back(b);
        int sign = unshuffle_sign({left, right});
        Word wl, wr;
        for (int pos : left) wl.push_back(w[static_cast<std::size_t>(pos)]);
        for (int pos : right) wr.push_back(w[static_cast<std::size_t>(pos)]);
        out.emplace_back(std::move(wl), std::move(wr), sign);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The target R(A) = Λ(C^λ A[-1]) ⊗ (T^m(bar) ⊗ V^α ⊗ V^β)^{Σ_m} and the
// restriction φ of φ' to the highest-weight subcomplex.
// ---------------------------------------------------------------------------

struct RTarget {
    std::vector<Subspace> inv;  // Σ_m-invariants of the bar/Specht factor per degree
    SubComplex binv;
    TensorComplex r;            // Λ(C^λ[-1]) ⊗ invariants
};

inline RTarget make_r_target(const LqtContext& c) {
    RTarget t;
    for (int p = 0; p <= c.pmax; ++p) t.inv.push_back(sigma_invariants(c.bsf, p));
    t.binv = subcomplex(c.bsf.tc.cx, t.inv);
    t.r = multi_tensor({&c.lam.cx, &t.binv.cx}, c.pmax);
    return t;
}

// Rewrites an R'-vector in R-coordinates; nullopt when some component is
// outside the invariants.
inline std::optional<SVec> rp_to_r(const LqtContext& c, const RTarget& t, int p,
                                   const SVec& v) {
    // group by (λ-degree, λ-index)
    std::map<std::pair<int, int>, SVec> by_lam;
    for (const auto& [flat, coeff] : v) {
        const TensorTuple& tup = c.rp.tuple(p, flat);
        by_lam[{tup[0].first, tup[0].second}].emplace_back(tup[1].second, coeff);
    }
    SVecBuilder out;
    for (auto& [lk, bvec] : by_lam) {
        int bdeg = p - lk.first;
        auto co = t.inv[static_cast<std::size_t>(bdeg)].coords(bvec);
        if (!co) return std::nullopt;
        for (std::size_t i = 0; i < co->size(); ++i) {
            if ((*co)[i] == 0) continue;
            out.add(t.r.flat(p, TensorTuple{{lk.first, lk.second},
                                            {bdeg, static_cast<int>(i)}}),
                    (*co)[i]);
        }
    }
    return out.take();
}

struct PhiBuild {
    std::shared_ptr<ChainComplex> M_cx;   // highest-weight subcomplex
    std::shared_ptr<ChainComplex> R_cx;   // invariant target
    SubComplex M;
    RTarget R;
    ChainMap phi;
    std::vector<int> source_dims, target_dims;
};

// Builds φ: M_{[α,β]_n} C(gl_n A) -> R(A) as a chain map, verifying along the
// way that the image of φ' lies in the Σ_m-invariants.
inline PhiBuild build_phi(const LqtContext& c) {
    GlAction act(c.ce);
    WeightLabel lbl(c.alpha, c.beta, c.n);
    std::vector<Subspace> mspaces;
    for (int p = 0; p <= c.pmax; ++p) mspaces.push_back(act.highest_weight_space(p, lbl));

    PhiBuild b;
    b.M = subcomplex(c.ce.cx, std::move(mspaces));
    b.R = make_r_target(c);
    b.M_cx = std::make_shared<ChainComplex>(b.M.cx);
    b.R_cx = std::make_shared<ChainComplex>(b.R.r.cx);

    b.phi.source = b.M_cx;
    b.phi.target = b.R_cx;
    for (int p = 0; p <= c.pmax; ++p) {
        SparseMat fp(b.R.r.cx.dim(p), b.M.cx.dim(p));
        for (int col = 0; col < b.M.cx.dim(p); ++col) {
            SVec ambient = b.M.embed(p, SVec{{col, Rat(1)}});
            SVecBuilder img;
            for (const auto& [widx, wc] : ambient)
                for (const auto& [r, v] : phi_prime_word(c, c.ce.word(p, widx)))
                    img.add(r, wc * v);
            auto rv = rp_to_r(c, b.R, p, img.take());
            if (!rv)
                throw InternalError("phi' image left the invariant subspace in degree " +
                                    std::to_string(p));
            for (const auto& [r, v] : *rv) fp.add(r, col, v);
        }
        b.phi.f.push_back(std::move(fp));
        b.source_dims.push_back(b.M.cx.dim(p));
        b.target_dims.push_back(b.R.r.cx.dim(p));
    }
    return b;
}

}  // namespace lqt
