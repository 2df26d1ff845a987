#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lqt/algebra.hpp"
#include "lqt/graded.hpp"
#include "lqt/koszul.hpp"

namespace lqt {

using Word = std::vector<int>;

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg complex of a matrix Lie algebra. Degree-p basis: sorted
// wedge words over the generators; boundary
//   ∂(g1∧...∧gp) = Σ_{i<j} (-1)^{i+j} [gi,gj] ∧ g1∧...ĝi...ĝj...∧gp.
// ---------------------------------------------------------------------------

struct CeComplex {
    MatrixLieAlgebra g;
    ChainComplex cx;
    std::vector<std::vector<Word>> words;       // [degree] -> sorted generator words
    std::vector<std::map<Word, int>> index;

    int flat(int p, const Word& w) const {
        const auto& m = index.at(static_cast<std::size_t>(p));
        auto it = m.find(w);
        if (it == m.end()) throw StructureError("wedge word not in basis");
        return it->second;
    }
    const Word& word(int p, int i) const {
        return words.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
    }

    // Class of an arbitrary generator sequence: (flat index, sign) or nullopt
    // when a generator repeats.
    std::optional<std::pair<int, int>> wedge_class(int p, Word w) const {
        int s = sort_antisym(w);
        if (s == 0) return std::nullopt;
        return std::make_pair(flat(p, w), s);
    }

    std::string word_label(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += " ^ ";
            s += g.gen_label(w[i]);
        }
        return s;
    }
};

inline CeComplex chevalley_eilenberg(const MatrixLieAlgebra& g, int pmax) {
    CeComplex ce;
    ce.g = g;
    ce.cx.space = GradedSpace(pmax);
    ce.words.assign(static_cast<std::size_t>(pmax) + 1, {});
    ce.index.assign(static_cast<std::size_t>(pmax) + 1, {});

    const int N = g.dim();
    Word cur;
    auto rec = [&](auto&& self, int next, int p) -> void {
        ce.index[static_cast<std::size_t>(p)][cur] =
            static_cast<int>(ce.words[static_cast<std::size_t>(p)].size());
        ce.words[static_cast<std::size_t>(p)].push_back(cur);
        ce.cx.space.labels[static_cast<std::size_t>(p)].push_back(ce.word_label(cur));
        if (p == pmax) return;
        for (int gidx = next; gidx < N; ++gidx) {
            cur.push_back(gidx);
            self(self, gidx + 1, p + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);

    ce.cx.init_boundaries();
    for (int p = 2; p <= pmax; ++p) {
        const auto& wp = ce.words[static_cast<std::size_t>(p)];
        for (std::size_t col = 0; col < wp.size(); ++col) {
            const Word& w = wp[col];
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j) {
                    int lead =
                        (((i + 1) + (j + 1)) % 2 == 0) ? 1 : -1;  // (-1)^{i+j}, 1-based
                    SVec br = g.bracket_gens(w[static_cast<std::size_t>(i)],
                                             w[static_cast<std::size_t>(j)]);
                    if (br.empty()) continue;
                    Word rest;
                    for (int t = 0; t < p; ++t)
                        if (t != i && t != j) rest.push_back(w[static_cast<std::size_t>(t)]);
                    for (const auto& [gnew, c] : br) {
                        Word nw = rest;
                        nw.insert(nw.begin(), gnew);
                        int s = sort_antisym(nw);
                        if (s == 0) continue;
                        ce.cx.d[static_cast<std::size_t>(p)].add(
                            ce.flat(p - 1, nw), static_cast<int>(col), Rat(lead * s) * c);
                    }
                }
        }
    }
    return ce;
}

// ---------------------------------------------------------------------------
// Connes cyclic complex. Degree-p basis: canonical representatives of tensor
// words of length p+1 under the signed cyclic action; the generator rotates
// the last letter to the front with sign (-1)^p. Orbits forced to cancel
// ([w] = -[w]) are dropped.
// ---------------------------------------------------------------------------

struct CyclicComplex {
    StructAlgebra a;
    ChainComplex cx;
    std::vector<std::vector<Word>> words;  // canonical representatives per degree
    std::vector<std::map<Word, int>> index;

    // Canonical representative of the signed cyclic class of w: the smallest
    // rotation, with the sign relating [w] to [rep]. nullopt when the class
    // collapses ([w] = -[w]).
    static std::optional<std::pair<Word, int>> canonical(const Word& w) {
        const int len = static_cast<int>(w.size());
        const int rot_sign = (len % 2 == 1) ? 1 : -1;  // one rotation contributes (-1)^(len-1)
        Word best = w;
        {
            Word cur = w;
            for (int k = 1; k < len; ++k) {
                std::rotate(cur.rbegin(), cur.rbegin() + 1, cur.rend());
                if (cur < best) best = cur;
            }
        }
        // signs with which the orbit reaches `best`; two signs kill the class
        Word cur = w;
        int sign = 1, seen = (cur == best) ? 1 : 0;
        for (int k = 1; k < len; ++k) {
            std::rotate(cur.rbegin(), cur.rbegin() + 1, cur.rend());
            sign *= rot_sign;
            if (cur == best) {
                if (seen == 0)
                    seen = sign;
                else if (seen != sign)
                    return std::nullopt;
            }
        }
        return std::make_pair(best, seen);
    }

    // (flat index, sign) of the class of an arbitrary word, or nullopt if zero.
    std::optional<std::pair<int, int>> class_of(const Word& w) const {
        auto c = canonical(w);
        if (!c) return std::nullopt;
        int p = static_cast<int>(w.size()) - 1;
        return std::make_pair(index.at(static_cast<std::size_t>(p)).at(c->first), c->second);
    }

    const Word& word(int p, int i) const {
        return words.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
    }

    std::string word_label(const Word& w) const {
        std::string s = "[";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += "|";
            s += a.basis[static_cast<std::size_t>(w[i])];
        }
        return s + "]";
    }
};

inline CyclicComplex connes_complex(const StructAlgebra& a, int pmax) {
    CyclicComplex cc;
    cc.a = a;
    cc.cx.space = GradedSpace(pmax);
    cc.words.assign(static_cast<std::size_t>(pmax) + 1, {});
    cc.index.assign(static_cast<std::size_t>(pmax) + 1, {});

    for (int p = 0; p <= pmax; ++p) {
        Word w(static_cast<std::size_t>(p) + 1, 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == p + 1) {
                auto c = CyclicComplex::canonical(w);
                if (c && c->first == w && c->second == 1 &&
                    !cc.index[static_cast<std::size_t>(p)].count(w)) {
                    cc.index[static_cast<std::size_t>(p)][w] =
                        static_cast<int>(cc.words[static_cast<std::size_t>(p)].size());
                    cc.words[static_cast<std::size_t>(p)].push_back(w);
                    cc.cx.space.labels[static_cast<std::size_t>(p)].push_back(cc.word_label(w));
                }
                return;
            }
            for (int i = 0; i < a.dim; ++i) {
                w[static_cast<std::size_t>(pos)] = i;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }

    cc.cx.init_boundaries();
    for (int p = 1; p <= pmax; ++p) {
        const auto& wp = cc.words[static_cast<std::size_t>(p)];
        for (std::size_t col = 0; col < wp.size(); ++col) {
            const Word& w = wp[col];
            // b([a0 ⊗ ... ⊗ ap]) = Σ_{i<p} (-1)^i [... a_i a_{i+1} ...]
            //                      + (-1)^p [a_p a_0 ⊗ a_1 ... a_{p-1}]
            for (int i = 0; i < p; ++i) {
                int lead = (i % 2 == 0) ? 1 : -1;
                for (const auto& [s, c] :
                     a.product(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i) + 1])) {
                    Word nw;
                    for (int t = 0; t <= p; ++t) {
                        if (t == i)
                            nw.push_back(s);
                        else if (t != i + 1)
                            nw.push_back(w[static_cast<std::size_t>(t)]);
                    }
                    if (auto cl = cc.class_of(nw))
                        cc.cx.d[static_cast<std::size_t>(p)].add(
                            cl->first, static_cast<int>(col), Rat(lead * cl->second) * c);
                }
            }
            {
                int lead = (p % 2 == 0) ? 1 : -1;
                for (const auto& [s, c] :
                     a.product(w[static_cast<std::size_t>(p)], w[0])) {
                    Word nw;
                    nw.push_back(s);
                    for (int t = 1; t < p; ++t) nw.push_back(w[static_cast<std::size_t>(t)]);
                    if (auto cl = cc.class_of(nw))
                        cc.cx.d[static_cast<std::size_t>(p)].add(
                            cl->first, static_cast<int>(col), Rat(lead * cl->second) * c);
                }
            }
        }
    }
    return cc;
}

// ---------------------------------------------------------------------------
// Bar complex (T^+A, b'). Degree-p basis: all tensor words of length p >= 1;
//   b'(a1⊗...⊗ap) = Σ_{i=1}^{p-1} (-1)^(i-1) a1⊗...⊗(a_i a_{i+1})⊗...⊗ap.
// ---------------------------------------------------------------------------

struct BarComplex {
    StructAlgebra a;
    ChainComplex cx;
    std::vector<std::vector<Word>> words;
    std::vector<std::map<Word, int>> index;

    int flat(int p, const Word& w) const {
        return index.at(static_cast<std::size_t>(p)).at(w);
    }
    const Word& word(int p, int i) const {
        return words.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
    }
    std::string word_label(const Word& w) const {
        std::string s = "(";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += "|";
            s += a.basis[static_cast<std::size_t>(w[i])];
        }
        return s + ")";
    }
};

inline BarComplex bar_complex(const StructAlgebra& a, int pmax) {
    BarComplex bc;
    bc.a = a;
    bc.cx.space = GradedSpace(pmax);
    bc.words.assign(static_cast<std::size_t>(pmax) + 1, {});
    bc.index.assign(static_cast<std::size_t>(pmax) + 1, {});

    for (int p = 1; p <= pmax; ++p) {
        Word w(static_cast<std::size_t>(p), 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == p) {
                bc.index[static_cast<std::size_t>(p)][w] =
                    static_cast<int>(bc.words[static_cast<std::size_t>(p)].size());
                bc.words[static_cast<std::size_t>(p)].push_back(w);
                bc.cx.space.labels[static_cast<std::size_t>(p)].push_back(bc.word_label(w));
                return;
            }
            for (int i = 0; i < a.dim; ++i) {
                w[static_cast<std::size_t>(pos)] = i;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }

    bc.cx.init_boundaries();
    for (int p = 2; p <= pmax; ++p) {
        const auto& wp = bc.words[static_cast<std::size_t>(p)];
        for (std::size_t col = 0; col < wp.size(); ++col) {
            const Word& w = wp[col];
            for (int i = 0; i + 1 < p; ++i) {
                int lead = (i % 2 == 0) ? 1 : -1;  // (-1)^(i-1) with 1-based i
                for (const auto& [s, c] :
                     a.product(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i) + 1])) {
                    Word nw;
                    for (int t = 0; t < p; ++t) {
                        if (t == i)
                            nw.push_back(s);
                        else if (t != i + 1)
                            nw.push_back(w[static_cast<std::size_t>(t)]);
                    }
                    bc.cx.d[static_cast<std::size_t>(p)].add(bc.flat(p - 1, nw),
                                                             static_cast<int>(col),
                                                             Rat(lead) * c);
                }
            }
        }
    }
    return bc;
}

// ---------------------------------------------------------------------------
// Bar homology across the levels of a pro-algebra, as an inverse system.
// ---------------------------------------------------------------------------

// Chain map induced on tensor words by a linear map of coefficient spaces.
inline SparseMat word_map_matrix(const SparseMat& sigma, const std::vector<Word>& src,
                                 const std::map<Word, int>& tgt_index, int tgt_dim) {
    SparseMat m(tgt_dim, static_cast<int>(src.size()));
    for (std::size_t col = 0; col < src.size(); ++col) {
        const Word& w = src[col];
        // image = ⊗_t sigma(e_{w_t}); expand multilinearly
        std::vector<std::pair<Word, Rat>> acc{{Word{}, Rat(1)}};
        for (int letter : w) {
            std::vector<std::pair<Word, Rat>> next;
            SVec img = sigma.apply(SVec{{letter, Rat(1)}});
            for (const auto& [pw, pc] : acc)
                for (const auto& [s, c] : img) {
                    Word nw = pw;
                    nw.push_back(s);
                    next.emplace_back(std::move(nw), pc * c);
                }
            acc = std::move(next);
        }
        for (const auto& [nw, c] : acc) m.add(tgt_index.at(nw), static_cast<int>(col), c);
    }
    return m;
}

struct BarProSystem {
    int r = 0;
    ProVect homology;                       // dims + induced maps in rep coordinates
    std::vector<HomologyResult> levels;     // per level, for witnesses
};

inline BarProSystem bar_homology_pro_system(const ProAlgebra& p, int r) {
    BarProSystem sys;
    sys.r = r;
    std::vector<BarComplex> bars;
    for (const auto& lv : p.levels) bars.push_back(bar_complex(lv, r + 1));
    for (const auto& b : bars) sys.levels.push_back(homology(b.cx, r));
    for (const auto& h : sys.levels) sys.homology.dims.push_back(h.dim);
    for (int i = 0; i + 1 < p.window; ++i) {
        const BarComplex& hi = bars[static_cast<std::size_t>(i) + 1];
        const BarComplex& lo = bars[static_cast<std::size_t>(i)];
        SparseMat f_r = word_map_matrix(p.maps[static_cast<std::size_t>(i)],
                                        hi.words[static_cast<std::size_t>(r)],
                                        lo.index[static_cast<std::size_t>(r)], lo.cx.dim(r));
        sys.homology.maps.push_back(induced_homology_matrix(
            f_r, sys.levels[static_cast<std::size_t>(i) + 1],
            sys.levels[static_cast<std::size_t>(i)]));
    }
    return sys;
}

// For each 1 <= r <= rmax: is the bar-homology system pro-zero in the window?
inline std::vector<ProDecision> h_unital_check_pro(const ProAlgebra& p, int rmax) {
    std::vector<ProDecision> out;
    for (int r = 1; r <= rmax; ++r)
        out.push_back(is_pro_zero(bar_homology_pro_system(p, r).homology));
    return out;
}

}  // namespace lqt
