#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqt/subspace.hpp"

namespace lqt {

using Json = nlohmann::ordered_json;

// Finite-dimensional associative (not necessarily unital) algebra given by
// structure constants: e_i * e_j = Σ_s c_{ij}^s e_s.
struct StructAlgebra {
    std::string name;
    int dim = 0;
    std::vector<std::string> basis;
    std::vector<std::vector<SVec>> mult;  // mult[i][j] = product as sparse vector

    const SVec& product(int i, int j) const {
        return mult.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
    }

    // Bilinear extension of the basis products.
    SVec multiply(const SVec& x, const SVec& y) const {
        SVecBuilder b;
        for (const auto& [i, xi] : x)
            for (const auto& [j, yj] : y)
                for (const auto& [s, c] : product(i, j)) b.add(s, xi * yj * c);
        return b.take();
    }
};

struct AssociativityReport {
    bool ok = true;
    // witness (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k)
    std::optional<std::array<int, 3>> witness;
};

inline AssociativityReport check_associativity(const StructAlgebra& a) {
    AssociativityReport rep;
    for (int i = 0; i < a.dim && rep.ok; ++i)
        for (int j = 0; j < a.dim && rep.ok; ++j)
            for (int k = 0; k < a.dim && rep.ok; ++k) {
                SVec ei{{i, Rat(1)}}, ej{{j, Rat(1)}}, ek{{k, Rat(1)}};
                SVec lhs = a.multiply(a.multiply(ei, ej), ek);
                SVec rhs = a.multiply(ei, a.multiply(ej, ek));
                if (svec_add_scaled(lhs, rhs, Rat(-1)) != SVec{}) {
                    rep.ok = false;
                    rep.witness = {{i, j, k}};
                }
            }
    return rep;
}

// gl_n over a structure-constant algebra. Generators are e_{ij} ⊗ a_s with
// 1 <= i,j <= n, indexed as ((i-1)*n + (j-1))*dimA + s.
struct MatrixLieAlgebra {
    int n = 0;
    StructAlgebra coeff;

    int dim() const { return n * n * coeff.dim; }

    int gen_index(int i, int j, int s) const {
        return ((i - 1) * n + (j - 1)) * coeff.dim + s;
    }
    // returns (i, j, s), 1-based matrix indices
    std::array<int, 3> gen_decode(int g) const {
        int s = g % coeff.dim;
        int ij = g / coeff.dim;
        return {ij / n + 1, ij % n + 1, s};
    }
    std::string gen_label(int g) const {
        auto [i, j, s] = gen_decode(g);
        return "e[" + std::to_string(i) + "," + std::to_string(j) + "](" +
               coeff.basis[static_cast<std::size_t>(s)] + ")";
    }

    // [e_{ij}⊗a, e_{kl}⊗b] = δ_{jk} e_{il}⊗ab − δ_{li} e_{kj}⊗ba
    SVec bracket_gens(int g1, int g2) const {
        auto [i, j, s] = gen_decode(g1);
        auto [k, l, t] = gen_decode(g2);
        SVecBuilder out;
        if (j == k)
            for (const auto& [u, c] : coeff.product(s, t)) out.add(gen_index(i, l, u), c);
        if (l == i)
            for (const auto& [u, c] : coeff.product(t, s)) out.add(gen_index(k, j, u), -c);
        return out.take();
    }

    SVec bracket(const SVec& x, const SVec& y) const {
        SVecBuilder out;
        for (const auto& [g1, a] : x)
            for (const auto& [g2, b] : y)
                for (const auto& [g, c] : bracket_gens(g1, g2)) out.add(g, a * b * c);
        return out.take();
    }
};

inline MatrixLieAlgebra matrix_lie_algebra(const StructAlgebra& a, int n) {
    if (n < 1) throw StructureError("matrix size must be positive");
    auto rep = check_associativity(a);
    if (!rep.ok) {
        auto [i, j, k] = *rep.witness;
        throw StructureError("structure constants are not associative at triple (" +
                             std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ")");
    }
    return MatrixLieAlgebra{n, a};
}

// Finite window of an inverse system of algebras. levels[0] = A_1;
// maps[i] is the connecting homomorphism A_{i+2} -> A_{i+1}.
struct ProAlgebra {
    std::string name;
    int window = 0;
    std::vector<StructAlgebra> levels;
    std::vector<SparseMat> maps;

    void validate() const {
        if (window < 1 || static_cast<int>(levels.size()) != window ||
            static_cast<int>(maps.size()) != window - 1)
            throw StructureError("pro-algebra window/levels/maps mismatch");
        for (int i = 0; i + 1 < window; ++i) {
            const StructAlgebra& hi = levels[static_cast<std::size_t>(i) + 1];
            const StructAlgebra& lo = levels[static_cast<std::size_t>(i)];
            const SparseMat& s = maps[static_cast<std::size_t>(i)];
            if (s.rows() != lo.dim || s.cols() != hi.dim)
                throw StructureError("connecting map shape mismatch at level " +
                                     std::to_string(i + 2));
            for (int x = 0; x < hi.dim; ++x)
                for (int y = 0; y < hi.dim; ++y) {
                    SVec sx = s.apply(SVec{{x, Rat(1)}});
                    SVec sy = s.apply(SVec{{y, Rat(1)}});
                    SVec lhs = s.apply(hi.product(x, y));
                    SVec rhs = lo.multiply(sx, sy);
                    if (svec_add_scaled(lhs, rhs, Rat(-1)) != SVec{})
                        throw StructureError(
                            "connecting map is not multiplicative at level " +
                            std::to_string(i + 2) + " on basis pair (" + std::to_string(x) +
                            "," + std::to_string(y) + ")");
                }
        }
    }
};

// Composite connecting map A_m -> A_n (1-based levels, n <= m).
inline SparseMat pro_composite(const ProAlgebra& p, int n, int m) {
    if (n < 1 || m > p.window || n > m)
        throw StructureError("pro_composite indices out of window");
    SparseMat acc = SparseMat::identity(p.levels[static_cast<std::size_t>(n) - 1].dim);
    for (int l = n; l < m; ++l) acc = acc * p.maps[static_cast<std::size_t>(l) - 1];
    return acc;
}

// Inverse system of plain vector spaces (dimensions and connecting maps).
struct ProVect {
    std::vector<int> dims;
    std::vector<SparseMat> maps;  // maps[i]: level i+2 -> level i+1

    int window() const { return static_cast<int>(dims.size()); }

    SparseMat composite(int n, int m) const {
        if (n < 1 || m > window() || n > m) throw StructureError("composite out of window");
        SparseMat acc = SparseMat::identity(dims[static_cast<std::size_t>(n) - 1]);
        for (int l = n; l < m; ++l) acc = acc * maps[static_cast<std::size_t>(l) - 1];
        return acc;
    }
};

enum class ProDecision { Zero, NotDecidedInWindow };

inline const char* pro_decision_str(ProDecision d) {
    return d == ProDecision::Zero ? "ZERO" : "NOT-DECIDED-IN-WINDOW";
}

// Within the window: Zero iff every level is killed by some composite
// connecting map that the window can see. Never claims nonzero globally.
inline ProDecision is_pro_zero(const ProVect& v) {
    for (int n = 1; n <= v.window(); ++n) {
        bool killed = false;
        for (int m = n; m <= v.window() && !killed; ++m)
            if (v.composite(n, m).is_zero()) killed = true;
        if (!killed) return ProDecision::NotDecidedInWindow;
    }
    return ProDecision::Zero;
}

// ---------------------------------------------------------------------------
// JSON formats.
// Algebra:     {"dim": D, "basis": [names], "mult": [[i, j, s, "p/q"], ...]}
// ProAlgebra:  {"window": N, "levels": [algebra...], "maps": [[[r, c, "p/q"], ...], ...]}
// ---------------------------------------------------------------------------

inline StructAlgebra algebra_from_json(const Json& j) {
    StructAlgebra a;
    if (!j.is_object() || !j.contains("dim") || !j.contains("basis") || !j.contains("mult"))
        throw InputError("algebra JSON needs fields dim, basis, mult");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 0)
        throw InputError("algebra dim must be a nonnegative integer");
    a.dim = j["dim"].get<int>();
    if (!j["basis"].is_array() || static_cast<int>(j["basis"].size()) != a.dim)
        throw InputError("algebra basis must list exactly dim names");
    for (const auto& b : j["basis"]) a.basis.push_back(b.get<std::string>());
    a.mult.assign(static_cast<std::size_t>(a.dim),
                  std::vector<SVec>(static_cast<std::size_t>(a.dim)));
    if (!j["mult"].is_array()) throw InputError("algebra mult must be an array");
    std::vector<std::vector<SVecBuilder>> acc(
        static_cast<std::size_t>(a.dim), std::vector<SVecBuilder>(static_cast<std::size_t>(a.dim)));
    for (const auto& e : j["mult"]) {
        if (!e.is_array() || e.size() != 4) throw InputError("mult entries are [i, j, s, \"p/q\"]");
        int i = e[0].get<int>(), jj = e[1].get<int>(), s = e[2].get<int>();
        if (i < 0 || i >= a.dim || jj < 0 || jj >= a.dim || s < 0 || s >= a.dim)
            throw InputError("mult entry index out of range");
        acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)].add(
            s, rat_parse(e[3].get<std::string>()));
    }
    for (int i = 0; i < a.dim; ++i)
        for (int jj = 0; jj < a.dim; ++jj)
            a.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] =
                acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)].take();
    if (j.contains("name")) a.name = j["name"].get<std::string>();
    return a;
}

inline Json algebra_to_json(const StructAlgebra& a) {
    Json j;
    if (!a.name.empty()) j["name"] = a.name;
    j["dim"] = a.dim;
    j["basis"] = a.basis;
    Json mult = Json::array();
    for (int i = 0; i < a.dim; ++i)
        for (int jj = 0; jj < a.dim; ++jj)
            for (const auto& [s, c] : a.product(i, jj))
                mult.push_back(Json::array({i, jj, s, rat_str(c)}));
    j["mult"] = mult;
    return j;
}

inline ProAlgebra pro_algebra_from_json(const Json& j) {
    ProAlgebra p;
    if (!j.is_object() || !j.contains("window") || !j.contains("levels") || !j.contains("maps"))
        throw InputError("pro-algebra JSON needs fields window, levels, maps");
    p.window = j["window"].get<int>();
    for (const auto& lv : j["levels"]) p.levels.push_back(algebra_from_json(lv));
    for (std::size_t i = 0; i < j["maps"].size(); ++i) {
        const auto& mj = j["maps"][i];
        if (i + 1 >= p.levels.size()) throw InputError("too many connecting maps");
        SparseMat m(p.levels[i].dim, p.levels[i + 1].dim);
        for (const auto& e : mj) {
            if (!e.is_array() || e.size() != 3) throw InputError("map entries are [r, c, \"p/q\"]");
            m.add(e[0].get<int>(), e[1].get<int>(), rat_parse(e[2].get<std::string>()));
        }
        p.maps.push_back(std::move(m));
    }
    if (j.contains("name")) p.name = j["name"].get<std::string>();
    p.validate();
    return p;
}

inline Json pro_algebra_to_json(const ProAlgebra& p) {
    Json j;
    if (!p.name.empty()) j["name"] = p.name;
    j["window"] = p.window;
    Json levels = Json::array();
    for (const auto& a : p.levels) levels.push_back(algebra_to_json(a));
    j["levels"] = levels;
    Json maps = Json::array();
    for (const auto& m : p.maps) {
        Json entries = Json::array();
        for (int r = 0; r < m.rows(); ++r)
            for (const auto& [c, v] : m.row(r)) entries.push_back(Json::array({r, c, rat_str(v)}));
        maps.push_back(entries);
    }
    j["maps"] = maps;
    return j;
}

// ---------------------------------------------------------------------------
// Named test algebras. Random structure constants rarely associate, so the
// corpus is fixed; fuzzing happens on map coefficients, not on algebras.
// ---------------------------------------------------------------------------

inline StructAlgebra make_field_k() {
    StructAlgebra a;
    a.name = "k";
    a.dim = 1;
    a.basis = {"1"};
    a.mult = {{SVec{{0, Rat(1)}}}};
    return a;
}

// u*u = u, u*v = v, v*u = 0, v*v = 0 (associative, noncommutative, nonunital).
inline StructAlgebra make_uv() {
    StructAlgebra a;
    a.name = "uv";
    a.dim = 2;
    a.basis = {"u", "v"};
    a.mult.assign(2, std::vector<SVec>(2));
    a.mult[0][0] = SVec{{0, Rat(1)}};
    a.mult[0][1] = SVec{{1, Rat(1)}};
    return a;
}

inline StructAlgebra make_zero_mult(int dim) {
    StructAlgebra a;
    a.name = "zero" + std::to_string(dim);
    a.dim = dim;
    for (int i = 0; i < dim; ++i) a.basis.push_back("z" + std::to_string(i + 1));
    a.mult.assign(static_cast<std::size_t>(dim), std::vector<SVec>(static_cast<std::size_t>(dim)));
    return a;
}

// Maximal ideal of the dual numbers: one generator t with t*t = 0.
inline StructAlgebra make_dual_numbers_ideal() {
    StructAlgebra a = make_zero_mult(1);
    a.name = "dualnum";
    a.basis = {"t"};
    return a;
}

// span{t, t2} with t*t = t2 and every other product zero; A^3 = 0.
inline StructAlgebra make_nilpotent_t() {
    StructAlgebra a;
    a.name = "nilp";
    a.dim = 2;
    a.basis = {"t", "t2"};
    a.mult.assign(2, std::vector<SVec>(2));
    a.mult[0][0] = SVec{{1, Rat(1)}};
    return a;
}

inline ProAlgebra make_pro_constant(const StructAlgebra& a, int window) {
    ProAlgebra p;
    p.name = "const_" + a.name;
    p.window = window;
    for (int i = 0; i < window; ++i) p.levels.push_back(a);
    for (int i = 0; i + 1 < window; ++i) p.maps.push_back(SparseMat::identity(a.dim));
    p.validate();
    return p;
}

// The powers pro-algebra {A^{n}}_n with inclusions A^{n+1} ⊆ A^n.
// Level j is the subalgebra A^j realized on a canonical echelon basis.
inline ProAlgebra make_powers_pro(const StructAlgebra& a, int window) {
    ProAlgebra p;
    p.name = "powers_" + a.name;
    p.window = window;

    std::vector<Subspace> powers;  // powers[j] = A^{j+1} inside A
    powers.push_back(Subspace::full(a.dim));
    for (int j = 1; j < window; ++j) {
        std::vector<SVec> gens;
        const Subspace& prev = powers.back();
        for (int i = 0; i < a.dim; ++i)
            for (int r = 0; r < prev.dim(); ++r) {
                SVec v = a.multiply(SVec{{i, Rat(1)}}, prev.basis_vector(r));
                if (!v.empty()) gens.push_back(std::move(v));
            }
        powers.push_back(Subspace::span(a.dim, gens));
    }

    for (int j = 0; j < window; ++j) {
        const Subspace& s = powers[static_cast<std::size_t>(j)];
        StructAlgebra lv;
        lv.name = a.name + "^" + std::to_string(j + 1);
        lv.dim = s.dim();
        for (int i = 0; i < lv.dim; ++i) lv.basis.push_back("p" + std::to_string(i));
        lv.mult.assign(static_cast<std::size_t>(lv.dim),
                       std::vector<SVec>(static_cast<std::size_t>(lv.dim)));
        for (int x = 0; x < lv.dim; ++x)
            for (int y = 0; y < lv.dim; ++y) {
                SVec prod = a.multiply(s.basis_vector(x), s.basis_vector(y));
                auto co = s.coords(prod);
                if (!co) throw InternalError("power subspace is not multiplicatively closed");
                SVecBuilder b;
                for (std::size_t t = 0; t < co->size(); ++t) b.add(static_cast<int>(t), (*co)[t]);
                lv.mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = b.take();
            }
        p.levels.push_back(std::move(lv));
    }
    for (int j = 0; j + 1 < window; ++j) {
        const Subspace& lo = powers[static_cast<std::size_t>(j)];
        const Subspace& hi = powers[static_cast<std::size_t>(j) + 1];
        SparseMat m(lo.dim(), hi.dim());
        for (int c = 0; c < hi.dim(); ++c) {
            auto co = lo.coords(hi.basis_vector(c));
            if (!co) throw InternalError("power subspaces are not nested");
            for (std::size_t r = 0; r < co->size(); ++r) m.add(static_cast<int>(r), c, (*co)[r]);
        }
        p.maps.push_back(std::move(m));
    }
    p.validate();
    return p;
}

}  // namespace lqt
