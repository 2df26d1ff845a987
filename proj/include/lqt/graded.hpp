#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lqt/subspace.hpp"

namespace lqt {

// Graded vector space with a named basis per degree, truncated at pmax.
struct GradedSpace {
    int pmax = -1;
    std::vector<std::vector<std::string>> labels;  // [degree] -> basis labels

    GradedSpace() = default;
    explicit GradedSpace(int pmax_) : pmax(pmax_), labels(static_cast<std::size_t>(pmax_) + 1) {}

    int dim(int p) const {
        if (p < 0 || p > pmax) return 0;
        return static_cast<int>(labels[static_cast<std::size_t>(p)].size());
    }

    const std::string& label(int p, int i) const {
        return labels.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
    }

    void validate() const {
        for (const auto& deg : labels) {
            std::set<std::string> seen(deg.begin(), deg.end());
            if (seen.size() != deg.size())
                throw StructureError("duplicate basis label within a degree");
        }
    }
};

// Chain complex: graded space plus one boundary matrix per degree.
// d[p] maps degree p to degree p-1; d[0] has zero rows.
struct ChainComplex {
    GradedSpace space;
    std::vector<SparseMat> d;

    int pmax() const { return space.pmax; }
    int dim(int p) const { return space.dim(p); }

    void init_boundaries() {
        d.assign(static_cast<std::size_t>(space.pmax) + 1, SparseMat());
        for (int p = 0; p <= space.pmax; ++p)
            d[static_cast<std::size_t>(p)] = SparseMat(space.dim(p - 1), space.dim(p));
    }

    const SparseMat& boundary(int p) const { return d.at(static_cast<std::size_t>(p)); }

    void check_shapes() const {
        if (static_cast<int>(d.size()) != space.pmax + 1)
            throw StructureError("boundary count does not match truncation");
        for (int p = 0; p <= space.pmax; ++p) {
            const SparseMat& m = d[static_cast<std::size_t>(p)];
            if (m.cols() != space.dim(p) || m.rows() != space.dim(p - 1))
                throw StructureError("boundary shape mismatch in degree " + std::to_string(p));
        }
    }
};

inline ChainComplex zero_boundary_complex(GradedSpace space) {
    ChainComplex c;
    c.space = std::move(space);
    c.init_boundaries();
    return c;
}

struct ComplexFailure {
    int degree;  // d[degree-1] * d[degree] != 0
    int column;
    std::string label;
};

struct ComplexReport {
    bool ok = true;
    int pmax = -1;
    std::vector<ComplexFailure> failures;
};

// Exact check d∘d = 0 in every degree; failures pinpoint a basis element.
inline ComplexReport verify_complex(const ChainComplex& c) {
    c.check_shapes();
    ComplexReport rep;
    rep.pmax = c.pmax();
    for (int p = 2; p <= c.pmax(); ++p) {
        SparseMat prod = c.boundary(p - 1) * c.boundary(p);
        if (prod.is_zero()) continue;
        rep.ok = false;
        for (int col = 0; col < prod.cols(); ++col) {
            bool bad = false;
            for (int r = 0; r < prod.rows(); ++r)
                if (prod.entry(r, col) != 0) {
                    bad = true;
                    break;
                }
            if (bad) {
                rep.failures.push_back({p, col, c.space.label(p, col)});
                break;  // one witness per degree
            }
        }
    }
    return rep;
}

// Homology at degree p with canonical cycle representatives spanning a
// complement of the boundaries inside the cycles.
struct HomologyResult {
    int degree = 0;
    int dim = 0;
    int cycles_dim = 0;
    int boundaries_dim = 0;
    std::vector<SVec> reps;  // in degree-p coordinates
    Subspace cycles;
    Subspace boundaries;

    // Coordinates of a cycle's class in the chosen representatives.
    std::vector<Rat> class_coords(const SparseMat& combined, const SVec& v) const {
        auto sols = solve_against_rows(combined, {v});
        if (!sols[0])
            throw InternalError("vector is not a cycle of the recorded subspace");
        sols[0]->resize(static_cast<std::size_t>(dim));
        return *sols[0];
    }

    // Rows: representatives first, then a basis of the boundaries.
    SparseMat combined_basis() const {
        std::vector<SVec> rows = reps;
        for (int i = 0; i < boundaries.dim(); ++i) rows.push_back(boundaries.basis_vector(i));
        return SparseMat::from_rows(cycles.ambient(), rows);
    }
};

inline HomologyResult homology(const ChainComplex& c, int p) {
    if (p < 0) throw StructureError("negative degree");
    if (p + 1 > c.pmax())
        throw StructureError("homology at degree " + std::to_string(p) +
                             " needs boundaries up to degree " + std::to_string(p + 1) +
                             " but the complex is truncated at " + std::to_string(c.pmax()));
    // Local validity: d_p ∘ d_{p+1} = 0 (full validation is verify_complex).
    if (p >= 1 && !(c.boundary(p) * c.boundary(p + 1)).is_zero())
        throw StructureError("d∘d != 0 at degree " + std::to_string(p + 1));

    HomologyResult h;
    h.degree = p;
    h.cycles = (p == 0) ? Subspace::full(c.dim(0)) : kernel_subspace(c.boundary(p));
    h.boundaries = image_subspace(c.boundary(p + 1));
    h.cycles_dim = h.cycles.dim();
    h.boundaries_dim = h.boundaries.dim();
    h.dim = h.cycles_dim - h.boundaries_dim;

    // Greedy complement: keep cycle basis vectors independent of the
    // boundaries. Deterministic because the cycle basis is canonical.
    Rref acc = h.boundaries.rrefb();
    for (int i = 0; i < h.cycles.dim() && static_cast<int>(h.reps.size()) < h.dim; ++i) {
        SVec v = h.cycles.basis_vector(i);
        SVec red = rref_reduce(acc, v);
        if (red.empty()) continue;
        h.reps.push_back(v);
        std::vector<SVec> rows;
        for (int r = 0; r < acc.rank; ++r) rows.push_back(acc.mat.row(r));
        rows.push_back(red);
        acc = rref(SparseMat::from_rows(h.cycles.ambient(), rows));
    }
    if (static_cast<int>(h.reps.size()) != h.dim)
        throw InternalError("homology representative extraction failed");
    return h;
}

// Chain map between two complexes, one matrix per degree.
struct ChainMap {
    std::shared_ptr<const ChainComplex> source, target;
    std::vector<SparseMat> f;  // f[p]: source degree p -> target degree p

    int pmax() const {
        return std::min(source->pmax(), target->pmax());
    }
};

struct ChainMapFailure {
    int degree;
    int column;
    std::string label;
    SVec discrepancy;  // (f∘d - d∘f) applied to the basis element
};

struct ChainMapReport {
    bool ok = true;
    int pmax = -1;
    std::vector<ChainMapFailure> failures;
};

inline ChainMapReport verify_chain_map(const ChainMap& cm) {
    ChainMapReport rep;
    rep.pmax = cm.pmax();
    for (int p = 0; p <= rep.pmax; ++p) {
        const SparseMat& fp = cm.f.at(static_cast<std::size_t>(p));
        if (fp.cols() != cm.source->dim(p) || fp.rows() != cm.target->dim(p))
            throw StructureError("chain map shape mismatch in degree " + std::to_string(p));
        if (p == 0) continue;
        SparseMat lhs = cm.f.at(static_cast<std::size_t>(p - 1)) * cm.source->boundary(p);
        SparseMat rhs = cm.target->boundary(p) * fp;
        SparseMat diff = lhs - rhs;
        if (diff.is_zero()) continue;
        rep.ok = false;
        SparseMat diff_t = diff.transpose();
        for (int col = 0; col < diff.cols(); ++col) {
            if (!diff_t.row(col).empty()) {
                rep.failures.push_back(
                    {p, col, cm.source->space.label(p, col), diff_t.row(col)});
                break;
            }
        }
    }
    return rep;
}

// Matrix of the induced map on homology, in representative coordinates.
inline SparseMat induced_homology_matrix(const SparseMat& f_p, const HomologyResult& hsrc,
                                         const HomologyResult& htgt) {
    SparseMat combined = htgt.combined_basis();
    std::vector<SVec> images;
    for (const SVec& r : hsrc.reps) images.push_back(f_p.apply(r));
    auto sols = solve_against_rows(combined, images);
    SparseMat m(htgt.dim, hsrc.dim);
    for (std::size_t j = 0; j < images.size(); ++j) {
        if (!sols[j])
            throw InternalError("image of a cycle representative is not a target cycle");
        for (int r = 0; r < htgt.dim; ++r)
            m.add(r, static_cast<int>(j), (*sols[j])[static_cast<std::size_t>(r)]);
    }
    return m;
}

}  // namespace lqt
