#pragma once

#include <optional>
#include <vector>

#include "lqt/linalg.hpp"

namespace lqt {

// A subspace of Q^ambient, stored as a canonical reduced-echelon row basis.
// Two subspaces are equal iff their stored bases are identical.
class Subspace {
public:
    Subspace() : ambient_(0) {}

    static Subspace zero(int ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_.mat = SparseMat(0, ambient);
        return s;
    }

    static Subspace full(int ambient) {
        return from_rref(ambient, rref(SparseMat::identity(ambient)));
    }

    static Subspace span(int ambient, const std::vector<SVec>& gens) {
        return from_rref(ambient, rref(SparseMat::from_rows(ambient, gens)));
    }

    static Subspace from_rref(int ambient, Rref r) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = std::move(r);
        return s;
    }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rank; }
    const SparseMat& basis() const { return basis_.mat; }
    const Rref& rrefb() const { return basis_; }
    SVec basis_vector(int i) const { return basis_.mat.row(i); }

    bool contains(const SVec& v) const { return rref_reduce(basis_, v).empty(); }

    std::optional<std::vector<Rat>> coords(const SVec& v) const {
        return rref_express(basis_, v);
    }

    SVec reduce(const SVec& v) const { return rref_reduce(basis_, v); }

    Subspace sum(const Subspace& o) const {
        check_ambient(o);
        return from_rref(ambient_, rref(basis_.mat.vstack(o.basis_.mat)));
    }

    Subspace intersect(const Subspace& o) const {
        check_ambient(o);
        // Solutions (x, y) of x A - y B = 0 give the common vectors x A.
        const int a = dim(), b = o.dim();
        SparseMat m(ambient_, a + b);
        for (int r = 0; r < a; ++r)
            for (const auto& [c, v] : basis_.mat.row(r)) m.add(c, r, v);
        for (int r = 0; r < b; ++r)
            for (const auto& [c, v] : o.basis_.mat.row(r)) m.add(c, a + r, -v);
        Rref ker = kernel_basis(m);
        std::vector<SVec> gens;
        for (int i = 0; i < ker.rank; ++i) {
            SVec acc;
            for (const auto& [idx, v] : ker.mat.row(i))
                if (idx < a) acc = svec_add_scaled(acc, basis_.mat.row(idx), v);
            if (!acc.empty()) gens.push_back(std::move(acc));
        }
        return span(ambient_, gens);
    }

    bool contains_subspace(const Subspace& o) const {
        check_ambient(o);
        for (int i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.mat.row(i))) return false;
        return true;
    }

    bool equals(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_.mat == o.basis_.mat;
    }

    // dim(this / (this ∩ sub)).
    int quotient_dim(const Subspace& sub) const {
        check_ambient(sub);
        return dim() - intersect(sub).dim();
    }

private:
    void check_ambient(const Subspace& o) const {
        if (ambient_ != o.ambient_)
            throw StructureError("ambient dimension mismatch: " + std::to_string(ambient_) +
                                 " vs " + std::to_string(o.ambient_));
    }

    int ambient_;
    Rref basis_;
};

inline Subspace kernel_subspace(const SparseMat& m) {
    return Subspace::from_rref(m.cols(), kernel_basis(m));
}

inline Subspace image_subspace(const SparseMat& m) {
    return Subspace::from_rref(m.rows(), image_basis(m));
}

}  // namespace lqt
