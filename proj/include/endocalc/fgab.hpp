#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "endocalc/matrix.hpp"

namespace endocalc {

// A finitely generated abelian group in invariant-factor form:
// Z^free_rank  x  Z/d_1 x ... x Z/d_k  with  d_1 | d_2 | ... | d_k, d_i >= 2.
// Elements are integer coordinate vectors of length free_rank + k; torsion
// coordinates are taken modulo their factor. The group is presented as
// Z^n / R with R the relation lattice spanned by the columns d_i e_{r+i}.
class FgAbGroup {
public:
    FgAbGroup(int free_rank, std::vector<Int> torsion_factors);

    int free_rank() const { return d_->free_rank; }
    const std::vector<Int>& torsion_factors() const { return d_->torsion; }
    std::size_t coords() const { return d_->coords; }
    bool is_finite() const { return d_->free_rank == 0; }
    Int torsion_order() const;
    Int order() const;  // throws PreconditionError when infinite

    // Relation lattice R as an n x k column matrix.
    const IntMat& relation_cols() const { return d_->relation_cols; }

    // Canonical representative: torsion coordinates reduced into [0, d_i).
    Vec reduce(Vec v) const;
    bool is_zero(const Vec& v) const;

    // Every element of the group, in lexicographic order of reduced
    // coordinates; finite groups only, subject to the torsion cap.
    std::vector<Vec> elements() const;

    bool operator==(const FgAbGroup& o) const {
        return d_ == o.d_ || (d_->free_rank == o.d_->free_rank && d_->torsion == o.d_->torsion);
    }
    bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    struct Data {
        int free_rank;
        std::vector<Int> torsion;
        std::size_t coords;
        IntMat relation_cols;
    };
    std::shared_ptr<const Data> d_;
};

// A subgroup of an ambient FgAbGroup, represented by the canonical column
// HNF basis of its cover lattice in Z^n (which always contains the relation
// lattice). Two subgroups are equal iff their basis matrices are identical.
class Subgroup {
public:
    static Subgroup from_columns(const FgAbGroup& ambient, const IntMat& element_cols);
    static Subgroup from_elements(const FgAbGroup& ambient, const std::vector<Vec>& elems);
    static Subgroup zero(const FgAbGroup& ambient);
    static Subgroup full(const FgAbGroup& ambient);
    static Subgroup torsion(const FgAbGroup& ambient);
    // Subgroup of A x A (or any group whose coordinates split) from a raw
    // cover lattice already containing the relation lattice.
    static Subgroup from_cover_lattice(const FgAbGroup& ambient, IntMat cover);

    const FgAbGroup& ambient() const { return ambient_; }
    const IntMat& basis() const { return basis_; }

    // Free rank of the subgroup itself (not of the cover lattice).
    int rank() const;
    // |ambient : this| when finite.
    std::optional<Int> index() const;
    bool is_finite() const { return rank() == 0; }
    bool is_zero() const;
    bool is_full() const;
    // Order of the subgroup when finite.
    Int order() const;

    bool contains(const Vec& element) const;
    bool contains(const Subgroup& other) const;

    // Elements of a finite subgroup, reduced, lexicographic order.
    std::vector<Vec> elements() const;

    // Generating columns with the relation lattice stripped out is not
    // meaningful; expose the canonical basis columns as elements instead.
    std::vector<Vec> generator_elements() const;

    bool operator==(const Subgroup& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subgroup& o) const { return !(*this == o); }
    bool operator<(const Subgroup& o) const { return basis_ < o.basis_; }

    std::string to_string() const;

private:
    Subgroup(FgAbGroup ambient, IntMat basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {}
    FgAbGroup ambient_;
    IntMat basis_;
};

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b);
// Saturation {a in A : m a in B for some m >= 1}.
Subgroup saturate(const Subgroup& b);

struct RankIndex {
    int rank;
    std::optional<Int> index;  // nullopt = INFINITE
};
RankIndex rank_and_index(const Subgroup& b);

// dim((B1+C) ∩ (B2+C)) == dim(B1 ∩ B2) for finite C, realized via free rank.
bool finite_perturbation_rank_check(const Subgroup& b1, const Subgroup& b2, const Subgroup& c);

// A / B in invariant-factor form together with the projection matrix from
// source coordinates to quotient coordinates and an integral section.
struct QuotientPresentation {
    FgAbGroup source;
    Subgroup kernel;
    FgAbGroup quotient;
    IntMat projection_data;  // (r'+k') x n
    IntMat section;          // n x (r'+k'), projection_data * section = identity mod relations

    Vec project(const Vec& v) const { return quotient.reduce(projection_data.mul(v)); }
    Vec lift(const Vec& w) const { return source.reduce(section.mul(w)); }
};
QuotientPresentation quotient(const FgAbGroup& a, const Subgroup& b);

// A x B with the coordinate embeddings and projections.
struct ProductPresentation {
    FgAbGroup left, right, product;
    IntMat embed_left, embed_right;      // product coords <- factor coords
    IntMat project_left, project_right;  // factor coords <- product coords
};
ProductPresentation product_and_projections(const FgAbGroup& a, const FgAbGroup& b);

// T(A) together with the full list of its subgroups (each exactly once).
struct TorsionLattice {
    Subgroup torsion;
    std::vector<Subgroup> subgroups;
};
TorsionLattice torsion_and_finite_lattice(const FgAbGroup& a);

// All subgroups of a finite subgroup t, each exactly once, deterministic
// order (sorted by canonical basis).
std::vector<Subgroup> all_subgroups_of_finite(const Subgroup& t);

// B presented as a first-class group: an abstract invariant-factor copy
// together with maps in and out of the ambient coordinates.
struct SubgroupPresentation {
    Subgroup subgroup;
    FgAbGroup group;    // abstract form of B
    IntMat embed;       // n x nB: abstract coords -> ambient representative
    // abstract coords of an ambient element of B
    Vec to_abstract(const Vec& ambient_element) const;

    // internal: coefficient-space projection (nB x s over basis coords)
    IntMat coeff_projection;
};
SubgroupPresentation present(const Subgroup& b);

}  // namespace endocalc
