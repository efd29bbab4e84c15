#include "endocalc/fgab.hpp"

#include <algorithm>
#include <set>

#include "endocalc/caps.hpp"
#include "endocalc/errors.hpp"

namespace endocalc {

FgAbGroup::FgAbGroup(int free_rank, std::vector<Int> torsion_factors) {
    if (free_rank < 0) throw PreconditionError("free rank must be nonnegative");
    for (std::size_t i = 0; i < torsion_factors.size(); ++i) {
        if (torsion_factors[i] < 2)
            throw PreconditionError("torsion factors must be >= 2");
        if (i > 0 && torsion_factors[i] % torsion_factors[i - 1] != 0)
            throw PreconditionError("torsion factors must form a divisibility chain");
    }
    auto data = std::make_shared<Data>();
    data->free_rank = free_rank;
    data->torsion = std::move(torsion_factors);
    data->coords = static_cast<std::size_t>(free_rank) + data->torsion.size();
    IntMat rel(data->coords, data->torsion.size());
    for (std::size_t j = 0; j < data->torsion.size(); ++j)
        rel(static_cast<std::size_t>(free_rank) + j, j) = data->torsion[j];
    data->relation_cols = std::move(rel);
    d_ = std::move(data);
}

Int FgAbGroup::torsion_order() const {
    Int p = 1;
    for (const auto& d : d_->torsion) p *= d;
    return p;
}

Int FgAbGroup::order() const {
    if (!is_finite()) throw PreconditionError("order of an infinite group");
    return torsion_order();
}

Vec FgAbGroup::reduce(Vec v) const {
    if (v.size() != coords())
        throw DimensionError("element has " + std::to_string(v.size()) + " coordinates, expected " +
                             std::to_string(coords()));
    for (std::size_t j = 0; j < d_->torsion.size(); ++j) {
        auto& c = v[static_cast<std::size_t>(d_->free_rank) + j];
        c = floormod(c, d_->torsion[j]);
    }
    return v;
}

bool FgAbGroup::is_zero(const Vec& v) const { return vec_is_zero(reduce(v)); }

std::vector<Vec> FgAbGroup::elements() const {
    if (!is_finite()) throw PreconditionError("cannot enumerate an infinite group");
    if (torsion_order() > caps().torsion_order)
        throw CapExceededError("torsion order " + torsion_order().str() + " exceeds cap " +
                               caps().torsion_order.str());
    std::vector<Vec> out;
    Vec cur(coords());
    for (;;) {
        out.push_back(cur);
        std::size_t j = coords();
        while (j > 0) {
            --j;
            if (++cur[j] < d_->torsion[j]) break;
            cur[j] = 0;
            if (j == 0) return out;
        }
        if (coords() == 0) return out;
    }
}

std::string FgAbGroup::to_string() const {
    std::string s;
    if (free_rank() > 0) s = "Z^" + std::to_string(free_rank());
    for (const auto& d : d_->torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + d.str();
    }
    if (s.empty()) s = "0";
    return s;
}

Subgroup Subgroup::from_cover_lattice(const FgAbGroup& ambient, IntMat cover) {
    if (cover.rows() != ambient.coords() && cover.cols() != 0)
        throw DimensionError("cover lattice row count does not match ambient coordinates");
    IntMat with_rel = IntMat::hstack(cover, ambient.relation_cols());
    return Subgroup(ambient, hnf_cols(std::move(with_rel)));
}

Subgroup Subgroup::from_columns(const FgAbGroup& ambient, const IntMat& element_cols) {
    if (element_cols.cols() > 0 && element_cols.rows() != ambient.coords())
        throw DimensionError("generator column length " + std::to_string(element_cols.rows()) +
                             " does not match ambient coordinate count " +
                             std::to_string(ambient.coords()));
    return from_cover_lattice(ambient, element_cols);
}

Subgroup Subgroup::from_elements(const FgAbGroup& ambient, const std::vector<Vec>& elems) {
    return from_columns(ambient, IntMat::from_columns(ambient.coords(), elems));
}

Subgroup Subgroup::zero(const FgAbGroup& ambient) {
    return from_columns(ambient, IntMat(ambient.coords(), 0));
}

Subgroup Subgroup::full(const FgAbGroup& ambient) {
    return from_columns(ambient, IntMat::identity(ambient.coords()));
}

Subgroup Subgroup::torsion(const FgAbGroup& ambient) {
    std::size_t r = static_cast<std::size_t>(ambient.free_rank());
    std::size_t k = ambient.torsion_factors().size();
    IntMat cols(ambient.coords(), k);
    for (std::size_t j = 0; j < k; ++j) cols(r + j, j) = 1;
    return from_columns(ambient, cols);
}

int Subgroup::rank() const {
    return static_cast<int>(basis_.cols()) - static_cast<int>(ambient_.torsion_factors().size());
}

std::optional<Int> Subgroup::index() const {
    if (basis_.cols() != ambient_.coords()) return std::nullopt;
    Int idx = 1;
    for (std::size_t j = 0; j < basis_.cols(); ++j) idx *= basis_(j, j);
    return idx;
}

bool Subgroup::is_zero() const { return *this == zero(ambient_); }

bool Subgroup::is_full() const { return basis_ == IntMat::identity(ambient_.coords()); }

Int Subgroup::order() const {
    if (!is_finite()) throw PreconditionError("order of an infinite subgroup");
    // Finite subgroup: basis columns live in the torsion block and form a
    // square triangular matrix there; |B| = |T(A)| / det(torsion block).
    std::size_t r = static_cast<std::size_t>(ambient_.free_rank());
    Int d = 1;
    for (std::size_t j = 0; j < basis_.cols(); ++j) d *= basis_(r + j, j);
    if (d == 0) throw EndocalcError("internal: degenerate torsion block");
    return ambient_.torsion_order() / d;
}

bool Subgroup::contains(const Vec& element) const {
    if (element.size() != ambient_.coords()) throw DimensionError("element length mismatch");
    return solve_in_hnf(basis_, element).has_value();
}

bool Subgroup::contains(const Subgroup& other) const {
    if (ambient_ != other.ambient_) throw AmbientMismatchError("subgroups of different ambients");
    for (std::size_t j = 0; j < other.basis_.cols(); ++j)
        if (!contains(other.basis_.col(j))) return false;
    return true;
}

std::vector<Vec> Subgroup::elements() const {
    if (!is_finite()) throw PreconditionError("cannot enumerate an infinite subgroup");
    if (ambient_.torsion_order() > caps().torsion_order)
        throw CapExceededError("torsion order " + ambient_.torsion_order().str() +
                               " exceeds cap " + caps().torsion_order.str());
    // Finite subgroups consist of torsion elements only.
    std::size_t r = static_cast<std::size_t>(ambient_.free_rank());
    const auto& tf = ambient_.torsion_factors();
    std::vector<Vec> out;
    Vec cur(ambient_.coords());
    for (;;) {
        if (contains(cur)) out.push_back(cur);
        std::size_t j = tf.size();
        bool done = (j == 0);
        while (j > 0) {
            --j;
            if (++cur[r + j] < tf[j]) break;
            cur[r + j] = 0;
            if (j == 0) done = true;
        }
        if (done) return out;
    }
}

std::vector<Vec> Subgroup::generator_elements() const {
    std::vector<Vec> out;
    for (std::size_t j = 0; j < basis_.cols(); ++j) out.push_back(ambient_.reduce(basis_.col(j)));
    return out;
}

std::string Subgroup::to_string() const { return basis_.to_string(); }

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatchError("subgroup_sum over different ambients");
    return Subgroup::from_cover_lattice(a.ambient(), IntMat::hstack(a.basis(), b.basis()));
}

Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b) {
    if (a.ambient() != b.ambient())
        throw AmbientMismatchError("subgroup_intersect over different ambients");
    const IntMat& ga = a.basis();
    const IntMat& gb = b.basis();
    IntMat stacked = IntMat::hstack(ga, gb);
    IntMat k = kernel_cols(stacked);
    // x-parts of kernel vectors give the intersection generators ga * x.
    IntMat xpart(ga.cols(), k.cols());
    for (std::size_t i = 0; i < ga.cols(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) xpart(i, j) = k(i, j);
    return Subgroup::from_cover_lattice(a.ambient(), ga * xpart);
}

Subgroup saturate(const Subgroup& b) {
    SnfResult s = snf(b.basis());
    std::size_t n = b.basis().rows();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < std::min(n, b.basis().cols()); ++i)
        if (s.d(i, i) != 0) gens.push_back(s.u_inv.col(i));
    return Subgroup::from_elements(b.ambient(), gens);
}

RankIndex rank_and_index(const Subgroup& b) { return {b.rank(), b.index()}; }

bool finite_perturbation_rank_check(const Subgroup& b1, const Subgroup& b2, const Subgroup& c) {
    if (b1.ambient() != b2.ambient() || b1.ambient() != c.ambient())
        throw AmbientMismatchError("finite_perturbation_rank_check over different ambients");
    if (!c.is_finite()) throw PreconditionError("perturbation subgroup C must be finite");
    int lhs = subgroup_intersect(subgroup_sum(b1, c), subgroup_sum(b2, c)).rank();
    int rhs = subgroup_intersect(b1, b2).rank();
    return lhs == rhs;
}

namespace {

// Split the SNF row space into quotient coordinates: free rows first, then
// torsion rows in ascending invariant-factor order.
struct NormalizedQuotient {
    FgAbGroup group;
    IntMat projection;  // (r+k) x n
    IntMat section;     // n x (r+k)
};

NormalizedQuotient normalize_quotient(std::size_t n, const IntMat& rel_cols) {
    SnfResult s = snf(rel_cols.cols() ? rel_cols : IntMat(n, 0));
    std::size_t t = std::min(n, rel_cols.cols());
    std::vector<std::size_t> free_rows, torsion_rows;
    std::vector<Int> factors;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = i < t ? s.d(i, i) : Int(0);
        if (d == 0)
            free_rows.push_back(i);
        else if (d >= 2) {
            torsion_rows.push_back(i);
            factors.push_back(d);
        }
    }
    std::vector<std::size_t> rows = free_rows;
    rows.insert(rows.end(), torsion_rows.begin(), torsion_rows.end());
    IntMat proj(rows.size(), n), sect(n, rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t j = 0; j < n; ++j) {
            proj(a, j) = s.u(rows[a], j);
            sect(j, a) = s.u_inv(j, rows[a]);
        }
    return {FgAbGroup(static_cast<int>(free_rows.size()), factors), std::move(proj),
            std::move(sect)};
}

}  // namespace

QuotientPresentation quotient(const FgAbGroup& a, const Subgroup& b) {
    if (b.ambient() != a) throw AmbientMismatchError("quotient kernel has a different ambient");
    NormalizedQuotient nq = normalize_quotient(a.coords(), b.basis());
    return {a, b, nq.group, std::move(nq.projection), std::move(nq.section)};
}

ProductPresentation product_and_projections(const FgAbGroup& a, const FgAbGroup& b) {
    std::size_t na = a.coords(), nb = b.coords();
    IntMat rel(na + nb, a.torsion_factors().size() + b.torsion_factors().size());
    for (std::size_t j = 0; j < a.torsion_factors().size(); ++j)
        for (std::size_t i = 0; i < na; ++i) rel(i, j) = a.relation_cols()(i, j);
    for (std::size_t j = 0; j < b.torsion_factors().size(); ++j)
        for (std::size_t i = 0; i < nb; ++i)
            rel(na + i, a.torsion_factors().size() + j) = b.relation_cols()(i, j);
    NormalizedQuotient nq = normalize_quotient(na + nb, rel);

    IntMat inc_a(na + nb, na), inc_b(na + nb, nb);
    for (std::size_t i = 0; i < na; ++i) inc_a(i, i) = 1;
    for (std::size_t i = 0; i < nb; ++i) inc_b(na + i, i) = 1;
    IntMat sel_a(na, na + nb), sel_b(nb, na + nb);
    for (std::size_t i = 0; i < na; ++i) sel_a(i, i) = 1;
    for (std::size_t i = 0; i < nb; ++i) sel_b(i, na + i) = 1;

    return {a,
            b,
            nq.group,
            nq.projection * inc_a,
            nq.projection * inc_b,
            sel_a * nq.section,
            sel_b * nq.section};
}

std::vector<Subgroup> all_subgroups_of_finite(const Subgroup& t) {
    if (!t.is_finite()) throw PreconditionError("subgroup lattice of an infinite subgroup");
    std::vector<Vec> elems = t.elements();
    std::set<Subgroup> seen;
    std::vector<Subgroup> work{Subgroup::zero(t.ambient())};
    seen.insert(work[0]);
    for (std::size_t w = 0; w < work.size(); ++w) {
        Subgroup s = work[w];
        for (const auto& e : elems) {
            if (s.contains(e)) continue;
            Subgroup bigger = subgroup_sum(s, Subgroup::from_elements(t.ambient(), {e}));
            if (seen.insert(bigger).second) {
                work.push_back(bigger);
                if (static_cast<std::int64_t>(seen.size()) > caps().subgroup_count)
                    throw CapExceededError("subgroup count exceeds cap " +
                                           std::to_string(caps().subgroup_count));
            }
        }
    }
    return std::vector<Subgroup>(seen.begin(), seen.end());
}

TorsionLattice torsion_and_finite_lattice(const FgAbGroup& a) {
    if (a.torsion_order() > caps().torsion_order)
        throw CapExceededError("torsion order " + a.torsion_order().str() + " exceeds cap " +
                               caps().torsion_order.str());
    Subgroup t = Subgroup::torsion(a);
    return {t, all_subgroups_of_finite(t)};
}

Vec SubgroupPresentation::to_abstract(const Vec& ambient_element) const {
    auto c = solve_in_hnf(subgroup.basis(), ambient_element);
    if (!c) throw PreconditionError("element does not belong to the subgroup being presented");
    return group.reduce(coeff_projection.mul(*c));
}

SubgroupPresentation present(const Subgroup& b) {
    const IntMat& m = b.basis();  // n x s
    std::size_t s = m.cols();
    // Relations among basis columns: x with m x in the relation lattice.
    IntMat stacked = IntMat::hstack(m, b.ambient().relation_cols());
    IntMat k = kernel_cols(stacked);
    IntMat rel(s, k.cols());
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) rel(i, j) = k(i, j);
    NormalizedQuotient nq = normalize_quotient(s, rel);
    return {b, nq.group, m * nq.section, nq.projection};
}

}  // namespace endocalc
