#include "endocalc/relation.hpp"

#include <algorithm>

#include "endocalc/errors.hpp"

namespace endocalc {

std::string to_string(RelationKind k) {
    switch (k) {
        case RelationKind::Endogeny: return "ENDOGENY";
        case RelationKind::QuasiEndo: return "QUASI_ENDO";
        default: return "NEITHER";
    }
}

namespace {

// Columns of m copied into a taller matrix; row i of m lands on row_of[i].
IntMat scatter_rows(const IntMat& m, std::size_t height, const std::vector<std::size_t>& row_of) {
    IntMat out(height, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(row_of[i], j) = m(i, j);
    return out;
}

// Identity columns e_i for i in [lo, hi).
IntMat free_cols(std::size_t height, std::size_t lo, std::size_t hi) {
    IntMat out(height, hi - lo);
    for (std::size_t j = lo; j < hi; ++j) out(j, j - lo) = 1;
    return out;
}

std::vector<std::size_t> iota_rows(std::size_t lo, std::size_t count) {
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = lo + i;
    return v;
}

// Generators of the intersection of two column-span lattices.
IntMat intersect_lattices(const IntMat& a, const IntMat& b) {
    IntMat stacked = IntMat::hstack(a, b);
    IntMat k = kernel_cols(stacked);
    IntMat xpart(a.cols(), k.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) xpart(i, j) = k(i, j);
    return a * xpart;
}

// Relation lattice of A x A inside Z^{2n}.
IntMat double_relations(const FgAbGroup& a) {
    std::size_t n = a.coords();
    const IntMat& r = a.relation_cols();
    IntMat out(2 * n, 2 * r.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) {
            out(i, j) = r(i, j);
            out(n + i, r.cols() + j) = r(i, j);
        }
    return out;
}

IntMat canonical_graph(const FgAbGroup& a, const IntMat& raw) {
    return hnf_cols(IntMat::hstack(raw, double_relations(a)));
}

}  // namespace

BiRelation BiRelation::from_graph_lattice(const FgAbGroup& a, IntMat cover) {
    if (cover.cols() > 0 && cover.rows() != 2 * a.coords())
        throw DimensionError("graph lattice must live in A x A coordinates");
    auto d = std::make_shared<Data>(a, canonical_graph(a, cover));
    return BiRelation(std::move(d));
}

BiRelation BiRelation::from_pairs(const FgAbGroup& a,
                                  const std::vector<std::pair<Vec, Vec>>& pairs) {
    std::size_t n = a.coords();
    IntMat raw(2 * n, pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (pairs[j].first.size() != n || pairs[j].second.size() != n)
            throw DimensionError("generator pair coordinate length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            raw(i, j) = pairs[j].first[i];
            raw(n + i, j) = pairs[j].second[i];
        }
    }
    return from_graph_lattice(a, raw);
}

BiRelation BiRelation::from_matrix(const FgAbGroup& a, const IntMat& m) {
    std::size_t n = a.coords();
    if (m.rows() != n || m.cols() != n)
        throw DimensionError("endomorphism matrix must be " + std::to_string(n) + "x" +
                             std::to_string(n));
    Subgroup z = Subgroup::zero(a);
    for (std::size_t j = 0; j < a.relation_cols().cols(); ++j)
        if (!z.contains(m.mul(a.relation_cols().col(j))))
            throw PreconditionError("matrix is not torsion-compatible: image of relation " +
                                    vec_to_string(a.relation_cols().col(j)) +
                                    " is not zero in the ambient group");
    IntMat raw(2 * n, n);
    for (std::size_t j = 0; j < n; ++j) {
        raw(j, j) = 1;
        for (std::size_t i = 0; i < n; ++i) raw(n + i, j) = m(i, j);
    }
    return from_graph_lattice(a, raw);
}

BiRelation BiRelation::identity(const FgAbGroup& a) {
    return from_matrix(a, IntMat::identity(a.coords()));
}

BiRelation BiRelation::zero(const FgAbGroup& a) {
    return from_matrix(a, IntMat(a.coords(), a.coords()));
}

BiRelation BiRelation::constant_to_subgroup(const FgAbGroup& a, const Subgroup& b) {
    if (b.ambient() != a) throw AmbientMismatchError("constant subgroup has a different ambient");
    if (!b.is_finite())
        throw PreconditionError("constant_to_subgroup requires a finite subgroup: katakernel must be finite");
    std::size_t n = a.coords();
    IntMat raw(2 * n, n + b.basis().cols());
    for (std::size_t j = 0; j < n; ++j) raw(j, j) = 1;
    for (std::size_t j = 0; j < b.basis().cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) raw(n + i, n + j) = b.basis()(i, j);
    return from_graph_lattice(a, raw);
}

const Subgroup& BiRelation::kat() const {
    return d_->kat.get([&] {
        // Columns whose pivot row lies in the output block span graph ∩ (0 x A).
        std::size_t n = d_->ambient.coords();
        const IntMat& g = d_->graph;
        std::vector<Vec> vals;
        for (std::size_t j = 0; j < g.cols(); ++j) {
            std::size_t p = 0;
            while (p < g.rows() && g(p, j) == 0) ++p;
            if (p >= n) vals.push_back(g.col(j));
        }
        IntMat cols(n, vals.size());
        for (std::size_t j = 0; j < vals.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) cols(i, j) = vals[j][n + i];
        return Subgroup::from_columns(d_->ambient, cols);
    });
}

const Subgroup& BiRelation::domain() const {
    return d_->dom.get([&] {
        std::size_t n = d_->ambient.coords();
        return Subgroup::from_columns(d_->ambient, d_->graph.row_slice(0, n));
    });
}

const Subgroup& BiRelation::image() const {
    return d_->im.get([&] {
        std::size_t n = d_->ambient.coords();
        return Subgroup::from_columns(d_->ambient, d_->graph.row_slice(n, 2 * n));
    });
}

const Subgroup& BiRelation::kernel() const {
    return d_->ker.get([&] {
        std::size_t n = d_->ambient.coords();
        IntMat window = IntMat::hstack(
            free_cols(2 * n, 0, n),
            scatter_rows(kat().basis(), 2 * n, iota_rows(n, n)));
        IntMat w = intersect_lattices(d_->graph, window);
        return Subgroup::from_columns(d_->ambient, w.row_slice(0, n));
    });
}

RelationKind BiRelation::kind() const {
    return d_->kind.get([&] {
        if (!kat().is_finite()) return RelationKind::Neither;
        if (domain().is_full()) return RelationKind::Endogeny;
        if (domain().index().has_value()) return RelationKind::QuasiEndo;
        return RelationKind::Neither;
    });
}

RelationClass BiRelation::classify() const {
    return {kind(), kat(), domain(), image(), kernel(), domain().index()};
}

std::vector<std::pair<Vec, Vec>> BiRelation::generator_pairs() const {
    std::size_t n = d_->ambient.coords();
    std::vector<std::pair<Vec, Vec>> out;
    for (std::size_t j = 0; j < d_->graph.cols(); ++j) {
        Vec c = d_->graph.col(j);
        Vec a(c.begin(), c.begin() + n), b(c.begin() + n, c.end());
        a = d_->ambient.reduce(a);
        b = d_->ambient.reduce(b);
        // pure relation-lattice columns reduce to (0, 0) and carry nothing
        if (vec_is_zero(a) && vec_is_zero(b)) continue;
        out.emplace_back(std::move(a), std::move(b));
    }
    // the zero relation still needs one generator to pin its ambient shape
    if (out.empty() && n > 0) out.emplace_back(Vec(n), Vec(n));
    return out;
}

std::optional<Vec> BiRelation::value_at(const Vec& a) const {
    std::size_t n = d_->ambient.coords();
    if (a.size() != n) throw DimensionError("value_at element length mismatch");
    auto w = solve_prefix_in_hnf(d_->graph, a, n);
    if (!w) return std::nullopt;
    Vec b(w->begin() + n, w->end());
    return d_->ambient.reduce(b);
}

std::string BiRelation::to_string() const { return d_->graph.to_string(); }

namespace {

void require_same_ambient(const BiRelation& a, const BiRelation& b, const char* op) {
    if (a.ambient() != b.ambient())
        throw AmbientMismatchError(std::string(op) + " over different ambient groups");
}

}  // namespace

BiRelation add(const BiRelation& phi, const BiRelation& psi) {
    require_same_ambient(phi, psi, "add");
    const FgAbGroup& a = phi.ambient();
    std::size_t n = a.coords();
    // coordinates (a, b1, b2) in Z^{3n}
    std::vector<std::size_t> lift01 = iota_rows(0, 2 * n);
    std::vector<std::size_t> lift02 = iota_rows(0, n);
    for (std::size_t i = 0; i < n; ++i) lift02.push_back(2 * n + i);
    IntMat l1 = IntMat::hstack(scatter_rows(phi.graph(), 3 * n, lift01), free_cols(3 * n, 2 * n, 3 * n));
    IntMat l2 = IntMat::hstack(scatter_rows(psi.graph(), 3 * n, lift02), free_cols(3 * n, n, 2 * n));
    IntMat w = intersect_lattices(l1, l2);
    IntMat out(2 * n, w.cols());
    for (std::size_t j = 0; j < w.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = w(i, j);
            out(n + i, j) = w(n + i, j) + w(2 * n + i, j);
        }
    return BiRelation::from_graph_lattice(a, out);
}

BiRelation neg(const BiRelation& phi) {
    std::size_t n = phi.ambient().coords();
    IntMat g = phi.graph();
    IntMat out(2 * n, g.cols());
    for (std::size_t j = 0; j < g.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = g(i, j);
            out(n + i, j) = -g(n + i, j);
        }
    return BiRelation::from_graph_lattice(phi.ambient(), out);
}

BiRelation converse(const BiRelation& phi) {
    std::size_t n = phi.ambient().coords();
    const IntMat& g = phi.graph();
    IntMat out(2 * n, g.cols());
    for (std::size_t j = 0; j < g.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = g(n + i, j);
            out(n + i, j) = g(i, j);
        }
    return BiRelation::from_graph_lattice(phi.ambient(), out);
}

BiRelation compose(const BiRelation& phi, const BiRelation& psi) {
    require_same_ambient(phi, psi, "compose");
    const FgAbGroup& a = phi.ambient();
    std::size_t n = a.coords();
    // coordinates (a, z, b) in Z^{3n}
    IntMat l1 = IntMat::hstack(scatter_rows(psi.graph(), 3 * n, iota_rows(0, 2 * n)),
                               free_cols(3 * n, 2 * n, 3 * n));
    IntMat l2 = IntMat::hstack(scatter_rows(phi.graph(), 3 * n, iota_rows(n, 2 * n)),
                               free_cols(3 * n, 0, n));
    IntMat w = intersect_lattices(l1, l2);
    IntMat out(2 * n, w.cols());
    for (std::size_t j = 0; j < w.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = w(i, j);
            out(n + i, j) = w(2 * n + i, j);
        }
    return BiRelation::from_graph_lattice(a, out);
}

Subgroup apply(const BiRelation& phi, const Subgroup& b) {
    if (phi.ambient() != b.ambient()) throw AmbientMismatchError("apply over different ambients");
    std::size_t n = phi.ambient().coords();
    IntMat window = IntMat::hstack(scatter_rows(b.basis(), 2 * n, iota_rows(0, n)),
                                   free_cols(2 * n, n, 2 * n));
    IntMat w = intersect_lattices(phi.graph(), window);
    return Subgroup::from_columns(phi.ambient(), w.row_slice(n, 2 * n));
}

Subgroup preimage(const BiRelation& phi, const Subgroup& b) {
    if (phi.ambient() != b.ambient()) throw AmbientMismatchError("preimage over different ambients");
    std::size_t n = phi.ambient().coords();
    Subgroup target = subgroup_sum(b, phi.kat());
    IntMat window = IntMat::hstack(free_cols(2 * n, 0, n),
                                   scatter_rows(target.basis(), 2 * n, iota_rows(n, n)));
    IntMat w = intersect_lattices(phi.graph(), window);
    return Subgroup::from_columns(phi.ambient(), w.row_slice(0, n));
}

bool equivalent(const BiRelation& phi, const BiRelation& psi) {
    require_same_ambient(phi, psi, "equivalent");
    if (phi.kind() == RelationKind::Neither || psi.kind() == RelationKind::Neither)
        throw ClassificationError("equivalent requires endogenies or quasi-endomorphisms");
    return add(phi, neg(psi)).image().rank() == 0;
}

IntMat graph_restricted_lattice(const BiRelation& phi, const Subgroup& b) {
    std::size_t n = phi.ambient().coords();
    IntMat window = IntMat::hstack(scatter_rows(b.basis(), 2 * n, iota_rows(0, n)),
                                   scatter_rows(b.basis(), 2 * n, iota_rows(n, n)));
    return intersect_lattices(phi.graph(), window);
}

BiRelation domain_restriction(const BiRelation& phi, const Subgroup& b) {
    if (phi.ambient() != b.ambient())
        throw AmbientMismatchError("domain_restriction over different ambients");
    std::size_t n = phi.ambient().coords();
    IntMat window = IntMat::hstack(scatter_rows(b.basis(), 2 * n, iota_rows(0, n)),
                                   free_cols(2 * n, n, 2 * n));
    return BiRelation::from_graph_lattice(phi.ambient(), intersect_lattices(phi.graph(), window));
}

namespace {

// Candidate (input, value) witnesses ranked torsion-first, then by the sum of
// absolute reduced coordinates.
std::pair<Vec, Vec> pick_witness(const FgAbGroup& a, std::vector<std::pair<Vec, Vec>> cands) {
    auto score = [&](const std::pair<Vec, Vec>& w) {
        Vec in = a.reduce(w.first), val = a.reduce(w.second);
        bool free_part = false;
        Int sum = 0;
        for (int i = 0; i < a.free_rank(); ++i) {
            if (in[i] != 0 || val[i] != 0) free_part = true;
        }
        for (const auto& x : in) sum += abs(x);
        for (const auto& x : val) sum += abs(x);
        return std::make_pair(free_part ? 1 : 0, sum);
    };
    auto best = std::min_element(cands.begin(), cands.end(),
                                 [&](const auto& x, const auto& y) { return score(x) < score(y); });
    return {a.reduce(best->first), a.reduce(best->second)};
}

}  // namespace

std::optional<std::pair<Vec, Vec>> violating_pair(const BiRelation& phi, const Subgroup& inputs,
                                                  const std::function<bool(const Vec&)>& bad_value) {
    const FgAbGroup& a = phi.ambient();
    std::size_t n = a.coords();
    IntMat window = IntMat::hstack(scatter_rows(inputs.basis(), 2 * n, iota_rows(0, n)),
                                   free_cols(2 * n, n, 2 * n));
    IntMat w = intersect_lattices(phi.graph(), window);
    std::vector<std::pair<Vec, Vec>> cands;
    for (std::size_t j = 0; j < w.cols(); ++j) {
        Vec c = w.col(j);
        Vec in(c.begin(), c.begin() + n), val(c.begin() + n, c.end());
        if (bad_value(val)) cands.emplace_back(std::move(in), std::move(val));
    }
    if (cands.empty()) return std::nullopt;
    return pick_witness(a, std::move(cands));
}

BiRelation restrict_corestrict(const BiRelation& phi, const SubgroupPresentation& b) {
    if (phi.ambient() != b.subgroup.ambient())
        throw AmbientMismatchError("restriction over a different ambient");
    if (phi.kind() == RelationKind::Neither)
        throw ClassificationError("cannot restrict a relation that is neither endogeny nor quasi-endomorphism");
    const FgAbGroup& a = phi.ambient();
    std::size_t n = a.coords();
    Subgroup v = apply(phi, b.subgroup);

    bool ok;
    if (phi.kind() == RelationKind::Endogeny) {
        ok = subgroup_sum(b.subgroup, phi.kat()).contains(v);
    } else {
        ok = subgroup_intersect(v, b.subgroup).rank() == v.rank();
    }
    if (!ok) {
        std::optional<std::pair<Vec, Vec>> wit;
        if (phi.kind() == RelationKind::Endogeny) {
            Subgroup allowed = subgroup_sum(b.subgroup, phi.kat());
            wit = violating_pair(phi, b.subgroup,
                                 [&](const Vec& val) { return !allowed.contains(val); });
        } else {
            Subgroup vb = subgroup_intersect(v, b.subgroup);
            wit = violating_pair(phi, b.subgroup, [&](const Vec& val) {
                return subgroup_sum(vb, Subgroup::from_elements(a, {val})).rank() > vb.rank();
            });
        }
        if (!wit) throw EndocalcError("internal: invariance violated but no witness found");
        throw IllegalRestrictionError(
            "subgroup is not " +
                std::string(phi.kind() == RelationKind::Endogeny ? "weakly" : "almost") +
                " invariant under the relation: value " + vec_to_string(wit->second) +
                " at input " + vec_to_string(wit->first) + " escapes",
            vec_to_string(wit->first), vec_to_string(wit->second));
    }

    IntMat w = graph_restricted_lattice(phi, b.subgroup);
    std::vector<std::pair<Vec, Vec>> pairs;
    for (std::size_t j = 0; j < w.cols(); ++j) {
        Vec c = w.col(j);
        Vec in(c.begin(), c.begin() + n), val(c.begin() + n, c.end());
        pairs.emplace_back(b.to_abstract(in), b.to_abstract(val));
    }
    return BiRelation::from_pairs(b.group, pairs);
}

BiRelation restrict_corestrict(const BiRelation& phi, const Subgroup& b) {
    return restrict_corestrict(phi, present(b));
}

}  // namespace endocalc
