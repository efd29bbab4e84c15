#include "endocalc/commutation.hpp"

#include "endocalc/errors.hpp"

namespace endocalc {

std::string to_string(CommutationKind k) {
    return k == CommutationKind::Sharp ? "sharp" : "flat";
}

std::string to_string(InvarianceMode m) {
    switch (m) {
        case InvarianceMode::Invariant: return "invariant";
        case InvarianceMode::Weak: return "weak";
        default: return "almost";
    }
}

CommutationVerdict sharp_commutes(const BiRelation& phi, const BiRelation& psi) {
    if (phi.ambient() != psi.ambient())
        throw AmbientMismatchError("sharp_commutes over different ambients");
    if (phi.kind() != RelationKind::Endogeny || psi.kind() != RelationKind::Endogeny)
        throw ClassificationError("sharp commutation is defined for endogenies");
    CommutationVerdict v;
    v.checked_kind = CommutationKind::Sharp;
    BiRelation comm = add(compose(phi, psi), neg(compose(psi, phi)));
    Subgroup allowed = subgroup_sum(phi.kat(), psi.kat());
    if (allowed.contains(comm.image())) return v;
    v.holds = false;
    v.witness = violating_pair(comm, Subgroup::full(phi.ambient()),
                               [&](const Vec& val) { return !allowed.contains(val); });
    return v;
}

CommutationVerdict flat_commutes(const BiRelation& delta, const BiRelation& gamma) {
    if (delta.ambient() != gamma.ambient())
        throw AmbientMismatchError("flat_commutes over different ambients");
    if (delta.kind() == RelationKind::Neither || gamma.kind() == RelationKind::Neither)
        throw ClassificationError("flat commutation requires endogenies or quasi-endomorphisms");
    CommutationVerdict v;
    v.checked_kind = CommutationKind::Flat;
    Subgroup common = subgroup_intersect(delta.domain(), gamma.domain());

    if (!gamma.domain().contains(apply(delta, common))) {
        v.holds = false;
        v.failed_clause = 1;
        v.witness = violating_pair(delta, common,
                                   [&](const Vec& val) { return !gamma.domain().contains(val); });
        return v;
    }
    if (!delta.domain().contains(apply(gamma, common))) {
        v.holds = false;
        v.failed_clause = 2;
        v.witness = violating_pair(gamma, common,
                                   [&](const Vec& val) { return !delta.domain().contains(val); });
        return v;
    }
    BiRelation comm = add(compose(delta, gamma), neg(compose(gamma, delta)));
    Subgroup allowed = subgroup_sum(delta.kat(), gamma.kat());
    if (!allowed.contains(apply(comm, common))) {
        v.holds = false;
        v.failed_clause = 3;
        v.witness = violating_pair(comm, common,
                                   [&](const Vec& val) { return !allowed.contains(val); });
        return v;
    }
    return v;
}

InvarianceReport invariance(const Subgroup& b, const std::vector<BiRelation>& gens,
                            InvarianceMode mode) {
    InvarianceReport report;
    report.mode = mode;
    for (const auto& g : gens) {
        if (g.ambient() != b.ambient())
            throw AmbientMismatchError("invariance generator over a different ambient");
        InvarianceVerdict verdict;
        Subgroup v = apply(g, b);
        switch (mode) {
            case InvarianceMode::Invariant: {
                if (!b.contains(v)) {
                    verdict.holds = false;
                    verdict.witness = violating_pair(
                        g, b, [&](const Vec& val) { return !b.contains(val); });
                }
                break;
            }
            case InvarianceMode::Weak: {
                Subgroup allowed = subgroup_sum(b, g.kat());
                if (!allowed.contains(v)) {
                    verdict.holds = false;
                    verdict.witness = violating_pair(
                        g, b, [&](const Vec& val) { return !allowed.contains(val); });
                }
                break;
            }
            case InvarianceMode::Almost: {
                Subgroup vb = subgroup_intersect(v, b);
                if (vb.rank() != v.rank()) {
                    verdict.holds = false;
                    verdict.witness = violating_pair(g, b, [&](const Vec& val) {
                        return subgroup_sum(vb, Subgroup::from_elements(b.ambient(), {val})).rank() >
                               vb.rank();
                    });
                }
                break;
            }
        }
        report.holds = report.holds && verdict.holds;
        report.per_generator.push_back(std::move(verdict));
    }
    return report;
}

bool commutant_membership(const BiRelation& phi, const std::vector<BiRelation>& gens,
                          CommutationKind kind) {
    for (const auto& g : gens) {
        CommutationVerdict v = kind == CommutationKind::Sharp ? sharp_commutes(phi, g)
                                                              : flat_commutes(phi, g);
        if (!v.holds) return false;
    }
    return true;
}

}  // namespace endocalc
