#include "endocalc/prering.hpp"

#include <map>

#include "endocalc/caps.hpp"
#include "endocalc/commutation.hpp"
#include "endocalc/errors.hpp"

namespace endocalc {

std::string to_string(RingKind k) { return k == RingKind::PreRing ? "pre" : "near"; }

RingPresentation::RingPresentation(FgAbGroup ambient, std::vector<BiRelation> generators,
                                   RingKind kind, bool identity_included)
    : ambient_(std::move(ambient)),
      generators_(std::move(generators)),
      kind_(kind),
      identity_included_(identity_included) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const BiRelation& g = generators_[i];
        if (g.ambient() != ambient_)
            throw AmbientMismatchError("ring generator " + std::to_string(i) +
                                       " lives over a different ambient group");
        RelationKind k = g.kind();
        if (kind_ == RingKind::PreRing && k != RelationKind::Endogeny)
            throw ClassificationError("pre-ring generator " + std::to_string(i) +
                                      " is not an endogeny");
        if (kind_ == RingKind::NearRing && k == RelationKind::Neither)
            throw ClassificationError("near-ring generator " + std::to_string(i) +
                                      " is not a quasi-endomorphism");
    }
}

EnumerationSlice::EnumerationSlice(const RingPresentation& ring, int word_bound,
                                   std::vector<BiRelation> elements, std::vector<int> costs)
    : ring_(std::make_shared<RingPresentation>(ring)),
      word_bound_(word_bound),
      elements_(std::move(elements)),
      costs_(std::move(costs)) {}

const std::vector<std::vector<std::size_t>>& EnumerationSlice::equivalence_classes() const {
    if (!classes_) {
        std::vector<std::vector<std::size_t>> classes;
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            bool placed = false;
            for (auto& cls : classes) {
                if (equivalent(elements_[cls[0]], elements_[i])) {
                    cls.push_back(i);
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({i});
        }
        classes_ = std::move(classes);
    }
    return *classes_;
}

EnumerationSlice enumerate_slice(const RingPresentation& ring, int word_bound) {
    if (word_bound < 0 || word_bound > caps().word_bound)
        throw CapExceededError("word bound " + std::to_string(word_bound) + " exceeds cap " +
                               std::to_string(caps().word_bound));
    std::vector<BiRelation> elems;
    std::vector<int> cost;
    std::map<IntMat, std::size_t> seen;

    auto push = [&](const BiRelation& r, int c) {
        if (seen.count(r.graph())) return;
        if (static_cast<std::int64_t>(elems.size()) >= caps().slice_elements)
            throw CapExceededError("slice element count exceeds cap " +
                                   std::to_string(caps().slice_elements));
        seen.emplace(r.graph(), elems.size());
        elems.push_back(r);
        cost.push_back(c);
    };

    push(BiRelation::zero(ring.ambient()), 0);
    for (int level = 1; level <= word_bound; ++level) {
        std::size_t level_start = elems.size();
        if (level == 1) {
            if (ring.identity_included()) push(BiRelation::identity(ring.ambient()), 1);
            for (const auto& g : ring.generators()) push(g, 1);
        } else {
            // operands always come from shorter words
            for (std::size_t i = 0; i < level_start; ++i)
                for (std::size_t j = i; j < level_start; ++j)
                    if (cost[i] >= 1 && cost[j] >= 1 && cost[i] + cost[j] == level)
                        push(add(elems[i], elems[j]), level);
            for (std::size_t i = 0; i < level_start; ++i)
                for (std::size_t j = 0; j < level_start; ++j)
                    if (cost[i] >= 1 && cost[j] >= 1 && cost[i] + cost[j] == level)
                        push(compose(elems[i], elems[j]), level);
        }
        // Signs are free on words: close the level under negation. Near-ring
        // slices never negate (partial elements have no opposite).
        if (ring.kind() == RingKind::PreRing)
            for (std::size_t i = level_start; i < elems.size(); ++i)
                if (cost[i] == level) push(neg(elems[i]), level);
    }
    return EnumerationSlice(ring, word_bound, std::move(elems), std::move(cost));
}

Subgroup global_katakernel(const RingPresentation& ring) {
    const FgAbGroup& a = ring.ambient();
    if (a.torsion_order() > caps().torsion_order)
        throw CapExceededError("torsion order " + a.torsion_order().str() + " exceeds cap " +
                               caps().torsion_order.str());
    Subgroup k = Subgroup::zero(a);
    for (const auto& g : ring.generators()) k = subgroup_sum(k, g.kat());
    for (;;) {
        Subgroup next = k;
        for (const auto& g : ring.generators()) next = subgroup_sum(next, apply(g, k));
        if (next == k) return k;
        k = next;
    }
}

GlobalDomainResult global_domain(const RingPresentation& ring, int word_bound) {
    if (ring.kind() != RingKind::NearRing)
        throw PreconditionError("global_domain is defined for near-ring presentations");
    EnumerationSlice slice = enumerate_slice(ring, word_bound);
    Subgroup dom = Subgroup::full(ring.ambient());
    Subgroup prev_level_dom = dom;
    for (int level = 0; level <= word_bound; ++level) {
        Subgroup next = dom;
        for (std::size_t i = 0; i < slice.elements().size(); ++i)
            if (slice.costs()[i] == level)
                next = subgroup_intersect(next, slice.elements()[i].domain());
        prev_level_dom = dom;
        dom = next;
    }
    bool stabilized = word_bound >= 1 && dom == prev_level_dom;
    bool all_total = true;
    for (const auto& g : ring.generators()) all_total = all_total && g.domain().is_full();
    bool provable = ring.ambient().is_finite() || all_total;
    return {dom, stabilized && provable};
}

Subgroup max_finite_weakly_invariant(const RingPresentation& ring) {
    TorsionLattice tl = torsion_and_finite_lattice(ring.ambient());
    Subgroup a0 = Subgroup::zero(ring.ambient());
    for (const auto& s : tl.subgroups)
        if (invariance(s, ring.generators(), InvarianceMode::Weak).holds)
            a0 = subgroup_sum(a0, s);
    if (!invariance(a0, ring.generators(), InvarianceMode::Weak).holds)
        throw LemmaViolationError(
            "sum of weakly invariant finite subgroups is not weakly invariant");
    if (!a0.contains(global_katakernel(ring)))
        throw LemmaViolationError("maximal finite weakly invariant subgroup misses Kat");
    return a0;
}

QuotientAction quotient_action(const RingPresentation& ring, const Subgroup& a0) {
    if (a0.ambient() != ring.ambient())
        throw AmbientMismatchError("quotient kernel over a different ambient");
    if (!a0.is_finite()) throw PreconditionError("quotient_action requires a finite subgroup");
    for (std::size_t i = 0; i < ring.generators().size(); ++i) {
        const BiRelation& g = ring.generators()[i];
        if (!a0.contains(apply(g, a0))) {
            auto wit = violating_pair(g, a0, [&](const Vec& val) { return !a0.contains(val); });
            std::string msg =
                "generator " + std::to_string(i) + " does not leave the subgroup invariant";
            if (wit)
                msg += ": value " + vec_to_string(wit->second) + " at input " +
                       vec_to_string(wit->first) + " escapes";
            throw PreconditionError(msg);
        }
    }
    QuotientPresentation q = quotient(ring.ambient(), a0);
    std::size_t n = ring.ambient().coords();
    std::vector<BiRelation> gens;
    for (const auto& g : ring.generators()) {
        std::vector<std::pair<Vec, Vec>> pairs;
        for (std::size_t j = 0; j < g.graph().cols(); ++j) {
            Vec c = g.graph().col(j);
            Vec in(c.begin(), c.begin() + n), val(c.begin() + n, c.end());
            pairs.emplace_back(q.project(in), q.project(val));
        }
        gens.push_back(BiRelation::from_pairs(q.quotient, pairs));
    }
    RingPresentation pushed(q.quotient, std::move(gens), ring.kind(), ring.identity_included());
    return {std::move(q), std::move(pushed)};
}

std::size_t inequivalence_probe(const EnumerationSlice& slice) {
    return slice.equivalence_classes().size();
}

}  // namespace endocalc
