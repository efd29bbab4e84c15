#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "endocalc/relation.hpp"

namespace endocalc {

enum class RingKind { PreRing, NearRing };

std::string to_string(RingKind k);

// A finitely generated pre-ring (endogenies, closed under add/neg/compose)
// or near-ring (quasi-endomorphisms, closed under add/compose; opposites of
// partial elements are never enumerated).
class RingPresentation {
public:
    RingPresentation(FgAbGroup ambient, std::vector<BiRelation> generators, RingKind kind,
                     bool identity_included = true);

    const FgAbGroup& ambient() const { return ambient_; }
    const std::vector<BiRelation>& generators() const { return generators_; }
    RingKind kind() const { return kind_; }
    bool identity_included() const { return identity_included_; }

private:
    FgAbGroup ambient_;
    std::vector<BiRelation> generators_;
    RingKind kind_;
    bool identity_included_;
};

// Breadth-first closure by word length (total occurrences of generators and
// the identity): 0 is the empty word, the identity and the generators have
// length 1, and level c holds add(x,y) then compose(x,y) over operand pairs
// of shorter words with lengths summing to c (operands ordered by
// enumeration index), followed by negation closure of the level (pre-rings
// only; partial elements have no opposite). Deduplicated by graph equality,
// first occurrence kept.
class EnumerationSlice {
public:
    EnumerationSlice(const RingPresentation& ring, int word_bound,
                     std::vector<BiRelation> elements, std::vector<int> costs);

    const RingPresentation& ring() const { return *ring_; }
    int word_bound() const { return word_bound_; }
    const std::vector<BiRelation>& elements() const { return elements_; }
    const std::vector<int>& costs() const { return costs_; }

    // Partition of element indices under ~, class representatives first in
    // enumeration order; computed on first use.
    const std::vector<std::vector<std::size_t>>& equivalence_classes() const;

private:
    std::shared_ptr<const RingPresentation> ring_;
    int word_bound_;
    std::vector<BiRelation> elements_;
    std::vector<int> costs_;
    mutable std::optional<std::vector<std::vector<std::size_t>>> classes_;
};

EnumerationSlice enumerate_slice(const RingPresentation& ring, int word_bound);

// Kat(Γ) = Σ_{γ in Γ} kat(γ), computed exactly as the least subgroup of
// T(A) containing every generator katakernel and closed under apply(g, ·)
// for each generator (an ascending fixpoint in a finite lattice).
Subgroup global_katakernel(const RingPresentation& ring);

struct GlobalDomainResult {
    Subgroup domain;
    bool exact;
};
// Intersection of the domains over the slice of the given bound. exact is
// true only when the last enumeration level added nothing and the chain is
// provably constant (finite ambient or all-total generators).
GlobalDomainResult global_domain(const RingPresentation& ring, int word_bound);

// The maximal finite weakly invariant subgroup: the sum of all subgroups of
// T(A) that are weakly invariant under every generator.
Subgroup max_finite_weakly_invariant(const RingPresentation& ring);

struct QuotientAction {
    QuotientPresentation presentation;
    RingPresentation ring;
};
// Push the ring through A -> A/A0. Requires A0 finite and
// apply(g, A0) ⊆ A0 for every generator; the failing generator and a
// witness are reported otherwise (the criterion is an iff).
QuotientAction quotient_action(const RingPresentation& ring, const Subgroup& a0);

// Number of pairwise inequivalent elements in the slice.
std::size_t inequivalence_probe(const EnumerationSlice& slice);

}  // namespace endocalc
