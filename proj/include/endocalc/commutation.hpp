#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endocalc/relation.hpp"

namespace endocalc {

enum class CommutationKind { Sharp, Flat };
enum class InvarianceMode { Invariant, Weak, Almost };

std::string to_string(CommutationKind k);
std::string to_string(InvarianceMode m);

struct CommutationVerdict {
    bool holds = true;
    CommutationKind checked_kind = CommutationKind::Sharp;
    // (input element, violating value) when holds is false
    std::optional<std::pair<Vec, Vec>> witness;
    // For flat commutation: 1 = delta does not preserve Dom(gamma),
    // 2 = gamma does not preserve Dom(delta), 3 = commutator escapes.
    int failed_clause = 0;
};

// (phi psi - psi phi)[A] <= kat(phi) + kat(psi); endogenies only.
CommutationVerdict sharp_commutes(const BiRelation& phi, const BiRelation& psi);

// Domain preservation in both directions plus the commutator containment on
// the common domain; endogenies or quasi-endomorphisms.
CommutationVerdict flat_commutes(const BiRelation& delta, const BiRelation& gamma);

struct InvarianceVerdict {
    bool holds = true;
    std::optional<std::pair<Vec, Vec>> witness;
};

struct InvarianceReport {
    InvarianceMode mode;
    bool holds = true;
    std::vector<InvarianceVerdict> per_generator;
};

// Invariance of B under each generator: gamma[B] <= B (Invariant),
// gamma[B] <= B + kat(gamma) (Weak), or gamma[B] ∩ B of finite index in
// gamma[B] (Almost). Closure over the generated pre-ring follows from the
// generator check for Invariant and Weak modes.
InvarianceReport invariance(const Subgroup& b, const std::vector<BiRelation>& gens,
                            InvarianceMode mode);

// phi commutes (sharply/flatly) with every generator; certifies membership
// in the commutant of the generated ring.
bool commutant_membership(const BiRelation& phi, const std::vector<BiRelation>& gens,
                          CommutationKind kind);

}  // namespace endocalc
