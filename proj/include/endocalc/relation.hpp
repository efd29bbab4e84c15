#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "endocalc/fgab.hpp"

namespace endocalc {

enum class RelationKind { Endogeny, QuasiEndo, Neither };

std::string to_string(RelationKind k);

struct RelationClass {
    RelationKind kind;
    Subgroup kat;
    Subgroup dom;
    Subgroup im;
    Subgroup ker;
    std::optional<Int> dom_index;  // nullopt = INFINITE
};

// A bi-relation on A: a subgroup of A x A, stored as the canonical HNF basis
// of its cover lattice in Z^{2n}. Classified as an endogeny (total, finite
// katakernel), a quasi-endomorphism (finite-index domain, finite katakernel)
// or neither. Graphs are the single source of truth; the anatomy subgroups
// are computed lazily and cached (write-once).
class BiRelation {
public:
    // Graph generated by explicit (input, output) pairs.
    static BiRelation from_pairs(const FgAbGroup& a, const std::vector<std::pair<Vec, Vec>>& pairs);
    // Graph {(x, Mx)}; M must be torsion-compatible.
    static BiRelation from_matrix(const FgAbGroup& a, const IntMat& m);
    static BiRelation identity(const FgAbGroup& a);
    static BiRelation zero(const FgAbGroup& a);
    // Graph A x B for finite B: the endogeny sending every a to B.
    static BiRelation constant_to_subgroup(const FgAbGroup& a, const Subgroup& b);
    // Internal: wrap an already-built cover lattice of A x A.
    static BiRelation from_graph_lattice(const FgAbGroup& a, IntMat cover);

    const FgAbGroup& ambient() const { return d_->ambient; }
    const IntMat& graph() const { return d_->graph; }

    const Subgroup& kat() const;
    const Subgroup& domain() const;
    const Subgroup& image() const;
    const Subgroup& kernel() const;
    RelationKind kind() const;
    RelationClass classify() const;

    // Graph columns as (input, output) element pairs.
    std::vector<std::pair<Vec, Vec>> generator_pairs() const;

    // The coset phi[a], returned as one representative (the full value is
    // rep + kat); nullopt when a is outside the domain.
    std::optional<Vec> value_at(const Vec& a) const;

    bool operator==(const BiRelation& o) const {
        return d_->ambient == o.d_->ambient && d_->graph == o.d_->graph;
    }
    bool operator!=(const BiRelation& o) const { return !(*this == o); }
    bool operator<(const BiRelation& o) const { return d_->graph < o.d_->graph; }

    std::string to_string() const;

private:
    template <class T>
    struct Lazy {
        mutable std::once_flag once;
        mutable std::optional<T> value;
        template <class F>
        const T& get(F&& f) const {
            std::call_once(once, [&] { value.emplace(f()); });
            return *value;
        }
    };
    struct Data {
        FgAbGroup ambient;
        IntMat graph;
        Lazy<Subgroup> kat, dom, im, ker;
        Lazy<RelationKind> kind;
        Data(FgAbGroup a, IntMat g) : ambient(std::move(a)), graph(std::move(g)) {}
    };
    explicit BiRelation(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

// phi + psi: {(a, b1+b2) : (a,b1) in phi, (a,b2) in psi}. For partial inputs
// the domain is Dom(phi) ∩ Dom(psi) and kat(phi+psi) = kat(phi) + kat(psi).
BiRelation add(const BiRelation& phi, const BiRelation& psi);
// Second coordinate negated; always legal, also for partial domains.
BiRelation neg(const BiRelation& phi);
// phi ∘ psi: {(a,b) : exists z, (a,z) in psi and (z,b) in phi}. The domain is
// psi^{-1}[Dom(phi)] ∩ Dom(psi) and kat = phi[kat(psi) ∩ Dom(phi)].
BiRelation compose(const BiRelation& phi, const BiRelation& psi);
// Converse relation (coordinates swapped).
BiRelation converse(const BiRelation& phi);

// phi[B ∩ Dom(phi)] as a subgroup.
Subgroup apply(const BiRelation& phi, const Subgroup& b);
// phi^{-1}[B] = {a : phi[a] <= B + kat(phi)}; preimage(phi, kat(phi)) = ker(phi).
Subgroup preimage(const BiRelation& phi, const Subgroup& b);

// phi ~ psi iff the difference has finite image on the common domain.
// Requires both operands to classify as ENDOGENY or QUASI_ENDO.
bool equivalent(const BiRelation& phi, const BiRelation& psi);

// Restriction-corestriction of phi to B, re-ambiented to B's abstract form.
// Requires B weakly {phi}-invariant for endogenies and almost {phi}-invariant
// for quasi-endomorphisms; throws IllegalRestrictionError with a witness
// otherwise. The same SubgroupPresentation can be reused across relations so
// the restricted relations share one ambient.
BiRelation restrict_corestrict(const BiRelation& phi, const SubgroupPresentation& b);
BiRelation restrict_corestrict(const BiRelation& phi, const Subgroup& b);

// Graph of phi restricted to B x B, kept in ambient coordinates.
IntMat graph_restricted_lattice(const BiRelation& phi, const Subgroup& b);

// phi with its inputs restricted to B (graph ∩ (B x A)), same ambient.
BiRelation domain_restriction(const BiRelation& phi, const Subgroup& b);

// Minimized (input, value) pair among the generators of graph ∩ (B x A)
// whose value fails bad_value; nullopt when none does. Witnesses prefer
// torsion-only coordinates, then the smallest absolute coordinate sum.
std::optional<std::pair<Vec, Vec>> violating_pair(const BiRelation& phi, const Subgroup& inputs,
                                                  const std::function<bool(const Vec&)>& bad_value);

}  // namespace endocalc
