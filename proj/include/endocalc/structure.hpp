#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "endocalc/prering.hpp"

namespace endocalc {

struct GammaImage {
    BiRelation element;
    Subgroup image;
    int rank;
};

// One entry per distinct image of an inequivalent slice element, first
// element in enumeration order kept.
std::vector<GammaImage> gamma_images(const RingPresentation& ring, int word_bound);

// A line certificate is slice-relative: within the checked bound, no
// infinite image of strictly smaller rank sits inside the line.
struct LineCertificate {
    Subgroup line;
    BiRelation witness;  // slice element with image equal to the line
    int slice_bound;
    std::size_t contained_images_checked;
};

// Minimal-rank infinite slice images that contain no infinite slice image of
// strictly smaller rank. All returned certificates share one rank.
std::vector<LineCertificate> find_lines(const RingPresentation& ring, int word_bound);

struct LocalizedRings {
    SubgroupPresentation line;
    RingPresentation gamma_l;  // restrictions of slice elements with image in L
    RingPresentation delta_l;  // restrictions of the second ring's generators
};

// Gamma_L and Delta_L on the line of the certificate. Checks that the line
// is weakly invariant under the second ring's generators, and asserts sharp
// commutation of the produced generator pairs.
LocalizedRings localize_to_line(const RingPresentation& gamma, const RingPresentation& delta,
                                const LineCertificate& cert, int word_bound);

// The quasi-projection pi[a] = (gamma_L)^{-1} gamma[a] + L0, built as
// (converse of gamma restricted to L x L) ∘ gamma + (A x L0).
// Preconditions: im(gamma) ⊆ L, apply(gamma, L) + L0 = L, L0 finite with
// preimage(gamma_L, L0) = L0. The result is verified to be a total endogeny
// with image in L, pi[l] = l + L0 on L, kat(pi) = L0, and pi∘pi ~ pi;
// NotAProjectionError names the first failing clause.
BiRelation quasi_projection(const BiRelation& gamma, const Subgroup& l, const Subgroup& l0);

struct DecompositionReport {
    std::vector<BiRelation> projections;
    std::vector<Subgroup> lines;
    std::vector<Subgroup> line_zeros;  // the L_i0 used by each projection
    Subgroup residual;                 // im(1 - sum pi_i)
    Subgroup bikatakernel_bound;       // sum L_i0 + residual
    bool complete;
    std::string blocking_reason;  // set when complete is false
};

// Iterated line decomposition: pick a line inside the current residual
// image, build its quasi-projection pi', set pi_i = pi' ∘ (1 - sum_{j<i}
// pi_j), stop when the residual image has rank 0. Verifies the report
// invariants and the bikatakernel containment of Kat(Γ) + Kat(Δ).
DecompositionReport decompose_lines(const RingPresentation& gamma, const RingPresentation& delta,
                                    int word_bound);

// First (t, t') in slice-enumeration order with x' ∘ t = y' ∘ t' as graphs
// and the common composite nonzero.
std::optional<std::pair<BiRelation, BiRelation>> ore_witness(const BiRelation& x,
                                                             const BiRelation& y,
                                                             const EnumerationSlice& slice);

struct FieldTable {
    Int order;
    std::vector<BiRelation> elements;  // element 0 is the zero map
    std::size_t zero_index;
    std::size_t one_index;
    std::vector<std::vector<std::size_t>> add_table;
    std::vector<std::vector<std::size_t>> mul_table;
    Vec base_point;                    // a0 with K -> A, m |-> m(a0) bijective
    std::vector<Vec> module_iso;       // module_iso[i] = elements[i](a0)
    std::vector<std::size_t> generator_images;  // index of each input generator
};

struct ZilberFailure {
    std::string reason;  // "not-minimal" | "zero-divisor" | "noncommutative"
    std::string detail;
};

using ZilberResult = std::variant<FieldTable, ZilberFailure>;

// Finite-module field reconstruction: on a finite A with commuting
// automorphism generators, check G-minimality, close the generated
// endomorphism ring under add/compose, certify that it is a finite field,
// and produce the tables together with the module isomorphism A ≅ K^+.
ZilberResult zilber_field(const FgAbGroup& a, const std::vector<BiRelation>& gens);

// Indices of the generators g with rank(ker(g - 1)) = rank(A), i.e. whose
// fixed-point subgroup is commensurable with A.
std::vector<std::size_t> almost_centralizer_in_g(const std::vector<BiRelation>& gens,
                                                 const FgAbGroup& a);

}  // namespace endocalc
