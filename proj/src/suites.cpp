#include "endocalc/suites.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "endocalc/caps.hpp"
#include "endocalc/instances.hpp"

namespace endocalc {

namespace {

BiRelation scalar_rel(const FgAbGroup& a, long n) {
    IntMat m = IntMat::identity(a.coords());
    for (std::size_t i = 0; i < a.coords(); ++i) m(i, i) = n;
    return BiRelation::from_matrix(a, m);
}

// Serialized instance for failure reports: one group plus named relations.
std::string describe_instance(const FgAbGroup& a,
                              const std::vector<std::pair<std::string, BiRelation>>& rels) {
    Workspace ws;
    ws.group_order.push_back("A");
    ws.groups.emplace("A", a);
    for (const auto& [name, rel] : rels) {
        ws.relation_order.push_back(name);
        ws.relations.emplace(
            name, WorkspaceRelation{rel.kind() == RelationKind::QuasiEndo ? "quasi" : "endo", "A",
                                    rel});
    }
    return serialize_workspace(ws);
}

void report_failure(std::vector<SuiteFailure>& fails, const std::string& claim,
                    std::string instance, std::string witness = "") {
    fails.push_back({claim, std::move(instance), std::move(witness)});
}

// Candidates likely to land in the (sharp or flat) commutant of gens:
// scalars, constants to finite subgroups, and words over the generators.
std::vector<BiRelation> commutant_pool(SplitMix64& rng, const FgAbGroup& a,
                                       const std::vector<BiRelation>& gens) {
    std::vector<BiRelation> pool;
    for (long s = 0; s <= 3; ++s) pool.push_back(scalar_rel(a, s));
    pool.push_back(scalar_rel(a, -1));
    if (!a.torsion_factors().empty())
        for (int i = 0; i < 3; ++i)
            pool.push_back(
                BiRelation::constant_to_subgroup(a, random_finite_subgroup(rng, a)));
    for (const auto& g : gens) {
        pool.push_back(g);
        pool.push_back(add(g, scalar_rel(a, rng.range(-2, 2))));
        pool.push_back(compose(g, g));
    }
    return pool;
}

// A quasi-endomorphism whose domain contains the full torsion subgroup.
BiRelation random_quasi_torsion_domain(SplitMix64& rng, const FgAbGroup& a) {
    IntMat m = random_endo_matrix(rng, a);
    std::size_t r = static_cast<std::size_t>(a.free_rank());
    std::size_t n = a.coords();
    IntMat cols(n, n);
    for (std::size_t j = 0; j < r; ++j) cols(j, j) = rng.range(1, 3);
    for (std::size_t t = 0; t < a.torsion_factors().size(); ++t) cols(r + t, r + t) = 1;
    Subgroup d = Subgroup::from_columns(a, cols);
    IntMat raw(2 * n, d.basis().cols());
    for (std::size_t j = 0; j < d.basis().cols(); ++j) {
        Vec v = d.basis().col(j);
        Vec mv = m.mul(v);
        for (std::size_t i = 0; i < n; ++i) {
            raw(i, j) = v[i];
            raw(n + i, j) = mv[i];
        }
    }
    return BiRelation::from_graph_lattice(a, raw);
}

// Exhaustive word-enumeration oracle for the global katakernel: the sum of
// katakernels over all ring words of length up to the bound. Independent of
// the fixpoint computation and of the slice cap.
Subgroup kat_word_oracle(const RingPresentation& ring, int bound) {
    std::vector<BiRelation> elems{BiRelation::zero(ring.ambient())};
    std::vector<int> cost{0};
    std::set<IntMat> seen{elems[0].graph()};
    Subgroup kats = Subgroup::zero(ring.ambient());
    auto push = [&](const BiRelation& r, int c) {
        if (!seen.insert(r.graph()).second) return;
        elems.push_back(r);
        cost.push_back(c);
        kats = subgroup_sum(kats, r.kat());
    };
    if (bound >= 1) {
        if (ring.identity_included()) push(BiRelation::identity(ring.ambient()), 1);
        for (const auto& g : ring.generators()) push(g, 1);
    }
    for (int level = 1; level <= bound; ++level) {
        if (level >= 2) {
            std::size_t frozen = elems.size();
            for (std::size_t i = 0; i < frozen; ++i)
                for (std::size_t j = i; j < frozen; ++j)
                    if (cost[i] >= 1 && cost[j] >= 1 && cost[i] + cost[j] == level)
                        push(add(elems[i], elems[j]), level);
            for (std::size_t i = 0; i < frozen; ++i)
                for (std::size_t j = 0; j < frozen; ++j)
                    if (cost[i] >= 1 && cost[j] >= 1 && cost[i] + cost[j] == level)
                        push(compose(elems[i], elems[j]), level);
        }
        if (ring.kind() == RingKind::PreRing)
            for (std::size_t i = 0; i < elems.size(); ++i)
                if (cost[i] == level) push(neg(elems[i]), level);
    }
    return kats;
}

using SuiteBody = std::function<void(SplitMix64&, int, std::vector<SuiteFailure>&)>;

// ---------------------------------------------------------------- L1

void suite_l1(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    for (int t = 0; t < trials; ++t) {
        FgAbGroup a = random_nontrivial_group(rng);
        BiRelation phi = random_endogeny(rng, a);
        BiRelation psi = random_endogeny(rng, a);
        BiRelation delta = random_endogeny(rng, a);
        auto inst = [&] {
            return describe_instance(a, {{"phi", phi}, {"psi", psi}, {"delta", delta}});
        };

        if (!(compose(delta, add(phi, psi)) ==
              add(compose(delta, phi), compose(delta, psi))))
            report_failure(fails, "L1-left-distributivity", inst());

        BiRelation sum_of_products = add(compose(phi, delta), compose(psi, delta));
        BiRelation product_of_sum = compose(add(phi, psi), delta);
        // the composite of the sum embeds into the sum of composites
        for (const auto& [in, val] : product_of_sum.generator_pairs()) {
            Vec full = in;
            full.insert(full.end(), val.begin(), val.end());
            if (!solve_in_hnf(sum_of_products.graph(), full).has_value()) {
                report_failure(fails, "L1-right-graph-containment", inst());
                break;
            }
        }
        // and the excess is bounded by the finite error term phi[kat(delta)]
        Subgroup allowed =
            subgroup_sum(product_of_sum.kat(), apply(phi, delta.kat()));
        if (!allowed.contains(sum_of_products.kat()))
            report_failure(fails, "L1-right-katakernel-error-term", inst());
        for (int s = 0; s < 20; ++s) {
            Vec input = random_element(rng, a, 4);
            auto v1 = sum_of_products.value_at(input);
            auto v2 = product_of_sum.value_at(input);
            if (!v1 || !v2) {
                report_failure(fails, "L1-totality", inst(), vec_to_string(input));
                break;
            }
            if (!allowed.contains(vec_sub(*v1, *v2))) {
                report_failure(fails, "L1-right-pointwise-containment", inst(),
                               vec_to_string(input));
                break;
            }
        }
    }
    // the stored strict-equality counterexample must still be a counterexample
    std::string text = corpus_file_text("l1_strict.endo");
    Workspace ws = parse_workspace(text, "l1_strict.endo");
    if (serialize_workspace(ws) != text)
        report_failure(fails, "L1-corpus-byte-stability", text);
    BiRelation phi = ws.relation("phi"), psi = ws.relation("psi"), delta = ws.relation("delta");
    if (add(compose(phi, delta), compose(psi, delta)) == compose(add(phi, psi), delta))
        report_failure(fails, "L1-right-strict-equality-unexpectedly-holds", text);
}

void suite_l1_strict(SplitMix64&, int, std::vector<SuiteFailure>& fails) {
    // Expected-failure suite: strict right distributivity on the stored
    // counterexample. The failure below reproduces byte-identically.
    std::string text = corpus_file_text("l1_strict.endo");
    Workspace ws = parse_workspace(text, "l1_strict.endo");
    BiRelation phi = ws.relation("phi"), psi = ws.relation("psi"), delta = ws.relation("delta");
    BiRelation lhs = add(compose(phi, delta), compose(psi, delta));
    BiRelation rhs = compose(add(phi, psi), delta);
    if (!(lhs == rhs))
        report_failure(fails, "L1-right-strict-equality", text,
                       "graphs differ: " + lhs.to_string() + " vs " + rhs.to_string());
}

// ---------------------------------------------------------------- L2

void suite_l2(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    for (int t = 0; t < trials; ++t) {
        FgAbGroup a = random_nontrivial_group(rng);
        BiRelation phi = random_endogeny(rng, a);
        BiRelation psi = random_endogeny(rng, a);
        // equivalent perturbations: add finite-image summands
        BiRelation rho1 = a.torsion_factors().empty()
                              ? BiRelation::zero(a)
                              : BiRelation::constant_to_subgroup(a, random_finite_subgroup(rng, a));
        BiRelation rho2 = a.torsion_factors().empty()
                              ? BiRelation::zero(a)
                              : BiRelation::constant_to_subgroup(a, random_finite_subgroup(rng, a));
        BiRelation phi2 = add(phi, rho1);
        BiRelation psi2 = add(psi, rho2);
        auto inst = [&] {
            return describe_instance(a, {{"phi", phi}, {"phi2", phi2}, {"psi", psi},
                                         {"psi2", psi2}});
        };
        if (!equivalent(phi, phi)) report_failure(fails, "L2-reflexive", inst());
        if (!equivalent(phi, phi2) || !equivalent(psi, psi2)) {
            report_failure(fails, "L2-construction", inst());
            continue;
        }
        if (!equivalent(phi2, phi)) report_failure(fails, "L2-symmetric", inst());
        BiRelation phi3 = add(phi2, rho2);
        if (!equivalent(phi, phi3)) report_failure(fails, "L2-transitive", inst());
        if (!equivalent(add(phi, psi), add(phi2, psi2)))
            report_failure(fails, "L2-sum-congruence", inst());
        if (!equivalent(compose(phi, psi), compose(phi2, psi2)))
            report_failure(fails, "L2-product-congruence", inst());
    }
}

// ---------------------------------------------------------------- L3

void suite_l3(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    int done = 0, attempts = 0;
    while (done < trials && attempts < trials * 20) {
        ++attempts;
        FgAbGroup a = random_nontrivial_group(rng, 2);
        std::vector<BiRelation> gens{random_endogeny(rng, a)};
        std::vector<BiRelation> members;
        for (const auto& cand : commutant_pool(rng, a, gens))
            if (cand.kind() == RelationKind::Endogeny &&
                commutant_membership(cand, gens, CommutationKind::Sharp))
                members.push_back(cand);
        if (members.size() < 2) continue;
        ++done;
        const BiRelation& x = members[rng.below(members.size())];
        const BiRelation& y = members[rng.below(members.size())];
        auto inst = [&] {
            return describe_instance(a, {{"g", gens[0]}, {"x", x}, {"y", y}});
        };
        if (!commutant_membership(add(x, y), gens, CommutationKind::Sharp))
            report_failure(fails, "L3-closure-add", inst());
        if (!commutant_membership(neg(x), gens, CommutationKind::Sharp))
            report_failure(fails, "L3-closure-neg", inst());
        if (!commutant_membership(compose(x, y), gens, CommutationKind::Sharp))
            report_failure(fails, "L3-closure-compose", inst());
        // Lemma 3 point 1 at the generator
        if (!subgroup_sum(x.kat(), gens[0].kat()).contains(apply(x, gens[0].kat())))
            report_failure(fails, "L3-kat-image-bound", inst());
    }
}

// ---------------------------------------------------------------- L4

void suite_l4(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    int done = 0, attempts = 0;
    while (done < trials && attempts < trials * 30) {
        ++attempts;
        FgAbGroup a = random_nontrivial_group(rng, 2);
        std::vector<BiRelation> gens{random_endogeny(rng, a)};
        std::vector<BiRelation> members;
        for (const auto& cand : commutant_pool(rng, a, gens))
            if (cand.kind() == RelationKind::Endogeny &&
                commutant_membership(cand, gens, CommutationKind::Sharp))
                members.push_back(cand);
        if (members.empty()) continue;
        std::vector<Subgroup> candidates{gens[0].kat(), Subgroup::zero(a),
                                         apply(gens[0], Subgroup::torsion(a)),
                                         random_finite_subgroup(rng, a)};
        Subgroup b = candidates[rng.below(candidates.size())];
        const BiRelation& delta = members[rng.below(members.size())];
        Subgroup db = apply(delta, b);
        auto inst = [&] {
            return describe_instance(a, {{"g", gens[0]}, {"delta", delta}});
        };
        bool weak = invariance(b, gens, InvarianceMode::Weak).holds;
        bool almost = invariance(b, gens, InvarianceMode::Almost).holds;
        if (weak || almost) ++done;
        if (weak && !invariance(db, gens, InvarianceMode::Weak).holds)
            report_failure(fails, "L4-weak-propagation", inst(), b.to_string());
        if (almost && !invariance(db, gens, InvarianceMode::Almost).holds)
            report_failure(fails, "L4-almost-propagation", inst(), b.to_string());
    }
}

// ---------------------------------------------------------------- L5/6

void suite_l56(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    for (int t = 0; t < trials; ++t) {
        // restriction is legal exactly when the invariance precondition holds
        {
            FgAbGroup g = random_nontrivial_group(rng);
            BiRelation phi = random_endogeny(rng, g);
            Subgroup b =
                rng.chance(1, 2) ? random_subgroup(rng, g) : random_finite_subgroup(rng, g);
            bool weak = invariance(b, {phi}, InvarianceMode::Weak).holds;
            bool restricted = true;
            try {
                restrict_corestrict(phi, b);
            } catch (const IllegalRestrictionError&) {
                restricted = false;
            }
            if (weak != restricted)
                report_failure(fails, "L5-restriction-iff-weak-invariance",
                               describe_instance(g, {{"phi", phi}}), b.to_string());
        }

        // global katakernel: fixpoint vs word-enumeration oracle at length 6.
        // Katakernels of endogeny words evolve entirely inside the torsion
        // subgroup, so finite ambients carry the whole story.
        FgAbGroup a = random_nontrivial_group(rng, 0);
        if (a.torsion_order() > 64) continue;
        std::vector<BiRelation> gens;
        std::size_t count = 1 + rng.below(3);
        for (std::size_t i = 0; i < count; ++i) gens.push_back(random_endogeny(rng, a));
        RingPresentation gamma(a, gens, RingKind::PreRing);
        Subgroup fix = global_katakernel(gamma);
        std::vector<std::pair<std::string, BiRelation>> named;
        for (std::size_t i = 0; i < gens.size(); ++i)
            named.emplace_back("g" + std::to_string(i), gens[i]);
        if (kat_word_oracle(gamma, 6) != fix)
            report_failure(fails, "L6-katakernel-fixpoint-vs-oracle", describe_instance(a, named));
        // the fixpoint is invariant under the ring itself
        if (!invariance(fix, gens, InvarianceMode::Invariant).holds)
            report_failure(fails, "L6-katakernel-gamma-invariant", describe_instance(a, named));

        // a sharply commuting second ring sees it weakly invariant
        std::vector<BiRelation> deltas;
        for (const auto& cand : commutant_pool(rng, a, gens)) {
            if (cand.kind() != RelationKind::Endogeny) continue;
            bool ok = true;
            for (const auto& g : gens) ok = ok && sharp_commutes(cand, g).holds;
            if (ok) deltas.push_back(cand);
            if (deltas.size() >= 2) break;
        }
        if (deltas.empty()) continue;
        if (!invariance(fix, deltas, InvarianceMode::Weak).holds)
            report_failure(fails, "L6-katakernel-weakly-delta-invariant",
                           describe_instance(a, named));
        RingPresentation delta_ring(a, deltas, RingKind::PreRing);
        Subgroup bikat = subgroup_sum(fix, global_katakernel(delta_ring));
        std::vector<BiRelation> both = gens;
        both.insert(both.end(), deltas.begin(), deltas.end());
        if (!invariance(bikat, both, InvarianceMode::Invariant).holds)
            report_failure(fails, "L6-bikatakernel-invariant", describe_instance(a, named));
        // Lemma 6.3: preimages of a weakly Delta-invariant A0 containing the
        // bikatakernel stay weakly Delta-invariant
        for (const auto& g : gens)
            if (!invariance(preimage(g, bikat), deltas, InvarianceMode::Weak).holds)
                report_failure(fails, "L6-preimage-weakly-invariant",
                               describe_instance(a, named));
    }
}

// ---------------------------------------------------------------- L7

void suite_l7(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    for (int t = 0; t < trials; ++t) {
        FgAbGroup a = random_nontrivial_group(rng);
        BiRelation phi = rng.chance(1, 2) ? random_endogeny(rng, a) : random_quasi(rng, a);
        if (phi.kind() == RelationKind::Neither) {
            report_failure(fails, "L7-generator-kind", describe_instance(a, {{"phi", phi}}));
            continue;
        }
        if (phi.domain().rank() != phi.image().rank() + phi.kernel().rank())
            report_failure(fails, "L7-rank-additivity", describe_instance(a, {{"phi", phi}}));
    }
}

// ---------------------------------------------------------------- Q6

void suite_q6(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    for (int t = 0; t < trials; ++t) {
        FgAbGroup a = random_nontrivial_group(rng);
        BiRelation phi = random_quasi(rng, a);
        BiRelation psi = random_quasi(rng, a);
        BiRelation tau = random_quasi(rng, a);
        auto inst = [&] {
            return describe_instance(a, {{"phi", phi}, {"psi", psi}, {"tau", tau}});
        };
        if (add(phi, psi).domain() != subgroup_intersect(phi.domain(), psi.domain()))
            report_failure(fails, "Q6-sum-domain-formula", inst());
        if (compose(phi, psi).domain() !=
            subgroup_intersect(preimage(psi, phi.domain()), psi.domain()))
            report_failure(fails, "Q6-product-domain-formula", inst());
        if (add(phi, psi).kat() != subgroup_sum(phi.kat(), psi.kat()))
            report_failure(fails, "Q6-sum-katakernel-formula", inst());
        if (compose(phi, psi).kat() != apply(phi, psi.kat()))
            report_failure(fails, "Q6-product-katakernel-formula", inst());
        // monoid laws
        if (!(add(add(phi, psi), tau) == add(phi, add(psi, tau))))
            report_failure(fails, "Q6-sum-associative", inst());
        if (!(add(phi, psi) == add(psi, phi))) report_failure(fails, "Q6-sum-commutative", inst());
        if (!(compose(compose(phi, psi), tau) == compose(phi, compose(psi, tau))))
            report_failure(fails, "Q6-product-associative", inst());
        if (!(add(phi, BiRelation::zero(a)) == phi) ||
            !(compose(phi, BiRelation::identity(a)) == phi) ||
            !(compose(BiRelation::identity(a), phi) == phi))
            report_failure(fails, "Q6-units", inst());

        // conditional left distributivity: with the summand katakernels inside
        // Dom(psi), the two sides coincide on the common domain (the sum of
        // composites; the composite of the sum can be defined on more inputs)
        BiRelation wide = random_quasi_torsion_domain(rng, a);
        BiRelation f = random_endogeny(rng, a);
        BiRelation g = random_endogeny(rng, a);
        if (wide.domain().contains(f.kat()) || wide.domain().contains(g.kat())) {
            BiRelation lhs = compose(wide, add(f, g));
            BiRelation rhs = add(compose(wide, f), compose(wide, g));
            if (!(domain_restriction(lhs, rhs.domain()) == rhs))
                report_failure(fails, "Q6-conditional-left-distributivity",
                               describe_instance(a, {{"psi", wide}, {"phi", f}, {"gamma", g}}));
        }
    }
    // stored distributivity counterexample still reproduces
    std::string text = corpus_file_text("q6_distrib.endo");
    Workspace ws = parse_workspace(text, "q6_distrib.endo");
    if (serialize_workspace(ws) != text) report_failure(fails, "Q6-corpus-byte-stability", text);
    BiRelation psi = ws.relation("psi"), phi = ws.relation("phi"), gamma = ws.relation("gamma");
    if (compose(psi, add(phi, gamma)) == add(compose(psi, phi), compose(psi, gamma)))
        report_failure(fails, "Q6-distributivity-counterexample-vanished", text);
}

// ---------------------------------------------------------------- L13

void suite_l13(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    int done = 0, attempts = 0;
    while (done < trials && attempts < trials * 20) {
        ++attempts;
        FgAbGroup a = random_nontrivial_group(rng, 2);
        std::vector<BiRelation> gens{random_quasi(rng, a)};
        std::vector<BiRelation> members;
        for (const auto& cand : commutant_pool(rng, a, gens)) {
            if (cand.kind() == RelationKind::Neither) continue;
            if (commutant_membership(cand, gens, CommutationKind::Flat)) members.push_back(cand);
        }
        if (members.size() < 2) continue;
        ++done;
        const BiRelation& x = members[rng.below(members.size())];
        const BiRelation& y = members[rng.below(members.size())];
        auto inst = [&] {
            return describe_instance(a, {{"g", gens[0]}, {"x", x}, {"y", y}});
        };
        if (!commutant_membership(add(x, y), gens, CommutationKind::Flat))
            report_failure(fails, "L13-closure-add", inst());
        if (!commutant_membership(neg(x), gens, CommutationKind::Flat))
            report_failure(fails, "L13-closure-neg", inst());
        if (!commutant_membership(compose(x, y), gens, CommutationKind::Flat))
            report_failure(fails, "L13-closure-compose", inst());
        if (!subgroup_sum(x.kat(), gens[0].kat()).contains(apply(x, gens[0].kat())))
            report_failure(fails, "L13-kat-image-bound", inst());
    }
    // the stored clause-1 failure still fails clause 1
    std::string text = corpus_file_text("flat_clause1.endo");
    Workspace ws = parse_workspace(text, "flat_clause1.endo");
    if (serialize_workspace(ws) != text) report_failure(fails, "L13-corpus-byte-stability", text);
    CommutationVerdict v = flat_commutes(ws.relation("shift"), ws.relation("halving"));
    if (v.holds || v.failed_clause != 1 || !v.witness)
        report_failure(fails, "L13-clause1-counterexample-vanished", text);
}

// ---------------------------------------------------------------- L14/15

void suite_l1415(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    int done = 0, attempts = 0;
    while (done < trials && attempts < trials * 20) {
        ++attempts;
        FgAbGroup a = random_nontrivial_group(rng, 1);
        if (a.torsion_order() > 64) continue;
        std::vector<BiRelation> gamma_gens{random_quasi(rng, a)};
        std::vector<BiRelation> delta_gens;
        for (const auto& cand : commutant_pool(rng, a, gamma_gens)) {
            if (cand.kind() == RelationKind::Neither) continue;
            bool ok = true;
            for (const auto& g : gamma_gens) ok = ok && flat_commutes(cand, g).holds;
            if (ok) delta_gens.push_back(cand);
            if (delta_gens.size() >= 2) break;
        }
        if (delta_gens.empty()) continue;
        ++done;
        RingPresentation gamma(a, gamma_gens, RingKind::NearRing);
        RingPresentation delta(a, delta_gens, RingKind::NearRing);
        std::vector<std::pair<std::string, BiRelation>> named{{"g0", gamma_gens[0]}};
        for (std::size_t i = 0; i < delta_gens.size(); ++i)
            named.emplace_back("d" + std::to_string(i), delta_gens[i]);
        auto inst = [&] { return describe_instance(a, named); };

        // Lemma 15.1: the bikatakernel is invariant under both rings
        Subgroup bikat = subgroup_sum(global_katakernel(gamma), global_katakernel(delta));
        std::vector<BiRelation> both = gamma_gens;
        both.insert(both.end(), delta_gens.begin(), delta_gens.end());
        if (!invariance(bikat, both, InvarianceMode::Invariant).holds)
            report_failure(fails, "L15-bikatakernel-invariant", inst());
        // Lemma 15.2: preimages of an invariant A0 containing Kat(Delta)
        for (const auto& d : delta_gens)
            if (!invariance(preimage(d, bikat), gamma_gens, InvarianceMode::Invariant).holds)
                report_failure(fails, "L15-preimage-invariant", inst());

        // Lemma 14 at slices: when the global domain is exact, every slice
        // element maps it into itself up to its katakernel
        GlobalDomainResult gd = global_domain(gamma, 3);
        if (gd.exact) {
            EnumerationSlice slice = enumerate_slice(gamma, 3);
            for (const auto& e : slice.elements())
                if (!subgroup_sum(gd.domain, e.kat()).contains(apply(e, gd.domain))) {
                    report_failure(fails, "L14-domain-weakly-invariant", inst());
                    break;
                }
        }
    }
}

// ---------------------------------------------------------------- L19

void suite_l19(SplitMix64& rng, int trials, std::vector<SuiteFailure>& fails) {
    for (int t = 0; t < trials; ++t) {
        FgAbGroup a = random_nontrivial_group(rng, 1);
        if (a.torsion_order() > 64) continue;
        bool near = rng.chance(1, 2);
        std::vector<BiRelation> gens;
        std::size_t count = 1 + rng.below(2);
        for (std::size_t i = 0; i < count; ++i)
            gens.push_back(near ? random_quasi(rng, a) : random_endogeny(rng, a));
        RingPresentation ring(a, gens, near ? RingKind::NearRing : RingKind::PreRing);
        Subgroup kat = global_katakernel(ring);
        std::vector<std::pair<std::string, BiRelation>> named;
        for (std::size_t i = 0; i < gens.size(); ++i)
            named.emplace_back("g" + std::to_string(i), gens[i]);
        auto inst = [&] { return describe_instance(a, named); };

        // the fixpoint is always a legal kernel
        QuotientAction qa = quotient_action(ring, kat);
        std::size_t n = a.coords();
        auto push_through = [&](const BiRelation& r) {
            std::vector<std::pair<Vec, Vec>> pairs;
            for (std::size_t c = 0; c < r.graph().cols(); ++c) {
                Vec col = r.graph().col(c);
                pairs.emplace_back(qa.presentation.project(Vec(col.begin(), col.begin() + n)),
                                   qa.presentation.project(Vec(col.begin() + n, col.end())));
            }
            return BiRelation::from_pairs(qa.presentation.quotient, pairs);
        };
        EnumerationSlice slice = enumerate_slice(ring, 2);
        const auto& es = slice.elements();
        for (std::size_t i = 0; i < es.size() && i < 6; ++i)
            for (std::size_t j = i; j < es.size() && j < 6; ++j) {
                BiRelation ps = push_through(add(es[i], es[j]));
                BiRelation sp = add(push_through(es[i]), push_through(es[j]));
                BiRelation pc = push_through(compose(es[i], es[j]));
                BiRelation cp = compose(push_through(es[i]), push_through(es[j]));
                if (near) {
                    // partial domains only agree up to finite differences
                    if (!equivalent(ps, sp) || !equivalent(pc, cp))
                        report_failure(fails, "L19-homomorphism-up-to-equivalence", inst());
                } else {
                    if (!(ps == sp) || !(pc == cp))
                        report_failure(fails, "L19-homomorphism", inst());
                }
                // equivalence preserved and reflected
                if (equivalent(es[i], es[j]) !=
                    equivalent(push_through(es[i]), push_through(es[j])))
                    report_failure(fails, "L19-equivalence-preserved-reflected", inst());
            }
    }

    // the iff direction: a constructed non-invariant kernel is rejected with
    // the offending generator and witness
    FgAbGroup b(1, {Int(2), Int(4)});
    IntMat m = IntMat::identity(3);
    m(1, 1) = 0;
    m(2, 1) = 2;
    BiRelation g = BiRelation::from_matrix(b, m);
    RingPresentation bad(b, {scalar_rel(b, 2), g}, RingKind::PreRing);
    Subgroup a0 = Subgroup::from_elements(b, {{Int(0), Int(1), Int(0)}});
    bool rejected = false;
    try {
        quotient_action(bad, a0);
    } catch (const PreconditionError& e) {
        rejected = std::string(e.what()).find("generator 1") != std::string::npos &&
                   std::string(e.what()).find("escapes") != std::string::npos;
    }
    if (!rejected)
        report_failure(fails, "L19-rejects-non-invariant-kernel",
                       describe_instance(b, {{"g", g}}));
}

// ---------------------------------------------------------------- L10

void suite_l10(SplitMix64&, int, std::vector<SuiteFailure>& fails) {
    for (const auto& cd : curated_decompositions()) {
        try {
            DecompositionReport rep = decompose_lines(cd.gamma, cd.delta, cd.bound);
            if (rep.complete != cd.expect_complete) {
                report_failure(fails, "L10-completeness", cd.id, rep.blocking_reason);
                continue;
            }
            if (!rep.complete) continue;
            if (cd.expect_projections >= 0 &&
                static_cast<int>(rep.projections.size()) != cd.expect_projections)
                report_failure(fails, "L10-projection-count", cd.id,
                               std::to_string(rep.projections.size()));
            // every projection flat-commutes with the second ring's generators
            for (const auto& pi : rep.projections)
                for (const auto& d : cd.delta.generators())
                    if (!flat_commutes(pi, d).holds)
                        report_failure(fails, "L10-projection-commutes-with-delta", cd.id);
        } catch (const EndocalcError& e) {
            report_failure(fails, "L10-exception", cd.id, e.what());
        }
    }
}

// ---------------------------------------------------------------- Z11

void suite_z11(SplitMix64&, int, std::vector<SuiteFailure>& fails) {
    // order 4 from the order-3 automorphism of (Z/2)^2
    {
        Workspace ws = load_corpus_workspace("zilber_f4.endo");
        ZilberResult res = zilber_field(ws.group("K"), {ws.relation("alpha")});
        if (!std::holds_alternative<FieldTable>(res))
            report_failure(fails, "Z11-f4-not-a-field", "zilber_f4.endo",
                           std::get<ZilberFailure>(res).reason);
        else if (std::get<FieldTable>(res).order != 4)
            report_failure(fails, "Z11-f4-order", "zilber_f4.endo",
                           std::get<FieldTable>(res).order.str());
    }
    // order 25 from a primitive companion matrix over F_5
    {
        Workspace ws = load_corpus_workspace("zilber_f25.endo");
        ZilberResult res = zilber_field(ws.group("K"), {ws.relation("alpha")});
        if (!std::holds_alternative<FieldTable>(res))
            report_failure(fails, "Z11-f25-not-a-field", "zilber_f25.endo",
                           std::get<ZilberFailure>(res).reason);
        else if (std::get<FieldTable>(res).order != 25)
            report_failure(fails, "Z11-f25-order", "zilber_f25.endo",
                           std::get<FieldTable>(res).order.str());
    }
    // Z/4 with x3 is not G-minimal
    {
        Workspace ws = load_corpus_workspace("zilber_z4.endo");
        ZilberResult res = zilber_field(ws.group("K"), {ws.relation("alpha")});
        if (!std::holds_alternative<ZilberFailure>(res) ||
            std::get<ZilberFailure>(res).reason != "not-minimal")
            report_failure(fails, "Z11-z4-should-fail-minimality", "zilber_z4.endo");
    }
}

std::map<std::string, SuiteBody>& suite_table() {
    static std::map<std::string, SuiteBody> table{
        {"L1-distributivity", suite_l1},
        {"L1-right-distributivity-equality", suite_l1_strict},
        {"L2-ring", suite_l2},
        {"L3-csharp", suite_l3},
        {"L4-propagation", suite_l4},
        {"L5/6-restriction-kat", suite_l56},
        {"L7-rank", suite_l7},
        {"Q6-nearring", suite_q6},
        {"L13-cflat", suite_l13},
        {"L14/15-global", suite_l1415},
        {"L19-quotient", suite_l19},
        {"L10-projection", suite_l10},
        {"Z11-field", suite_z11},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static std::vector<std::string> names{
        "L1-distributivity", "L1-right-distributivity-equality", "L2-ring", "L3-csharp",
        "L4-propagation", "L5/6-restriction-kat", "L7-rank", "Q6-nearring", "L13-cflat",
        "L14/15-global", "L19-quotient", "L10-projection", "Z11-field"};
    return names;
}

bool suite_expects_failures(const std::string& name) {
    return name == "L1-right-distributivity-equality";
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials) {
    auto it = suite_table().find(name);
    if (it == suite_table().end()) {
        std::string msg = "unknown suite: " + name + "; available:";
        for (const auto& n : suite_names()) msg += " " + n;
        throw EndocalcError(msg);
    }
    SuiteReport report;
    report.suite_name = name;
    report.seed = seed;
    report.trials = trials;
    SplitMix64 rng(seed);
    auto start = std::chrono::steady_clock::now();
    it->second(rng, trials, report.failures);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string corpus_dir() {
    if (const char* env = std::getenv("ENDOCALC_CORPUS")) return env;
#ifdef ENDOCALC_CORPUS_DIR
    return ENDOCALC_CORPUS_DIR;
#else
    return "corpus";
#endif
}

std::string corpus_file_text(const std::string& filename) {
    std::string path = corpus_dir() + "/" + filename;
    std::ifstream in(path);
    if (!in) throw EndocalcError("cannot open corpus file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Workspace load_corpus_workspace(const std::string& filename) {
    return parse_workspace(corpus_file_text(filename), filename);
}

std::vector<CuratedDecomposition> curated_decompositions() {
    std::vector<CuratedDecomposition> out;
    FgAbGroup z2(2, {});

    auto mat_of = [](const FgAbGroup& g, std::vector<long> vals) {
        std::size_t n = g.coords();
        IntMat m(n, n);
        auto it = vals.begin();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = *it++;
        return BiRelation::from_matrix(g, m);
    };

    BiRelation e11 = mat_of(z2, {1, 0, 0, 0});
    BiRelation e22 = mat_of(z2, {0, 0, 0, 1});
    BiRelation swp = mat_of(z2, {0, 1, 1, 0});
    RingPresentation scalars2(z2, {scalar_rel(z2, 2)}, RingKind::PreRing);

    out.push_back({"planar-full", RingPresentation(z2, {e11, e22, swp}, RingKind::PreRing),
                   scalars2, 2, true, 2});
    out.push_back({"planar-two-gen", RingPresentation(z2, {e11, swp}, RingKind::PreRing),
                   scalars2, 3, true, 2});
    out.push_back({"planar-scaled",
                   RingPresentation(z2, {e11, e22, swp, mat_of(z2, {2, 0, 0, 0})},
                                    RingKind::PreRing),
                   scalars2, 2, true, 2});

    FgAbGroup z4(4, {});
    BiRelation p1 = mat_of(z4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    BiRelation p2 = mat_of(z4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
    BiRelation bsw = mat_of(z4, {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0});
    out.push_back({"z4-block", RingPresentation(z4, {p1, p2, bsw}, RingKind::PreRing),
                   RingPresentation(z4, {scalar_rel(z4, 2)}, RingKind::PreRing), 2, true, 2});

    FgAbGroup z3(3, {});
    BiRelation f11 = mat_of(z3, {1, 0, 0, 0, 0, 0, 0, 0, 0});
    BiRelation f22 = mat_of(z3, {0, 0, 0, 0, 1, 0, 0, 0, 0});
    BiRelation f33 = mat_of(z3, {0, 0, 0, 0, 0, 0, 0, 0, 1});
    BiRelation cyc = mat_of(z3, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    out.push_back({"z3-cycle", RingPresentation(z3, {f11, f22, f33, cyc}, RingKind::PreRing),
                   RingPresentation(z3, {scalar_rel(z3, 3)}, RingKind::PreRing), 2, true, 3});

    FgAbGroup z(1, {});
    out.push_back({"rank-one", RingPresentation(z, {}, RingKind::PreRing),
                   RingPresentation(z, {}, RingKind::PreRing), 2, true, 1});

    FgAbGroup zt(2, {Int(2)});
    BiRelation g11 = add(mat_of(zt, {1, 0, 0, 0, 0, 0, 0, 0, 0}),
                         BiRelation::constant_to_subgroup(zt, Subgroup::torsion(zt)));
    BiRelation g22 = mat_of(zt, {0, 0, 0, 0, 1, 0, 0, 0, 0});
    BiRelation gsw = mat_of(zt, {0, 1, 0, 1, 0, 0, 0, 0, 1});
    out.push_back({"torsion-augmented", RingPresentation(zt, {g11, g22, gsw}, RingKind::PreRing),
                   RingPresentation(zt, {scalar_rel(zt, 2)}, RingKind::PreRing), 2, true, 2});

    FgAbGroup zc(1, {Int(2)});
    BiRelation ct = BiRelation::constant_to_subgroup(zc, Subgroup::torsion(zc));
    out.push_back({"rank-one-torsion", RingPresentation(zc, {ct}, RingKind::PreRing),
                   RingPresentation(zc, {ct}, RingKind::PreRing), 2, true, 1});

    FgAbGroup zc4(1, {Int(4)});
    BiRelation ct4 = BiRelation::constant_to_subgroup(zc4, Subgroup::torsion(zc4));
    out.push_back({"rank-one-torsion-z4", RingPresentation(zc4, {ct4}, RingKind::PreRing),
                   RingPresentation(zc4, {scalar_rel(zc4, 3)}, RingKind::PreRing), 2, true, 1});

    FgAbGroup z4b(4, {});
    BiRelation q11 = mat_of(z4b, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    BiRelation q22 = mat_of(z4b, {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    BiRelation q33 = mat_of(z4b, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0});
    BiRelation q44 = mat_of(z4b, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
    BiRelation rot = mat_of(z4b, {0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0});
    out.push_back({"z4-coordinates",
                   RingPresentation(z4b, {q11, q22, q33, q44, rot}, RingKind::PreRing),
                   RingPresentation(z4b, {scalar_rel(z4b, 2)}, RingKind::PreRing), 2, true, 4});

    // a blocked decomposition: no quasi-projection exists for pure doubling
    out.push_back({"blocked-doubling",
                   RingPresentation(z, {scalar_rel(z, 2)}, RingKind::PreRing, false),
                   RingPresentation(z, {scalar_rel(z, 2)}, RingKind::PreRing, false), 3, false,
                   -1});
    return out;
}

}  // namespace endocalc
