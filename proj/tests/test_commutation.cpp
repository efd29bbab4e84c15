#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "endocalc/commutation.hpp"
#include "endocalc/errors.hpp"
#include "endocalc/instances.hpp"

using namespace endocalc;

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

IntMat mat(std::size_t r, std::size_t c, std::initializer_list<long> vals) {
    IntMat m(r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

Subgroup span(const FgAbGroup& a, std::initializer_list<Vec> gens) {
    return Subgroup::from_elements(a, std::vector<Vec>(gens));
}

BiRelation scalar(const FgAbGroup& a, long n) {
    IntMat m = IntMat::identity(a.coords());
    for (std::size_t i = 0; i < a.coords(); ++i) m(i, i) = n;
    return BiRelation::from_matrix(a, m);
}

const FgAbGroup kZ(1, {});
const FgAbGroup kZ2(2, {});

// Commutant candidates: scalars, constants to finite subgroups, and signed
// sums/products of the generators themselves.
std::vector<BiRelation> candidate_pool(SplitMix64& rng, const FgAbGroup& a,
                                       const std::vector<BiRelation>& gens) {
    std::vector<BiRelation> pool;
    for (long s = 0; s <= 3; ++s) pool.push_back(scalar(a, s));
    pool.push_back(scalar(a, -1));
    if (!a.torsion_factors().empty()) {
        for (int i = 0; i < 3; ++i) {
            Subgroup b = random_finite_subgroup(rng, a);
            pool.push_back(BiRelation::constant_to_subgroup(a, b));
        }
    }
    for (const auto& g : gens) {
        pool.push_back(g);
        pool.push_back(add(g, scalar(a, rng.range(-2, 2))));
        pool.push_back(compose(g, g));
    }
    return pool;
}

}  // namespace

TEST_CASE("sharp commutation examples") {
    // commuting matrices sharply commute
    BiRelation m1 = BiRelation::from_matrix(kZ2, mat(2, 2, {1, 2, 0, 3}));
    BiRelation m2 = BiRelation::from_matrix(kZ2, mat(2, 2, {2, 4, 0, 6}));  // 2*m1
    CHECK(sharp_commutes(m1, m2).holds);

    // shears do not; the verdict carries a reproducible witness
    BiRelation sh1 = BiRelation::from_matrix(kZ2, mat(2, 2, {1, 1, 0, 1}));
    BiRelation sh2 = BiRelation::from_matrix(kZ2, mat(2, 2, {1, 0, 1, 1}));
    CommutationVerdict bad = sharp_commutes(sh1, sh2);
    CHECK(!bad.holds);
    REQUIRE(bad.witness.has_value());
    {
        BiRelation comm = add(compose(sh1, sh2), neg(compose(sh2, sh1)));
        // witness value is attained at the witness input and escapes kat sum
        Vec full(bad.witness->first);
        full.insert(full.end(), bad.witness->second.begin(), bad.witness->second.end());
        CHECK(solve_in_hnf(comm.graph(), full).has_value());
        CHECK(!subgroup_sum(sh1.kat(), sh2.kat()).contains(bad.witness->second));
    }

    // constants sharply commute with gamma exactly when the target is weakly
    // gamma-invariant
    FgAbGroup a(1, {Int(4)});
    BiRelation gamma =
        add(scalar(a, 2), BiRelation::constant_to_subgroup(a, span(a, {v({0, 2})})));
    TorsionLattice tl = torsion_and_finite_lattice(a);
    for (const auto& b : tl.subgroups) {
        BiRelation cb = BiRelation::constant_to_subgroup(a, b);
        bool weak = invariance(b, {gamma}, InvarianceMode::Weak).holds;
        CHECK(sharp_commutes(cb, gamma).holds == weak);
    }

    CHECK_THROWS_AS(sharp_commutes(BiRelation::from_pairs(kZ, {{v({2}), v({1})}}), scalar(kZ, 1)),
                    ClassificationError);
}

TEST_CASE("flat commutation examples") {
    // for endogenies, flat and sharp agree
    SplitMix64 rng(21);
    for (int i = 0; i < 40; ++i) {
        FgAbGroup a = random_nontrivial_group(rng);
        BiRelation phi = random_endogeny(rng, a);
        BiRelation psi = random_endogeny(rng, a);
        CHECK(flat_commutes(phi, psi).holds == sharp_commutes(phi, psi).holds);
    }

    // halving vs doubling on Z flat commute
    BiRelation halving = BiRelation::from_pairs(kZ, {{v({2}), v({1})}});
    CHECK(flat_commutes(halving, scalar(kZ, 2)).holds);

    // torsion escaping the domain fails the first clause with a witness
    FgAbGroup a(1, {Int(2)});
    BiRelation partial_halving = BiRelation::from_pairs(a, {{v({2, 0}), v({1, 0})}});
    BiRelation shift =
        add(BiRelation::identity(a), BiRelation::constant_to_subgroup(a, Subgroup::torsion(a)));
    CommutationVerdict bad = flat_commutes(shift, partial_halving);
    CHECK(!bad.holds);
    CHECK(bad.failed_clause == 1);
    REQUIRE(bad.witness.has_value());
    CHECK(!partial_halving.domain().contains(bad.witness->second));
}

TEST_CASE("invariance examples") {
    SplitMix64 rng(22);
    // kat(gamma) is weakly invariant under a sharply self-commuting gamma:
    // gamma[kat gamma] <= kat(gamma) + kat(gamma) needs the commutation
    // hypothesis, and without it the containment genuinely fails.
    int hits = 0;
    for (int i = 0; i < 80; ++i) {
        FgAbGroup a = random_nontrivial_group(rng);
        BiRelation gamma = random_endogeny(rng, a);
        if (!sharp_commutes(gamma, gamma).holds) continue;
        CHECK(invariance(gamma.kat(), {gamma}, InvarianceMode::Weak).holds);
        ++hits;
    }
    CHECK(hits > 20);
    {
        // swap + constant to <(1,0)> on (Z/2)^2 moves its own katakernel out
        FgAbGroup klein(0, {Int(2), Int(2)});
        BiRelation sw = BiRelation::from_matrix(klein, mat(2, 2, {0, 1, 1, 0}));
        BiRelation gamma = add(sw, BiRelation::constant_to_subgroup(
                                       klein, span(klein, {v({1, 0})})));
        CHECK(!invariance(gamma.kat(), {gamma}, InvarianceMode::Weak).holds);
        CHECK(!sharp_commutes(gamma, gamma).holds);
    }

    // B = 0: invariant iff kat = 0; weakly invariant always
    FgAbGroup a(1, {Int(2)});
    BiRelation with_kat =
        add(scalar(a, 2), BiRelation::constant_to_subgroup(a, Subgroup::torsion(a)));
    CHECK(!invariance(Subgroup::zero(a), {with_kat}, InvarianceMode::Invariant).holds);
    CHECK(invariance(Subgroup::zero(a), {with_kat}, InvarianceMode::Weak).holds);
    CHECK(invariance(Subgroup::zero(a), {scalar(a, 2)}, InvarianceMode::Invariant).holds);

    // 6Z under halving: almost invariant, not invariant
    BiRelation halving = BiRelation::from_pairs(kZ, {{v({2}), v({1})}});
    Subgroup sixZ = span(kZ, {v({6})});
    CHECK(invariance(sixZ, {halving}, InvarianceMode::Almost).holds);
    CHECK(!invariance(sixZ, {halving}, InvarianceMode::Invariant).holds);
    auto report = invariance(sixZ, {halving}, InvarianceMode::Invariant);
    REQUIRE(report.per_generator.size() == 1);
    CHECK(report.per_generator[0].witness.has_value());
}

TEST_CASE("commutant membership and closure (Lemma 3)") {
    SplitMix64 rng(23);
    int done = 0;
    while (done < 60) {
        FgAbGroup a = random_nontrivial_group(rng, 2);
        std::vector<BiRelation> gens{random_endogeny(rng, a)};
        CHECK(commutant_membership(BiRelation::identity(a), gens, CommutationKind::Sharp));

        std::vector<BiRelation> members;
        for (const auto& cand : candidate_pool(rng, a, gens))
            if (cand.kind() == RelationKind::Endogeny &&
                commutant_membership(cand, gens, CommutationKind::Sharp))
                members.push_back(cand);
        if (members.size() < 2) continue;
        const BiRelation& phi = members[rng.below(members.size())];
        const BiRelation& psi = members[rng.below(members.size())];
        CHECK(commutant_membership(add(phi, psi), gens, CommutationKind::Sharp));
        CHECK(commutant_membership(neg(phi), gens, CommutationKind::Sharp));
        CHECK(commutant_membership(compose(phi, psi), gens, CommutationKind::Sharp));
        ++done;
    }
}

TEST_CASE("flat commutant closure (Lemma 13)") {
    SplitMix64 rng(24);
    int done = 0;
    while (done < 60) {
        FgAbGroup a = random_nontrivial_group(rng, 2);
        std::vector<BiRelation> gens{random_quasi(rng, a)};
        std::vector<BiRelation> members;
        for (const auto& cand : candidate_pool(rng, a, gens)) {
            if (cand.kind() == RelationKind::Neither) continue;
            if (commutant_membership(cand, gens, CommutationKind::Flat)) members.push_back(cand);
        }
        if (members.size() < 2) continue;
        const BiRelation& phi = members[rng.below(members.size())];
        const BiRelation& psi = members[rng.below(members.size())];
        CHECK(commutant_membership(add(phi, psi), gens, CommutationKind::Flat));
        CHECK(commutant_membership(neg(phi), gens, CommutationKind::Flat));
        CHECK(commutant_membership(compose(phi, psi), gens, CommutationKind::Flat));
        ++done;
    }
}

TEST_CASE("invariance propagation (Lemma 4)") {
    SplitMix64 rng(25);
    int done = 0;
    while (done < 60) {
        FgAbGroup a = random_nontrivial_group(rng, 2);
        std::vector<BiRelation> gens{random_endogeny(rng, a)};
        std::vector<BiRelation> members;
        for (const auto& cand : candidate_pool(rng, a, gens))
            if (cand.kind() == RelationKind::Endogeny &&
                commutant_membership(cand, gens, CommutationKind::Sharp))
                members.push_back(cand);
        if (members.empty()) continue;
        std::vector<Subgroup> bs{gens[0].kat(), Subgroup::zero(a),
                                 apply(gens[0], Subgroup::torsion(a))};
        Subgroup b = bs[rng.below(bs.size())];
        if (!invariance(b, gens, InvarianceMode::Weak).holds) continue;
        const BiRelation& delta = members[rng.below(members.size())];
        Subgroup db = apply(delta, b);
        CHECK(invariance(db, gens, InvarianceMode::Weak).holds);
        CHECK(invariance(db, gens, InvarianceMode::Almost).holds);
        ++done;
    }
}
