#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "endocalc/commutation.hpp"
#include "endocalc/errors.hpp"
#include "endocalc/instances.hpp"
#include "endocalc/prering.hpp"

using namespace endocalc;

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

BiRelation scalar(const FgAbGroup& a, long n) {
    IntMat m = IntMat::identity(a.coords());
    for (std::size_t i = 0; i < a.coords(); ++i) m(i, i) = n;
    return BiRelation::from_matrix(a, m);
}

const FgAbGroup kZ(1, {});

bool slice_has(const EnumerationSlice& s, const BiRelation& r) {
    for (const auto& e : s.elements())
        if (e == r) return true;
    return false;
}

// Independent oracle: graphs of all ring words per exact length, built
// recursively without the production enumerator's bookkeeping.
std::vector<std::set<IntMat>> word_graphs_by_length(const RingPresentation& ring, int bound) {
    std::vector<std::set<IntMat>> by_len(bound + 1);
    auto rel = [&](const IntMat& g) { return BiRelation::from_graph_lattice(ring.ambient(), g); };
    by_len[0].insert(BiRelation::zero(ring.ambient()).graph());
    if (bound >= 1) {
        if (ring.identity_included())
            by_len[1].insert(BiRelation::identity(ring.ambient()).graph());
        for (const auto& g : ring.generators()) by_len[1].insert(g.graph());
        if (ring.kind() == RingKind::PreRing)
            for (auto gcopy : std::set<IntMat>(by_len[1])) by_len[1].insert(neg(rel(gcopy)).graph());
    }
    for (int c = 2; c <= bound; ++c) {
        for (int a = 1; a < c; ++a) {
            int b = c - a;
            for (const auto& x : by_len[a])
                for (const auto& y : by_len[b]) {
                    by_len[c].insert(add(rel(x), rel(y)).graph());
                    by_len[c].insert(compose(rel(x), rel(y)).graph());
                    by_len[c].insert(compose(rel(y), rel(x)).graph());
                }
        }
        if (ring.kind() == RingKind::PreRing)
            for (auto gcopy : std::set<IntMat>(by_len[c])) by_len[c].insert(neg(rel(gcopy)).graph());
    }
    return by_len;
}

}  // namespace

TEST_CASE("slice contents for the doubling ring") {
    RingPresentation ring(kZ, {scalar(kZ, 2)}, RingKind::PreRing);
    EnumerationSlice s = enumerate_slice(ring, 3);
    for (long k : {0L, 1L, 2L, 3L, 4L, -2L, 8L}) CHECK(slice_has(s, scalar(kZ, k)));
    CHECK(!slice_has(s, scalar(kZ, 16)));  // needs length 4 = 2*2*2*2

    // deterministic: same call gives identical element order
    EnumerationSlice s2 = enumerate_slice(ring, 3);
    REQUIRE(s.elements().size() == s2.elements().size());
    for (std::size_t i = 0; i < s.elements().size(); ++i) CHECK(s.elements()[i] == s2.elements()[i]);
}

TEST_CASE("slice of the identity ring at bound 2") {
    RingPresentation ring(kZ, {}, RingKind::PreRing);
    EnumerationSlice s = enumerate_slice(ring, 2);
    std::set<IntMat> got;
    for (const auto& e : s.elements()) got.insert(e.graph());
    std::set<IntMat> expect;
    for (long k : {0L, 1L, -1L, 2L, -2L}) expect.insert(scalar(kZ, k).graph());
    CHECK(got == expect);
}

TEST_CASE("empty generators with identity at bound 0") {
    RingPresentation ring(kZ, {}, RingKind::PreRing);
    EnumerationSlice s = enumerate_slice(ring, 0);
    REQUIRE(s.elements().size() == 1);
    CHECK(s.elements()[0] == BiRelation::zero(kZ));
    EnumerationSlice s1 = enumerate_slice(ring, 1);
    CHECK(s1.elements().size() == 3);  // 0, 1, -1
}

TEST_CASE("slice agrees with the word-enumeration oracle") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        FgAbGroup a = random_nontrivial_group(rng, 1);
        bool pre = rng.chance(1, 2);
        std::vector<BiRelation> gens;
        std::size_t count = 1 + rng.below(2);
        for (std::size_t i = 0; i < count; ++i)
            gens.push_back(pre ? random_endogeny(rng, a) : random_quasi(rng, a));
        RingPresentation ring(a, gens, pre ? RingKind::PreRing : RingKind::NearRing,
                              rng.chance(1, 2));
        int bound = 3;
        EnumerationSlice s = enumerate_slice(ring, bound);
        auto oracle = word_graphs_by_length(ring, bound);
        std::set<IntMat> expect;
        for (const auto& level : oracle) expect.insert(level.begin(), level.end());
        std::set<IntMat> got;
        for (const auto& e : s.elements()) got.insert(e.graph());
        CHECK(got == expect);
        // stored cost is the minimal word length
        for (std::size_t i = 0; i < s.elements().size(); ++i) {
            int c = s.costs()[i];
            bool at_c = oracle[c].count(s.elements()[i].graph()) > 0;
            bool earlier = false;
            for (int l = 0; l < c; ++l)
                earlier = earlier || oracle[l].count(s.elements()[i].graph());
            CHECK(at_c);
            CHECK(!earlier);
        }
    }
}

TEST_CASE("global katakernel examples and fixpoint-vs-oracle") {
    RingPresentation doubling(kZ, {scalar(kZ, 2)}, RingKind::PreRing);
    CHECK(global_katakernel(doubling).is_zero());

    FgAbGroup a(1, {Int(2)});
    Subgroup t = Subgroup::torsion(a);
    RingPresentation mixed(a, {BiRelation::constant_to_subgroup(a, t), scalar(a, 2)},
                           RingKind::PreRing);
    CHECK(global_katakernel(mixed) == t);

    // bikatakernel of two rings is the sum of the two fixpoints
    RingPresentation other(a, {scalar(a, 3)}, RingKind::PreRing);
    CHECK(subgroup_sum(global_katakernel(mixed), global_katakernel(other)) == t);

    // fixpoint equals the sum of katakernels over an exhaustive word slice
    SplitMix64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        FgAbGroup g = random_nontrivial_group(rng, 1);
        if (g.torsion_order() > 64) continue;
        std::vector<BiRelation> gens;
        std::size_t count = 1 + rng.below(3);
        for (std::size_t i = 0; i < count; ++i) gens.push_back(random_endogeny(rng, g));
        RingPresentation ring(g, gens, RingKind::PreRing);
        Subgroup fix = global_katakernel(ring);
        EnumerationSlice s = enumerate_slice(ring, 5);
        Subgroup oracle = Subgroup::zero(g);
        for (const auto& e : s.elements()) oracle = subgroup_sum(oracle, e.kat());
        CHECK(oracle == fix);
        CHECK(Subgroup::torsion(g).contains(fix));
    }
}

TEST_CASE("global domain examples") {
    BiRelation halving = BiRelation::from_pairs(kZ, {{v({2}), v({1})}});
    RingPresentation ring(kZ, {halving}, RingKind::NearRing);
    GlobalDomainResult r = global_domain(ring, 3);
    CHECK(r.domain == Subgroup::from_elements(kZ, {v({8})}));
    CHECK(!r.exact);

    RingPresentation total(kZ, {scalar(kZ, 2), scalar(kZ, 3)}, RingKind::NearRing);
    GlobalDomainResult rt = global_domain(total, 3);
    CHECK(rt.domain.is_full());
    CHECK(rt.exact);

    // on a finite group the domain chain stabilizes
    FgAbGroup f(0, {Int(2), Int(4)});
    BiRelation partial =
        BiRelation::from_pairs(f, {{v({0, 2}), v({0, 2})}, {v({1, 0}), v({1, 0})}});
    RingPresentation fr(f, {partial}, RingKind::NearRing);
    GlobalDomainResult rf = global_domain(fr, 4);
    CHECK(rf.exact);
    // Lemma 14 at slices: apply(d, D) ⊆ D + kat(d) for slice elements
    EnumerationSlice s = enumerate_slice(fr, 4);
    for (const auto& e : s.elements())
        CHECK(subgroup_sum(rf.domain, e.kat()).contains(apply(e, rf.domain)));

    RingPresentation pre(kZ, {scalar(kZ, 2)}, RingKind::PreRing);
    CHECK_THROWS_AS(global_domain(pre, 2), PreconditionError);
}

TEST_CASE("maximal finite weakly invariant subgroup") {
    FgAbGroup a(1, {Int(2)});
    RingPresentation doubling(a, {scalar(a, 2)}, RingKind::PreRing);
    CHECK(max_finite_weakly_invariant(doubling) == Subgroup::torsion(a));

    FgAbGroup z2(2, {});
    RingPresentation torsion_free(z2, {scalar(z2, 2)}, RingKind::PreRing);
    CHECK(max_finite_weakly_invariant(torsion_free).is_zero());

    FgAbGroup b(1, {Int(2), Int(4)});
    RingPresentation with_const(
        b, {BiRelation::constant_to_subgroup(b, Subgroup::torsion(b)), scalar(b, 3)},
        RingKind::PreRing);
    CHECK(max_finite_weakly_invariant(with_const) == Subgroup::torsion(b));
}

TEST_CASE("quotient action legality is exactly the invariance criterion") {
    // legal: A0 = Kat of the ring; the induced ring acts by endomorphisms
    FgAbGroup a(1, {Int(2)});
    RingPresentation ring(
        a, {add(scalar(a, 2), BiRelation::constant_to_subgroup(a, Subgroup::torsion(a)))},
        RingKind::PreRing);
    Subgroup kat = global_katakernel(ring);
    QuotientAction qa = quotient_action(ring, kat);
    for (const auto& g : qa.ring.generators()) CHECK(g.kat().is_zero());

    // A0 = 0 is the identity transformation (legal when katakernels are 0,
    // since the criterion phi[A0 ∩ Dom] ⊆ A0 includes kat(phi) ⊆ A0)
    RingPresentation plain(a, {scalar(a, 2), scalar(a, 3)}, RingKind::PreRing);
    QuotientAction q0 = quotient_action(plain, Subgroup::zero(a));
    CHECK(q0.ring.ambient() == a);
    for (std::size_t i = 0; i < plain.generators().size(); ++i)
        CHECK(q0.ring.generators()[i] == plain.generators()[i]);
    // nonzero katakernel makes A0 = 0 illegal
    CHECK_THROWS_AS(quotient_action(ring, Subgroup::zero(a)), PreconditionError);

    // illegal: a generator moves A0 out; the error names a witness
    FgAbGroup b(1, {Int(2), Int(4)});
    IntMat m = IntMat::identity(3);
    m(1, 1) = 0;
    m(2, 1) = 2;  // the order-2 coordinate lands on the order-4 one
    BiRelation g = BiRelation::from_matrix(b, m);
    RingPresentation bad(b, {scalar(b, 2), g}, RingKind::PreRing);
    Subgroup a0 = Subgroup::from_elements(b, {v({0, 1, 0})});
    CHECK_THROWS_WITH_AS(quotient_action(bad, a0),
                         doctest::Contains("does not leave the subgroup invariant"),
                         PreconditionError);

    // equivalence is preserved and reflected across a legal quotient
    EnumerationSlice s = enumerate_slice(ring, 3);
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
    for (std::size_t i = 0; i < s.elements().size(); ++i)
        for (std::size_t j = i; j < s.elements().size(); ++j)
            CHECK(equivalent(s.elements()[i], s.elements()[j]) ==
                  equivalent(push_through(s.elements()[i]), push_through(s.elements()[j])));
}

TEST_CASE("inequivalence probe") {
    RingPresentation doubling(kZ, {scalar(kZ, 2)}, RingKind::PreRing);
    EnumerationSlice s = enumerate_slice(doubling, 4);
    CHECK(inequivalence_probe(s) >= 7);  // distinct integer scalars stay inequivalent

    RingPresentation zero_ring(kZ, {}, RingKind::PreRing, false);
    CHECK(inequivalence_probe(enumerate_slice(zero_ring, 3)) == 1);

    // monotone in the bound
    CHECK(inequivalence_probe(enumerate_slice(doubling, 2)) <=
          inequivalence_probe(enumerate_slice(doubling, 3)));

    // on a finite ambient every relation is equivalent to zero
    FgAbGroup f(0, {Int(2), Int(2)});
    RingPresentation fr(f, {BiRelation::from_matrix(f, IntMat::identity(2))}, RingKind::PreRing);
    CHECK(inequivalence_probe(enumerate_slice(fr, 3)) == 1);
}

TEST_CASE("generator-closure soundness for weak invariance") {
    // weak invariance checked on generators extends to every element of a
    // word-length-4 slice of the generated pre-ring
    SplitMix64 rng(33);
    int done = 0;
    while (done < 50) {
        FgAbGroup a = random_nontrivial_group(rng, 1);
        if (a.torsion_order() > 64) continue;
        std::vector<BiRelation> gens{random_endogeny(rng, a), random_endogeny(rng, a)};
        Subgroup b = rng.chance(1, 2) ? random_finite_subgroup(rng, a) : random_subgroup(rng, a);
        if (!invariance(b, gens, InvarianceMode::Weak).holds) continue;
        RingPresentation ring(a, gens, RingKind::PreRing);
        EnumerationSlice s = enumerate_slice(ring, 4);
        for (const auto& e : s.elements())
            CHECK(subgroup_sum(b, e.kat()).contains(apply(e, b)));
        ++done;
    }
}

TEST_CASE("ring kind validation") {
    BiRelation halving = BiRelation::from_pairs(kZ, {{v({2}), v({1})}});
    CHECK_THROWS_AS(RingPresentation(kZ, {halving}, RingKind::PreRing), ClassificationError);
    RingPresentation ok(kZ, {halving}, RingKind::NearRing);
    CHECK(ok.generators().size() == 1);
    BiRelation bad = BiRelation::from_pairs(kZ, {{v({0}), v({1})}});
    CHECK_THROWS_AS(RingPresentation(kZ, {bad}, RingKind::NearRing), ClassificationError);
}

TEST_CASE("slice caps") {
    RingPresentation doubling(kZ, {scalar(kZ, 2)}, RingKind::PreRing);
    CHECK_THROWS_AS(enumerate_slice(doubling, 12), CapExceededError);
}
