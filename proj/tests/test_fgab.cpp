#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "endocalc/errors.hpp"
#include "endocalc/fgab.hpp"
#include "endocalc/instances.hpp"

using namespace endocalc;

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Subgroup span(const FgAbGroup& a, std::initializer_list<Vec> gens) {
    return Subgroup::from_elements(a, std::vector<Vec>(gens));
}

}  // namespace

TEST_CASE("group construction and validation") {
    FgAbGroup a(1, {Int(2), Int(4)});
    CHECK(a.coords() == 3);
    CHECK(a.torsion_order() == 8);
    CHECK_THROWS_AS(FgAbGroup(1, {Int(2), Int(3)}), PreconditionError);  // no chain
    CHECK_THROWS_AS(FgAbGroup(0, {Int(1)}), PreconditionError);
    CHECK(a.reduce(v({5, 3, -1})) == v({5, 1, 3}));
    FgAbGroup trivial(0, {});
    CHECK(trivial.coords() == 0);
    CHECK(trivial.elements().size() == 1);
}

TEST_CASE("canonicalize examples") {
    FgAbGroup z2(2, {});
    Subgroup b1 = span(z2, {v({2, 0}), v({0, 1})});
    CHECK(b1.basis().to_string() == "[2, 0; 0, 1]");

    Subgroup b2 = span(z2, {v({2, 4}), v({6, 8})});
    Subgroup b3 = span(z2, {v({2, 0}), v({0, 4})});
    CHECK(b2 == b3);

    Subgroup zero = span(z2, {});
    CHECK(zero.is_zero());
    CHECK(zero.rank() == 0);

    // idempotence: canonical basis re-canonicalizes to itself
    CHECK(Subgroup::from_columns(z2, b2.basis()) == b2);

    CHECK_THROWS_AS(span(z2, {v({1, 2, 3})}), DimensionError);
}

TEST_CASE("sum and intersection examples") {
    FgAbGroup z(1, {});
    Subgroup two = span(z, {v({2})});
    Subgroup three = span(z, {v({3})});
    CHECK(subgroup_sum(two, three) == Subgroup::full(z));
    CHECK(subgroup_sum(two, Subgroup::zero(z)) == two);
    CHECK(subgroup_intersect(two, three) == span(z, {v({6})}));
    CHECK(subgroup_intersect(two, two) == two);

    FgAbGroup z2(2, {});
    CHECK(subgroup_sum(span(z2, {v({2, 0})}), span(z2, {v({0, 3})})) ==
          span(z2, {v({2, 0}), v({0, 3})}));
    CHECK(subgroup_intersect(span(z2, {v({2, 0}), v({0, 1})}), span(z2, {v({3, 0}), v({0, 1})})) ==
          span(z2, {v({6, 0}), v({0, 1})}));
}

TEST_CASE("rank and index examples") {
    FgAbGroup zxz2(1, {Int(2)});
    Subgroup b = span(zxz2, {v({2, 0}), v({0, 1})});
    auto ri = rank_and_index(b);
    CHECK(ri.rank == 1);
    CHECK(ri.index == Int(2));

    FgAbGroup z2(2, {});
    auto ri0 = rank_and_index(Subgroup::zero(z2));
    CHECK(ri0.rank == 0);
    CHECK(!ri0.index.has_value());

    auto ri6 = rank_and_index(span(z2, {v({2, 0}), v({0, 3})}));
    CHECK(ri6.rank == 2);
    CHECK(ri6.index == Int(6));
}

TEST_CASE("quotients") {
    FgAbGroup z2(2, {});
    QuotientPresentation q = quotient(z2, span(z2, {v({2, 0}), v({0, 3})}));
    CHECK(q.quotient == FgAbGroup(0, {Int(6)}));
    // projection composed with kernel generators is zero
    for (const auto& g : q.kernel.generator_elements())
        CHECK(q.quotient.is_zero(q.projection_data.mul(g)));
    CHECK(q.quotient.order() == 6);

    QuotientPresentation qid = quotient(z2, Subgroup::zero(z2));
    CHECK(qid.quotient == z2);

    QuotientPresentation qfull = quotient(z2, Subgroup::full(z2));
    CHECK(qfull.quotient == FgAbGroup(0, {}));

    FgAbGroup mixed(1, {Int(2), Int(4)});
    QuotientPresentation qt = quotient(mixed, Subgroup::torsion(mixed));
    CHECK(qt.quotient == FgAbGroup(1, {}));
    // projection respects addition
    Vec x = v({3, 1, 2}), y = v({-1, 1, 3});
    CHECK(qt.quotient.reduce(vec_add(qt.project(x), qt.project(y))) ==
          qt.project(mixed.reduce(vec_add(x, y))));
}

TEST_CASE("torsion lattice examples") {
    FgAbGroup a(1, {Int(2)});
    TorsionLattice tl = torsion_and_finite_lattice(a);
    CHECK(tl.torsion.order() == 2);
    CHECK(tl.subgroups.size() == 2);

    FgAbGroup z2(2, {});
    CHECK(torsion_and_finite_lattice(z2).subgroups.size() == 1);

    FgAbGroup klein(0, {Int(2), Int(2)});
    CHECK(torsion_and_finite_lattice(klein).subgroups.size() == 5);

    FgAbGroup z4x4(0, {Int(4), Int(4)});
    // subgroup lattice of Z/4 x Z/4 has 15 subgroups
    CHECK(torsion_and_finite_lattice(z4x4).subgroups.size() == 15);
}

TEST_CASE("product and projections") {
    FgAbGroup z(1, {});
    FgAbGroup z2(0, {Int(2)});
    ProductPresentation p = product_and_projections(z, z2);
    CHECK(p.product == FgAbGroup(1, {Int(2)}));
    IntMat pe = p.project_left * p.embed_left;
    CHECK(pe == IntMat::identity(1));
    Vec e = p.embed_right.mul(v({1}));
    CHECK(p.product.reduce(e) != Vec(p.product.coords()));
    CHECK(p.product.reduce(p.embed_right.mul(v({2}))) == Vec(p.product.coords()));

    FgAbGroup m1(1, {Int(2), Int(4)});
    FgAbGroup m2(0, {Int(3)});
    ProductPresentation p2 = product_and_projections(m1, m2);
    CHECK(p2.product == FgAbGroup(1, {Int(2), Int(12)}));
    Vec x = v({2, 1, 3});
    CHECK(m1.reduce(p2.project_left.mul(p2.embed_left.mul(x))) == m1.reduce(x));
}

TEST_CASE("finite perturbation rank identity examples") {
    FgAbGroup a(1, {Int(2)});
    Subgroup b1 = span(a, {v({2, 0})});
    Subgroup b2 = span(a, {v({3, 0})});
    Subgroup c = span(a, {v({0, 1})});
    CHECK(finite_perturbation_rank_check(b1, b2, c));
    CHECK(finite_perturbation_rank_check(b1, b2, Subgroup::zero(a)));
    CHECK(finite_perturbation_rank_check(b1, b1, c));
    FgAbGroup z(1, {});
    CHECK_THROWS_AS(
        finite_perturbation_rank_check(span(z, {v({2})}), span(z, {v({3})}), Subgroup::full(z)),
        PreconditionError);
}

TEST_CASE("lattice laws on random triples") {
    SplitMix64 rng(20240811);
    for (int trial = 0; trial < 500; ++trial) {
        FgAbGroup a = random_nontrivial_group(rng);
        Subgroup b1 = random_subgroup(rng, a);
        Subgroup b2 = random_subgroup(rng, a);
        Subgroup b3 = random_subgroup(rng, a);

        CHECK(subgroup_sum(b1, b2) == subgroup_sum(b2, b1));
        CHECK(subgroup_intersect(b1, b2) == subgroup_intersect(b2, b1));
        CHECK(subgroup_sum(subgroup_sum(b1, b2), b3) == subgroup_sum(b1, subgroup_sum(b2, b3)));
        CHECK(subgroup_intersect(subgroup_intersect(b1, b2), b3) ==
              subgroup_intersect(b1, subgroup_intersect(b2, b3)));
        CHECK(subgroup_sum(b1, b1) == b1);
        // absorption
        CHECK(subgroup_intersect(b1, subgroup_sum(b1, b2)) == b1);
        // modular law: b1 <= big implies b1 + (b2 ∩ big) = (b1 + b2) ∩ big
        Subgroup big = subgroup_sum(b1, b3);
        CHECK(subgroup_sum(b1, subgroup_intersect(b2, big)) ==
              subgroup_intersect(subgroup_sum(b1, b2), big));
    }
}

TEST_CASE("rank properties and saturation") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        FgAbGroup a = random_nontrivial_group(rng);
        Subgroup b1 = random_subgroup(rng, a);
        Subgroup b2 = random_subgroup(rng, a);
        Subgroup s = subgroup_sum(b1, b2);
        CHECK(s.rank() >= b1.rank());
        CHECK(s.rank() <= b1.rank() + b2.rank());
        Subgroup sat = saturate(b1);
        CHECK(sat.contains(b1));
        CHECK(sat.rank() == b1.rank());
        if (b1.rank() == 0) {
            CHECK(b1.order() >= 1);
            CHECK(static_cast<std::size_t>(b1.order().convert_to<long>()) == b1.elements().size());
        }
        Subgroup c = random_finite_subgroup(rng, a);
        CHECK(finite_perturbation_rank_check(b1, b2, c));
    }
}

TEST_CASE("subgroup presentation round trip") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        FgAbGroup a = random_nontrivial_group(rng);
        Subgroup b = random_subgroup(rng, a);
        SubgroupPresentation p = present(b);
        CHECK(p.group.free_rank() == b.rank());
        for (const auto& g : b.generator_elements()) {
            Vec abs = p.to_abstract(g);
            Vec back = p.embed.mul(abs);
            CHECK(a.is_zero(vec_sub(back, g)));
        }
        for (std::size_t j = 0; j < p.group.coords(); ++j) {
            Vec unit(p.group.coords());
            unit[j] = 1;
            Vec amb = p.embed.mul(unit);
            CHECK(b.contains(amb));
            CHECK(p.to_abstract(amb) == p.group.reduce(unit));
        }
    }
}

TEST_CASE("enumeration caps produce hard errors") {
    FgAbGroup big(0, {Int(7), Int(7), Int(7), Int(7), Int(7)});  // order 16807 > 10^4
    CHECK_THROWS_AS(torsion_and_finite_lattice(big), CapExceededError);
}

TEST_CASE("trivial group and iterated products") {
    FgAbGroup t(0, {});
    Subgroup z = Subgroup::zero(t);
    CHECK(z.is_full());
    CHECK(quotient(t, z).quotient == t);
    CHECK(t.order() == 1);

    FgAbGroup a(1, {Int(2)});
    ProductPresentation p2 = product_and_projections(a, a);
    ProductPresentation p3 = product_and_projections(p2.product, a);
    CHECK(p3.product == FgAbGroup(3, {Int(2), Int(2), Int(2)}));
}
