#include "endocalc/instances.hpp"

#include <array>

namespace endocalc {

namespace {
constexpr std::array<int, 5> kFactors = {2, 3, 4, 6, 12};
}

FgAbGroup random_group(SplitMix64& rng, int max_free_rank) {
    int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_free_rank) + 1));
    std::vector<Int> torsion;
    std::uint64_t k = rng.below(3);  // 0, 1 or 2 factors
    if (k >= 1) torsion.emplace_back(kFactors[rng.below(kFactors.size())]);
    if (k == 2) {
        // second factor: a multiple of the first from the same pool
        std::vector<int> mult;
        for (int f : kFactors)
            if (Int(f) % torsion[0] == 0) mult.push_back(f);
        torsion.emplace_back(mult[rng.below(mult.size())]);
    }
    return FgAbGroup(r, torsion);
}

FgAbGroup random_nontrivial_group(SplitMix64& rng, int max_free_rank) {
    for (;;) {
        FgAbGroup a = random_group(rng, max_free_rank);
        if (a.coords() > 0) return a;
    }
}

Vec random_element(SplitMix64& rng, const FgAbGroup& a, std::int64_t bound) {
    Vec v(a.coords());
    for (int i = 0; i < a.free_rank(); ++i) v[i] = rng.range(-bound, bound);
    for (std::size_t j = 0; j < a.torsion_factors().size(); ++j)
        v[a.free_rank() + j] =
            Int(rng.below(static_cast<std::uint64_t>(a.torsion_factors()[j].convert_to<std::int64_t>())));
    return v;
}

Subgroup random_subgroup(SplitMix64& rng, const FgAbGroup& a) {
    std::size_t count = rng.below(a.coords() + 2);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < count; ++i) gens.push_back(random_element(rng, a));
    return Subgroup::from_elements(a, gens);
}

Subgroup random_finite_subgroup(SplitMix64& rng, const FgAbGroup& a) {
    std::size_t count = rng.below(a.torsion_factors().size() + 2);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < count; ++i) {
        Vec v(a.coords());
        for (std::size_t j = 0; j < a.torsion_factors().size(); ++j)
            v[a.free_rank() + j] = Int(
                rng.below(static_cast<std::uint64_t>(a.torsion_factors()[j].convert_to<std::int64_t>())));
        gens.push_back(std::move(v));
    }
    return Subgroup::from_elements(a, gens);
}

Subgroup random_finite_index_subgroup(SplitMix64& rng, const FgAbGroup& a) {
    std::size_t r = static_cast<std::size_t>(a.free_rank());
    std::size_t n = a.coords();
    IntMat cols(n, n);
    for (std::size_t j = 0; j < r; ++j) {
        cols(j, j) = rng.range(1, 3);
        // mix strictly above the diagonal so the free block stays nonsingular
        for (std::size_t i = 0; i < j; ++i)
            if (rng.chance(1, 4)) cols(i, j) = rng.range(-2, 2);
        // optional torsion content on free generators
        for (std::size_t t = 0; t < a.torsion_factors().size(); ++t)
            if (rng.chance(1, 4))
                cols(r + t, j) = Int(rng.below(
                    static_cast<std::uint64_t>(a.torsion_factors()[t].convert_to<std::int64_t>())));
    }
    for (std::size_t t = 0; t < a.torsion_factors().size(); ++t) {
        // a divisor of d_t decides how much of this torsion coordinate survives
        Int d = a.torsion_factors()[t];
        std::vector<Int> divisors;
        for (Int c = 1; c <= d; ++c)
            if (d % c == 0) divisors.push_back(c);
        cols(r + t, r + t) = divisors[rng.below(divisors.size())];
    }
    return Subgroup::from_columns(a, cols);
}

IntMat random_endo_matrix(SplitMix64& rng, const FgAbGroup& a, std::int64_t bound) {
    std::size_t r = static_cast<std::size_t>(a.free_rank());
    std::size_t n = a.coords();
    const auto& tf = a.torsion_factors();
    IntMat m(n, n);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = rng.range(-bound, bound);
    for (std::size_t j = 0; j < tf.size(); ++j) {
        // source has order d_j: the image must be killed by d_j
        for (std::size_t t = 0; t < tf.size(); ++t) {
            Int step = t >= j ? tf[t] / gcd(tf[t], tf[j]) : Int(1);
            Int span = tf[t] / step;  // number of admissible residues
            m(r + t, r + j) =
                step * Int(rng.below(static_cast<std::uint64_t>(span.convert_to<std::int64_t>())));
        }
    }
    return m;
}

BiRelation random_endogeny(SplitMix64& rng, const FgAbGroup& a) {
    BiRelation rel = BiRelation::from_matrix(a, random_endo_matrix(rng, a));
    if (!a.torsion_factors().empty() && rng.chance(1, 2)) {
        Subgroup b = random_finite_subgroup(rng, a);
        if (!b.is_zero()) rel = add(rel, BiRelation::constant_to_subgroup(a, b));
    }
    return rel;
}

BiRelation random_quasi(SplitMix64& rng, const FgAbGroup& a) {
    IntMat m = random_endo_matrix(rng, a);
    Subgroup d = random_finite_index_subgroup(rng, a);
    const IntMat& basis = d.basis();
    std::size_t n = a.coords();
    IntMat raw(2 * n, basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        Vec v = basis.col(j);
        Vec mv = m.mul(v);
        for (std::size_t i = 0; i < n; ++i) {
            raw(i, j) = v[i];
            raw(n + i, j) = mv[i];
        }
    }
    BiRelation rel = BiRelation::from_graph_lattice(a, raw);
    if (!a.torsion_factors().empty() && rng.chance(1, 2)) {
        Subgroup b = random_finite_subgroup(rng, a);
        if (!b.is_zero()) rel = add(rel, BiRelation::constant_to_subgroup(a, b));
    }
    return rel;
}

}  // namespace endocalc
