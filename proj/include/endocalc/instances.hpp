#pragma once

#include <vector>

#include "endocalc/relation.hpp"
#include "endocalc/rng.hpp"

namespace endocalc {

// Random instance distribution used by the lemma suites: ambient groups with
// free_rank in {0..3} and at most two torsion factors drawn from
// {2,3,4,6,12}; relations from random torsion-compatible integer matrices
// with entries |.| <= 3, plus optional constant-katakernel summands.

FgAbGroup random_group(SplitMix64& rng, int max_free_rank = 3);
// Never the trivial group (at least one coordinate).
FgAbGroup random_nontrivial_group(SplitMix64& rng, int max_free_rank = 3);

Vec random_element(SplitMix64& rng, const FgAbGroup& a, std::int64_t bound = 3);
Subgroup random_subgroup(SplitMix64& rng, const FgAbGroup& a);
Subgroup random_finite_subgroup(SplitMix64& rng, const FgAbGroup& a);
// Full-rank cover lattice, so the subgroup has finite index in a.
Subgroup random_finite_index_subgroup(SplitMix64& rng, const FgAbGroup& a);

IntMat random_endo_matrix(SplitMix64& rng, const FgAbGroup& a, std::int64_t bound = 3);
// Matrix endogeny plus an optional constant-katakernel summand.
BiRelation random_endogeny(SplitMix64& rng, const FgAbGroup& a);
// Matrix endogeny restricted to a random finite-index domain, plus an
// optional constant summand; always classifies ENDOGENY or QUASI_ENDO.
BiRelation random_quasi(SplitMix64& rng, const FgAbGroup& a);

}  // namespace endocalc
