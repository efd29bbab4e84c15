#pragma once

#include <cstdint>

#include "endocalc/ints.hpp"

namespace endocalc {

// Enumeration caps. Exceeding one is a hard CapExceededError, never silent
// truncation. ENDOCALC_CAPS overrides defaults with a comma-separated list,
// e.g. ENDOCALC_CAPS="torsion=20000,subgroups=50000,elements=200000,word_bound=6".
struct Caps {
    Int torsion_order = 10000;       // max torsion subgroup order to enumerate
    std::int64_t subgroup_count = 100000;  // max subgroups of T(A) to enumerate
    std::int64_t slice_elements = 100000;  // max elements in an enumeration slice
    int word_bound = 5;              // max admissible word bound
};

// Process-wide caps, read from ENDOCALC_CAPS once on first use.
const Caps& caps();

// Parse an override string; throws EndocalcError on malformed input.
Caps parse_caps(const char* spec);

}  // namespace endocalc
