#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "endocalc/commutation.hpp"
#include "endocalc/structure.hpp"

namespace endocalc {

using Json = nlohmann::ordered_json;

Json json_int(const Int& x);
Json json_vec(const Vec& v);
Json json_subgroup(const Subgroup& s);
// Graphs as generator-pair arrays.
Json json_relation(const BiRelation& r);
Json json_rank_index(const RankIndex& ri);
Json json_commutation(const CommutationVerdict& v);
Json json_invariance(const InvarianceReport& r);
Json json_line(const LineCertificate& c);
Json json_decomposition(const DecompositionReport& d);
Json json_field_table(const FieldTable& f);
Json json_global_domain(const GlobalDomainResult& d);

struct SuiteFailure {
    std::string claim;     // claim id
    std::string instance;  // serialized instance (workspace text)
    std::string witness;
};

struct SuiteReport {
    std::string suite_name;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<SuiteFailure> failures;
    double elapsed_seconds = 0;  // never serialized: reports are byte-deterministic
};

// Stable field order, schema version "1". The elapsed time is deliberately
// omitted so identical (suite, seed, trials) runs emit identical bytes.
std::string emit_report(const SuiteReport& report);

}  // namespace endocalc
