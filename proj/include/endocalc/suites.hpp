#pragma once

#include <string>
#include <vector>

#include "endocalc/report.hpp"
#include "endocalc/workspace.hpp"

namespace endocalc {

// Known suites, in the order the CLI lists them.
const std::vector<std::string>& suite_names();

// True for suites that reproduce stored counterexamples and are expected to
// report failures (nonzero exit is their success mode).
bool suite_expects_failures(const std::string& name);

// Deterministic seeded run; identical (suite, seed, trials, corpus) inputs
// produce identical reports. Unknown names raise EndocalcError listing the
// available suites.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials);

// Directory of stored counterexamples and curated instances. Defaults to the
// built-in corpus; ENDOCALC_CORPUS overrides it.
std::string corpus_dir();
Workspace load_corpus_workspace(const std::string& filename);
std::string corpus_file_text(const std::string& filename);

// Curated decomposition instances shared by the L10-projection suite and the
// acceptance harness.
struct CuratedDecomposition {
    std::string id;
    RingPresentation gamma;
    RingPresentation delta;
    int bound;
    // expected outcome
    bool expect_complete;
    int expect_projections;  // -1 when unspecified
};
std::vector<CuratedDecomposition> curated_decompositions();

}  // namespace endocalc
