#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "endocalc/caps.hpp"
#include "endocalc/instances.hpp"
#include "endocalc/suites.hpp"
#include "endocalc/workspace.hpp"

using namespace endocalc;

TEST_CASE("minimal workspace parses") {
    std::string text =
        "# a Z + Z/2 world\n"
        "group A { free_rank = 1, torsion = [2] }\n"
        "endo d on A = matrix [[2, 0], [0, 0]]\n";
    Workspace ws = parse_workspace(text);
    CHECK(ws.groups.size() == 1);
    CHECK(ws.relations.size() == 1);
    CHECK(ws.group("A") == FgAbGroup(1, {Int(2)}));
    CHECK(ws.relation("d").kind() == RelationKind::Endogeny);
}

TEST_CASE("all block styles and forms") {
    std::string text =
        "group A\n"
        "  free_rank = 1\n"
        "  torsion = [2]\n"
        "group B { free_rank = 0, torsion = [2, 4] }\n"
        "endo one on A = matrix [[1, 0], [0, 1]]\n"
        "endo c on A = constant [ [0, 1] ]\n"
        "quasi h on A = generators [\n"
        "  [[2, 0], [1, 0]]\n"
        "]\n"
        "ring R kind=pre generators=[one, c] identity=true\n"
        "ring S kind=near generators=[h] identity=false\n";
    Workspace ws = parse_workspace(text);
    CHECK(ws.groups.size() == 2);
    CHECK(ws.relations.size() == 3);
    CHECK(ws.rings.size() == 2);
    CHECK(ws.relation("c").kat() == Subgroup::torsion(ws.group("A")));
    CHECK(ws.relation("h").kind() == RelationKind::QuasiEndo);
    CHECK(ws.ring("R").kind() == RingKind::PreRing);
    CHECK(ws.ring("S").kind() == RingKind::NearRing);
    CHECK(!ws.ring("S").identity_included());
}

TEST_CASE("diagnostics carry locations") {
    std::string text =
        "group A { free_rank = 1, torsion = [] }\n"
        "endo f on NOPE = matrix [[1]]\n"
        "endo f2 on A = matrix [[1]]\n"
        "endo f2 on A = matrix [[2]]\n"
        "ring R kind=pre generators=[ghost]\n";
    try {
        parse_workspace(text);
        FAIL("expected a parse error");
    } catch (const WorkspaceParseError& e) {
        REQUIRE(e.diagnostics.size() == 3);
        CHECK(e.diagnostics[0].line == 2);  // unknown group reference
        CHECK(e.diagnostics[1].line == 4);  // duplicate name
        CHECK(e.diagnostics[2].line == 5);  // dangling generator
        CHECK(std::string(e.diagnostics[0].message).find("NOPE") != std::string::npos);
        CHECK(std::string(e.diagnostics[2].message).find("ghost") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_workspace("group A { free_rank = 1, torsion = [2,] }\n"),
                    WorkspaceParseError);
    CHECK_THROWS_AS(parse_workspace("bogus line\n"), WorkspaceParseError);
}

TEST_CASE("serialize then parse is the identity on workspaces") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 25; ++trial) {
        Workspace ws;
        ws.group_order = {"A"};
        FgAbGroup a = random_nontrivial_group(rng);
        ws.groups.emplace("A", a);
        std::size_t rels = 1 + rng.below(3);
        for (std::size_t i = 0; i < rels; ++i) {
            std::string name = "r" + std::to_string(i);
            BiRelation rel = rng.chance(1, 2) ? random_endogeny(rng, a) : random_quasi(rng, a);
            ws.relation_order.push_back(name);
            ws.relations.emplace(
                name, WorkspaceRelation{
                          rel.kind() == RelationKind::QuasiEndo ? "quasi" : "endo", "A", rel});
        }
        std::string text = serialize_workspace(ws);
        Workspace back = parse_workspace(text);
        CHECK(workspaces_equal(ws, back));
        // serialization is a fixed point
        CHECK(serialize_workspace(back) == text);
    }
}

TEST_CASE("corpus files are byte-stable under parse+serialize") {
    for (const char* file : {"l1_strict.endo", "flat_clause1.endo", "q6_distrib.endo",
                             "zilber_f4.endo", "zilber_f25.endo", "zilber_z4.endo"}) {
        std::string text = corpus_file_text(file);
        Workspace ws = parse_workspace(text, file);
        CHECK(serialize_workspace(ws) == text);
    }
}

TEST_CASE("caps override parsing") {
    Caps c = parse_caps("torsion=20000,subgroups=5,elements=7,word_bound=9");
    CHECK(c.torsion_order == 20000);
    CHECK(c.subgroup_count == 5);
    CHECK(c.slice_elements == 7);
    CHECK(c.word_bound == 9);
    CHECK_THROWS_AS(parse_caps("bogus"), EndocalcError);
    CHECK_THROWS_AS(parse_caps("nosuch=3"), EndocalcError);
    Caps d = parse_caps(nullptr);
    CHECK(d.torsion_order == 10000);
}
