#pragma once

#include <map>
#include <string>
#include <vector>

#include "endocalc/errors.hpp"
#include "endocalc/prering.hpp"

namespace endocalc {

struct ParseDiagnostic {
    int line;
    std::string message;
};

struct WorkspaceParseError : EndocalcError {
    std::vector<ParseDiagnostic> diagnostics;
    explicit WorkspaceParseError(std::vector<ParseDiagnostic> diags)
        : EndocalcError(format(diags)), diagnostics(std::move(diags)) {}

private:
    static std::string format(const std::vector<ParseDiagnostic>& diags) {
        std::string s = "workspace parse failed:";
        for (const auto& d : diags)
            s += "\n  line " + std::to_string(d.line) + ": " + d.message;
        return s;
    }
};

struct WorkspaceRelation {
    std::string declared;  // "endo" or "quasi"
    std::string group_name;
    BiRelation relation;
};

struct WorkspaceRing {
    std::string group_name;
    std::vector<std::string> generator_names;
    RingPresentation ring;
};

// Named groups, relations and ring presentations, as declared in the
// line-oriented workspace file format:
//
//   # comment
//   group A { free_rank = 1, torsion = [2] }      (or key = value lines)
//   endo f on A = matrix [[2, 0], [0, 1]]
//   endo c on A = constant [ [0, 1] ]
//   quasi h on A = generators [ [[2, 0], [1, 0]] ]
//   ring R kind=pre generators=[f, c] identity=true
struct Workspace {
    std::vector<std::string> group_order;
    std::map<std::string, FgAbGroup> groups;
    std::vector<std::string> relation_order;
    std::map<std::string, WorkspaceRelation> relations;
    std::vector<std::string> ring_order;
    std::map<std::string, WorkspaceRing> rings;
    std::string source_path;

    const FgAbGroup& group(const std::string& name) const;
    const BiRelation& relation(const std::string& name) const;
    const RingPresentation& ring(const std::string& name) const;
};

Workspace parse_workspace(const std::string& text, const std::string& source_path = "");
Workspace load_workspace(const std::string& path);

// Canonical serialization: declaration order, relations in generator-pair
// form. parse(serialize(parse(x))) equals parse(x).
std::string serialize_workspace(const Workspace& ws);

bool workspaces_equal(const Workspace& a, const Workspace& b);

}  // namespace endocalc
