#include "endocalc/workspace.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace endocalc {

const FgAbGroup& Workspace::group(const std::string& name) const {
    auto it = groups.find(name);
    if (it == groups.end()) throw EndocalcError("unknown group: " + name);
    return it->second;
}

const BiRelation& Workspace::relation(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw EndocalcError("unknown relation: " + name);
    return it->second.relation;
}

const RingPresentation& Workspace::ring(const std::string& name) const {
    auto it = rings.find(name);
    if (it == rings.end()) throw EndocalcError("unknown ring: " + name);
    return it->second.ring;
}

namespace {

// Small cursor over one logical block of text.
struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '-'))
            ++pos;
        return s.substr(start, pos - start);
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw EndocalcError("expected an integer");
        return Int(s.substr(start, pos - start));
    }
};

Vec parse_vector(Cursor& c) {
    if (!c.eat('[')) throw EndocalcError("expected '[' starting a vector");
    Vec v;
    if (c.eat(']')) return v;
    for (;;) {
        v.push_back(c.integer());
        if (c.eat(']')) return v;
        if (!c.eat(',')) throw EndocalcError("expected ',' or ']' in a vector");
    }
}

std::vector<Vec> parse_vector_list(Cursor& c) {
    if (!c.eat('[')) throw EndocalcError("expected '[' starting a vector list");
    std::vector<Vec> out;
    if (c.eat(']')) return out;
    for (;;) {
        out.push_back(parse_vector(c));
        if (c.eat(']')) return out;
        if (!c.eat(',')) throw EndocalcError("expected ',' or ']' in a vector list");
    }
}

std::vector<std::pair<Vec, Vec>> parse_pair_list(Cursor& c) {
    if (!c.eat('[')) throw EndocalcError("expected '[' starting a generator list");
    std::vector<std::pair<Vec, Vec>> out;
    if (c.eat(']')) return out;
    for (;;) {
        std::vector<Vec> pair = parse_vector_list(c);
        if (pair.size() != 2)
            throw EndocalcError("a graph generator is a pair [input, output] of vectors");
        out.emplace_back(pair[0], pair[1]);
        if (c.eat(']')) return out;
        if (!c.eat(',')) throw EndocalcError("expected ',' or ']' in a generator list");
    }
}

std::vector<std::string> parse_name_list(Cursor& c) {
    if (!c.eat('[')) throw EndocalcError("expected '[' starting a name list");
    std::vector<std::string> out;
    if (c.eat(']')) return out;
    for (;;) {
        std::string n = c.word();
        if (n.empty()) throw EndocalcError("expected a name");
        out.push_back(n);
        if (c.eat(']')) return out;
        if (!c.eat(',')) throw EndocalcError("expected ',' or ']' in a name list");
    }
}

struct Block {
    int line;
    std::string keyword;
    std::string text;  // block body with the keyword stripped
};

bool starts_block(const std::string& line) {
    std::istringstream in(line);
    std::string w;
    in >> w;
    return w == "group" || w == "endo" || w == "quasi" || w == "ring";
}

int bracket_depth_delta(const std::string& line) {
    int d = 0;
    for (char ch : line) {
        if (ch == '[' || ch == '{') ++d;
        if (ch == ']' || ch == '}') --d;
    }
    return d;
}

}  // namespace

Workspace parse_workspace(const std::string& text, const std::string& source_path) {
    std::vector<ParseDiagnostic> diags;
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            lines.push_back(line);
        }
    }

    // A block starts at a keyword line and swallows continuation lines
    // (non-keyword text or anything while brackets stay unbalanced).
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string trimmed = lines[i];
        if (trimmed.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!starts_block(trimmed)) {
            diags.push_back({static_cast<int>(i + 1),
                             "expected a group/endo/quasi/ring block header"});
            continue;
        }
        std::istringstream in(trimmed);
        std::string keyword;
        in >> keyword;
        std::string body;
        std::getline(in, body);
        int depth = bracket_depth_delta(body);
        std::size_t j = i;
        while (j + 1 < lines.size() &&
               (depth > 0 || (!starts_block(lines[j + 1]) &&
                              lines[j + 1].find_first_not_of(" \t\r") != std::string::npos))) {
            ++j;
            body += "\n" + lines[j];
            depth += bracket_depth_delta(lines[j]);
        }
        blocks.push_back({static_cast<int>(i + 1), keyword, body});
        i = j;
    }

    Workspace ws;
    ws.source_path = source_path;
    auto fail = [&](int line, const std::string& msg) { diags.push_back({line, msg}); };

    for (const auto& block : blocks) {
        try {
            Cursor c{block.text};
            std::string name = c.word();
            if (name.empty()) {
                fail(block.line, "missing name after '" + block.keyword + "'");
                continue;
            }
            if (block.keyword == "group") {
                if (ws.groups.count(name)) {
                    fail(block.line, "duplicate group name: " + name);
                    continue;
                }
                bool braced = c.eat('{');
                Int free_rank = 0;
                std::vector<Int> torsion;
                bool saw_rank = false;
                while (!c.done()) {
                    if (braced && c.eat('}')) break;
                    std::string key = c.word();
                    if (!c.eat('='))
                        throw EndocalcError("expected '=' after key '" + key + "'");
                    if (key == "free_rank") {
                        free_rank = c.integer();
                        saw_rank = true;
                    } else if (key == "torsion") {
                        torsion = parse_vector(c);
                    } else {
                        throw EndocalcError("unknown group key: " + key);
                    }
                    c.eat(',');
                }
                if (!saw_rank) throw EndocalcError("group block is missing free_rank");
                ws.groups.emplace(name,
                                  FgAbGroup(free_rank.convert_to<int>(), std::move(torsion)));
                ws.group_order.push_back(name);
            } else if (block.keyword == "endo" || block.keyword == "quasi") {
                if (ws.relations.count(name)) {
                    fail(block.line, "duplicate relation name: " + name);
                    continue;
                }
                std::string on = c.word();
                if (on != "on") throw EndocalcError("expected 'on <group>'");
                std::string gname = c.word();
                auto git = ws.groups.find(gname);
                if (git == ws.groups.end())
                    throw EndocalcError("unknown group reference: " + gname);
                if (!c.eat('=')) throw EndocalcError("expected '=' before the relation body");
                std::string form = c.word();
                const FgAbGroup& g = git->second;
                std::size_t n = g.coords();
                if (form == "matrix") {
                    std::vector<Vec> rows = parse_vector_list(c);
                    if (rows.size() != n)
                        throw EndocalcError("matrix must have " + std::to_string(n) + " rows");
                    IntMat m(n, n);
                    for (std::size_t i = 0; i < n; ++i) {
                        if (rows[i].size() != n)
                            throw EndocalcError("matrix row " + std::to_string(i) + " must have " +
                                                std::to_string(n) + " entries");
                        for (std::size_t jj = 0; jj < n; ++jj) m(i, jj) = rows[i][jj];
                    }
                    ws.relations.emplace(
                        name,
                        WorkspaceRelation{block.keyword, gname, BiRelation::from_matrix(g, m)});
                } else if (form == "constant") {
                    std::vector<Vec> gens = parse_vector_list(c);
                    Subgroup b = Subgroup::from_elements(g, gens);
                    ws.relations.emplace(
                        name, WorkspaceRelation{block.keyword, gname,
                                                BiRelation::constant_to_subgroup(g, b)});
                } else if (form == "generators") {
                    auto pairs = parse_pair_list(c);
                    ws.relations.emplace(
                        name,
                        WorkspaceRelation{block.keyword, gname, BiRelation::from_pairs(g, pairs)});
                } else {
                    throw EndocalcError("unknown relation form: " + form +
                                        " (expected matrix/constant/generators)");
                }
                ws.relation_order.push_back(name);
            } else {  // ring
                if (ws.rings.count(name)) {
                    fail(block.line, "duplicate ring name: " + name);
                    continue;
                }
                RingKind kind = RingKind::PreRing;
                bool kind_seen = false;
                bool identity = true;
                std::vector<std::string> gen_names;
                while (!c.done()) {
                    std::string key = c.word();
                    if (!c.eat('=')) throw EndocalcError("expected '=' after key '" + key + "'");
                    if (key == "kind") {
                        std::string k = c.word();
                        if (k == "pre")
                            kind = RingKind::PreRing;
                        else if (k == "near")
                            kind = RingKind::NearRing;
                        else
                            throw EndocalcError("ring kind must be pre or near");
                        kind_seen = true;
                    } else if (key == "generators") {
                        gen_names = parse_name_list(c);
                    } else if (key == "identity") {
                        std::string b = c.word();
                        if (b == "true")
                            identity = true;
                        else if (b == "false")
                            identity = false;
                        else
                            throw EndocalcError("identity must be true or false");
                    } else {
                        throw EndocalcError("unknown ring key: " + key);
                    }
                    c.eat(',');
                }
                if (!kind_seen) throw EndocalcError("ring block is missing kind=pre|near");
                if (gen_names.empty())
                    throw EndocalcError("ring needs at least one generator to fix its group");
                std::vector<BiRelation> gens;
                std::string gname;
                for (const auto& gn : gen_names) {
                    auto rit = ws.relations.find(gn);
                    if (rit == ws.relations.end())
                        throw EndocalcError("unknown generator reference: " + gn);
                    if (gname.empty()) gname = rit->second.group_name;
                    gens.push_back(rit->second.relation);
                }
                ws.rings.emplace(name,
                                 WorkspaceRing{gname, gen_names,
                                               RingPresentation(ws.group(gname), std::move(gens),
                                                                kind, identity)});
                ws.ring_order.push_back(name);
            }
        } catch (const EndocalcError& e) {
            fail(block.line, e.what());
        }
    }
    if (!diags.empty()) throw WorkspaceParseError(std::move(diags));
    return ws;
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EndocalcError("cannot open workspace file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_workspace(ss.str(), path);
}

namespace {

std::string vec_text(const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + "]";
}

}  // namespace

std::string serialize_workspace(const Workspace& ws) {
    std::string out;
    for (const auto& name : ws.group_order) {
        const FgAbGroup& g = ws.groups.at(name);
        out += "group " + name + "\n";
        out += "  free_rank = " + std::to_string(g.free_rank()) + "\n";
        out += "  torsion = " +
               vec_text(Vec(g.torsion_factors().begin(), g.torsion_factors().end())) + "\n";
    }
    for (const auto& name : ws.relation_order) {
        const WorkspaceRelation& r = ws.relations.at(name);
        out += r.declared + " " + name + " on " + r.group_name + " = generators [";
        auto pairs = r.relation.generator_pairs();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i) out += ",";
            out += " [" + vec_text(pairs[i].first) + ", " + vec_text(pairs[i].second) + "]";
        }
        out += " ]\n";
    }
    for (const auto& name : ws.ring_order) {
        const WorkspaceRing& r = ws.rings.at(name);
        out += "ring " + name + " kind=" + to_string(r.ring.kind()) + " generators=[";
        for (std::size_t i = 0; i < r.generator_names.size(); ++i) {
            if (i) out += ", ";
            out += r.generator_names[i];
        }
        out += "] identity=" + std::string(r.ring.identity_included() ? "true" : "false") + "\n";
    }
    return out;
}

bool workspaces_equal(const Workspace& a, const Workspace& b) {
    if (a.group_order != b.group_order || a.relation_order != b.relation_order ||
        a.ring_order != b.ring_order)
        return false;
    for (const auto& [name, g] : a.groups)
        if (!(b.groups.count(name) && b.groups.at(name) == g)) return false;
    for (const auto& [name, r] : a.relations) {
        auto it = b.relations.find(name);
        if (it == b.relations.end()) return false;
        if (it->second.declared != r.declared || it->second.group_name != r.group_name ||
            !(it->second.relation == r.relation))
            return false;
    }
    for (const auto& [name, r] : a.rings) {
        auto it = b.rings.find(name);
        if (it == b.rings.end()) return false;
        if (it->second.generator_names != r.generator_names ||
            it->second.ring.kind() != r.ring.kind() ||
            it->second.ring.identity_included() != r.ring.identity_included())
            return false;
    }
    return true;
}

}  // namespace endocalc
