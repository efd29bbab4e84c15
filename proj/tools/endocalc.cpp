// endocalc: exact calculus of endogenies and quasi-endomorphisms over
// finitely generated abelian groups, with seeded lemma suites.

#include <cctype>
#include <iostream>

#include "CLI11.hpp"

#include "endocalc/caps.hpp"
#include "endocalc/report.hpp"
#include "endocalc/suites.hpp"

using namespace endocalc;

namespace {

struct Options {
    std::string workspace_path;
    std::uint64_t seed = 1;
    int trials = -1;
    int bound = 4;
    bool json = false;
};

Workspace need_workspace(const Options& opt) {
    if (opt.workspace_path.empty())
        throw EndocalcError("this command needs --workspace PATH");
    return load_workspace(opt.workspace_path);
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int default_trials(const std::string& suite) {
    if (suite == "L1-distributivity") return 300;
    if (suite == "L1-right-distributivity-equality") return 1;
    if (suite == "L2-ring" || suite == "L3-csharp" || suite == "Q6-nearring" ||
        suite == "L13-cflat")
        return 200;
    if (suite == "L7-rank") return 500;
    return 100;
}

Subgroup parse_subgroup_arg(const FgAbGroup& g, const std::string& text) {
    // "[ [6, 0], [0, 1] ]": a bracketed list of element vectors
    std::vector<Vec> gens;
    Vec cur;
    std::string digits;
    int depth = 0;
    auto flush = [&] {
        if (!digits.empty()) {
            cur.emplace_back(digits);
            digits.clear();
        }
    };
    for (char ch : text) {
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+') {
            digits += ch;
        } else if (ch == '[') {
            ++depth;
            if (depth == 2) cur.clear();
        } else if (ch == ']') {
            flush();
            if (depth == 2) gens.push_back(cur);
            --depth;
        } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            throw EndocalcError(std::string("unexpected character '") + ch + "' in subgroup");
        }
    }
    if (depth != 0) throw EndocalcError("unbalanced brackets in subgroup");
    return Subgroup::from_elements(g, gens);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact endogeny/quasi-endomorphism calculus on finitely generated abelian groups"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--workspace", opt.workspace_path, "workspace file to load");
    app.add_option("--seed", opt.seed, "seed for randomized suites");
    app.add_option("--trials", opt.trials, "trial count for randomized suites");
    app.add_option("--bound", opt.bound, "word-length bound for slice enumerations");
    app.add_flag("--json", opt.json, "emit JSON instead of text");

    // check
    auto* check = app.add_subcommand("check", "evaluate a commutation or invariance predicate");
    check->fallthrough();
    std::string predicate, group_name, subgroup_text;
    std::vector<std::string> names;
    check->add_option("--predicate", predicate,
                      "sharp | flat | invariant:weak | invariant:almost")->required();
    check->add_option("--group", group_name, "ambient group (invariance predicates)");
    check->add_option("--subgroup", subgroup_text,
                      "subgroup generators, e.g. \"[ [2, 0], [0, 1] ]\" (invariance predicates)");
    check->add_option("names", names, "relation names from the workspace");

    auto* katakernel = app.add_subcommand("katakernel", "global katakernel of a ring");
    katakernel->fallthrough();
    std::string ring_name;
    katakernel->add_option("ring", ring_name, "ring name")->required();

    auto* domain = app.add_subcommand("domain", "global domain of a near-ring at a bound");
    domain->fallthrough();
    std::string domain_ring;
    domain->add_option("ring", domain_ring, "ring name")->required();

    auto* lines_cmd = app.add_subcommand("lines", "line certificates of a ring at a bound");
    lines_cmd->fallthrough();
    std::string lines_ring;
    lines_cmd->add_option("ring", lines_ring, "ring name")->required();

    auto* decompose = app.add_subcommand("decompose", "almost-direct line decomposition");
    decompose->fallthrough();
    std::string dec_gamma, dec_delta;
    decompose->add_option("gamma", dec_gamma, "first ring")->required();
    decompose->add_option("delta", dec_delta, "second ring")->required();

    auto* zilber = app.add_subcommand("zilber", "finite-module field reconstruction");
    zilber->fallthrough();
    std::string zilber_group;
    std::vector<std::string> zilber_gens;
    zilber->add_option("group", zilber_group, "finite module")->required();
    zilber->add_option("generators", zilber_gens, "automorphism relations")->required();

    auto* lemmas = app.add_subcommand("lemmas", "run seeded lemma suites");
    lemmas->fallthrough();
    std::string suite_name;
    lemmas->add_option("--suite", suite_name, "suite id (default: all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            Workspace ws = need_workspace(opt);
            Json out;
            if (predicate == "sharp" || predicate == "flat") {
                if (names.size() != 2)
                    throw EndocalcError("predicate " + predicate + " takes two relation names");
                CommutationVerdict v =
                    predicate == "sharp" ? sharp_commutes(ws.relation(names[0]), ws.relation(names[1]))
                                         : flat_commutes(ws.relation(names[0]), ws.relation(names[1]));
                out = json_commutation(v);
                print_json(out);
                return v.holds ? 0 : 1;
            }
            if (predicate == "invariant:weak" || predicate == "invariant:almost") {
                if (group_name.empty() || subgroup_text.empty() || names.empty())
                    throw EndocalcError(
                        "invariance predicates need --group, --subgroup and generator names");
                Subgroup b = parse_subgroup_arg(ws.group(group_name), subgroup_text);
                std::vector<BiRelation> gens;
                for (const auto& n : names) gens.push_back(ws.relation(n));
                InvarianceReport r = invariance(
                    b, gens,
                    predicate == "invariant:weak" ? InvarianceMode::Weak : InvarianceMode::Almost);
                out = json_invariance(r);
                print_json(out);
                return r.holds ? 0 : 1;
            }
            throw EndocalcError("unknown predicate: " + predicate);
        }
        if (*katakernel) {
            Workspace ws = need_workspace(opt);
            Subgroup k = global_katakernel(ws.ring(ring_name));
            if (opt.json) {
                print_json(json_subgroup(k));
            } else {
                std::cout << "Kat(" << ring_name << ") order " << k.order().str()
                          << " generators ";
                auto gens = k.generator_elements();
                if (gens.empty()) std::cout << "{}";
                for (const auto& gvec : gens) std::cout << vec_to_string(gvec) << " ";
                std::cout << "\n";
            }
            return 0;
        }
        if (*domain) {
            Workspace ws = need_workspace(opt);
            GlobalDomainResult d = global_domain(ws.ring(domain_ring), opt.bound);
            if (opt.json) {
                print_json(json_global_domain(d));
            } else {
                std::cout << "Dom(" << domain_ring << ") at bound " << opt.bound << ": "
                          << d.domain.to_string() << (d.exact ? " (exact)" : " (approximate)")
                          << "\n";
            }
            return 0;
        }
        if (*lines_cmd) {
            Workspace ws = need_workspace(opt);
            auto certs = find_lines(ws.ring(lines_ring), opt.bound);
            Json out = Json::array();
            for (const auto& c : certs) out.push_back(json_line(c));
            if (opt.json) {
                print_json(out);
            } else {
                std::cout << certs.size() << " line(s) at bound " << opt.bound << "\n";
                for (const auto& c : certs)
                    std::cout << "  rank " << c.line.rank() << " basis " << c.line.to_string()
                              << "\n";
            }
            return 0;
        }
        if (*decompose) {
            Workspace ws = need_workspace(opt);
            DecompositionReport rep =
                decompose_lines(ws.ring(dec_gamma), ws.ring(dec_delta), opt.bound);
            if (opt.json) {
                print_json(json_decomposition(rep));
            } else {
                std::cout << (rep.complete ? "complete" : "partial: " + rep.blocking_reason)
                          << "; " << rep.projections.size() << " projection(s), residual rank "
                          << rep.residual.rank() << "\n";
            }
            return rep.complete ? 0 : 1;
        }
        if (*zilber) {
            Workspace ws = need_workspace(opt);
            std::vector<BiRelation> gens;
            for (const auto& n : zilber_gens) gens.push_back(ws.relation(n));
            ZilberResult res = zilber_field(ws.group(zilber_group), gens);
            if (std::holds_alternative<FieldTable>(res)) {
                const FieldTable& f = std::get<FieldTable>(res);
                if (opt.json) {
                    print_json(json_field_table(f));
                } else {
                    std::cout << "field of order " << f.order.str() << "; module isomorphic to K+"
                              << "\n";
                }
                return 0;
            }
            const ZilberFailure& zf = std::get<ZilberFailure>(res);
            if (opt.json) {
                Json out;
                out["failure"] = zf.reason;
                out["detail"] = zf.detail;
                print_json(out);
            } else {
                std::cout << "failure: " << zf.reason << " (" << zf.detail << ")\n";
            }
            return 1;
        }
        if (*lemmas) {
            std::vector<std::string> to_run;
            if (!suite_name.empty()) {
                to_run.push_back(suite_name);
            } else {
                to_run = suite_names();
            }
            int exit_code = 0;
            for (const auto& s : to_run) {
                int trials = opt.trials >= 0 ? opt.trials : default_trials(s);
                SuiteReport r = run_suite(s, opt.seed, trials);
                bool expected = suite_expects_failures(s);
                if (opt.json) {
                    std::cout << emit_report(r);
                } else {
                    std::cout << (r.failures.empty() ? (expected ? "UNEXPECTED-PASS " : "PASS ")
                                                     : (expected ? "EXPECTED-FAIL " : "FAIL "))
                              << r.suite_name << " seed=" << r.seed << " trials=" << r.trials
                              << " failures=" << r.failures.size() << "\n";
                }
                std::cerr << "# " << r.suite_name << " elapsed " << r.elapsed_seconds << "s\n";
                if (!suite_name.empty()) {
                    // single-suite mode: nonzero exit iff failures are nonempty
                    exit_code = r.failures.empty() ? 0 : 1;
                } else if (r.failures.empty() == expected) {
                    exit_code = 1;
                }
            }
            return exit_code;
        }
    } catch (const EndocalcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
