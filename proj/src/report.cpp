#include "endocalc/report.hpp"

namespace endocalc {

Json json_int(const Int& x) {
    // Values beyond 64 bits are emitted as decimal strings.
    if (x >= std::numeric_limits<std::int64_t>::min() &&
        x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

Json json_vec(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(json_int(x));
    return a;
}

Json json_subgroup(const Subgroup& s) {
    Json a = Json::array();
    for (const auto& g : s.generator_elements()) a.push_back(json_vec(g));
    Json out;
    out["generators"] = a;
    out["rank"] = s.rank();
    auto idx = s.index();
    out["index"] = idx ? json_int(*idx) : Json("INFINITE");
    return out;
}

Json json_relation(const BiRelation& r) {
    Json pairs = Json::array();
    for (const auto& [a, b] : r.generator_pairs()) {
        Json p = Json::array();
        p.push_back(json_vec(a));
        p.push_back(json_vec(b));
        pairs.push_back(p);
    }
    Json out;
    out["kind"] = to_string(r.kind());
    out["graph"] = pairs;
    return out;
}

Json json_rank_index(const RankIndex& ri) {
    Json out;
    out["rank"] = ri.rank;
    out["index"] = ri.index ? json_int(*ri.index) : Json("INFINITE");
    return out;
}

Json json_commutation(const CommutationVerdict& v) {
    Json out;
    out["predicate"] = to_string(v.checked_kind);
    out["holds"] = v.holds;
    if (v.failed_clause) out["failed_clause"] = v.failed_clause;
    if (v.witness) {
        out["witness"] = Json::object();
        out["witness"]["input"] = json_vec(v.witness->first);
        out["witness"]["value"] = json_vec(v.witness->second);
    }
    return out;
}

Json json_invariance(const InvarianceReport& r) {
    Json out;
    out["predicate"] = "invariant:" + to_string(r.mode);
    out["holds"] = r.holds;
    Json per = Json::array();
    for (const auto& g : r.per_generator) {
        Json e;
        e["holds"] = g.holds;
        if (g.witness) {
            e["witness"] = Json::object();
            e["witness"]["input"] = json_vec(g.witness->first);
            e["witness"]["value"] = json_vec(g.witness->second);
        }
        per.push_back(e);
    }
    out["per_generator"] = per;
    return out;
}

Json json_line(const LineCertificate& c) {
    Json out;
    out["line"] = json_subgroup(c.line);
    out["witness"] = json_relation(c.witness);
    out["slice_bound"] = c.slice_bound;
    out["contained_images_checked"] = static_cast<std::int64_t>(c.contained_images_checked);
    return out;
}

Json json_decomposition(const DecompositionReport& d) {
    Json out;
    out["complete"] = d.complete;
    if (!d.complete) out["blocking_reason"] = d.blocking_reason;
    Json projs = Json::array(), lines = Json::array(), zeros = Json::array();
    for (const auto& p : d.projections) projs.push_back(json_relation(p));
    for (const auto& l : d.lines) lines.push_back(json_subgroup(l));
    for (const auto& z : d.line_zeros) zeros.push_back(json_subgroup(z));
    out["projections"] = projs;
    out["lines"] = lines;
    out["line_zeros"] = zeros;
    out["residual"] = json_subgroup(d.residual);
    out["bikatakernel_bound"] = json_subgroup(d.bikatakernel_bound);
    return out;
}

Json json_field_table(const FieldTable& f) {
    Json out;
    out["order"] = json_int(f.order);
    out["zero"] = static_cast<std::int64_t>(f.zero_index);
    out["one"] = static_cast<std::int64_t>(f.one_index);
    Json elems = Json::array();
    for (const auto& e : f.elements) elems.push_back(json_relation(e));
    out["elements"] = elems;
    out["add_table"] = f.add_table;
    out["mul_table"] = f.mul_table;
    out["base_point"] = json_vec(f.base_point);
    Json iso = Json::array();
    for (const auto& v : f.module_iso) iso.push_back(json_vec(v));
    out["module_iso"] = iso;
    out["generator_images"] = f.generator_images;
    return out;
}

Json json_global_domain(const GlobalDomainResult& d) {
    Json out;
    out["domain"] = json_subgroup(d.domain);
    out["exact"] = d.exact;
    return out;
}

std::string emit_report(const SuiteReport& report) {
    Json out;
    out["schema_version"] = "1";
    out["suite"] = report.suite_name;
    out["seed"] = report.seed;
    out["trials"] = report.trials;
    Json fails = Json::array();
    for (const auto& f : report.failures) {
        Json e;
        e["claim"] = f.claim;
        e["instance"] = f.instance;
        e["witness"] = f.witness;
        fails.push_back(e);
    }
    out["failures"] = fails;
    return out.dump(2) + "\n";
}

}  // namespace endocalc
