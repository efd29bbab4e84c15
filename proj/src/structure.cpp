#include "endocalc/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "endocalc/caps.hpp"
#include "endocalc/commutation.hpp"
#include "endocalc/errors.hpp"

namespace endocalc {

std::vector<GammaImage> gamma_images(const RingPresentation& ring, int word_bound) {
    EnumerationSlice slice = enumerate_slice(ring, word_bound);
    const auto& classes = slice.equivalence_classes();
    std::vector<GammaImage> out;
    std::set<Subgroup> seen;
    for (const auto& cls : classes) {
        const BiRelation& rep = slice.elements()[cls[0]];
        Subgroup im = rep.image();
        if (!seen.insert(im).second) continue;
        int r = im.rank();
        out.push_back({rep, std::move(im), r});
    }
    return out;
}

std::vector<LineCertificate> find_lines(const RingPresentation& ring, int word_bound) {
    std::vector<GammaImage> images = gamma_images(ring, word_bound);
    std::vector<LineCertificate> certs;
    int min_rank = 0;
    for (const auto& cand : images) {
        if (cand.rank < 1) continue;
        bool is_line = true;
        for (const auto& other : images) {
            if (other.rank < 1 || other.rank >= cand.rank) continue;
            if (cand.image.contains(other.image)) {
                is_line = false;
                break;
            }
        }
        if (!is_line) continue;
        if (certs.empty() || cand.rank < min_rank) {
            if (!certs.empty() && cand.rank < min_rank) certs.clear();
            min_rank = cand.rank;
        } else if (cand.rank > min_rank) {
            continue;
        }
        certs.push_back({cand.image, cand.element, word_bound, images.size()});
    }
    return certs;
}

LocalizedRings localize_to_line(const RingPresentation& gamma, const RingPresentation& delta,
                                const LineCertificate& cert, int word_bound) {
    if (gamma.ambient() != delta.ambient())
        throw AmbientMismatchError("localize_to_line over different ambients");
    // Lemma hypothesis: the line is weakly invariant under the second ring.
    InvarianceReport inv = invariance(cert.line, delta.generators(), InvarianceMode::Weak);
    if (!inv.holds) {
        std::string msg = "line is not weakly invariant under the second ring";
        for (std::size_t i = 0; i < inv.per_generator.size(); ++i)
            if (!inv.per_generator[i].holds && inv.per_generator[i].witness)
                msg += "; generator " + std::to_string(i) + " sends " +
                       vec_to_string(inv.per_generator[i].witness->first) + " to " +
                       vec_to_string(inv.per_generator[i].witness->second);
        throw LemmaViolationError(msg);
    }

    SubgroupPresentation p = present(cert.line);
    std::vector<BiRelation> delta_gens;
    for (const auto& d : delta.generators()) delta_gens.push_back(restrict_corestrict(d, p));

    EnumerationSlice slice = enumerate_slice(gamma, word_bound);
    std::vector<BiRelation> gamma_gens;
    std::set<IntMat> seen;
    for (const auto& g : slice.elements()) {
        if (!cert.line.contains(g.image())) continue;
        BiRelation r = restrict_corestrict(g, p);
        if (seen.insert(r.graph()).second) gamma_gens.push_back(r);
    }

    // The localized rings inherit commutation (checked on generator pairs).
    for (const auto& gl : gamma_gens)
        for (const auto& dl : delta_gens) {
            bool ok = (gamma.kind() == RingKind::PreRing && delta.kind() == RingKind::PreRing)
                          ? sharp_commutes(gl, dl).holds
                          : flat_commutes(gl, dl).holds;
            if (!ok)
                throw LemmaViolationError(
                    "localized generators do not commute; the localization hypotheses fail");
        }

    RingPresentation gamma_l(p.group, std::move(gamma_gens), gamma.kind(), false);
    RingPresentation delta_l(p.group, std::move(delta_gens), delta.kind(),
                             delta.identity_included());
    return {std::move(p), std::move(gamma_l), std::move(delta_l)};
}

BiRelation quasi_projection(const BiRelation& gamma, const Subgroup& l, const Subgroup& l0) {
    const FgAbGroup& a = gamma.ambient();
    if (l.ambient() != a || l0.ambient() != a)
        throw AmbientMismatchError("quasi_projection over different ambients");
    if (!l.contains(gamma.image()))
        throw NotAProjectionError("image of the witness is not contained in the line", "image");
    if (!l0.is_finite())
        throw NotAProjectionError("L0 must be finite", "l0-finite");
    if (!l.contains(l0))
        throw NotAProjectionError("L0 must be a subgroup of the line", "l0-inside");
    Subgroup gl_image = apply(gamma, l);
    if (subgroup_sum(gl_image, l0) != l)
        throw NotAProjectionError("witness is not surjective on the line up to L0: gamma[L] + L0 != L",
                                  "surjectivity");
    BiRelation gamma_l = BiRelation::from_graph_lattice(a, graph_restricted_lattice(gamma, l));
    if (preimage(gamma_l, l0) != l0)
        throw NotAProjectionError("preimage of L0 under the restricted witness is not L0",
                                  "preimage");

    BiRelation pi = add(compose(converse(gamma_l), gamma),
                        BiRelation::constant_to_subgroup(a, l0));

    if (pi.kind() != RelationKind::Endogeny || !pi.domain().is_full())
        throw NotAProjectionError("constructed relation is not total", "totality");
    if (!l.contains(pi.image()))
        throw NotAProjectionError("constructed relation leaves the line", "image");
    if (!l0.contains(apply(add(pi, neg(BiRelation::identity(a))), l)))
        throw NotAProjectionError("pi does not fix the line up to L0", "fixes-line");
    if (pi.kat() != l0)
        throw NotAProjectionError("katakernel of pi is not L0", "katakernel");
    if (!l0.contains(add(compose(pi, pi), neg(pi)).image()))
        throw NotAProjectionError("pi is not idempotent up to L0", "idempotent");
    return pi;
}

namespace {

struct LineChoice {
    Subgroup line;
    BiRelation witness;
    Int quality;  // |L : gamma[L] + (T(A) ∩ L)|-style preference, smaller first
};

// Candidate lines inside the residual image, best surjectivity quality first.
std::vector<LineChoice> lines_inside(const std::vector<GammaImage>& images, const Subgroup& h) {
    std::vector<const GammaImage*> in_h;
    for (const auto& img : images)
        if (img.rank >= 1 && h.contains(img.image)) in_h.push_back(&img);
    std::vector<LineChoice> out;
    for (const auto* cand : in_h) {
        bool is_line = true;
        for (const auto* other : in_h)
            if (other->rank < cand->rank && cand->image.contains(other->image)) is_line = false;
        if (!is_line) continue;
        out.push_back({cand->image, cand->element, Int(0)});
    }
    if (out.empty()) return out;
    int min_rank = out[0].line.rank();
    for (const auto& c : out) min_rank = std::min(min_rank, c.line.rank());
    std::vector<LineChoice> filtered;
    for (auto& c : out)
        if (c.line.rank() == min_rank) filtered.push_back(std::move(c));

    std::vector<LineChoice> ranked;
    for (auto& c : filtered) {
        Subgroup reach = subgroup_sum(apply(c.witness, c.line),
                                      subgroup_intersect(Subgroup::torsion(c.line.ambient()), c.line));
        if (reach.rank() != c.line.rank()) continue;  // no finite L0 can close the gap
        // index of reach inside the line, computed in the line's own coordinates
        SubgroupPresentation p = present(c.line);
        std::vector<Vec> gens_abs;
        for (const auto& g : reach.generator_elements()) gens_abs.push_back(p.to_abstract(g));
        auto idx = Subgroup::from_elements(p.group, gens_abs).index();
        if (!idx) continue;
        c.quality = *idx;
        ranked.push_back(std::move(c));
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const LineChoice& x, const LineChoice& y) { return x.quality < y.quality; });
    return ranked;
}

}  // namespace

DecompositionReport decompose_lines(const RingPresentation& gamma, const RingPresentation& delta,
                                    int word_bound) {
    if (gamma.ambient() != delta.ambient())
        throw AmbientMismatchError("decompose_lines over different ambients");
    const FgAbGroup& a = gamma.ambient();
    std::vector<GammaImage> images = gamma_images(gamma, word_bound);

    DecompositionReport report{{}, {}, {}, Subgroup::full(a), Subgroup::zero(a), true, ""};
    BiRelation remainder = BiRelation::identity(a);

    int last_rank = Subgroup::full(a).rank() + 1;
    for (;;) {
        Subgroup h = remainder.image();
        if (h.rank() == 0) break;
        if (h.rank() >= last_rank) {
            report.complete = false;
            report.blocking_reason = "residual rank did not decrease";
            break;
        }

        bool advanced = false;
        for (const auto& cand : lines_inside(images, h)) {
            Subgroup t_l = subgroup_intersect(Subgroup::torsion(a), cand.line);
            for (const auto& s : all_subgroups_of_finite(t_l)) {
                if (subgroup_sum(apply(cand.witness, cand.line), s) != cand.line) continue;
                BiRelation wit_l =
                    BiRelation::from_graph_lattice(a, graph_restricted_lattice(cand.witness, cand.line));
                if (preimage(wit_l, s) != s) continue;
                std::optional<BiRelation> base;
                try {
                    base = quasi_projection(cand.witness, cand.line, s);
                } catch (const NotAProjectionError&) {
                    continue;
                }
                BiRelation pi = compose(*base, remainder);
                report.projections.push_back(pi);
                report.lines.push_back(cand.line);
                report.line_zeros.push_back(s);
                remainder = add(remainder, neg(pi));
                advanced = true;
                break;
            }
            if (advanced) break;
        }
        if (!advanced) {
            report.complete = false;
            report.blocking_reason = "no line inside the residual admits a quasi-projection";
            break;
        }
        last_rank = h.rank();
    }

    report.residual = remainder.image();
    Subgroup bound = report.residual;
    for (const auto& s : report.line_zeros) bound = subgroup_sum(bound, s);
    report.bikatakernel_bound = bound;

    if (report.complete) {
        Subgroup total = report.residual;
        for (const auto& l : report.lines) total = subgroup_sum(total, l);
        if (!total.index().has_value())
            throw LemmaViolationError("line sum plus residual does not have finite index");
        for (std::size_t i = 0; i < report.lines.size(); ++i)
            for (std::size_t j = i + 1; j < report.lines.size(); ++j)
                if (subgroup_intersect(report.lines[i], report.lines[j]).rank() != 0)
                    throw LemmaViolationError("two lines share an infinite intersection");
        BiRelation id = BiRelation::identity(a);
        for (std::size_t i = 0; i < report.projections.size(); ++i) {
            const BiRelation& pi = report.projections[i];
            if (!pi.kat().contains(apply(add(pi, neg(id)), report.lines[i])))
                throw LemmaViolationError("projection does not fix its line up to its katakernel");
            if (!equivalent(compose(pi, pi), pi))
                throw LemmaViolationError("projection is not idempotent up to equivalence");
            Subgroup overlap = subgroup_intersect(pi.image(), add(id, neg(pi)).image());
            if (!pi.kat().contains(overlap))
                throw LemmaViolationError("projection image meets its complement beyond the katakernel");
        }
        Subgroup kats = subgroup_sum(global_katakernel(gamma), global_katakernel(delta));
        if (!report.bikatakernel_bound.contains(kats))
            throw LemmaViolationError("bikatakernel is not contained in sum of L_i0 and residual");
    }
    return report;
}

std::optional<std::pair<BiRelation, BiRelation>> ore_witness(const BiRelation& x,
                                                             const BiRelation& y,
                                                             const EnumerationSlice& slice) {
    const BiRelation zero_rel = BiRelation::zero(x.ambient());
    if (x == zero_rel || y == zero_rel)
        throw PreconditionError("ore_witness requires nonzero ring elements");
    std::map<IntMat, std::size_t> composites_of_y;
    for (std::size_t j = 0; j < slice.elements().size(); ++j) {
        BiRelation c = compose(y, slice.elements()[j]);
        if (c == zero_rel) continue;
        composites_of_y.emplace(c.graph(), j);  // smallest j wins
    }
    for (std::size_t i = 0; i < slice.elements().size(); ++i) {
        BiRelation c = compose(x, slice.elements()[i]);
        if (c == zero_rel) continue;
        auto it = composites_of_y.find(c.graph());
        if (it != composites_of_y.end())
            return std::make_pair(slice.elements()[i], slice.elements()[it->second]);
    }
    return std::nullopt;
}

namespace {

bool is_automorphism_graph(const BiRelation& g) {
    return g.kind() == RelationKind::Endogeny && g.kat().is_zero() && g.kernel().is_zero() &&
           g.image().is_full();
}

bool is_prime_power(Int n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1;
        }
    return true;  // n itself prime
}

}  // namespace

ZilberResult zilber_field(const FgAbGroup& a, const std::vector<BiRelation>& gens) {
    if (!a.is_finite()) throw PreconditionError("zilber_field requires a finite module");
    if (a.order() > caps().torsion_order)
        throw CapExceededError("module order " + a.order().str() + " exceeds cap " +
                               caps().torsion_order.str());
    if (a.order() < 2) throw PreconditionError("zilber_field requires a nontrivial module");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].ambient() != a)
            throw AmbientMismatchError("generator " + std::to_string(i) +
                                       " lives over a different module");
        if (!is_automorphism_graph(gens[i]))
            throw PreconditionError("generator " + std::to_string(i) +
                                    " is not an automorphism graph");
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (compose(gens[i], gens[j]) != compose(gens[j], gens[i]))
                return ZilberFailure{"noncommutative", "generators " + std::to_string(i) + " and " +
                                                           std::to_string(j) + " do not commute"};

    // G-minimality: no nontrivial proper subgroup invariant under all generators.
    for (const auto& s : all_subgroups_of_finite(Subgroup::full(a))) {
        if (s.is_zero() || s.is_full()) continue;
        bool invariant = true;
        for (const auto& g : gens) invariant = invariant && s.contains(apply(g, s));
        if (invariant)
            return ZilberFailure{"not-minimal",
                                 "invariant subgroup with basis " + s.basis().to_string()};
    }

    // Close the generated endomorphism ring under add and compose.
    std::vector<BiRelation> elems{BiRelation::zero(a), BiRelation::identity(a)};
    std::map<IntMat, std::size_t> index;
    for (const auto& e : elems) index.emplace(e.graph(), index.size());
    auto push = [&](const BiRelation& r) {
        if (index.count(r.graph())) return;
        if (static_cast<std::int64_t>(elems.size()) >= caps().slice_elements)
            throw CapExceededError("ring closure exceeds the element cap");
        index.emplace(r.graph(), elems.size());
        elems.push_back(r);
    };
    for (const auto& g : gens) push(g);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            push(add(elems[i], elems[j]));
            push(compose(elems[i], elems[j]));
            push(compose(elems[j], elems[i]));
        }
    }

    // Certify: commutative, every nonzero element invertible.
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (compose(elems[i], elems[j]) != compose(elems[j], elems[i]))
                return ZilberFailure{"noncommutative", "ring closure is not commutative"};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] == elems[0]) continue;
        if (!elems[i].kernel().is_zero() || !elems[i].image().is_full())
            return ZilberFailure{"zero-divisor", "ring element " + std::to_string(i) +
                                                     " is a nonzero non-unit"};
    }

    FieldTable table;
    table.order = Int(elems.size());
    table.zero_index = 0;
    table.one_index = 1;
    table.elements = elems;
    table.add_table.assign(elems.size(), std::vector<std::size_t>(elems.size()));
    table.mul_table.assign(elems.size(), std::vector<std::size_t>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) {
            table.add_table[i][j] = index.at(add(elems[i], elems[j]).graph());
            table.mul_table[i][j] = index.at(compose(elems[i], elems[j]).graph());
        }

    if (!is_prime_power(table.order))
        throw LemmaViolationError("certified field has non-prime-power order");

    // Exhaustive field axioms on the tables.
    const auto& S = table.add_table;
    const auto& M = table.mul_table;
    std::size_t m = elems.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (S[i][table.zero_index] != i || M[i][table.one_index] != i ||
            M[i][table.zero_index] != table.zero_index)
            throw LemmaViolationError("field table identity axioms fail");
        bool has_neg = false, has_inv = i == table.zero_index;
        for (std::size_t j = 0; j < m; ++j) {
            has_neg = has_neg || S[i][j] == table.zero_index;
            has_inv = has_inv || M[i][j] == table.one_index;
            if (S[i][j] != S[j][i] || M[i][j] != M[j][i])
                throw LemmaViolationError("field table commutativity fails");
            for (std::size_t k = 0; k < m; ++k) {
                if (S[S[i][j]][k] != S[i][S[j][k]] || M[M[i][j]][k] != M[i][M[j][k]])
                    throw LemmaViolationError("field table associativity fails");
                if (M[i][S[j][k]] != S[M[i][j]][M[i][k]])
                    throw LemmaViolationError("field table distributivity fails");
            }
        }
        if (!has_neg || !has_inv) throw LemmaViolationError("field table inverses missing");
    }

    // Module isomorphism A ≅ K^+ through the orbit of a base point.
    std::vector<Vec> points = a.elements();
    Vec a0;
    for (const auto& p : points)
        if (!vec_is_zero(p)) {
            a0 = p;
            break;
        }
    table.base_point = a0;
    std::set<Vec> hit;
    for (const auto& e : elems) {
        auto val = e.value_at(a0);
        if (!val) throw LemmaViolationError("field element is partial on the module");
        table.module_iso.push_back(*val);
        hit.insert(*val);
    }
    if (hit.size() != elems.size() || Int(elems.size()) != a.order())
        throw LemmaViolationError("orbit map of the base point is not a bijection onto A");
    // The generator action matches multiplication by the embedded images.
    for (const auto& g : gens) {
        std::size_t gi = index.at(g.graph());
        table.generator_images.push_back(gi);
        for (std::size_t i = 0; i < m; ++i) {
            auto lhs = g.value_at(table.module_iso[i]);
            if (!lhs || *lhs != table.module_iso[M[gi][i]])
                throw LemmaViolationError("module isomorphism does not intertwine the action");
        }
    }
    return table;
}

std::vector<std::size_t> almost_centralizer_in_g(const std::vector<BiRelation>& gens,
                                                 const FgAbGroup& a) {
    std::vector<std::size_t> flagged;
    BiRelation id = BiRelation::identity(a);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].ambient() != a)
            throw AmbientMismatchError("generator over a different ambient");
        if (gens[i].kind() != RelationKind::Endogeny || !gens[i].kat().is_zero())
            throw PreconditionError("generator " + std::to_string(i) +
                                    " is not an endomorphism graph");
        Subgroup fixed = add(gens[i], neg(id)).kernel();
        if (fixed.rank() == a.free_rank()) flagged.push_back(i);
    }
    return flagged;
}

}  // namespace endocalc
