#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "boolframes/category.hpp"
#include "boolframes/presheaf.hpp"
#include "boolframes/quantum_logic.hpp"
#include "boolframes/tensor.hpp"

namespace boolframes {

/// A Boolean measurement chart: a quantum homomorphism from the Boolean
/// frame at a model object into the event algebra under study.
struct Chart {
    int object;
    QuantumHom hom;
};

/// System of prelocalizations: a subfunctor of the Hom presheaf R(L),
/// stored as sorted chart indices per model object. Closure under
/// precomposition with every model arrow is an invariant.
class PrelocSystem {
public:
    PrelocSystem(CoordinatizationModel model, OrthomodularPoset target, HomPresheaf all_homs,
                 std::vector<std::vector<int>> members)
        : model_(std::move(model)),
          target_(std::move(target)),
          all_homs_(std::move(all_homs)),
          members_(std::move(members)) {
        if (static_cast<int>(members_.size()) != model_.base().object_count()) {
            throw std::invalid_argument("system needs one chart set per model object");
        }
    }

    const CoordinatizationModel& model() const { return model_; }
    const OrthomodularPoset& target() const { return target_; }
    const HomPresheaf& all_homs() const { return all_homs_; }
    const std::vector<std::vector<int>>& members() const { return members_; }

    int chart_count() const {
        int n = 0;
        for (const auto& m : members_) n += static_cast<int>(m.size());
        return n;
    }

    const QuantumHom& chart_hom(int obj, int position) const {
        return all_homs_.charts[obj][members_[obj][position]];
    }
    Chart chart(int obj, int position) const { return {obj, chart_hom(obj, position)}; }

    /// The system as a presheaf (the subfunctor of R(L) it carries).
    SetPresheaf as_presheaf() const {
        const auto& c = model_.base();
        std::vector<std::vector<std::string>> labels(c.object_count());
        std::vector<std::vector<int>> position(c.object_count());
        for (int o = 0; o < c.object_count(); ++o) {
            position[o].assign(all_homs_.charts[o].size(), -1);
            for (std::size_t i = 0; i < members_[o].size(); ++i) {
                position[o][members_[o][i]] = static_cast<int>(i);
                labels[o].push_back(all_homs_.shape.point_label(o, members_[o][i]));
            }
        }
        std::vector<std::vector<int>> restriction(c.arrow_count());
        for (int u = 0; u < c.arrow_count(); ++u) {
            const auto& arr = c.arrow(u);
            for (int idx : members_[arr.target]) {
                int pre = all_homs_.shape.restrict_point(u, idx);
                int pos = position[arr.source][pre];
                if (pos < 0) {
                    throw std::logic_error("system is not closed under precomposition");
                }
                restriction[u].push_back(pos);
            }
        }
        return SetPresheaf(c, std::move(labels), std::move(restriction));
    }

    /// Re-checks the subfunctor and closure invariants.
    ValidationReport validate() const {
        ValidationReport report;
        const auto& c = model_.base();
        for (int o = 0; o < c.object_count(); ++o) {
            for (int idx : members_[o]) {
                if (idx < 0 || idx >= static_cast<int>(all_homs_.charts[o].size())) {
                    report.add("subfunctor", "chart index outside R(L) at " + c.object_name(o));
                }
            }
        }
        if (!report.ok()) return report;
        for (int u = 0; u < c.arrow_count(); ++u) {
            const auto& arr = c.arrow(u);
            for (int idx : members_[arr.target]) {
                int pre = all_homs_.shape.restrict_point(u, idx);
                if (!std::binary_search(members_[arr.source].begin(), members_[arr.source].end(),
                                        pre)) {
                    report.add("closure", all_homs_.shape.point_label(arr.target, idx) +
                                              " o A(" + arr.name + ") missing");
                }
            }
        }
        return report;
    }

private:
    CoordinatizationModel model_;
    OrthomodularPoset target_;
    HomPresheaf all_homs_;
    std::vector<std::vector<int>> members_;
};

/// A seed chart that fails the quantum homomorphism conditions.
class SeedRejection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Smallest system of prelocalizations containing the seed charts: closes
/// under precomposition with every model arrow to a fixpoint.
inline PrelocSystem generate_system(const std::vector<Chart>& seeds,
                                    const CoordinatizationModel& model,
                                    const OrthomodularPoset& l) {
    auto homs = hom_presheaf(model, l);
    const auto& c = model.base();
    std::vector<std::set<int>> chosen(c.object_count());

    for (const auto& seed : seeds) {
        if (seed.object < 0 || seed.object >= c.object_count()) {
            throw std::invalid_argument("seed chart over an unknown model object");
        }
        auto report = validate_quantum_hom(seed.hom);
        if (!report.ok()) {
            throw SeedRejection("seed chart at " + c.object_name(seed.object) +
                                " is not a quantum homomorphism:\n" + report.summary());
        }
        if (!(seed.hom.source == model.omp(seed.object)) || !(seed.hom.target == l)) {
            throw std::invalid_argument("seed chart endpoints do not match the system");
        }
        auto idx = homs.chart_index(seed.object, seed.hom);
        if (!idx) throw std::logic_error("valid seed chart missing from R(L)");
        chosen[seed.object].insert(*idx);
    }

    bool grew = true;
    while (grew) {
        grew = false;
        for (int u = 0; u < c.arrow_count(); ++u) {
            const auto& arr = c.arrow(u);
            for (int idx : chosen[arr.target]) {
                grew |= chosen[arr.source].insert(homs.shape.restrict_point(u, idx)).second;
            }
        }
    }

    std::vector<std::vector<int>> members;
    for (const auto& s : chosen) members.emplace_back(s.begin(), s.end());
    return PrelocSystem(model, l, std::move(homs), std::move(members));
}

/// The maximal system: the Hom presheaf R(L) itself.
inline PrelocSystem maximal_system(const CoordinatizationModel& model,
                                   const OrthomodularPoset& l) {
    auto homs = hom_presheaf(model, l);
    std::vector<std::vector<int>> members;
    for (const auto& fiber : homs.charts) {
        std::vector<int> all(fiber.size());
        for (std::size_t i = 0; i < fiber.size(); ++i) all[i] = static_cast<int>(i);
        members.push_back(std::move(all));
    }
    return PrelocSystem(model, l, std::move(homs), std::move(members));
}

/// Member-wise intersection of two systems over the same model and target.
inline PrelocSystem intersect_systems(const PrelocSystem& s1, const PrelocSystem& s2) {
    if (!(s1.model() == s2.model()) || !(s1.target() == s2.target())) {
        throw std::invalid_argument("intersect_systems needs a common model and target");
    }
    std::vector<std::vector<int>> members;
    for (std::size_t o = 0; o < s1.members().size(); ++o) {
        std::vector<int> common;
        std::set_intersection(s1.members()[o].begin(), s1.members()[o].end(),
                              s2.members()[o].begin(), s2.members()[o].end(),
                              std::back_inserter(common));
        members.push_back(std::move(common));
    }
    return PrelocSystem(s1.model(), s1.target(), s1.all_homs(), std::move(members));
}

// ---------------------------------------------------------------------------
// Fibre products and pasting maps
// ---------------------------------------------------------------------------

/// Set-level pullback of two charts with common target: the pairs on which
/// they agree, with the two coordinate projections.
struct FibreProduct {
    std::vector<std::pair<Mask, Mask>> pairs;  ///< (element of A(phi), element of A(psi))
};

inline FibreProduct fibre_product(const Chart& phi, const Chart& psi) {
    if (!(phi.hom.target == psi.hom.target)) {
        throw std::invalid_argument("fibre_product needs charts with a common target");
    }
    FibreProduct fp;
    const auto na = static_cast<Mask>(phi.hom.source.size());
    const auto nb = static_cast<Mask>(psi.hom.source.size());
    for (Mask a = 0; a < na; ++a) {
        for (Mask b = 0; b < nb; ++b) {
            if (phi.hom.apply(static_cast<int>(a)) == psi.hom.apply(static_cast<int>(b))) {
                fp.pairs.push_back({a, b});
            }
        }
    }
    return fp;
}

/// True when the two charts agree on some element other than 0.
inline bool charts_overlap(const Chart& phi, const Chart& psi) {
    const auto& l = phi.hom.target;
    for (const auto& [a, b] : fibre_product(phi, psi).pairs) {
        if (phi.hom.apply(static_cast<int>(a)) != l.bottom()) return true;
    }
    return false;
}

/// Overlap transition map Omega_{phi,psi}: from the psi-side projection
/// image onto the phi-side projection image, defined when both projections
/// of the fibre product are injective.
struct PastingMap {
    bool applicable = false;
    std::string reason;
    std::vector<std::pair<Mask, Mask>> assignment;  ///< (psi-side b, phi-side a), sorted by b

    std::optional<Mask> apply(Mask b) const {
        for (const auto& [from, to] : assignment) {
            if (from == b) return to;
        }
        return std::nullopt;
    }
};

inline PastingMap pasting_map(const Chart& phi, const Chart& psi) {
    auto fp = fibre_product(phi, psi);
    PastingMap out;
    std::set<Mask> seen_a, seen_b;
    for (const auto& [a, b] : fp.pairs) {
        if (!seen_a.insert(a).second) {
            out.reason = "pasting undefined: phi-side projection not injective at " +
                         phi.hom.source.label(static_cast<int>(a));
            return out;
        }
        if (!seen_b.insert(b).second) {
            out.reason = "pasting undefined: psi-side projection not injective at " +
                         psi.hom.source.label(static_cast<int>(b));
            return out;
        }
    }
    out.applicable = true;
    for (const auto& [a, b] : fp.pairs) out.assignment.push_back({b, a});
    std::sort(out.assignment.begin(), out.assignment.end());
    return out;
}

/// Triple condition on three already-computed transition maps: wherever
/// Omega_{phi,psi} o Omega_{psi,chi} is defined it must agree with
/// Omega_{phi,chi}. Returns a witness for the first failure.
inline std::optional<std::string> check_transition_triple(const PastingMap& phi_psi,
                                                          const PastingMap& psi_chi,
                                                          const PastingMap& phi_chi) {
    for (const auto& [c, b] : psi_chi.assignment) {
        auto a = phi_psi.apply(b);
        if (!a) continue;
        auto direct = phi_chi.apply(c);
        if (!direct) {
            return "composite defined at element " + std::to_string(c) +
                   " but the direct transition is not";
        }
        if (*direct != *a) {
            return "composite sends element " + std::to_string(c) + " to " + std::to_string(*a) +
                   " but the direct transition gives " + std::to_string(*direct);
        }
    }
    return std::nullopt;
}

/// Identity, mutual-inverse symmetry and the triple condition over every
/// chart pair/triple of the system with nonzero overlap. Pairs whose
/// pasting map is undefined (non-injective projections) are skipped and
/// counted.
struct CocycleReport {
    bool ok = true;
    int pairs_checked = 0;
    int triples_checked = 0;
    int skipped = 0;
    std::vector<std::string> failures;

    void fail(std::string what) {
        ok = false;
        failures.push_back(std::move(what));
    }
};

inline CocycleReport cocycle_check(const PrelocSystem& s) {
    CocycleReport report;
    std::vector<Chart> charts;
    for (std::size_t o = 0; o < s.members().size(); ++o) {
        for (std::size_t i = 0; i < s.members()[o].size(); ++i) {
            charts.push_back(s.chart(static_cast<int>(o), static_cast<int>(i)));
        }
    }
    const auto& l = s.target();
    const std::size_t n = charts.size();

    auto name = [&](std::size_t i) {
        return s.model().base().object_name(charts[i].object) + " chart " + std::to_string(i);
    };

    // chart images as bitsets over L, excluding 0, for fast overlap tests
    std::vector<std::vector<bool>> image(n, std::vector<bool>(l.size(), false));
    for (std::size_t i = 0; i < n; ++i) {
        for (int x : charts[i].hom.map) {
            if (x != l.bottom()) image[i][x] = true;
        }
    }
    auto overlap2 = [&](std::size_t i, std::size_t j) {
        for (int x = 0; x < l.size(); ++x) {
            if (image[i][x] && image[j][x]) return true;
        }
        return false;
    };
    auto overlap3 = [&](std::size_t i, std::size_t j, std::size_t k) {
        for (int x = 0; x < l.size(); ++x) {
            if (image[i][x] && image[j][x] && image[k][x]) return true;
        }
        return false;
    };

    std::vector<std::vector<PastingMap>> omega(n, std::vector<PastingMap>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) omega[i][j] = pasting_map(charts[i], charts[j]);
    }

    // identity
    for (std::size_t i = 0; i < n; ++i) {
        if (!omega[i][i].applicable) {
            ++report.skipped;
            continue;
        }
        ++report.pairs_checked;
        for (const auto& [b, a] : omega[i][i].assignment) {
            if (a != b) report.fail("Omega is not the identity on " + name(i));
        }
    }
    // symmetry as mutual inverse
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!overlap2(i, j)) continue;
            if (!omega[i][j].applicable || !omega[j][i].applicable) {
                ++report.skipped;
                continue;
            }
            ++report.pairs_checked;
            for (const auto& [b, a] : omega[i][j].assignment) {
                auto back = omega[j][i].apply(a);
                if (!back || *back != b) {
                    report.fail("transitions between " + name(i) + " and " + name(j) +
                                " are not mutually inverse");
                }
            }
        }
    }
    // triple condition
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (!overlap3(i, j, k)) continue;
                if (!omega[i][j].applicable || !omega[j][k].applicable ||
                    !omega[i][k].applicable) {
                    ++report.skipped;
                    continue;
                }
                ++report.triples_checked;
                if (auto witness =
                        check_transition_triple(omega[i][j], omega[j][k], omega[i][k])) {
                    report.fail("triple (" + name(i) + ", " + name(j) + ", " + name(k) + "): " +
                                *witness);
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// The counit and the localization verdict
// ---------------------------------------------------------------------------

/// Evaluation of the counit on the system's tensor quotient, with the
/// structure-preservation obligations checked class-wise. Order and
/// orthogonal-join preservation are witnessed inside single charts, the
/// common-refinement reading of the pullback construction.
struct CounitReport {
    std::vector<int> class_images;  ///< class id -> element of L
    int class_count = 0;
    bool covering = false;
    bool injective = false;
    bool preserves_top = false;
    bool preserves_ortho = false;
    bool preserves_order = false;
    bool preserves_ortho_join = false;  ///< informational, not part of the verdict
    bool is_localization = false;
    std::vector<std::string> witnesses;
};

inline CounitReport counit(const PrelocSystem& s) {
    auto closure = s.validate();
    if (!closure.ok()) {
        throw std::invalid_argument("counit needs a valid prelocalization system:\n" +
                                    closure.summary());
    }
    const auto& l = s.target();
    const auto& model = s.model();
    auto x = s.as_presheaf();
    auto t = tensor_product(x, model);

    CounitReport report;
    report.class_count = t.class_count();

    // well-definedness: every member of a class evaluates to the same event
    report.class_images.assign(t.class_count(), -1);
    for (std::size_t node = 0; node < t.nodes().size(); ++node) {
        const auto& nd = t.nodes()[node];
        int img = s.chart_hom(nd.obj, nd.point).apply(static_cast<int>(nd.element));
        int cls = t.node_class(node);
        if (report.class_images[cls] == -1) {
            report.class_images[cls] = img;
        } else if (report.class_images[cls] != img) {
            throw std::logic_error("counit is not constant on a tensor class");
        }
    }

    std::vector<int> hits(l.size(), 0);
    for (int img : report.class_images) ++hits[img];
    report.covering = true;
    for (int e = 0; e < l.size(); ++e) {
        if (hits[e] == 0) {
            report.covering = false;
            report.witnesses.push_back("uncovered: " + l.label(e));
        }
    }
    report.injective = true;
    for (int e = 0; e < l.size(); ++e) {
        if (hits[e] > 1) {
            report.injective = false;
            report.witnesses.push_back("duplicate classes over " + l.label(e));
        }
    }

    report.preserves_top = true;
    report.preserves_ortho = true;
    const auto& c = model.base();
    for (int o = 0; o < c.object_count(); ++o) {
        const auto& alg = model.algebra(o);
        for (int p = 0; p < x.points(o); ++p) {
            if (report.class_images[t.class_of(o, p, alg.top())] != l.top()) {
                report.preserves_top = false;
                report.witnesses.push_back("chart " + x.point_label(o, p) +
                                           " does not send 1 to 1");
            }
            for (Mask m = 0; m < static_cast<Mask>(alg.element_count()); ++m) {
                int img = report.class_images[t.class_of(o, p, m)];
                int img_c = report.class_images[t.class_of(o, p, alg.complement(m))];
                if (img_c != l.ortho(img)) {
                    report.preserves_ortho = false;
                    report.witnesses.push_back("complement of " + alg.element_name(m) +
                                               " in chart " + x.point_label(o, p) +
                                               " is not sent to an orthocomplement");
                }
            }
        }
    }

    // order: every comparable pair of class images needs a single-chart
    // witness c <= d realizing the two classes
    report.preserves_order = true;
    report.preserves_ortho_join = true;
    for (int u = 0; u < t.class_count(); ++u) {
        for (int w = 0; w < t.class_count(); ++w) {
            const bool ordered = l.leq(report.class_images[u], report.class_images[w]);
            const bool orthogonal =
                l.orthogonal(report.class_images[u], report.class_images[w]);
            if (!ordered && !orthogonal) continue;
            bool order_witness = false;
            bool join_witness = false;
            for (int o = 0; o < c.object_count(); ++o) {
                const auto& alg = model.algebra(o);
                for (int p = 0; p < x.points(o); ++p) {
                    for (Mask cmask = 0; cmask < static_cast<Mask>(alg.element_count());
                         ++cmask) {
                        if (t.class_of(o, p, cmask) != u) continue;
                        for (Mask dmask = 0; dmask < static_cast<Mask>(alg.element_count());
                             ++dmask) {
                            if (t.class_of(o, p, dmask) != w) continue;
                            if (alg.leq(cmask, dmask)) order_witness = true;
                            if (alg.disjoint(cmask, dmask)) {
                                int join_img =
                                    report.class_images[t.class_of(o, p, cmask | dmask)];
                                auto expected = l.join(report.class_images[u],
                                                       report.class_images[w]);
                                if (expected && join_img == *expected) join_witness = true;
                            }
                        }
                    }
                }
            }
            if (ordered && !order_witness) {
                report.preserves_order = false;
                report.witnesses.push_back(
                    "no chart witnesses " + l.label(report.class_images[u]) + " <= " +
                    l.label(report.class_images[w]));
            }
            if (orthogonal && !join_witness) report.preserves_ortho_join = false;
        }
    }

    report.is_localization = report.covering && report.injective && report.preserves_top &&
                             report.preserves_ortho && report.preserves_order;
    return report;
}

/// The executable form of the representation theorem: a system is a system
/// of measurement localizations iff the counit restricted to it is a
/// structure-preserving bijection.
inline CounitReport localization_verdict(const PrelocSystem& s) { return counit(s); }

// ---------------------------------------------------------------------------
// Single-frame obstruction
// ---------------------------------------------------------------------------

/// Kochen-Specker style check: obstructed iff no single chart over any
/// model object covers the whole event algebra. For Boolean targets a
/// surjective chart is exhibited instead.
struct ObstructionReport {
    bool obstructed = true;
    std::optional<Chart> surjective_chart;
};

inline ObstructionReport single_frame_obstruction(const OrthomodularPoset& l,
                                                  const CoordinatizationModel& model) {
    ObstructionReport report;
    const auto& c = model.base();
    for (int o = 0; o < c.object_count() && report.obstructed; ++o) {
        for (const auto& h : enumerate_quantum_homs(model.algebra(o), l)) {
            std::vector<bool> hit(l.size(), false);
            for (int x : h.map) hit[x] = true;
            if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
                report.obstructed = false;
                report.surjective_chart = Chart{o, h};
                break;
            }
        }
    }
    return report;
}

}  // namespace boolframes
