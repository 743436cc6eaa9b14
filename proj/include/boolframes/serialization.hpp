#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolframes/category.hpp"
#include "boolframes/localization.hpp"
#include "boolframes/observables.hpp"
#include "boolframes/presheaf.hpp"
#include "boolframes/quantum_logic.hpp"

namespace boolframes {

using Json = nlohmann::ordered_json;

/// Input documents that do not match a schema.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return doc.at(key);
}

inline std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError(std::string(what) + " must contain strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Boolean algebras and homomorphisms
// ---------------------------------------------------------------------------

inline FiniteBooleanAlgebra parse_boolean_algebra(const Json& doc) {
    try {
        return powerset_algebra(detail::string_list(detail::field(doc, "atoms"), "atoms"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline Json serialize_boolean_algebra(const FiniteBooleanAlgebra& b) {
    return Json{{"atoms", b.atom_labels()}};
}

inline BooleanHom parse_boolean_hom(const Json& doc) {
    auto source = parse_boolean_algebra(detail::field(doc, "source"));
    auto target = parse_boolean_algebra(detail::field(doc, "target"));
    const auto& map = detail::field(doc, "atom_map");
    if (!map.is_object()) throw ParseError("atom_map must map atoms to atom lists");
    std::vector<Mask> atom_map(static_cast<std::size_t>(source.atom_count()), 0);
    std::vector<bool> given(atom_map.size(), false);
    for (const auto& [key, value] : map.items()) {
        int src_atom = -1;
        for (int i = 0; i < source.atom_count(); ++i) {
            if (source.atom_label(i) == key) src_atom = i;
        }
        if (src_atom < 0) throw ParseError("atom_map key \"" + key + "\" is not a source atom");
        Mask img = 0;
        for (const auto& name : detail::string_list(value, "atom image")) {
            int tgt_atom = -1;
            for (int i = 0; i < target.atom_count(); ++i) {
                if (target.atom_label(i) == name) tgt_atom = i;
            }
            if (tgt_atom < 0) {
                throw ParseError("atom image \"" + name + "\" is not a target atom");
            }
            img |= target.atom(tgt_atom);
        }
        atom_map[src_atom] = img;
        given[src_atom] = true;
    }
    for (std::size_t i = 0; i < given.size(); ++i) {
        if (!given[i]) {
            throw ParseError("atom_map misses source atom \"" + source.atom_label(int(i)) + "\"");
        }
    }
    return BooleanHom{std::move(source), std::move(target), std::move(atom_map)};
}

inline Json serialize_boolean_hom(const BooleanHom& h) {
    Json map = Json::object();
    for (int i = 0; i < h.source.atom_count(); ++i) {
        std::vector<std::string> img;
        for (int j = 0; j < h.target.atom_count(); ++j) {
            if (h.atom_map[i] & h.target.atom(j)) img.push_back(h.target.atom_label(j));
        }
        map[h.source.atom_label(i)] = img;
    }
    return Json{{"source", serialize_boolean_algebra(h.source)},
                {"target", serialize_boolean_algebra(h.target)},
                {"atom_map", std::move(map)}};
}

// ---------------------------------------------------------------------------
// Event algebras
// ---------------------------------------------------------------------------

inline PastingSpec parse_pasting_spec(const Json& doc) {
    const auto& blocks = detail::field(doc, "blocks");
    if (!blocks.is_array()) throw ParseError("blocks must be an array of atom lists");
    PastingSpec spec;
    for (const auto& block : blocks) {
        spec.blocks.push_back(detail::string_list(block, "block"));
    }
    return spec;
}

inline OrthomodularPoset parse_omp(const Json& doc) {
    auto labels = detail::string_list(detail::field(doc, "elements"), "elements");
    auto index = [&](const std::string& name) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == name) return static_cast<int>(i);
        }
        throw ParseError("unknown element \"" + name + "\"");
    };

    std::vector<std::pair<int, int>> below;
    const auto& leq = detail::field(doc, "leq");
    if (!leq.is_array()) throw ParseError("leq must be an array of [lower, upper] pairs");
    for (const auto& pair : leq) {
        if (!pair.is_array() || pair.size() != 2) {
            throw ParseError("leq entries must be [lower, upper] pairs");
        }
        below.push_back({index(pair.at(0).get<std::string>()),
                         index(pair.at(1).get<std::string>())});
    }

    const auto& ortho_doc = detail::field(doc, "ortho");
    if (!ortho_doc.is_object()) throw ParseError("ortho must map element labels to labels");
    std::vector<int> ortho(labels.size(), -1);
    for (const auto& [key, value] : ortho_doc.items()) {
        if (!value.is_string()) throw ParseError("ortho values must be element labels");
        ortho[index(key)] = index(value.get<std::string>());
    }
    for (std::size_t i = 0; i < ortho.size(); ++i) {
        if (ortho[i] < 0) throw ParseError("ortho misses element \"" + labels[i] + "\"");
    }

    int top = -1;
    if (doc.contains("top")) {
        top = index(doc.at("top").get<std::string>());
    } else {
        // unique element above everything, per the given pairs
        std::vector<std::vector<bool>> above(labels.size(),
                                             std::vector<bool>(labels.size(), false));
        for (std::size_t i = 0; i < labels.size(); ++i) above[i][i] = true;
        for (auto [a, b] : below) above[a][b] = true;
        for (std::size_t m = 0; m < labels.size(); ++m) {
            bool all = true;
            for (std::size_t l = 0; l < labels.size(); ++l) all &= above[l][m];
            if (all) {
                top = static_cast<int>(m);
                break;
            }
        }
        if (top < 0) {
            throw ParseError("no top element can be inferred; add an explicit \"top\"");
        }
    }
    try {
        return OrthomodularPoset::from_relations(std::move(labels), below, std::move(ortho), top);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline Json serialize_omp(const OrthomodularPoset& l, bool with_blocks = false) {
    Json leq = Json::array();
    for (int i = 0; i < l.size(); ++i) {
        for (int j = 0; j < l.size(); ++j) {
            if (i != j && l.leq(i, j)) leq.push_back(Json::array({l.label(i), l.label(j)}));
        }
    }
    Json ortho = Json::object();
    for (int i = 0; i < l.size(); ++i) ortho[l.label(i)] = l.label(l.ortho(i));
    Json doc{{"elements", l.labels()},
             {"leq", std::move(leq)},
             {"ortho", std::move(ortho)},
             {"top", l.label(l.top())}};
    if (with_blocks) {
        Json blocks = Json::array();
        for (const auto& block : maximal_boolean_subalgebras(l)) {
            Json b = Json::array();
            for (int x : block) b.push_back(l.label(x));
            blocks.push_back(std::move(b));
        }
        doc["blocks"] = std::move(blocks);
    }
    return doc;
}

/// An "elements" document is an explicit event algebra; a document with
/// only "blocks" is a pasting recipe. Pasting failures surface as a
/// validation report, not a parse error.
struct EventAlgebraInput {
    std::optional<OrthomodularPoset> algebra;
    ValidationReport pasting_report;
    bool was_pasting = false;
};

inline EventAlgebraInput parse_event_algebra_input(const Json& doc) {
    EventAlgebraInput out;
    if (doc.is_object() && doc.contains("elements")) {
        out.algebra = parse_omp(doc);
        return out;
    }
    if (doc.is_object() && doc.contains("blocks")) {
        out.was_pasting = true;
        try {
            auto pasted = paste_boolean_blocks(parse_pasting_spec(doc));
            out.algebra = std::move(pasted.algebra);
            out.pasting_report = std::move(pasted.report);
        } catch (const BoundExceeded&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
        return out;
    }
    throw ParseError("expected an event algebra (\"elements\") or a pasting (\"blocks\")");
}

// ---------------------------------------------------------------------------
// Partitions, observables, cell functions
// ---------------------------------------------------------------------------

inline PartitionAlgebra parse_partition(const Json& doc) {
    std::vector<Rational> bps;
    for (const auto& text :
         detail::string_list(detail::field(doc, "breakpoints"), "breakpoints")) {
        try {
            bps.push_back(parse_rational(text));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    try {
        return PartitionAlgebra(std::move(bps));
    } catch (const BoundExceeded&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline Json serialize_partition(const PartitionAlgebra& p) {
    std::vector<std::string> bps;
    for (const auto& b : p.breakpoints()) bps.push_back(rational_to_string(b));
    return Json{{"breakpoints", bps}};
}

inline Observable parse_observable(const Json& doc) {
    auto part = parse_partition(detail::field(doc, "partition"));
    auto codomain_input = parse_event_algebra_input(detail::field(doc, "codomain"));
    if (!codomain_input.algebra) {
        throw ParseError("observable codomain pasting is not an event algebra:\n" +
                         codomain_input.pasting_report.summary());
    }
    auto cells = detail::string_list(detail::field(doc, "cell_map"), "cell_map");
    if (static_cast<int>(cells.size()) != part.cell_count()) {
        throw ParseError("cell_map must list one element per cell");
    }
    std::vector<int> cell_map;
    for (const auto& name : cells) {
        auto idx = codomain_input.algebra->index_of(name);
        if (!idx) throw ParseError("cell image \"" + name + "\" is not a codomain element");
        cell_map.push_back(*idx);
    }
    return Observable{std::move(part), std::move(*codomain_input.algebra), std::move(cell_map)};
}

inline CellFunction parse_cell_function(const Json& doc) {
    auto source = parse_partition(detail::field(doc, "source"));
    auto target = parse_partition(detail::field(doc, "target"));
    const auto& pre = detail::field(doc, "preimage_map");
    if (!pre.is_array()) throw ParseError("preimage_map must be an array per target cell");
    std::vector<std::vector<int>> preimage_map;
    for (const auto& cells : pre) {
        if (!cells.is_array()) throw ParseError("preimage_map entries must be arrays");
        std::vector<int> sources;
        for (const auto& c : cells) {
            if (!c.is_number_integer()) throw ParseError("preimage cells are indices");
            sources.push_back(c.get<int>());
        }
        std::sort(sources.begin(), sources.end());
        preimage_map.push_back(std::move(sources));
    }
    return CellFunction{std::move(source), std::move(target), std::move(preimage_map)};
}

// ---------------------------------------------------------------------------
// Model categories and presheaves
// ---------------------------------------------------------------------------

/// Either {"max_atoms": k} for the generated powerset model, or an inline
/// object/arrow list; inline arrows must be closed under composition
/// (identities are synthesized when missing).
inline CoordinatizationModel parse_model(const Json& doc) {
    if (!doc.is_object()) throw ParseError("model must be an object");
    if (doc.contains("max_atoms")) {
        int k = doc.at("max_atoms").get<int>();
        try {
            return standard_model(k);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }

    const auto& objects = detail::field(doc, "objects");
    if (!objects.is_array() || objects.empty()) {
        throw ParseError("model objects must be a non-empty array");
    }
    std::vector<std::string> names;
    std::vector<FiniteBooleanAlgebra> algebras;
    for (const auto& obj : objects) {
        names.push_back(detail::field(obj, "name").get<std::string>());
        algebras.push_back(
            powerset_algebra(detail::string_list(detail::field(obj, "atoms"), "atoms")));
    }
    auto object_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) return static_cast<int>(i);
        }
        throw ParseError("unknown model object \"" + name + "\"");
    };

    std::vector<Arrow> arrows;
    std::vector<BooleanHom> homs;
    if (doc.contains("arrows")) {
        for (const auto& arr : doc.at("arrows")) {
            int src = object_index(detail::field(arr, "source").get<std::string>());
            int tgt = object_index(detail::field(arr, "target").get<std::string>());
            Json hom_doc{{"source", serialize_boolean_algebra(algebras[src])},
                         {"target", serialize_boolean_algebra(algebras[tgt])},
                         {"atom_map", detail::field(arr, "atom_map")}};
            auto hom = parse_boolean_hom(hom_doc);
            auto report = validate_boolean_hom(hom);
            if (!report.ok()) {
                throw ParseError("model arrow \"" +
                                 detail::field(arr, "name").get<std::string>() +
                                 "\" is not a Boolean homomorphism:\n" + report.summary());
            }
            arrows.push_back({detail::field(arr, "name").get<std::string>(), src, tgt});
            homs.push_back(std::move(hom));
        }
    }
    for (std::size_t o = 0; o < names.size(); ++o) {
        bool has_id = false;
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            has_id |= arrows[a].source == static_cast<int>(o) &&
                      arrows[a].target == static_cast<int>(o) &&
                      homs[a] == identity_boolean_hom(algebras[o]);
        }
        if (!has_id) {
            arrows.push_back({"id_" + names[o], static_cast<int>(o), static_cast<int>(o)});
            homs.push_back(identity_boolean_hom(algebras[o]));
        }
    }

    auto find_arrow = [&](int src, int tgt, const BooleanHom& h) -> int {
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            if (arrows[a].source == src && arrows[a].target == tgt &&
                homs[a].atom_map == h.atom_map) {
                return static_cast<int>(a);
            }
        }
        return -1;
    };
    std::vector<int> identities;
    for (std::size_t o = 0; o < names.size(); ++o) {
        identities.push_back(find_arrow(static_cast<int>(o), static_cast<int>(o),
                                        identity_boolean_hom(algebras[o])));
    }
    std::vector<std::vector<int>> table(arrows.size(), std::vector<int>(arrows.size(), -1));
    for (std::size_t g = 0; g < arrows.size(); ++g) {
        for (std::size_t f = 0; f < arrows.size(); ++f) {
            if (arrows[f].target != arrows[g].source) continue;
            int composite = find_arrow(arrows[f].source, arrows[g].target,
                                       compose_boolean_homs(homs[g], homs[f]));
            if (composite < 0) {
                throw ParseError("model arrows are not closed under composition: " +
                                 arrows[g].name + " o " + arrows[f].name + " is missing");
            }
            table[g][f] = composite;
        }
    }
    return CoordinatizationModel(
        FiniteCategory(std::move(names), std::move(arrows), std::move(identities),
                       std::move(table)),
        std::move(algebras), std::move(homs));
}

inline Json serialize_model(const CoordinatizationModel& model) {
    const auto& c = model.base();
    Json objects = Json::array();
    for (int o = 0; o < c.object_count(); ++o) {
        objects.push_back(
            Json{{"name", c.object_name(o)}, {"atoms", model.algebra(o).atom_labels()}});
    }
    Json arrows = Json::array();
    for (int a = 0; a < c.arrow_count(); ++a) {
        const auto& arr = c.arrow(a);
        Json entry{{"name", arr.name},
                   {"source", c.object_name(arr.source)},
                   {"target", c.object_name(arr.target)}};
        entry["atom_map"] = serialize_boolean_hom(model.hom(a)).at("atom_map");
        arrows.push_back(std::move(entry));
    }
    return Json{{"objects", std::move(objects)}, {"arrows", std::move(arrows)}};
}

inline Json serialize_presheaf(const SetPresheaf& x) {
    const auto& c = x.base();
    Json on_objects = Json::object();
    for (int o = 0; o < c.object_count(); ++o) {
        std::vector<std::string> fiber;
        for (int p = 0; p < x.points(o); ++p) fiber.push_back(x.point_label(o, p));
        on_objects[c.object_name(o)] = fiber;
    }
    Json on_arrows = Json::object();
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        if (u == c.identity(arr.source) && arr.source == arr.target) continue;
        Json fn = Json::object();
        for (int p = 0; p < x.points(arr.target); ++p) {
            fn[x.point_label(arr.target, p)] =
                x.point_label(arr.source, x.restrict_point(u, p));
        }
        on_arrows[arr.name] = std::move(fn);
    }
    return Json{{"on_objects", std::move(on_objects)}, {"on_arrows", std::move(on_arrows)}};
}

/// A presheaf document: over a model, either {"representable": "B2"} or
/// explicit {"on_objects": {...}, "on_arrows": {...}}.
struct PresheafInput {
    CoordinatizationModel model;
    SetPresheaf presheaf;
};

inline PresheafInput parse_presheaf_input(const Json& doc) {
    auto model = parse_model(detail::field(doc, "model"));
    const auto& c = model.base();
    if (doc.contains("representable")) {
        auto obj = c.object_index(doc.at("representable").get<std::string>());
        if (!obj) throw ParseError("representable names an unknown object");
        auto y = representable(c, *obj);
        return PresheafInput{std::move(model), std::move(y)};
    }
    const auto& on_objects = detail::field(doc, "on_objects");
    std::vector<std::vector<std::string>> labels(c.object_count());
    for (const auto& [key, value] : on_objects.items()) {
        auto obj = c.object_index(key);
        if (!obj) throw ParseError("on_objects names an unknown object \"" + key + "\"");
        labels[*obj] = detail::string_list(value, "fiber");
    }
    auto point_index = [&](int obj, const std::string& name) {
        for (std::size_t i = 0; i < labels[obj].size(); ++i) {
            if (labels[obj][i] == name) return static_cast<int>(i);
        }
        throw ParseError("unknown point \"" + name + "\" at " + c.object_name(obj));
    };
    std::vector<std::vector<int>> restriction(c.arrow_count());
    const auto& on_arrows = detail::field(doc, "on_arrows");
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        if (u == c.identity(arr.source) && arr.source == arr.target) {
            restriction[u].resize(labels[arr.target].size());
            for (std::size_t p = 0; p < labels[arr.target].size(); ++p) {
                restriction[u][p] = static_cast<int>(p);
            }
            continue;
        }
        if (!on_arrows.contains(arr.name)) {
            throw ParseError("on_arrows misses arrow \"" + arr.name + "\"");
        }
        const auto& fn = on_arrows.at(arr.name);
        restriction[u].resize(labels[arr.target].size());
        std::vector<bool> set(labels[arr.target].size(), false);
        for (const auto& [from, to] : fn.items()) {
            int p = point_index(arr.target, from);
            restriction[u][p] = point_index(arr.source, to.get<std::string>());
            set[p] = true;
        }
        for (std::size_t p = 0; p < set.size(); ++p) {
            if (!set[p]) {
                throw ParseError("restriction along \"" + arr.name + "\" misses point \"" +
                                 labels[arr.target][p] + "\"");
            }
        }
    }
    try {
        SetPresheaf x(c, std::move(labels), std::move(restriction));
        return PresheafInput{std::move(model), std::move(x)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

// ---------------------------------------------------------------------------
// Systems of charts
// ---------------------------------------------------------------------------

struct SystemInput {
    CoordinatizationModel model;
    OrthomodularPoset target;
    std::vector<Chart> seeds;
};

inline SystemInput parse_system(const Json& doc) {
    auto model = parse_model(detail::field(doc, "model"));
    auto target_input = parse_event_algebra_input(detail::field(doc, "target"));
    if (!target_input.algebra) {
        throw ParseError("system target pasting is not an event algebra:\n" +
                         target_input.pasting_report.summary());
    }
    auto target = std::move(*target_input.algebra);

    std::vector<Chart> seeds;
    const auto& seed_docs = detail::field(doc, "seeds");
    if (!seed_docs.is_array()) throw ParseError("seeds must be an array of charts");
    for (const auto& seed : seed_docs) {
        auto obj = model.base().object_index(detail::field(seed, "object").get<std::string>());
        if (!obj) throw ParseError("seed chart over an unknown model object");
        const auto& alg = model.algebra(*obj);
        const auto& images_doc = detail::field(seed, "atom_images");
        std::vector<int> images(static_cast<std::size_t>(alg.atom_count()), -1);
        if (images_doc.is_array()) {
            auto names = detail::string_list(images_doc, "atom_images");
            if (static_cast<int>(names.size()) != alg.atom_count()) {
                throw ParseError("atom_images must list one target element per atom");
            }
            for (std::size_t i = 0; i < names.size(); ++i) {
                auto idx = target.index_of(names[i]);
                if (!idx) throw ParseError("atom image \"" + names[i] + "\" is not an element");
                images[i] = *idx;
            }
        } else if (images_doc.is_object()) {
            for (const auto& [atom, value] : images_doc.items()) {
                int pos = -1;
                for (int i = 0; i < alg.atom_count(); ++i) {
                    if (alg.atom_label(i) == atom) pos = i;
                }
                if (pos < 0) throw ParseError("atom \"" + atom + "\" is not in the frame");
                auto idx = target.index_of(value.get<std::string>());
                if (!idx) {
                    throw ParseError("atom image \"" + value.get<std::string>() +
                                     "\" is not an element");
                }
                images[pos] = *idx;
            }
            for (int v : images) {
                if (v < 0) throw ParseError("atom_images misses a frame atom");
            }
        } else {
            throw ParseError("atom_images must be an array or an atom-to-element object");
        }
        auto hom = quantum_hom_from_atom_images(alg, target, images);
        if (!hom) {
            // keep the raw data; generate_system reports the violated law
            std::vector<int> map(alg.element_count(), images[0]);
            for (Mask m = 0; m < static_cast<Mask>(alg.element_count()); ++m) {
                int acc = target.bottom();
                for (int i = 0; i < alg.atom_count(); ++i) {
                    if (m & alg.atom(i)) acc = images[i];
                }
                map[m] = acc;
            }
            seeds.push_back(Chart{*obj, QuantumHom{as_omp(alg), target, std::move(map)}});
        } else {
            seeds.push_back(Chart{*obj, std::move(*hom)});
        }
    }
    return SystemInput{std::move(model), std::move(target), std::move(seeds)};
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

inline Json serialize_validation(const ValidationReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations()) {
        violations.push_back(Json{{"law", v.law}, {"witness", v.witness}});
    }
    return Json{{"ok", report.ok()}, {"violations", std::move(violations)}};
}

inline Json serialize_counit_report(const CounitReport& report, const OrthomodularPoset& l,
                                    const TensorQuotient* quotient = nullptr) {
    Json classes = Json::array();
    for (int cls = 0; cls < report.class_count; ++cls) {
        Json entry{{"class", cls}, {"image", l.label(report.class_images[cls])}};
        if (quotient) {
            const auto& rep = quotient->representative(cls);
            entry["representative"] =
                Json{{"object", rep.obj}, {"point", rep.point}, {"element", rep.element}};
        }
        classes.push_back(std::move(entry));
    }
    return Json{{"class_count", report.class_count},
                {"classes", std::move(classes)},
                {"covering", report.covering},
                {"injective", report.injective},
                {"preserves_top", report.preserves_top},
                {"preserves_ortho", report.preserves_ortho},
                {"preserves_order", report.preserves_order},
                {"preserves_ortho_join", report.preserves_ortho_join},
                {"is_localization", report.is_localization},
                {"witnesses", report.witnesses}};
}

}  // namespace boolframes
