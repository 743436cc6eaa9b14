#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "boolframes/adjunction.hpp"
#include "boolframes/dot.hpp"
#include "boolframes/localization.hpp"
#include "boolframes/serialization.hpp"

namespace boolframes::cli {

// Exit status contract: 0 the checked property holds, 1 it fails
// mathematically, 2 the input is unusable (parse error, bound exceeded,
// usage error).

namespace detail {

struct Options {
    std::string input;
    std::string output;
    std::string format = "text";

    bool structured() const { return format == "structured"; }
};

inline Json load_document(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open input file " + path);
    try {
        return Json::parse(file);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline int deliver(const std::string& text, const Options& opt, std::ostream& out,
                   std::ostream& err) {
    if (opt.output.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(opt.output);
    if (!file) {
        err << "cannot open output file " << opt.output << "\n";
        return 2;
    }
    file << text;
    return 0;
}

inline std::string render_validation(const std::string& subject, const ValidationReport& report,
                                     bool structured) {
    if (structured) {
        Json doc = serialize_validation(report);
        doc["subject"] = subject;
        return doc.dump(2) + "\n";
    }
    if (report.ok()) return subject + ": ok\n";
    std::string text = subject + ": invalid\n";
    for (const auto& v : report.violations()) {
        text += "  " + v.law + ": " + v.witness + "\n";
    }
    return text;
}

inline int finish(const std::string& text, bool holds, const Options& opt, std::ostream& out,
                  std::ostream& err) {
    int io = deliver(text, opt, out, err);
    if (io != 0) return io;
    return holds ? 0 : 1;
}

inline int do_validate(const Json& doc, const Options& opt, std::ostream& out,
                       std::ostream& err) {
    const bool structured = opt.structured();
    if (doc.is_object() && doc.contains("atom_map") && doc.contains("source")) {
        auto hom = parse_boolean_hom(doc);
        auto report = validate_boolean_hom(hom);
        return finish(render_validation("boolean hom", report, structured), report.ok(), opt,
                      out, err);
    }
    if (doc.is_object() && doc.contains("atoms")) {
        auto algebra = parse_boolean_algebra(doc);
        std::string text = structured
                               ? Json{{"subject", "boolean algebra"},
                                      {"ok", true},
                                      {"atoms", algebra.atom_count()},
                                      {"elements", algebra.element_count()}}
                                         .dump(2) +
                                     "\n"
                               : "boolean algebra: ok (" +
                                     std::to_string(algebra.atom_count()) + " atoms, " +
                                     std::to_string(algebra.element_count()) + " elements)\n";
        return finish(text, true, opt, out, err);
    }
    if (doc.is_object() && doc.contains("cell_map")) {
        auto obs = parse_observable(doc);
        auto report = validate_observable(obs);
        return finish(render_validation("observable", report, structured), report.ok(), opt, out,
                      err);
    }
    if (doc.is_object() && doc.contains("preimage_map") && doc.contains("source")) {
        auto fn = parse_cell_function(doc);
        auto report = validate_cell_function(fn);
        return finish(render_validation("cell function", report, structured), report.ok(), opt,
                      out, err);
    }
    if (doc.is_object() && doc.contains("breakpoints")) {
        auto part = parse_partition(doc);
        std::string text =
            structured
                ? Json{{"subject", "partition"}, {"ok", true}, {"cells", part.cell_count()}}
                          .dump(2) +
                      "\n"
                : "partition: ok (" + std::to_string(part.cell_count()) + " cells)\n";
        return finish(text, true, opt, out, err);
    }
    if (doc.is_object() && doc.contains("seeds")) {
        auto sys = parse_system(doc);
        auto target_report = validate_event_algebra(sys.target);
        if (!target_report.ok()) {
            return finish(render_validation("system target", target_report, structured), false,
                          opt, out, err);
        }
        try {
            auto s = generate_system(sys.seeds, sys.model, sys.target);
            auto report = s.validate();
            return finish(render_validation("system", report, structured), report.ok(), opt, out,
                          err);
        } catch (const SeedRejection& e) {
            ValidationReport report;
            report.add("seed", e.what());
            return finish(render_validation("system", report, structured), false, opt, out, err);
        }
    }
    if (doc.is_object() && doc.contains("model") &&
        (doc.contains("on_objects") || doc.contains("representable"))) {
        auto input = parse_presheaf_input(doc);
        auto report = validate_presheaf(input.presheaf);
        return finish(render_validation("presheaf", report, structured), report.ok(), opt, out,
                      err);
    }
    if (doc.is_object() && (doc.contains("elements") || doc.contains("blocks"))) {
        auto input = parse_event_algebra_input(doc);
        if (input.algebra) {
            auto report = validate_event_algebra(*input.algebra);
            std::string subject =
                input.was_pasting
                    ? "pasted event algebra (" + std::to_string(input.algebra->size()) +
                          " elements)"
                    : "event algebra";
            return finish(render_validation(subject, report, structured), report.ok(), opt, out,
                          err);
        }
        return finish(render_validation("pasting", input.pasting_report, structured), false, opt,
                      out, err);
    }
    throw ParseError("unrecognized document; see README for the accepted schemas");
}

inline int do_blocks(const Json& doc, const Options& opt, std::ostream& out, std::ostream& err) {
    auto input = parse_event_algebra_input(doc);
    if (!input.algebra) {
        return finish(render_validation("pasting", input.pasting_report, opt.structured()),
                      false, opt, out, err);
    }
    auto report = validate_event_algebra(*input.algebra);
    if (!report.ok()) {
        return finish(render_validation("event algebra", report, opt.structured()), false, opt,
                      out, err);
    }
    const auto& l = *input.algebra;
    auto blocks = maximal_boolean_subalgebras(l);
    if (opt.structured()) {
        Json arr = Json::array();
        for (const auto& block : blocks) {
            Json b = Json::array();
            for (int x : block) b.push_back(l.label(x));
            arr.push_back(std::move(b));
        }
        return finish(Json{{"blocks", std::move(arr)}}.dump(2) + "\n", true, opt, out, err);
    }
    std::string text = std::to_string(blocks.size()) + " maximal Boolean subalgebras\n";
    for (const auto& block : blocks) {
        text += "  {";
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) text += ", ";
            text += l.label(block[i]);
        }
        text += "}\n";
    }
    return finish(text, true, opt, out, err);
}

inline int do_observable(const Json& doc, const Options& opt, std::ostream& out,
                         std::ostream& err) {
    auto obs = parse_observable(doc);
    auto report = validate_observable(obs);
    if (!report.ok()) {
        return finish(render_validation("observable", report, opt.structured()), false, opt, out,
                      err);
    }
    auto fact = image_factorization(obs);
    const auto& l = obs.codomain;
    if (opt.structured()) {
        std::vector<std::string> image;
        for (int x : fact.image.parent_index) image.push_back(l.label(x));
        Json restricted = Json::array();
        for (int c = 0; c < obs.domain.cell_count(); ++c) {
            restricted.push_back(fact.image.algebra.label(fact.restricted.cell_map[c]));
        }
        Json docout{{"subject", "observable"},
                    {"ok", true},
                    {"image_elements", image},
                    {"restricted_cell_map", std::move(restricted)}};
        return finish(docout.dump(2) + "\n", true, opt, out, err);
    }
    std::string text = "observable: ok\nimage subalgebra (" +
                       std::to_string(fact.image.algebra.size()) + " elements): {";
    for (std::size_t i = 0; i < fact.image.parent_index.size(); ++i) {
        if (i) text += ", ";
        text += l.label(fact.image.parent_index[i]);
    }
    text += "}\nfactorization: observable = inclusion o corestriction\n";
    return finish(text, true, opt, out, err);
}

inline int do_tensor(const Json& doc, const Options& opt, std::ostream& out, std::ostream& err) {
    auto input = parse_presheaf_input(doc);
    auto report = validate_presheaf(input.presheaf);
    if (!report.ok()) {
        return finish(render_validation("presheaf", report, opt.structured()), false, opt, out,
                      err);
    }
    auto t = tensor_product(input.presheaf, input.model);
    const auto& c = input.model.base();
    auto partition = t.partition();
    if (opt.structured()) {
        Json classes = Json::array();
        for (int cls = 0; cls < t.class_count(); ++cls) {
            const auto& rep = t.representative(cls);
            classes.push_back(
                Json{{"class", cls},
                     {"size", partition[cls].size()},
                     {"representative",
                      Json{{"object", c.object_name(rep.obj)},
                           {"point", input.presheaf.point_label(rep.obj, rep.point)},
                           {"element", input.model.algebra(rep.obj).element_name(rep.element)}}}});
        }
        return finish(
            Json{{"class_count", t.class_count()}, {"classes", std::move(classes)}}.dump(2) +
                "\n",
            true, opt, out, err);
    }
    std::string text = std::to_string(t.class_count()) + " classes\n";
    for (int cls = 0; cls < t.class_count(); ++cls) {
        const auto& rep = t.representative(cls);
        text += "  class " + std::to_string(cls) + " (size " +
                std::to_string(partition[cls].size()) + "): " + c.object_name(rep.obj) + ", " +
                input.presheaf.point_label(rep.obj, rep.point) + ", " +
                input.model.algebra(rep.obj).element_name(rep.element) + "\n";
    }
    return finish(text, true, opt, out, err);
}

inline int run_verdict(const Json& doc, const Options& opt, bool full_report, std::ostream& out,
                       std::ostream& err) {
    auto sys = parse_system(doc);
    auto target_report = validate_event_algebra(sys.target);
    if (!target_report.ok()) {
        return finish(render_validation("system target", target_report, opt.structured()), false,
                      opt, out, err);
    }
    CounitReport report;
    try {
        auto s = generate_system(sys.seeds, sys.model, sys.target);
        report = localization_verdict(s);
    } catch (const SeedRejection& e) {
        ValidationReport seed_report;
        seed_report.add("seed", e.what());
        return finish(render_validation("system", seed_report, opt.structured()), false, opt,
                      out, err);
    }
    if (opt.structured()) {
        return finish(serialize_counit_report(report, sys.target).dump(2) + "\n",
                      report.is_localization, opt, out, err);
    }
    std::string text;
    if (full_report) {
        text += "classes: " + std::to_string(report.class_count) + "\n";
        for (int cls = 0; cls < report.class_count; ++cls) {
            text += "  class " + std::to_string(cls) + " -> " +
                    sys.target.label(report.class_images[cls]) + "\n";
        }
        auto flag = [](bool b) { return b ? std::string("true") : std::string("false"); };
        text += "covering: " + flag(report.covering) + "\n";
        text += "injective: " + flag(report.injective) + "\n";
        text += "preserves_top: " + flag(report.preserves_top) + "\n";
        text += "preserves_ortho: " + flag(report.preserves_ortho) + "\n";
        text += "preserves_order: " + flag(report.preserves_order) + "\n";
        text += "preserves_ortho_join: " + flag(report.preserves_ortho_join) + "\n";
    }
    text += std::string("is_localization: ") + (report.is_localization ? "true" : "false") + "\n";
    for (const auto& w : report.witnesses) text += "  " + w + "\n";
    return finish(text, report.is_localization, opt, out, err);
}

inline int do_ks(const Json& doc, const Options& opt, std::ostream& out, std::ostream& err) {
    auto model = parse_model(boolframes::detail::field(doc, "model"));
    auto target_input = parse_event_algebra_input(boolframes::detail::field(doc, "target"));
    if (!target_input.algebra) {
        return finish(render_validation("target pasting", target_input.pasting_report,
                                        opt.structured()),
                      false, opt, out, err);
    }
    auto target_report = validate_event_algebra(*target_input.algebra);
    if (!target_report.ok()) {
        return finish(render_validation("target", target_report, opt.structured()), false, opt,
                      out, err);
    }
    auto report = single_frame_obstruction(*target_input.algebra, model);
    const auto& l = *target_input.algebra;
    if (opt.structured()) {
        Json docout = Json::object();
        docout["obstructed"] = report.obstructed;
        if (report.surjective_chart) {
            const auto& chart = *report.surjective_chart;
            Json images = Json::array();
            const auto& alg = model.algebra(chart.object);
            for (int i = 0; i < alg.atom_count(); ++i) {
                images.push_back(l.label(chart.hom.apply(static_cast<int>(alg.atom(i)))));
            }
            Json chart_doc = Json::object();
            chart_doc["object"] = model.base().object_name(chart.object);
            chart_doc["atom_images"] = std::move(images);
            docout["surjective_chart"] = std::move(chart_doc);
        }
        return finish(docout.dump(2) + "\n", report.obstructed, opt, out, err);
    }
    std::string text = std::string("obstructed: ") + (report.obstructed ? "true" : "false") + "\n";
    if (report.surjective_chart) {
        const auto& chart = *report.surjective_chart;
        const auto& alg = model.algebra(chart.object);
        text += "surjective chart at " + model.base().object_name(chart.object) + ":";
        for (int i = 0; i < alg.atom_count(); ++i) {
            text += " " + alg.atom_label(i) + " -> " +
                    l.label(chart.hom.apply(static_cast<int>(alg.atom(i))));
        }
        text += "\n";
    }
    return finish(text, report.obstructed, opt, out, err);
}

inline int do_dot(const Json& doc, const Options& opt, std::ostream& out, std::ostream& err) {
    if (doc.is_object() && doc.contains("seeds")) {
        auto sys = parse_system(doc);
        auto target_report = validate_event_algebra(sys.target);
        if (!target_report.ok()) {
            return finish(render_validation("system target", target_report, false), false, opt,
                          out, err);
        }
        try {
            auto report = counit(generate_system(sys.seeds, sys.model, sys.target));
            return finish(counit_dot(report.class_images, sys.target), true, opt, out, err);
        } catch (const SeedRejection& e) {
            ValidationReport seed_report;
            seed_report.add("seed", e.what());
            return finish(render_validation("system", seed_report, false), false, opt, out, err);
        }
    }
    if (doc.is_object() && doc.contains("model")) {
        auto input = parse_presheaf_input(doc);
        auto report = validate_presheaf(input.presheaf);
        if (!report.ok()) {
            return finish(render_validation("presheaf", report, false), false, opt, out, err);
        }
        return finish(elements_dot(input.presheaf), true, opt, out, err);
    }
    auto input = parse_event_algebra_input(doc);
    if (!input.algebra) {
        return finish(render_validation("pasting", input.pasting_report, false), false, opt, out,
                      err);
    }
    auto report = validate_event_algebra(*input.algebra);
    if (!report.ok()) {
        return finish(render_validation("event algebra", report, false), false, opt, out, err);
    }
    return finish(hasse_dot(*input.algebra), true, opt, out, err);
}

}  // namespace detail

/// Parses and dispatches one command; returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boolean measurement frames over finite quantum event algebras"};
    app.name("bf");
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "validate an algebra, hom, observable, presheaf or system file"},
        {"blocks", "maximal Boolean subalgebras of an event algebra"},
        {"observable", "validate an observable and factor it through its Boolean image"},
        {"tensor", "tensor-product class table of a presheaf with the model"},
        {"counit", "full counit report for a system of charts"},
        {"verdict", "localization verdict for a system of charts"},
        {"ks", "single-frame obstruction check"},
        {"dot", "Hasse diagram or category-of-elements graph as DOT"}};

    std::map<std::string, detail::Options> options;
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        auto& opt = options[name];
        sub->add_option("input", opt.input, "input document (JSON)")->required();
        sub->add_option("-o,--output", opt.output, "write the report to a file");
        if (name != "dot") {
            sub->add_option("--format", opt.format, "text or structured")
                ->check(CLI::IsMember({"text", "structured"}));
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const auto& opt = options[name];
    try {
        Json doc = detail::load_document(opt.input);
        if (name == "validate") return detail::do_validate(doc, opt, out, err);
        if (name == "blocks") return detail::do_blocks(doc, opt, out, err);
        if (name == "observable") return detail::do_observable(doc, opt, out, err);
        if (name == "tensor") return detail::do_tensor(doc, opt, out, err);
        if (name == "counit") return detail::run_verdict(doc, opt, true, out, err);
        if (name == "verdict") return detail::run_verdict(doc, opt, false, out, err);
        if (name == "ks") return detail::do_ks(doc, opt, out, err);
        if (name == "dot") return detail::do_dot(doc, opt, out, err);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BoundExceeded& e) {
        err << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace boolframes::cli
