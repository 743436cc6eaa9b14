#pragma once

#include <string>

#include "boolframes/presheaf.hpp"
#include "boolframes/quantum_logic.hpp"

namespace boolframes {

/// Hasse diagram of the order: only the cover relation is drawn.
inline std::string hasse_dot(const OrthomodularPoset& l, const std::string& name = "hasse") {
    std::string out = "digraph " + name + " {\n  rankdir=BT;\n  node [shape=box];\n";
    for (int i = 0; i < l.size(); ++i) {
        out += "  \"" + l.label(i) + "\";\n";
    }
    for (int i = 0; i < l.size(); ++i) {
        for (int j = 0; j < l.size(); ++j) {
            if (i == j || !l.leq(i, j)) continue;
            bool covered = false;
            for (int z = 0; z < l.size() && !covered; ++z) {
                covered = z != i && z != j && l.leq(i, z) && l.leq(z, j);
            }
            if (!covered) out += "  \"" + l.label(i) + "\" -> \"" + l.label(j) + "\";\n";
        }
    }
    out += "}\n";
    return out;
}

/// Counit evaluation as a bipartite graph: tensor classes on the left,
/// event-algebra elements on the right.
inline std::string counit_dot(const std::vector<int>& class_images, const OrthomodularPoset& l,
                              const std::string& name = "counit") {
    std::string out = "digraph " + name + " {\n  rankdir=LR;\n";
    for (std::size_t cls = 0; cls < class_images.size(); ++cls) {
        out += "  \"class " + std::to_string(cls) + "\" [shape=box];\n";
    }
    for (int e = 0; e < l.size(); ++e) {
        out += "  \"" + l.label(e) + "\" [shape=ellipse];\n";
    }
    for (std::size_t cls = 0; cls < class_images.size(); ++cls) {
        out += "  \"class " + std::to_string(cls) + "\" -> \"" + l.label(class_images[cls]) +
               "\";\n";
    }
    out += "}\n";
    return out;
}

/// Category of elements as a graph; identity arrows are omitted.
inline std::string elements_dot(const SetPresheaf& x, const std::string& name = "elements") {
    const auto& c = x.base();
    auto g = category_of_elements(x);
    auto node_name = [&](const ElementsCategory::EObject& e) {
        return "(" + c.object_name(e.obj) + ", " + x.point_label(e.obj, e.point) + ")";
    };
    std::string out = "digraph " + name + " {\n  node [shape=ellipse];\n";
    for (const auto& e : g.objects) {
        out += "  \"" + node_name(e) + "\";\n";
    }
    for (const auto& a : g.arrows) {
        if (a.base_arrow == c.identity(c.arrow(a.base_arrow).source)) continue;
        out += "  \"" + node_name(g.objects[a.source]) + "\" -> \"" +
               node_name(g.objects[a.target]) + "\" [label=\"" + c.arrow(a.base_arrow).name +
               "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace boolframes
