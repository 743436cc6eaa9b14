#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolframes/boolean_algebra.hpp"
#include "boolframes/quantum_logic.hpp"
#include "boolframes/validation.hpp"

namespace boolframes {

struct Arrow {
    std::string name;
    int source;
    int target;

    bool operator==(const Arrow&) const = default;
};

/// Small category given by explicit objects, arrows, identities and a full
/// composition table.
class FiniteCategory {
public:
    FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                   std::vector<int> identities, std::vector<std::vector<int>> compose)
        : objects_(std::move(objects)),
          arrows_(std::move(arrows)),
          identities_(std::move(identities)),
          compose_(std::move(compose)) {
        const int no = object_count();
        const int na = arrow_count();
        if (static_cast<int>(identities_.size()) != no) {
            throw std::invalid_argument("one identity arrow per object is required");
        }
        for (const auto& a : arrows_) {
            if (a.source < 0 || a.source >= no || a.target < 0 || a.target >= no) {
                throw std::invalid_argument("arrow endpoints outside the object list");
            }
        }
        for (int i : identities_) {
            if (i < 0 || i >= na) throw std::invalid_argument("identity is not an arrow");
        }
        if (static_cast<int>(compose_.size()) != na) {
            throw std::invalid_argument("composition table must be arrows x arrows");
        }
        for (const auto& row : compose_) {
            if (static_cast<int>(row.size()) != na) {
                throw std::invalid_argument("composition table must be arrows x arrows");
            }
        }
    }

    int object_count() const { return static_cast<int>(objects_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& object_name(int o) const { return objects_[o]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int identity(int o) const { return identities_[o]; }

    /// g after f; -1 when not composable.
    int compose(int g, int f) const { return compose_[g][f]; }

    std::optional<int> object_index(const std::string& name) const {
        for (int o = 0; o < object_count(); ++o) {
            if (objects_[o] == name) return o;
        }
        return std::nullopt;
    }
    std::optional<int> arrow_index(const std::string& name) const {
        for (int a = 0; a < arrow_count(); ++a) {
            if (arrows_[a].name == name) return a;
        }
        return std::nullopt;
    }

    std::vector<int> arrows_between(int src, int tgt) const {
        std::vector<int> out;
        for (int a = 0; a < arrow_count(); ++a) {
            if (arrows_[a].source == src && arrows_[a].target == tgt) out.push_back(a);
        }
        return out;
    }

    bool operator==(const FiniteCategory&) const = default;

private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<int> identities_;
    std::vector<std::vector<int>> compose_;
};

inline ValidationReport validate_category(const FiniteCategory& c) {
    ValidationReport report;
    for (int o = 0; o < c.object_count(); ++o) {
        const auto& id = c.arrow(c.identity(o));
        if (id.source != o || id.target != o) {
            report.add("identity", c.object_name(o) + " has a non-endo identity");
        }
    }
    for (int g = 0; g < c.arrow_count(); ++g) {
        for (int f = 0; f < c.arrow_count(); ++f) {
            const bool composable = c.arrow(f).target == c.arrow(g).source;
            const int gf = c.compose(g, f);
            if (!composable) {
                if (gf != -1) report.add("composition", "table filled for non-composable pair");
                continue;
            }
            if (gf < 0 || gf >= c.arrow_count()) {
                report.add("composition",
                           c.arrow(g).name + " o " + c.arrow(f).name + " missing");
                continue;
            }
            if (c.arrow(gf).source != c.arrow(f).source ||
                c.arrow(gf).target != c.arrow(g).target) {
                report.add("composition",
                           c.arrow(g).name + " o " + c.arrow(f).name + " has wrong endpoints");
            }
        }
    }
    if (!report.ok()) return report;
    for (int f = 0; f < c.arrow_count(); ++f) {
        if (c.compose(c.identity(c.arrow(f).target), f) != f ||
            c.compose(f, c.identity(c.arrow(f).source)) != f) {
            report.add("identity", "identity law fails at " + c.arrow(f).name);
        }
    }
    for (int h = 0; h < c.arrow_count(); ++h) {
        for (int g = 0; g < c.arrow_count(); ++g) {
            if (c.arrow(g).target != c.arrow(h).source) continue;
            for (int f = 0; f < c.arrow_count(); ++f) {
                if (c.arrow(f).target != c.arrow(g).source) continue;
                if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)) {
                    report.add("associativity", c.arrow(h).name + ", " + c.arrow(g).name + ", " +
                                                    c.arrow(f).name);
                }
            }
        }
    }
    return report;
}

/// The shaping functor: each base object carries a finite Boolean algebra,
/// each base arrow a Boolean homomorphism, functorially. Objects are viewed
/// as event algebras (their OMP form) when mapped into the quantum world.
class CoordinatizationModel {
public:
    CoordinatizationModel(FiniteCategory base, std::vector<FiniteBooleanAlgebra> algebras,
                          std::vector<BooleanHom> arrow_homs)
        : base_(std::move(base)),
          algebras_(std::move(algebras)),
          arrow_homs_(std::move(arrow_homs)) {
        if (static_cast<int>(algebras_.size()) != base_.object_count() ||
            static_cast<int>(arrow_homs_.size()) != base_.arrow_count()) {
            throw std::invalid_argument("coordinatization data does not match the base category");
        }
        for (const auto& alg : algebras_) omps_.push_back(as_omp(alg));
    }

    const FiniteCategory& base() const { return base_; }
    const FiniteBooleanAlgebra& algebra(int obj) const { return algebras_[obj]; }
    const OrthomodularPoset& omp(int obj) const { return omps_[obj]; }
    const BooleanHom& hom(int arrow) const { return arrow_homs_[arrow]; }
    QuantumHom quantum_hom(int arrow) const { return boolean_to_quantum_hom(arrow_homs_[arrow]); }

    bool operator==(const CoordinatizationModel&) const = default;

private:
    FiniteCategory base_;
    std::vector<FiniteBooleanAlgebra> algebras_;
    std::vector<BooleanHom> arrow_homs_;
    std::vector<OrthomodularPoset> omps_;
};

inline ValidationReport validate_coordinatization(const CoordinatizationModel& a) {
    ValidationReport report = validate_category(a.base());
    if (!report.ok()) return report;
    const auto& c = a.base();
    for (int f = 0; f < c.arrow_count(); ++f) {
        const auto& h = a.hom(f);
        if (!(h.source == a.algebra(c.arrow(f).source)) ||
            !(h.target == a.algebra(c.arrow(f).target))) {
            report.add("functor", "arrow data of " + c.arrow(f).name + " has wrong endpoints");
            continue;
        }
        if (!validate_boolean_hom(h).ok()) {
            report.add("functor", c.arrow(f).name + " does not carry a Boolean homomorphism");
        }
    }
    if (!report.ok()) return report;
    for (int o = 0; o < c.object_count(); ++o) {
        if (!(a.hom(c.identity(o)) == identity_boolean_hom(a.algebra(o)))) {
            report.add("functor", "A(id) != id at " + c.object_name(o));
        }
    }
    for (int g = 0; g < c.arrow_count(); ++g) {
        for (int f = 0; f < c.arrow_count(); ++f) {
            if (c.arrow(f).target != c.arrow(g).source) continue;
            if (!(a.hom(c.compose(g, f)) == compose_boolean_homs(a.hom(g), a.hom(f)))) {
                report.add("functor", "A(" + c.arrow(g).name + " o " + c.arrow(f).name +
                                          ") != A(" + c.arrow(g).name + ") o A(" +
                                          c.arrow(f).name + ")");
            }
        }
    }
    return report;
}

/// The generated model base: powerset algebras with 1..max_atoms atoms and
/// every Boolean homomorphism between them, with composition by hom
/// composition. Object k is named "B<k>" with atoms a1..ak.
inline CoordinatizationModel standard_model(int max_atoms) {
    if (max_atoms < 1 || max_atoms > 3) {
        throw std::invalid_argument("standard_model supports 1 to 3 atoms");
    }
    std::vector<std::string> objects;
    std::vector<FiniteBooleanAlgebra> algebras;
    for (int k = 1; k <= max_atoms; ++k) {
        objects.push_back("B" + std::to_string(k));
        std::vector<std::string> atoms;
        for (int i = 1; i <= k; ++i) atoms.push_back("a" + std::to_string(i));
        algebras.push_back(powerset_algebra(atoms));
    }

    std::vector<Arrow> arrows;
    std::vector<BooleanHom> arrow_homs;
    for (int src = 0; src < static_cast<int>(objects.size()); ++src) {
        for (int tgt = 0; tgt < static_cast<int>(objects.size()); ++tgt) {
            auto homs = enumerate_boolean_homs(algebras[src], algebras[tgt]);
            for (std::size_t k = 0; k < homs.size(); ++k) {
                arrows.push_back({objects[src] + "->" + objects[tgt] + "." + std::to_string(k),
                                  src, tgt});
                arrow_homs.push_back(homs[k]);
            }
        }
    }

    auto find_arrow = [&](int src, int tgt, const BooleanHom& h) {
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            if (arrows[a].source == src && arrows[a].target == tgt &&
                arrow_homs[a].atom_map == h.atom_map) {
                return static_cast<int>(a);
            }
        }
        throw std::logic_error("standard_model: composite hom not found");
    };

    std::vector<int> identities;
    for (int o = 0; o < static_cast<int>(objects.size()); ++o) {
        identities.push_back(find_arrow(o, o, identity_boolean_hom(algebras[o])));
    }
    std::vector<std::vector<int>> compose(arrows.size(), std::vector<int>(arrows.size(), -1));
    for (std::size_t g = 0; g < arrows.size(); ++g) {
        for (std::size_t f = 0; f < arrows.size(); ++f) {
            if (arrows[f].target != arrows[g].source) continue;
            compose[g][f] = find_arrow(arrows[f].source, arrows[g].target,
                                       compose_boolean_homs(arrow_homs[g], arrow_homs[f]));
        }
    }
    return CoordinatizationModel(
        FiniteCategory(std::move(objects), std::move(arrows), std::move(identities),
                       std::move(compose)),
        std::move(algebras), std::move(arrow_homs));
}

}  // namespace boolframes
