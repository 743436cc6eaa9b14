#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolframes/category.hpp"
#include "boolframes/quantum_logic.hpp"
#include "boolframes/validation.hpp"

namespace boolframes {

/// Contravariant set-valued functor on a finite base category. For an arrow
/// f: source -> target, restriction_[f] maps points of X(target) to points
/// of X(source).
class SetPresheaf {
public:
    SetPresheaf(FiniteCategory base, std::vector<std::vector<std::string>> point_labels,
                std::vector<std::vector<int>> restriction)
        : base_(std::move(base)),
          labels_(std::move(point_labels)),
          restriction_(std::move(restriction)) {
        if (static_cast<int>(labels_.size()) != base_.object_count() ||
            static_cast<int>(restriction_.size()) != base_.arrow_count()) {
            throw std::invalid_argument("presheaf data does not match the base category");
        }
        for (int f = 0; f < base_.arrow_count(); ++f) {
            const auto& arr = base_.arrow(f);
            if (static_cast<int>(restriction_[f].size()) != points(arr.target)) {
                throw std::invalid_argument("restriction along " + arr.name + " has wrong size");
            }
            for (int v : restriction_[f]) {
                if (v < 0 || v >= points(arr.source)) {
                    throw std::invalid_argument("restriction along " + arr.name +
                                                " maps outside the fiber");
                }
            }
        }
    }

    const FiniteCategory& base() const { return base_; }
    int points(int obj) const { return static_cast<int>(labels_[obj].size()); }
    const std::string& point_label(int obj, int p) const { return labels_[obj][p]; }

    /// x/f for f: source -> target and x a point over target.
    int restrict_point(int arrow, int p) const { return restriction_[arrow][p]; }

    int total_points() const {
        int n = 0;
        for (const auto& fiber : labels_) n += static_cast<int>(fiber.size());
        return n;
    }

    bool operator==(const SetPresheaf&) const = default;

private:
    FiniteCategory base_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<int>> restriction_;
};

inline ValidationReport validate_presheaf(const SetPresheaf& x) {
    ValidationReport report;
    const auto& c = x.base();
    for (int o = 0; o < c.object_count(); ++o) {
        const int id = c.identity(o);
        for (int p = 0; p < x.points(o); ++p) {
            if (x.restrict_point(id, p) != p) {
                report.add("functor", "X(id) != id at " + c.object_name(o));
                break;
            }
        }
    }
    for (int g = 0; g < c.arrow_count(); ++g) {
        for (int f = 0; f < c.arrow_count(); ++f) {
            if (c.arrow(f).target != c.arrow(g).source) continue;
            const int gf = c.compose(g, f);
            for (int p = 0; p < x.points(c.arrow(g).target); ++p) {
                if (x.restrict_point(gf, p) != x.restrict_point(f, x.restrict_point(g, p))) {
                    report.add("functor", "X(" + c.arrow(g).name + " o " + c.arrow(f).name +
                                              ") != X(" + c.arrow(f).name + ") o X(" +
                                              c.arrow(g).name + ")");
                }
            }
        }
    }
    return report;
}

/// y[obj] = Hom(-, obj); points over theta are the arrows theta -> obj in
/// arrow-index order, restriction is precomposition.
inline SetPresheaf representable(const FiniteCategory& c, int obj) {
    if (obj < 0 || obj >= c.object_count()) {
        throw std::invalid_argument("representable: unknown object");
    }
    std::vector<std::vector<int>> fibers;  // arrow indices per object
    std::vector<std::vector<std::string>> labels;
    for (int o = 0; o < c.object_count(); ++o) {
        fibers.push_back(c.arrows_between(o, obj));
        std::vector<std::string> names;
        for (int a : fibers.back()) names.push_back(c.arrow(a).name);
        labels.push_back(std::move(names));
    }
    auto position = [&](int o, int arrow) {
        const auto& fib = fibers[o];
        auto it = std::find(fib.begin(), fib.end(), arrow);
        if (it == fib.end()) throw std::logic_error("representable: composite not in hom-set");
        return static_cast<int>(it - fib.begin());
    };
    std::vector<std::vector<int>> restriction;
    for (int w = 0; w < c.arrow_count(); ++w) {
        const auto& arr = c.arrow(w);
        std::vector<int> r;
        for (int v : fibers[arr.target]) r.push_back(position(arr.source, c.compose(v, w)));
        restriction.push_back(std::move(r));
    }
    return SetPresheaf(c, std::move(labels), std::move(restriction));
}

inline SetPresheaf empty_presheaf(const FiniteCategory& c) {
    return SetPresheaf(c, std::vector<std::vector<std::string>>(c.object_count()),
                       std::vector<std::vector<int>>(c.arrow_count()));
}

inline SetPresheaf terminal_presheaf(const FiniteCategory& c) {
    std::vector<std::vector<std::string>> labels(c.object_count(), {"*"});
    std::vector<std::vector<int>> restriction(c.arrow_count(), {0});
    return SetPresheaf(c, std::move(labels), std::move(restriction));
}

// ---------------------------------------------------------------------------
// Category of elements
// ---------------------------------------------------------------------------

/// Split discrete fibration over the base: objects are pairs (object,
/// point), arrows lie over base arrows matching the restriction.
struct ElementsCategory {
    struct EObject {
        int obj;
        int point;
        bool operator==(const EObject&) const = default;
    };
    struct EArrow {
        int base_arrow;
        int source;  // index into objects
        int target;
        bool operator==(const EArrow&) const = default;
    };
    std::vector<EObject> objects;
    std::vector<EArrow> arrows;

    std::optional<int> object_index(int obj, int point) const {
        for (std::size_t i = 0; i < objects.size(); ++i) {
            if (objects[i].obj == obj && objects[i].point == point) return static_cast<int>(i);
        }
        return std::nullopt;
    }

    /// An object receiving exactly one arrow from every object.
    std::optional<int> terminal() const {
        for (std::size_t t = 0; t < objects.size(); ++t) {
            std::vector<int> incoming(objects.size(), 0);
            for (const auto& a : arrows) {
                if (a.target == static_cast<int>(t)) ++incoming[a.source];
            }
            if (std::all_of(incoming.begin(), incoming.end(), [](int k) { return k == 1; })) {
                return static_cast<int>(t);
            }
        }
        return std::nullopt;
    }
};

inline ElementsCategory category_of_elements(const SetPresheaf& x) {
    const auto& c = x.base();
    ElementsCategory g;
    for (int o = 0; o < c.object_count(); ++o) {
        for (int p = 0; p < x.points(o); ++p) g.objects.push_back({o, p});
    }
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        for (int p = 0; p < x.points(arr.target); ++p) {
            int src = *g.object_index(arr.source, x.restrict_point(u, p));
            int tgt = *g.object_index(arr.target, p);
            g.arrows.push_back({u, src, tgt});
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Natural transformations
// ---------------------------------------------------------------------------

/// Components of a natural transformation X -> Y: per object, per point of
/// X, the index of a point of Y.
using NatTransformation = std::vector<std::vector<int>>;

inline bool is_natural(const SetPresheaf& x, const SetPresheaf& y, const NatTransformation& t) {
    const auto& c = x.base();
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        for (int p = 0; p < x.points(arr.target); ++p) {
            if (t[arr.source][x.restrict_point(u, p)] != y.restrict_point(u, t[arr.target][p])) {
                return false;
            }
        }
    }
    return true;
}

/// Exhaustive enumeration by constraint propagation: assigning tau at
/// (obj, p) forces tau at (src(u), p/u) for every arrow u into obj. The
/// search branches only where no assignment is forced.
inline std::vector<NatTransformation> enumerate_natural_transformations(const SetPresheaf& x,
                                                                        const SetPresheaf& y) {
    if (!(x.base() == y.base())) {
        throw std::invalid_argument("natural transformations need a common base");
    }
    const auto& c = x.base();

    struct Var {
        int obj;
        int point;
    };
    std::vector<Var> vars;
    std::vector<std::vector<int>> var_at(c.object_count());
    for (int o = 0; o < c.object_count(); ++o) {
        var_at[o].resize(x.points(o));
        for (int p = 0; p < x.points(o); ++p) {
            var_at[o][p] = static_cast<int>(vars.size());
            vars.push_back({o, p});
        }
    }
    std::vector<std::vector<int>> arrows_into(c.object_count());
    for (int u = 0; u < c.arrow_count(); ++u) arrows_into[c.arrow(u).target].push_back(u);

    // Branch where a choice constrains the most: fibers with many incoming
    // arrows first.
    std::vector<int> order(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return arrows_into[vars[a].obj].size() > arrows_into[vars[b].obj].size();
    });

    std::vector<NatTransformation> found;
    std::vector<int> value(vars.size(), -1);

    auto propagate = [&](int seed, std::vector<int>& touched) {
        std::vector<int> queue = {seed};
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            const auto [obj, p] = std::pair{vars[v].obj, vars[v].point};
            for (int u : arrows_into[obj]) {
                int w = var_at[c.arrow(u).source][x.restrict_point(u, p)];
                int forced = y.restrict_point(u, value[v]);
                if (value[w] == -1) {
                    value[w] = forced;
                    touched.push_back(w);
                    queue.push_back(w);
                } else if (value[w] != forced) {
                    return false;
                }
            }
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t next) -> void {
        while (next < order.size() && value[order[next]] != -1) ++next;
        if (next == order.size()) {
            NatTransformation t(c.object_count());
            for (int o = 0; o < c.object_count(); ++o) {
                t[o].resize(x.points(o));
                for (int p = 0; p < x.points(o); ++p) t[o][p] = value[var_at[o][p]];
            }
            found.push_back(std::move(t));
            return;
        }
        const int v = order[next];
        for (int choice = 0; choice < y.points(vars[v].obj); ++choice) {
            std::vector<int> touched = {v};
            value[v] = choice;
            if (propagate(v, touched)) self(self, next + 1);
            for (int w : touched) value[w] = -1;
        }
    };
    search(search, 0);
    std::sort(found.begin(), found.end());
    return found;
}

/// Full-and-faithful test for the Yoneda embedding: for every pair of
/// objects, Nat(y[a], y[b]) is exactly the Yoneda image of Hom(a, b).
inline bool yoneda_full_faithful_check(const FiniteCategory& c) {
    for (int a = 0; a < c.object_count(); ++a) {
        auto ya = representable(c, a);
        for (int b = 0; b < c.object_count(); ++b) {
            auto yb = representable(c, b);
            auto nats = enumerate_natural_transformations(ya, yb);
            auto homs = c.arrows_between(a, b);
            if (nats.size() != homs.size()) return false;
            for (int h : homs) {
                NatTransformation image(c.object_count());
                for (int o = 0; o < c.object_count(); ++o) {
                    for (int v : c.arrows_between(o, a)) {
                        int hv = c.compose(h, v);
                        auto fib = c.arrows_between(o, b);
                        image[o].push_back(static_cast<int>(
                            std::find(fib.begin(), fib.end(), hv) - fib.begin()));
                    }
                }
                if (!std::binary_search(nats.begin(), nats.end(), image)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// The Hom presheaf R(L)
// ---------------------------------------------------------------------------

/// R(L): the presheaf of Boolean measurement charts of L over the model
/// base, with the actual quantum homomorphisms alongside the shape.
struct HomPresheaf {
    SetPresheaf shape;
    std::vector<std::vector<QuantumHom>> charts;  ///< per object, presheaf point order

    std::optional<int> chart_index(int obj, const QuantumHom& h) const {
        for (std::size_t i = 0; i < charts[obj].size(); ++i) {
            if (charts[obj][i].map == h.map) return static_cast<int>(i);
        }
        return std::nullopt;
    }
};

inline HomPresheaf hom_presheaf(const CoordinatizationModel& a, const OrthomodularPoset& l) {
    const auto& c = a.base();
    std::vector<std::vector<QuantumHom>> charts;
    std::vector<std::vector<std::string>> labels;
    for (int o = 0; o < c.object_count(); ++o) {
        charts.push_back(enumerate_quantum_homs(a.algebra(o), l));
        std::vector<std::string> names;
        for (std::size_t k = 0; k < charts.back().size(); ++k) {
            names.push_back(c.object_name(o) + "#" + std::to_string(k));
        }
        labels.push_back(std::move(names));
    }
    std::vector<std::vector<int>> restriction;
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        auto av = a.quantum_hom(u);
        std::vector<int> r;
        for (const auto& psi : charts[arr.target]) {
            auto precomposite = compose_quantum_homs(psi, av);
            bool placed = false;
            for (std::size_t i = 0; i < charts[arr.source].size(); ++i) {
                if (charts[arr.source][i].map == precomposite.map) {
                    r.push_back(static_cast<int>(i));
                    placed = true;
                    break;
                }
            }
            if (!placed) throw std::logic_error("hom_presheaf: precomposite chart missing");
        }
        restriction.push_back(std::move(r));
    }
    return HomPresheaf{SetPresheaf(c, std::move(labels), std::move(restriction)),
                       std::move(charts)};
}

}  // namespace boolframes
