#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "boolframes/presheaf.hpp"
#include "boolframes/tensor.hpp"

namespace boolframes {

/// All structure-respecting maps from the tensor classes into l: class
/// assignments whose induced map q |-> value(class(obj, p, q)) is a quantum
/// homomorphism at every chart point (obj, p). These are exactly the cocone
/// families k_(obj,p) with k_(obj, p/v) = k_(obj,p) o A(v).
inline std::vector<std::vector<int>> enumerate_cocone_maps(const SetPresheaf& x,
                                                           const CoordinatizationModel& a,
                                                           const OrthomodularPoset& l,
                                                           const TensorQuotient& t) {
    const auto& c = x.base();
    struct Point {
        int obj;
        int point;
    };
    std::vector<Point> points;
    for (int o = 0; o < c.object_count(); ++o) {
        for (int p = 0; p < x.points(o); ++p) points.push_back({o, p});
    }

    std::vector<int> branch_vars;  // classes containing an atom node
    {
        std::vector<bool> seen(t.class_count(), false);
        for (const auto& pt : points) {
            for (int i = 0; i < a.algebra(pt.obj).atom_count(); ++i) {
                seen[t.class_of(pt.obj, pt.point, a.algebra(pt.obj).atom(i))] = true;
            }
        }
        for (int cls = 0; cls < t.class_count(); ++cls) {
            if (seen[cls]) branch_vars.push_back(cls);
        }
    }

    std::vector<std::vector<int>> found;
    std::vector<int> value(t.class_count(), -1);

    // Forces every derivable class value from the assigned atom classes;
    // false when the partial assignment cannot extend to a hom family.
    auto propagate = [&](std::vector<int>& touched) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& pt : points) {
                const auto& alg = a.algebra(pt.obj);
                const Mask n = static_cast<Mask>(alg.element_count());
                for (Mask m = 0; m < n; ++m) {
                    std::vector<int> parts;
                    bool derivable = true;
                    for (int i = 0; i < alg.atom_count() && derivable; ++i) {
                        if (!(m & alg.atom(i))) continue;
                        int v = value[t.class_of(pt.obj, pt.point, alg.atom(i))];
                        if (v == -1) {
                            derivable = false;
                        } else {
                            parts.push_back(v);
                        }
                    }
                    if (!derivable) continue;
                    auto forced = l.join_all(parts);
                    if (!forced) return false;
                    if (m == alg.top() && *forced != l.top()) return false;
                    int cls = t.class_of(pt.obj, pt.point, m);
                    if (value[cls] == -1) {
                        value[cls] = *forced;
                        touched.push_back(cls);
                        changed = true;
                    } else if (value[cls] != *forced) {
                        return false;
                    }
                    // ortho consistency with the complement's class
                    int ccls = t.class_of(pt.obj, pt.point, alg.complement(m));
                    if (value[ccls] != -1 && value[ccls] != l.ortho(value[cls])) return false;
                }
            }
        }
        return true;
    };

    auto materialize_and_check = [&]() {
        for (const auto& pt : points) {
            const auto& alg = a.algebra(pt.obj);
            std::vector<int> map;
            for (Mask m = 0; m < static_cast<Mask>(alg.element_count()); ++m) {
                int v = value[t.class_of(pt.obj, pt.point, m)];
                if (v == -1) return false;
                map.push_back(v);
            }
            if (!validate_quantum_hom(QuantumHom{a.omp(pt.obj), l, std::move(map)}).ok()) {
                return false;
            }
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t next) -> void {
        while (next < branch_vars.size() && value[branch_vars[next]] != -1) ++next;
        if (next == branch_vars.size()) {
            std::vector<int> touched;
            if (propagate(touched) && materialize_and_check()) found.push_back(value);
            for (int cls : touched) value[cls] = -1;
            return;
        }
        const int cls = branch_vars[next];
        for (int choice = 0; choice < l.size(); ++choice) {
            std::vector<int> touched = {cls};
            value[cls] = choice;
            if (propagate(touched)) self(self, next + 1);
            for (int w : touched) value[w] = -1;
        }
    };
    search(search, 0);
    std::sort(found.begin(), found.end());
    return found;
}

/// Verdict of the natural bijection Nat(X, R(L)) ~ structure-respecting
/// maps X (x) A -> L: both sides enumerated independently, the adjunction
/// operators constructed explicitly, and the round trips checked.
struct AdjunctionReport {
    std::size_t nat_count = 0;
    std::size_t hom_count = 0;
    bool counts_equal = false;
    bool mutually_inverse = false;

    bool ok() const { return counts_equal && mutually_inverse; }
};

inline AdjunctionReport adjunction_bijection(const SetPresheaf& x,
                                             const CoordinatizationModel& a,
                                             const OrthomodularPoset& l) {
    auto x_report = validate_presheaf(x);
    if (!x_report.ok()) {
        throw std::invalid_argument("adjunction_bijection needs a presheaf:\n" +
                                    x_report.summary());
    }
    auto r = hom_presheaf(a, l);
    auto nats = enumerate_natural_transformations(x, r.shape);
    auto quotient = tensor_product(x, a);
    auto cocones = enumerate_cocone_maps(x, a, l, quotient);

    AdjunctionReport report;
    report.nat_count = nats.size();
    report.hom_count = cocones.size();
    report.counts_equal = nats.size() == cocones.size();

    const auto& c = x.base();
    auto cocone_index = [&](const std::vector<int>& val) -> std::optional<std::size_t> {
        auto it = std::lower_bound(cocones.begin(), cocones.end(), val);
        if (it == cocones.end() || *it != val) return std::nullopt;
        return static_cast<std::size_t>(it - cocones.begin());
    };

    // right operator: evaluate the transformation on every node
    std::vector<std::optional<std::size_t>> r_map;
    for (const auto& nat : nats) {
        std::vector<int> val(quotient.class_count(), -1);
        bool well_defined = true;
        for (std::size_t node = 0; node < quotient.nodes().size(); ++node) {
            const auto& nd = quotient.nodes()[node];
            int image = r.charts[nd.obj][nat[nd.obj][nd.point]].apply(static_cast<int>(nd.element));
            int cls = quotient.node_class(node);
            if (val[cls] == -1) {
                val[cls] = image;
            } else if (val[cls] != image) {
                well_defined = false;
            }
        }
        r_map.push_back(well_defined ? cocone_index(val) : std::nullopt);
    }

    // left operator: read each point's chart off the class values
    std::vector<std::optional<std::size_t>> l_map;
    for (const auto& val : cocones) {
        NatTransformation nat(c.object_count());
        bool formed = true;
        for (int o = 0; o < c.object_count() && formed; ++o) {
            for (int p = 0; p < x.points(o) && formed; ++p) {
                std::vector<int> map;
                for (Mask q = 0; q < static_cast<Mask>(a.algebra(o).element_count()); ++q) {
                    map.push_back(val[quotient.class_of(o, p, q)]);
                }
                auto idx = r.chart_index(o, QuantumHom{a.omp(o), l, std::move(map)});
                if (!idx) {
                    formed = false;
                } else {
                    nat[o].push_back(*idx);
                }
            }
        }
        if (!formed) {
            l_map.push_back(std::nullopt);
            continue;
        }
        auto it = std::lower_bound(nats.begin(), nats.end(), nat);
        if (it == nats.end() || !(*it == nat)) {
            l_map.push_back(std::nullopt);
        } else {
            l_map.push_back(static_cast<std::size_t>(it - nats.begin()));
        }
    }

    bool inverse = report.counts_equal;
    for (std::size_t i = 0; i < nats.size() && inverse; ++i) {
        inverse = r_map[i].has_value() && l_map[*r_map[i]].has_value() && *l_map[*r_map[i]] == i;
    }
    for (std::size_t j = 0; j < cocones.size() && inverse; ++j) {
        inverse = l_map[j].has_value() && r_map[*l_map[j]].has_value() && *r_map[*l_map[j]] == j;
    }
    report.mutually_inverse = inverse;
    return report;
}

}  // namespace boolframes
