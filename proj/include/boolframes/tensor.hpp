#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "boolframes/category.hpp"
#include "boolframes/presheaf.hpp"

namespace boolframes {

/// The tensor product X (x)_B A as a coequalizer quotient: the labeled
/// disjoint union of all A(obj) fibered over the points of X, divided by
/// the relations (p/v, q') ~ (p, A(v)(q')) over all base arrows v. Classes
/// are numbered by their least node; the least node is the representative.
class TensorQuotient {
public:
    struct Node {
        int obj;
        int point;
        Mask element;
        bool operator==(const Node&) const = default;
    };

    TensorQuotient(const SetPresheaf& x, const CoordinatizationModel& a) {
        if (!(x.base() == a.base())) {
            throw std::invalid_argument("tensor_product: presheaf and model bases differ");
        }
        const auto& c = x.base();

        long long total = 0;
        for (int o = 0; o < c.object_count(); ++o) {
            total += static_cast<long long>(x.points(o)) *
                     static_cast<long long>(a.algebra(o).element_count());
        }
        if (total > 10000) {
            throw BoundExceeded("tensor product would have " + std::to_string(total) +
                                " nodes, bound is 10000");
        }

        offsets_.assign(c.object_count(), {});
        for (int o = 0; o < c.object_count(); ++o) {
            offsets_[o].resize(x.points(o));
            for (int p = 0; p < x.points(o); ++p) {
                offsets_[o][p] = static_cast<int>(nodes_.size());
                for (Mask q = 0; q < static_cast<Mask>(a.algebra(o).element_count()); ++q) {
                    nodes_.push_back({o, p, q});
                }
            }
        }

        detail::UnionFind uf(nodes_.size());
        for (int v = 0; v < c.arrow_count(); ++v) {
            const auto& arr = c.arrow(v);
            const auto& hom = a.hom(v);
            for (int p = 0; p < x.points(arr.target); ++p) {
                const int pv = x.restrict_point(v, p);
                for (Mask q = 0; q < static_cast<Mask>(a.algebra(arr.source).element_count());
                     ++q) {
                    uf.merge(node_index(arr.source, pv, q),
                             node_index(arr.target, p, hom.apply(q)));
                }
            }
        }

        class_of_.assign(nodes_.size(), -1);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            std::size_t root = uf.find(i);
            if (class_of_[root] == -1) {
                class_of_[root] = class_count_++;
                representatives_.push_back(nodes_[root]);
            }
            class_of_[i] = class_of_[root];
        }
    }

    int node_index(int obj, int point, Mask element) const {
        return offsets_[obj][point] + static_cast<int>(element);
    }
    int class_of(int obj, int point, Mask element) const {
        return class_of_[node_index(obj, point, element)];
    }
    int class_count() const { return class_count_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int node_class(std::size_t node) const { return class_of_[node]; }
    const Node& representative(int cls) const { return representatives_[cls]; }

    /// Class partition as sorted node-index lists, for oracle comparison.
    std::vector<std::vector<int>> partition() const {
        std::vector<std::vector<int>> out(class_count_);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            out[class_of_[i]].push_back(static_cast<int>(i));
        }
        return out;
    }

private:
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> offsets_;
    std::vector<int> class_of_;
    std::vector<Node> representatives_;
    int class_count_ = 0;
};

inline TensorQuotient tensor_product(const SetPresheaf& x, const CoordinatizationModel& a) {
    return TensorQuotient(x, a);
}

/// The unit at a representable: the canonical map A(obj) -> y[obj] (x) A,
/// q |-> [(obj, id) (x) q], certified bijective by counting.
struct UnitIsoReport {
    int class_count;
    std::size_t algebra_size;
    std::vector<int> canonical_map;  ///< per element of A(obj), its class
    bool bijective;
};

inline UnitIsoReport unit_representable_iso(int obj, const CoordinatizationModel& a) {
    auto functor_check = validate_coordinatization(a);
    if (!functor_check.ok()) {
        throw std::invalid_argument("unit_representable_iso needs a functorial model:\n" +
                                    functor_check.summary());
    }
    const auto& c = a.base();
    auto y = representable(c, obj);
    auto quotient = tensor_product(y, a);

    // position of the identity among the arrows obj -> obj
    auto fiber = c.arrows_between(obj, obj);
    int id_point = -1;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        if (fiber[i] == c.identity(obj)) id_point = static_cast<int>(i);
    }

    UnitIsoReport report;
    report.class_count = quotient.class_count();
    report.algebra_size = a.algebra(obj).element_count();
    std::vector<bool> hit(quotient.class_count(), false);
    bool injective = true;
    for (Mask q = 0; q < static_cast<Mask>(report.algebra_size); ++q) {
        int cls = quotient.class_of(obj, id_point, q);
        if (hit[cls]) injective = false;
        hit[cls] = true;
        report.canonical_map.push_back(cls);
    }
    bool surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    report.bijective = injective && surjective &&
                       report.class_count == static_cast<int>(report.algebra_size);
    return report;
}

}  // namespace boolframes
