#pragma once

// Presheaf constructions used by the test suites: coproducts and quotients
// of representables give functorial-by-construction random instances
// (every finite presheaf is such a quotient).

#include <array>
#include <random>
#include <vector>

#include "boolframes/presheaf.hpp"

namespace generators {

using boolframes::FiniteCategory;
using boolframes::SetPresheaf;

inline SetPresheaf coproduct_presheaf(const SetPresheaf& x, const SetPresheaf& y) {
    const auto& c = x.base();
    std::vector<std::vector<std::string>> labels(c.object_count());
    std::vector<std::vector<int>> restriction(c.arrow_count());
    for (int o = 0; o < c.object_count(); ++o) {
        for (int p = 0; p < x.points(o); ++p) labels[o].push_back("L:" + x.point_label(o, p));
        for (int p = 0; p < y.points(o); ++p) labels[o].push_back("R:" + y.point_label(o, p));
    }
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        for (int p = 0; p < x.points(arr.target); ++p) {
            restriction[u].push_back(x.restrict_point(u, p));
        }
        for (int p = 0; p < y.points(arr.target); ++p) {
            restriction[u].push_back(x.points(arr.source) + y.restrict_point(u, p));
        }
    }
    return SetPresheaf(c, std::move(labels), std::move(restriction));
}

/// Identifies the listed point pairs and closes under restriction, so the
/// result is again a presheaf. Pairs are {object, point, point}.
inline SetPresheaf quotient_presheaf(const SetPresheaf& x,
                                     const std::vector<std::array<int, 3>>& pairs) {
    const auto& c = x.base();
    std::vector<std::vector<int>> cls(c.object_count());
    for (int o = 0; o < c.object_count(); ++o) {
        cls[o].resize(x.points(o));
        for (int p = 0; p < x.points(o); ++p) cls[o][p] = p;
    }
    auto root = [&](int o, int p) {
        while (cls[o][p] != p) p = cls[o][p];
        return p;
    };
    auto merge = [&](int o, int p, int q) {
        p = root(o, p);
        q = root(o, q);
        if (p == q) return false;
        cls[o][std::max(p, q)] = std::min(p, q);
        return true;
    };
    for (const auto& [o, p, q] : pairs) merge(o, p, q);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < c.arrow_count(); ++u) {
            const auto& arr = c.arrow(u);
            for (int p = 0; p < x.points(arr.target); ++p) {
                for (int q = p + 1; q < x.points(arr.target); ++q) {
                    if (root(arr.target, p) != root(arr.target, q)) continue;
                    changed |= merge(arr.source, x.restrict_point(u, p), x.restrict_point(u, q));
                }
            }
        }
    }

    std::vector<std::vector<int>> index(c.object_count());
    std::vector<std::vector<std::string>> labels(c.object_count());
    for (int o = 0; o < c.object_count(); ++o) {
        index[o].assign(x.points(o), -1);
        for (int p = 0; p < x.points(o); ++p) {
            int r = root(o, p);
            if (index[o][r] == -1) {
                index[o][r] = static_cast<int>(labels[o].size());
                labels[o].push_back(x.point_label(o, r));
            }
            index[o][p] = index[o][r];
        }
    }
    std::vector<std::vector<int>> restriction(c.arrow_count());
    for (int u = 0; u < c.arrow_count(); ++u) {
        const auto& arr = c.arrow(u);
        restriction[u].assign(labels[arr.target].size(), -1);
        for (int p = 0; p < x.points(arr.target); ++p) {
            restriction[u][index[arr.target][p]] = index[arr.source][x.restrict_point(u, p)];
        }
    }
    return SetPresheaf(c, std::move(labels), std::move(restriction));
}

/// Deterministic stream of small presheaves over the base: the empty and
/// terminal ones, then random quotients of one- or two-summand coproducts
/// of representables.
inline std::vector<SetPresheaf> random_small_presheaves(const FiniteCategory& base,
                                                        std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<SetPresheaf> out;
    out.push_back(boolframes::empty_presheaf(base));
    out.push_back(boolframes::terminal_presheaf(base));
    std::uniform_int_distribution<int> pick_obj(0, base.object_count() - 1);
    std::uniform_int_distribution<int> pick_summands(1, 2);
    std::uniform_int_distribution<int> pick_idents(0, 2);
    while (out.size() < count) {
        SetPresheaf x = boolframes::representable(base, pick_obj(rng));
        if (pick_summands(rng) == 2) {
            x = coproduct_presheaf(x, boolframes::representable(base, pick_obj(rng)));
        }
        std::vector<std::array<int, 3>> idents;
        for (int k = pick_idents(rng); k > 0; --k) {
            int o = pick_obj(rng);
            if (x.points(o) < 2) continue;
            std::uniform_int_distribution<int> pick_point(0, x.points(o) - 1);
            idents.push_back({o, pick_point(rng), pick_point(rng)});
        }
        out.push_back(quotient_presheaf(x, idents));
    }
    return out;
}

}  // namespace generators
