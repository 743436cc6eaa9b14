#pragma once

// Shared hand-built event algebras for the test suites. Each fixture is
// constructed directly from its order table, independently of the pasting
// and subspace constructors it is used to cross-check.

#include <map>
#include <string>
#include <vector>

#include "boolframes/quantum_logic.hpp"

namespace fixtures {

using boolframes::OrthomodularPoset;

inline OrthomodularPoset from_table(
    const std::vector<std::string>& labels,
    const std::map<std::string, std::vector<std::string>>& strictly_below,
    const std::map<std::string, std::string>& ortho, const std::string& top) {
    auto index = [&](const std::string& name) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == name) return static_cast<int>(i);
        }
        throw std::invalid_argument("fixture label " + name);
    };
    std::vector<std::pair<int, int>> below;
    for (const auto& [a, ups] : strictly_below) {
        for (const auto& b : ups) below.push_back({index(a), index(b)});
    }
    std::vector<int> ortho_idx(labels.size());
    for (const auto& [a, b] : ortho) ortho_idx[index(a)] = index(b);
    return OrthomodularPoset::from_relations(labels, below, ortho_idx, index(top));
}

/// MO2, the 6-element "Chinese lantern": two 4-element blocks glued at 0, 1.
inline OrthomodularPoset mo2() {
    return from_table(
        {"0", "a", "a*", "b", "b*", "1"},
        {{"0", {"a", "a*", "b", "b*", "1"}},
         {"a", {"1"}},
         {"a*", {"1"}},
         {"b", {"1"}},
         {"b*", {"1"}}},
        {{"0", "1"}, {"1", "0"}, {"a", "a*"}, {"a*", "a"}, {"b", "b*"}, {"b*", "b"}}, "1");
}

/// The hexagon: 0 < a < b < 1 and 0 < b* < a* < 1. Violates exactly
/// axiom [g] (a* and b have join 1 and meet 0 without being complements).
inline OrthomodularPoset hexagon() {
    return from_table(
        {"0", "a", "b", "b*", "a*", "1"},
        {{"0", {"a", "b", "b*", "a*", "1"}},
         {"a", {"b", "1"}},
         {"b", {"1"}},
         {"b*", {"a*", "1"}},
         {"a*", {"1"}}},
        {{"0", "1"}, {"1", "0"}, {"a", "a*"}, {"a*", "a"}, {"b", "b*"}, {"b*", "b"}}, "1");
}

/// Violates exactly axiom [c]: a v a* exists but equals u < 1.
inline OrthomodularPoset pinched_complement() {
    return from_table(
        {"0", "u*", "a", "a*", "u", "1"},
        {{"0", {"u*", "a", "a*", "u", "1"}},
         {"u*", {"a", "a*", "u", "1"}},
         {"a", {"u", "1"}},
         {"a*", {"u", "1"}},
         {"u", {"1"}}},
        {{"0", "1"}, {"1", "0"}, {"a", "a*"}, {"a*", "a"}, {"u", "u*"}, {"u*", "u"}}, "1");
}

/// Violates exactly axiom [e]: a _|_ b but {a,b} has two minimal upper
/// bounds u, v, so the orthogonal join is not defined.
inline OrthomodularPoset twin_peaks() {
    return from_table(
        {"0", "a", "b", "u", "v", "u*", "v*", "a*", "b*", "1"},
        {{"0", {"a", "b", "u", "v", "u*", "v*", "a*", "b*", "1"}},
         {"a", {"u", "v", "b*", "1"}},
         {"b", {"u", "v", "a*", "1"}},
         {"u", {"1"}},
         {"v", {"1"}},
         {"u*", {"a*", "b*", "1"}},
         {"v*", {"a*", "b*", "1"}},
         {"a*", {"1"}},
         {"b*", {"1"}}},
        {{"0", "1"},
         {"1", "0"},
         {"a", "a*"},
         {"a*", "a"},
         {"b", "b*"},
         {"b*", "b"},
         {"u", "u*"},
         {"u*", "u"},
         {"v", "v*"},
         {"v*", "v"}},
        "1");
}

}  // namespace fixtures
