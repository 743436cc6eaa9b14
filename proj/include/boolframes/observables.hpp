#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolframes/boolean_algebra.hpp"
#include "boolframes/quantum_logic.hpp"
#include "boolframes/validation.hpp"

namespace boolframes {

using Rational = boost::rational<long long>;

/// Parses "3", "-1/2" style exact rationals.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: \"" + text + "\"");
    }
}

inline std::string rational_to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Finite stand-in for the Borel line: the interval algebra of a breakpoint
/// list b1 < ... < bk, with cells (-inf,b1], (b1,b2], ..., (bk,inf). The
/// cells are the atoms of the carried Boolean algebra.
class PartitionAlgebra {
public:
    explicit PartitionAlgebra(std::vector<Rational> breakpoints)
        : breakpoints_(std::move(breakpoints)), cells_(make_cells(breakpoints_)) {}

    int cell_count() const { return cells_.atom_count(); }
    const FiniteBooleanAlgebra& cells() const { return cells_; }
    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::string& cell_label(int i) const { return cells_.atom_label(i); }

    bool operator==(const PartitionAlgebra& other) const = default;

private:
    static FiniteBooleanAlgebra make_cells(const std::vector<Rational>& bps) {
        for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
            if (!(bps[i] < bps[i + 1])) {
                throw std::invalid_argument("breakpoints not strictly increasing at " +
                                            rational_to_string(bps[i + 1]));
            }
        }
        if (bps.size() > 5) {
            throw BoundExceeded("partition limited to 5 breakpoints (6 cells)");
        }
        std::vector<std::string> labels;
        if (bps.empty()) {
            labels.push_back("(-inf,inf)");
        } else {
            labels.push_back("(-inf," + rational_to_string(bps.front()) + "]");
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                labels.push_back("(" + rational_to_string(bps[i]) + "," +
                                 rational_to_string(bps[i + 1]) + "]");
            }
            labels.push_back("(" + rational_to_string(bps.back()) + ",inf)");
        }
        return FiniteBooleanAlgebra(std::move(labels));
    }

    std::vector<Rational> breakpoints_;
    FiniteBooleanAlgebra cells_;
};

/// Observable: a cell-wise map from a partition algebra into a quantum
/// event algebra. Values on unions of cells are the joins of the cell
/// images (validated to exist by condition [ii]).
struct Observable {
    PartitionAlgebra domain;
    OrthomodularPoset codomain;
    std::vector<int> cell_map;  ///< per cell, an element of the codomain

    /// Image of a set of cells; nullopt when a join is missing.
    std::optional<int> apply(Mask cell_set) const {
        std::vector<int> parts;
        for (int c = 0; c < domain.cell_count(); ++c) {
            if (cell_set & domain.cells().atom(c)) parts.push_back(cell_map[c]);
        }
        return codomain.join_all(parts);
    }

    bool operator==(const Observable& other) const = default;
};

/// [i] empty set to 0 and full line to 1; [ii] disjoint cell sets have
/// orthogonal images; [iii] finite additivity over disjoint unions.
inline ValidationReport validate_observable(const Observable& obs) {
    if (static_cast<int>(obs.cell_map.size()) != obs.domain.cell_count()) {
        throw std::invalid_argument("cell_map has " + std::to_string(obs.cell_map.size()) +
                                    " entries for " + std::to_string(obs.domain.cell_count()) +
                                    " cells");
    }
    for (int x : obs.cell_map) {
        if (x < 0 || x >= obs.codomain.size()) {
            throw std::invalid_argument("cell image outside the codomain");
        }
    }

    ValidationReport report;
    const auto& b = obs.domain.cells();
    const auto& l = obs.codomain;
    const Mask n = static_cast<Mask>(b.element_count());

    auto name = [&](Mask e) { return b.element_name(e); };

    auto bottom_img = obs.apply(0);
    if (!bottom_img || *bottom_img != l.bottom()) {
        report.add("[i]", "image of {} is not 0");
    }
    auto top_img = obs.apply(b.top());
    if (!top_img || *top_img != l.top()) {
        report.add("[i]", "image of the full line is " +
                              (top_img ? l.label(*top_img) : std::string("undefined")));
    }

    for (Mask e = 0; e < n; ++e) {
        for (Mask f = 0; f < n; ++f) {
            if (!b.disjoint(e, f)) continue;
            auto ie = obs.apply(e);
            auto jf = obs.apply(f);
            if (!ie || !jf) {
                report.add("[iii]", "image of " + name(e) + " or " + name(f) + " undefined");
                continue;
            }
            if (!l.orthogonal(*ie, *jf)) {
                report.add("[ii]", name(e) + " and " + name(f) + " have non-orthogonal images " +
                                       l.label(*ie) + ", " + l.label(*jf));
                continue;
            }
            auto iu = obs.apply(e | f);
            auto jj = l.join(*ie, *jf);
            if (!iu || !jj || *iu != *jj) {
                report.add("[iii]", "image of " + name(e | f) + " is not the join of the images of " +
                                        name(e) + " and " + name(f));
            }
        }
    }
    return report;
}

/// Finite stand-in for a Borel function between two partitions: each target
/// cell carries the list of source cells in its preimage; the preimages
/// partition the source cells.
struct CellFunction {
    PartitionAlgebra source;
    PartitionAlgebra target;
    std::vector<std::vector<int>> preimage_map;  ///< per target cell, sorted source cells

    bool operator==(const CellFunction& other) const = default;
};

inline ValidationReport validate_cell_function(const CellFunction& f) {
    if (static_cast<int>(f.preimage_map.size()) != f.target.cell_count()) {
        throw std::invalid_argument("preimage_map has " + std::to_string(f.preimage_map.size()) +
                                    " entries for " + std::to_string(f.target.cell_count()) +
                                    " target cells");
    }
    ValidationReport report;
    std::vector<int> owner(static_cast<std::size_t>(f.source.cell_count()), -1);
    for (int t = 0; t < f.target.cell_count(); ++t) {
        for (int s : f.preimage_map[t]) {
            if (s < 0 || s >= f.source.cell_count()) {
                throw std::invalid_argument("preimage cell index out of range");
            }
            if (owner[s] >= 0) {
                report.add("preimages not disjoint", f.source.cell_label(s));
            }
            owner[s] = t;
        }
    }
    for (int s = 0; s < f.source.cell_count(); ++s) {
        if (owner[s] < 0) {
            report.add("preimages do not cover the source", f.source.cell_label(s));
        }
    }
    return report;
}

inline CellFunction identity_cell_function(const PartitionAlgebra& p) {
    std::vector<std::vector<int>> pre;
    for (int c = 0; c < p.cell_count(); ++c) pre.push_back({c});
    return CellFunction{p, p, std::move(pre)};
}

/// Sequential composite: apply f (source -> middle) then g (middle ->
/// target). This is the composition the right-action law is stated over.
inline CellFunction compose_cell_functions(const CellFunction& f, const CellFunction& g) {
    if (!(f.target == g.source)) {
        throw std::invalid_argument("compose_cell_functions: partitions do not match");
    }
    std::vector<std::vector<int>> pre;
    for (int t = 0; t < g.target.cell_count(); ++t) {
        std::vector<int> cells;
        for (int mid : g.preimage_map[t]) {
            cells.insert(cells.end(), f.preimage_map[mid].begin(), f.preimage_map[mid].end());
        }
        std::sort(cells.begin(), cells.end());
        pre.push_back(std::move(cells));
    }
    return CellFunction{f.source, g.target, std::move(pre)};
}

/// Right action of a cell function: (Xi . f)(E) = Xi(f^-1(E)).
inline Observable act_borel_function(const Observable& obs, const CellFunction& f) {
    if (!(f.source == obs.domain)) {
        throw std::invalid_argument("act_borel_function: partition mismatch");
    }
    std::vector<int> cell_map;
    for (int t = 0; t < f.target.cell_count(); ++t) {
        Mask pre = 0;
        for (int s : f.preimage_map[t]) pre |= obs.domain.cells().atom(s);
        auto img = obs.apply(pre);
        if (!img) {
            throw std::invalid_argument("action image undefined; observable fails [ii]");
        }
        cell_map.push_back(*img);
    }
    return Observable{f.target, obs.codomain, std::move(cell_map)};
}

/// Commutative-triangle test: Theta = H o Xi cell-wise, and the composite
/// is again an observable.
inline bool observable_triangle_check(const Observable& xi, const QuantumHom& h,
                                      const Observable& theta) {
    if (!(h.source == xi.codomain) || !(h.target == theta.codomain) ||
        !(xi.domain == theta.domain)) {
        throw std::invalid_argument("observable_triangle_check: shapes do not match");
    }
    for (int c = 0; c < xi.domain.cell_count(); ++c) {
        if (h.apply(xi.cell_map[c]) != theta.cell_map[c]) return false;
    }
    return validate_observable(theta).ok();
}

/// Factorization of an observable through its Boolean image: the subalgebra
/// of the codomain generated by the cell images, the corestriction onto it,
/// and the inclusion back into the codomain.
struct ImageFactorization {
    SubOmp image;           ///< B_Xi with parent element indices
    Observable restricted;  ///< xi, into the image algebra
    QuantumHom inclusion;   ///< psi, image algebra -> codomain
};

inline ImageFactorization image_factorization(const Observable& obs) {
    auto report = validate_observable(obs);
    if (!report.ok()) {
        throw std::invalid_argument("image_factorization needs a valid observable:\n" +
                                    report.summary());
    }
    const auto& l = obs.codomain;

    // Closure of the images under ortho and orthogonal joins.
    std::set<int> closure = {l.bottom(), l.top()};
    for (int x : obs.cell_map) closure.insert(x);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> current(closure.begin(), closure.end());
        for (int x : current) grew |= closure.insert(l.ortho(x)).second;
        for (int x : current) {
            for (int y : current) {
                if (!l.orthogonal(x, y)) continue;
                auto j = l.join(x, y);
                if (j) grew |= closure.insert(*j).second;
            }
        }
    }

    auto sub = induced_sub_omp(l, std::vector<int>(closure.begin(), closure.end()));
    if (!is_boolean(sub.algebra)) {
        throw std::invalid_argument("generated image subalgebra is not distributive");
    }
    auto position = [&](int parent) {
        auto it = std::lower_bound(sub.parent_index.begin(), sub.parent_index.end(), parent);
        return static_cast<int>(it - sub.parent_index.begin());
    };
    std::vector<int> restricted_map;
    for (int x : obs.cell_map) restricted_map.push_back(position(x));
    Observable restricted{obs.domain, sub.algebra, std::move(restricted_map)};

    std::vector<int> incl(sub.parent_index.begin(), sub.parent_index.end());
    QuantumHom inclusion{sub.algebra, l, std::move(incl)};
    return ImageFactorization{std::move(sub), std::move(restricted), std::move(inclusion)};
}

}  // namespace boolframes
