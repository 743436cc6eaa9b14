#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolframes/bounds.hpp"
#include "boolframes/validation.hpp"

namespace boolframes {

/// An element of a finite powerset algebra: a subset of atom indices.
using Mask = std::uint32_t;

/// Finite Boolean algebra in canonical powerset form. Atoms are labeled;
/// elements are the 2^n subsets encoded as bit masks over atom indices.
/// Meet, join and complement are the set operations, so the algebra laws
/// hold by construction and only the atom list is stored.
class FiniteBooleanAlgebra {
public:
    explicit FiniteBooleanAlgebra(std::vector<std::string> atom_labels)
        : atoms_(std::move(atom_labels)) {
        if (atoms_.empty()) {
            throw std::invalid_argument("boolean algebra needs at least one atom");
        }
        if (atoms_.size() > 20) {
            throw BoundExceeded("boolean algebra limited to 20 atoms, got " +
                                std::to_string(atoms_.size()));
        }
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
                if (atoms_[i] == atoms_[j]) {
                    throw std::invalid_argument("duplicate atom label \"" + atoms_[i] + "\"");
                }
            }
        }
    }

    int atom_count() const { return static_cast<int>(atoms_.size()); }
    std::size_t element_count() const { return std::size_t{1} << atoms_.size(); }

    Mask bottom() const { return 0; }
    Mask top() const { return static_cast<Mask>(element_count() - 1); }
    Mask atom(int i) const { return Mask{1} << i; }

    Mask meet(Mask a, Mask b) const { return a & b; }
    Mask join(Mask a, Mask b) const { return a | b; }
    Mask complement(Mask a) const { return top() & ~a; }
    bool leq(Mask a, Mask b) const { return (a & ~b) == 0; }
    bool disjoint(Mask a, Mask b) const { return (a & b) == 0; }

    const std::vector<std::string>& atom_labels() const { return atoms_; }
    const std::string& atom_label(int i) const { return atoms_[i]; }

    /// "{x,y}" notation for reports and error messages.
    std::string element_name(Mask m) const {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < atom_count(); ++i) {
            if (m & atom(i)) {
                if (!first) s += ',';
                s += atoms_[i];
                first = false;
            }
        }
        s += '}';
        return s;
    }

    bool operator==(const FiniteBooleanAlgebra& other) const = default;

private:
    std::vector<std::string> atoms_;
};

/// Canonical constructor for desk-scale algebras (the objects of the
/// Boolean event category): at most 5 atoms.
inline FiniteBooleanAlgebra powerset_algebra(std::vector<std::string> labels) {
    if (labels.size() > 5) {
        throw BoundExceeded("powerset_algebra limited to 5 atoms, got " +
                            std::to_string(labels.size()));
    }
    return FiniteBooleanAlgebra(std::move(labels));
}

/// Boolean homomorphism, stored by atom images only; the extension to all
/// elements is the join of the atom images and is always recomputed.
struct BooleanHom {
    FiniteBooleanAlgebra source;
    FiniteBooleanAlgebra target;
    std::vector<Mask> atom_map;  ///< image of each source atom in the target

    Mask apply(Mask m) const {
        Mask out = 0;
        for (int i = 0; i < source.atom_count(); ++i) {
            if (m & source.atom(i)) out |= atom_map[static_cast<std::size_t>(i)];
        }
        return out;
    }

    bool operator==(const BooleanHom& other) const = default;
};

inline BooleanHom identity_boolean_hom(const FiniteBooleanAlgebra& b) {
    std::vector<Mask> atom_map;
    for (int i = 0; i < b.atom_count(); ++i) atom_map.push_back(b.atom(i));
    return BooleanHom{b, b, std::move(atom_map)};
}

/// Checks the homomorphism laws: atom images pairwise disjoint and joining
/// to the target's top, plus preservation of 0, 1, meet, join and
/// complement on all element pairs.
inline ValidationReport validate_boolean_hom(const BooleanHom& h) {
    ValidationReport report;
    if (static_cast<int>(h.atom_map.size()) != h.source.atom_count()) {
        throw std::invalid_argument("atom_map has " + std::to_string(h.atom_map.size()) +
                                    " entries for " + std::to_string(h.source.atom_count()) +
                                    " source atoms");
    }
    for (Mask img : h.atom_map) {
        if (!h.target.leq(img, h.target.top())) {
            throw std::invalid_argument("atom image outside the target algebra");
        }
    }

    for (int i = 0; i < h.source.atom_count(); ++i) {
        for (int j = i + 1; j < h.source.atom_count(); ++j) {
            if (!h.target.disjoint(h.atom_map[i], h.atom_map[j])) {
                report.add("atom images not disjoint",
                           h.source.atom_label(i) + ", " + h.source.atom_label(j));
            }
        }
    }
    if (h.apply(h.source.top()) != h.target.top()) {
        report.add("atom images do not join to 1", h.target.element_name(h.apply(h.source.top())));
    }

    const Mask n = static_cast<Mask>(h.source.element_count());
    if (h.apply(h.source.bottom()) != h.target.bottom()) {
        report.add("does not preserve 0", h.target.element_name(h.apply(0)));
    }
    for (Mask a = 0; a < n; ++a) {
        if (h.apply(h.source.complement(a)) != h.target.complement(h.apply(a))) {
            report.add("does not preserve complement", h.source.element_name(a));
        }
        for (Mask b = 0; b < n; ++b) {
            if (h.apply(h.source.meet(a, b)) != h.target.meet(h.apply(a), h.apply(b))) {
                report.add("does not preserve meet",
                           h.source.element_name(a) + ", " + h.source.element_name(b));
            }
            if (h.apply(h.source.join(a, b)) != h.target.join(h.apply(a), h.apply(b))) {
                report.add("does not preserve join",
                           h.source.element_name(a) + ", " + h.source.element_name(b));
            }
        }
    }
    return report;
}

/// Composite g ∘ f; requires f.target == g.source.
inline BooleanHom compose_boolean_homs(const BooleanHom& g, const BooleanHom& f) {
    if (!(f.target == g.source)) {
        throw std::invalid_argument("compose_boolean_homs: middle algebras differ: " +
                                    f.target.element_name(f.target.top()) + " vs " +
                                    g.source.element_name(g.source.top()));
    }
    std::vector<Mask> atom_map;
    atom_map.reserve(f.atom_map.size());
    for (Mask img : f.atom_map) atom_map.push_back(g.apply(img));
    return BooleanHom{f.source, g.target, std::move(atom_map)};
}

/// All Boolean homomorphisms B -> C, in lexicographic order of their atom
/// image vectors. A hom corresponds to a function from target atoms to
/// source atoms (the atom image of b is the set of target atoms sent to b),
/// which makes the enumeration a finite product rather than a filter.
inline std::vector<BooleanHom> enumerate_boolean_homs(const FiniteBooleanAlgebra& b,
                                                      const FiniteBooleanAlgebra& c) {
    if (b.atom_count() > 4 || c.atom_count() > 4) {
        throw BoundExceeded("enumerate_boolean_homs limited to 4 atoms per algebra");
    }
    const int nb = b.atom_count();
    const int nc = c.atom_count();
    std::vector<BooleanHom> homs;
    std::vector<int> assign(static_cast<std::size_t>(nc), 0);  // target atom -> source atom
    for (;;) {
        std::vector<Mask> atom_map(static_cast<std::size_t>(nb), 0);
        for (int ca = 0; ca < nc; ++ca) atom_map[assign[ca]] |= c.atom(ca);
        homs.push_back(BooleanHom{b, c, std::move(atom_map)});

        int pos = nc - 1;
        while (pos >= 0 && assign[pos] == nb - 1) {
            assign[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++assign[pos];
    }
    std::sort(homs.begin(), homs.end(),
              [](const BooleanHom& x, const BooleanHom& y) { return x.atom_map < y.atom_map; });
    return homs;
}

}  // namespace boolframes
