#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "boolframes/boolean_algebra.hpp"
#include "boolframes/bounds.hpp"
#include "boolframes/validation.hpp"

namespace boolframes {

/// Finite quantum event algebra candidate: a labeled element set with a
/// binary order relation, an orthocomplement map and a designated top.
/// The constructor only checks shapes; whether the structure satisfies the
/// event-algebra axioms is decided by validate_event_algebra.
class OrthomodularPoset {
public:
    OrthomodularPoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
                      std::vector<int> ortho, int top)
        : labels_(std::move(labels)), ortho_(std::move(ortho)), top_(top) {
        const int n = static_cast<int>(labels_.size());
        if (n == 0) throw std::invalid_argument("event algebra needs at least one element");
        if (n > max_elements()) {
            throw BoundExceeded("event algebra has " + std::to_string(n) +
                                " elements, bound is " + std::to_string(max_elements()));
        }
        if (static_cast<int>(leq.size()) != n || static_cast<int>(ortho_.size()) != n) {
            throw std::invalid_argument("leq/ortho size does not match the element list");
        }
        for (const auto& row : leq) {
            if (static_cast<int>(row.size()) != n) {
                throw std::invalid_argument("leq matrix is not square");
            }
        }
        for (int x : ortho_) {
            if (x < 0 || x >= n) throw std::invalid_argument("ortho maps outside the element list");
        }
        if (top_ < 0 || top_ >= n) throw std::invalid_argument("top is not an element");
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw std::invalid_argument("duplicate element label \"" + labels_[i] + "\"");
                }
            }
        }
        leq_.assign(static_cast<std::size_t>(n) * n, false);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) leq_[idx(i, j)] = leq[i][j];
        }
    }

    /// Builds the order from a relation pair list; reflexive pairs are implied.
    static OrthomodularPoset from_relations(std::vector<std::string> labels,
                                            const std::vector<std::pair<int, int>>& below,
                                            std::vector<int> ortho, int top) {
        const int n = static_cast<int>(labels.size());
        std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) leq[i][i] = true;
        for (auto [a, b] : below) {
            if (a < 0 || a >= n || b < 0 || b >= n) {
                throw std::invalid_argument("leq pair outside the element list");
            }
            leq[a][b] = true;
        }
        return OrthomodularPoset(std::move(labels), leq, std::move(ortho), top);
    }

    int size() const { return static_cast<int>(labels_.size()); }
    bool leq(int a, int b) const { return leq_[idx(a, b)]; }
    int ortho(int a) const { return ortho_[a]; }
    int top() const { return top_; }
    int bottom() const { return ortho_[top_]; }

    /// l ⊥ ĺ  :=  l ≤ ĺ∗
    bool orthogonal(int a, int b) const { return leq(a, ortho_[b]); }

    /// Least upper bound in the order, when one exists.
    std::optional<int> join(int a, int b) const {
        std::optional<int> least;
        for (int z = 0; z < size(); ++z) {
            if (!leq(a, z) || !leq(b, z)) continue;
            if (!least || leq(z, *least)) {
                // candidate; confirm it is below every upper bound
                bool is_least = true;
                for (int w = 0; w < size(); ++w) {
                    if (leq(a, w) && leq(b, w) && !leq(z, w)) {
                        is_least = false;
                        break;
                    }
                }
                if (is_least) least = z;
            }
        }
        return least;
    }

    /// Greatest lower bound in the order, when one exists.
    std::optional<int> meet(int a, int b) const {
        std::optional<int> greatest;
        for (int z = 0; z < size(); ++z) {
            if (!leq(z, a) || !leq(z, b)) continue;
            if (!greatest || leq(*greatest, z)) {
                bool is_greatest = true;
                for (int w = 0; w < size(); ++w) {
                    if (leq(w, a) && leq(w, b) && !leq(w, z)) {
                        is_greatest = false;
                        break;
                    }
                }
                if (is_greatest) greatest = z;
            }
        }
        return greatest;
    }

    /// Iterated join of a list of elements; nullopt when a step has no lub.
    std::optional<int> join_all(const std::vector<int>& xs) const {
        int acc = bottom();
        for (int x : xs) {
            auto j = join(acc, x);
            if (!j) return std::nullopt;
            acc = *j;
        }
        return acc;
    }

    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<int> index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i) {
            if (labels_[i] == label) return i;
        }
        return std::nullopt;
    }

    bool operator==(const OrthomodularPoset& other) const = default;

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * labels_.size() + j; }

    std::vector<std::string> labels_;
    std::vector<bool> leq_;
    std::vector<int> ortho_;
    int top_;
};

/// Checks the event-algebra axioms [a]-[e],[g] plus the partial-order laws.
/// Structure problems (ortho not a bijection) are reported first; if the
/// order laws fail the axioms are not evaluated, since they presuppose a
/// partial order.
inline ValidationReport validate_event_algebra(const OrthomodularPoset& l) {
    ValidationReport report;
    const int n = l.size();

    std::vector<int> hits(n, 0);
    for (int i = 0; i < n; ++i) ++hits[l.ortho(i)];
    for (int i = 0; i < n; ++i) {
        if (hits[i] != 1) {
            report.add("structure", "ortho is not a bijection at " + l.label(i));
        }
    }
    if (!report.ok()) return report;

    for (int i = 0; i < n; ++i) {
        if (!l.leq(i, i)) report.add("order", "reflexivity fails at " + l.label(i));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && l.leq(i, j) && l.leq(j, i)) {
                report.add("order", "antisymmetry fails at " + l.label(i) + ", " + l.label(j));
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!l.leq(i, j)) continue;
            for (int k = 0; k < n; ++k) {
                if (l.leq(j, k) && !l.leq(i, k)) {
                    report.add("order", "transitivity fails at " + l.label(i) + " <= " +
                                            l.label(j) + " <= " + l.label(k));
                }
            }
        }
    }
    if (!report.ok()) return report;

    for (int i = 0; i < n; ++i) {
        if (!l.leq(i, l.top())) report.add("axiom[a]", l.label(i) + " is not below 1");
    }
    for (int i = 0; i < n; ++i) {
        if (l.ortho(l.ortho(i)) != i) {
            report.add("axiom[b]", l.label(i) + "** = " + l.label(l.ortho(l.ortho(i))));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!l.orthogonal(i, l.ortho(i))) {
            report.add("axiom[c]", l.label(i) + " is not orthogonal to its complement");
            continue;
        }
        auto j = l.join(i, l.ortho(i));
        if (!j || *j != l.top()) {
            report.add("axiom[c]", l.label(i) + " v " + l.label(l.ortho(i)) +
                                       (j ? " = " + l.label(*j) : " is undefined"));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (l.leq(i, j) && !l.leq(l.ortho(j), l.ortho(i))) {
                report.add("axiom[d]", l.label(i) + " <= " + l.label(j) + " but " +
                                           l.label(l.ortho(j)) + " is not below " +
                                           l.label(l.ortho(i)));
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (l.orthogonal(i, j) && !l.join(i, j)) {
                report.add("axiom[e]", l.label(i) + " _|_ " + l.label(j) +
                                           " but their join has no least upper bound");
            }
        }
    }
    // [g] is read on orthogonal pairs, where the join of [e] lives; both
    // bounds must exist for the hypothesis to be satisfied.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!l.orthogonal(i, j)) continue;
            auto jn = l.join(i, j);
            auto mt = l.meet(i, j);
            if (jn && mt && *jn == l.top() && *mt == l.bottom() && j != l.ortho(i)) {
                report.add("axiom[g]", l.label(i) + " v " + l.label(j) + " = 1 and " +
                                           l.label(i) + " ^ " + l.label(j) + " = 0 but " +
                                           l.label(j) + " is not " + l.label(i) + "*");
            }
        }
    }
    return report;
}

/// Quantum algebraic homomorphism candidate; validated against the four
/// arrow conditions by validate_quantum_hom. Note [d] is an inequality.
struct QuantumHom {
    OrthomodularPoset source;
    OrthomodularPoset target;
    std::vector<int> map;

    int apply(int x) const { return map[static_cast<std::size_t>(x)]; }

    bool operator==(const QuantumHom& other) const = default;
};

inline QuantumHom identity_quantum_hom(const OrthomodularPoset& l) {
    std::vector<int> map(static_cast<std::size_t>(l.size()));
    std::iota(map.begin(), map.end(), 0);
    return QuantumHom{l, l, std::move(map)};
}

inline ValidationReport validate_quantum_hom(const QuantumHom& h) {
    if (static_cast<int>(h.map.size()) != h.source.size()) {
        throw std::invalid_argument("quantum hom map is not total: " +
                                    std::to_string(h.map.size()) + " entries for " +
                                    std::to_string(h.source.size()) + " elements");
    }
    for (int x : h.map) {
        if (x < 0 || x >= h.target.size()) {
            throw std::invalid_argument("quantum hom maps outside the target algebra");
        }
    }

    ValidationReport report;
    const auto& s = h.source;
    const auto& t = h.target;
    if (h.apply(s.top()) != t.top()) {
        report.add("hom[a]", "H(1) = " + t.label(h.apply(s.top())));
    }
    for (int k = 0; k < s.size(); ++k) {
        if (h.apply(s.ortho(k)) != t.ortho(h.apply(k))) {
            report.add("hom[b]", "H(" + s.label(k) + "*) = " + t.label(h.apply(s.ortho(k))) +
                                     " but H(" + s.label(k) + ")* = " +
                                     t.label(t.ortho(h.apply(k))));
        }
    }
    for (int k = 0; k < s.size(); ++k) {
        for (int m = 0; m < s.size(); ++m) {
            if (s.leq(k, m) && !t.leq(h.apply(k), h.apply(m))) {
                report.add("hom[c]", s.label(k) + " <= " + s.label(m) +
                                         " is not preserved");
            }
        }
    }
    for (int k = 0; k < s.size(); ++k) {
        for (int m = 0; m < s.size(); ++m) {
            if (!s.orthogonal(k, m)) continue;
            auto sj = s.join(k, m);
            if (!sj) continue;  // hypothesis k v m in L unsatisfied
            auto tj = t.join(h.apply(k), h.apply(m));
            if (!tj) {
                report.add("hom[d]", "H(" + s.label(k) + ") v H(" + s.label(m) +
                                         ") is undefined in the target");
            } else if (!t.leq(h.apply(*sj), *tj)) {
                report.add("hom[d]", "H(" + s.label(*sj) + ") is not below H(" + s.label(k) +
                                         ") v H(" + s.label(m) + ")");
            }
        }
    }
    return report;
}

inline QuantumHom compose_quantum_homs(const QuantumHom& g, const QuantumHom& f) {
    if (!(f.target == g.source)) {
        throw std::invalid_argument("compose_quantum_homs: middle algebras differ");
    }
    std::vector<int> map;
    map.reserve(f.map.size());
    for (int x : f.map) map.push_back(g.apply(x));
    return QuantumHom{f.source, g.target, std::move(map)};
}

/// A powerset algebra viewed as an event algebra: element index == subset
/// mask, order is inclusion, ortho is set complement.
inline OrthomodularPoset as_omp(const FiniteBooleanAlgebra& b) {
    const int n = static_cast<int>(b.element_count());
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<int> ortho(n);
    for (Mask m = 0; m < static_cast<Mask>(n); ++m) {
        labels.push_back(b.element_name(m));
        ortho[m] = static_cast<int>(b.complement(m));
        for (Mask k = 0; k < static_cast<Mask>(n); ++k) leq[m][k] = b.leq(m, k);
    }
    return OrthomodularPoset(std::move(labels), leq, std::move(ortho), n - 1);
}

inline QuantumHom boolean_to_quantum_hom(const BooleanHom& h) {
    std::vector<int> map;
    map.reserve(h.source.element_count());
    for (Mask m = 0; m < static_cast<Mask>(h.source.element_count()); ++m) {
        map.push_back(static_cast<int>(h.apply(m)));
    }
    return QuantumHom{as_omp(h.source), as_omp(h.target), std::move(map)};
}

/// Extends atom images to a full map by joins; nullopt when some join is
/// missing or the images fail the forced orthogonality/top conditions.
inline std::optional<QuantumHom> quantum_hom_from_atom_images(const FiniteBooleanAlgebra& b,
                                                              const OrthomodularPoset& l,
                                                              const std::vector<int>& images) {
    if (static_cast<int>(images.size()) != b.atom_count()) return std::nullopt;
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            if (!l.orthogonal(images[i], images[j])) return std::nullopt;
        }
    }
    std::vector<int> map(b.element_count(), l.bottom());
    for (Mask m = 1; m < static_cast<Mask>(b.element_count()); ++m) {
        std::vector<int> parts;
        for (int i = 0; i < b.atom_count(); ++i) {
            if (m & b.atom(i)) parts.push_back(images[i]);
        }
        auto j = l.join_all(parts);
        if (!j) return std::nullopt;
        map[m] = *j;
    }
    if (map[b.top()] != l.top()) return std::nullopt;
    return QuantumHom{as_omp(b), l, std::move(map)};
}

/// All quantum homomorphisms from a powerset algebra (as an event algebra)
/// into l, ordered lexicographically by atom image tuple. A hom is fixed by
/// its atom images, which conditions [b]-[d] force to be pairwise
/// orthogonal with join 1.
inline std::vector<QuantumHom> enumerate_quantum_homs(const FiniteBooleanAlgebra& b,
                                                      const OrthomodularPoset& l) {
    if (b.atom_count() > 4) {
        throw BoundExceeded("enumerate_quantum_homs limited to 4 source atoms");
    }
    std::vector<QuantumHom> out;
    std::vector<int> images(static_cast<std::size_t>(b.atom_count()), 0);
    for (;;) {
        if (auto h = quantum_hom_from_atom_images(b, l, images)) {
            out.push_back(std::move(*h));
        }
        int pos = b.atom_count() - 1;
        while (pos >= 0 && images[pos] == l.size() - 1) {
            images[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++images[pos];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pasting of Boolean blocks
// ---------------------------------------------------------------------------

/// Recipe for gluing powerset blocks along shared atoms (and the common
/// 0 and 1). Whether the glued structure is a quantum event algebra is
/// decided post hoc by the validator.
struct PastingSpec {
    std::vector<std::vector<std::string>> blocks;
};

struct PastingOutcome {
    std::optional<OrthomodularPoset> algebra;
    ValidationReport report;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool merge(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);  // keep the least index as root
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

inline PastingOutcome paste_boolean_blocks(const PastingSpec& spec) {
    if (spec.blocks.empty() || spec.blocks.size() > 5) {
        throw std::invalid_argument("pasting needs between 1 and 5 blocks");
    }
    std::vector<std::string> global_atoms;
    for (const auto& block : spec.blocks) {
        if (block.empty()) throw std::invalid_argument("pasting block with no atoms");
        for (const auto& a : block) {
            if (std::find(global_atoms.begin(), global_atoms.end(), a) == global_atoms.end()) {
                global_atoms.push_back(a);
            }
        }
    }
    if (global_atoms.size() > 9) {
        throw BoundExceeded("pasting limited to 9 distinct atoms, got " +
                            std::to_string(global_atoms.size()));
    }
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        std::set<std::string> si(spec.blocks[i].begin(), spec.blocks[i].end());
        if (si.size() != spec.blocks[i].size()) {
            throw std::invalid_argument("pasting block repeats an atom");
        }
        for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
            if (i == j) continue;
            std::set<std::string> sj(spec.blocks[j].begin(), spec.blocks[j].end());
            if (std::includes(sj.begin(), sj.end(), si.begin(), si.end())) {
                throw std::invalid_argument("pasting block " + std::to_string(i) +
                                            " is contained in block " + std::to_string(j));
            }
        }
    }

    // Nodes: (block, subset-of-block-atoms); offsets index the flat list.
    std::vector<FiniteBooleanAlgebra> blocks;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (const auto& b : spec.blocks) {
        blocks.emplace_back(b);
        offset.push_back(total);
        total += blocks.back().element_count();
    }
    auto node = [&](std::size_t blk, Mask m) { return offset[blk] + m; };

    // Global atom content of a node, as a bitmask over global_atoms.
    auto global_mask = [&](std::size_t blk, Mask m) {
        std::uint32_t g = 0;
        for (int i = 0; i < blocks[blk].atom_count(); ++i) {
            if (m & blocks[blk].atom(i)) {
                auto it = std::find(global_atoms.begin(), global_atoms.end(),
                                    blocks[blk].atom_label(i));
                g |= std::uint32_t{1} << (it - global_atoms.begin());
            }
        }
        return g;
    };

    detail::UnionFind uf(total);
    // Identify equal atom-label sets across blocks, and all tops.
    std::map<std::uint32_t, std::size_t> seen;
    for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
        for (Mask m = 0; m < static_cast<Mask>(blocks[blk].element_count()); ++m) {
            auto [it, fresh] = seen.try_emplace(global_mask(blk, m), node(blk, m));
            if (!fresh) uf.merge(it->second, node(blk, m));
        }
        uf.merge(node(0, blocks[0].top()), node(blk, blocks[blk].top()));
    }
    // Ortho closure: identified elements force their block complements equal.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::size_t, std::vector<std::pair<std::size_t, Mask>>> members;
        for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
            for (Mask m = 0; m < static_cast<Mask>(blocks[blk].element_count()); ++m) {
                members[uf.find(node(blk, m))].push_back({blk, m});
            }
        }
        for (const auto& [root, ms] : members) {
            for (std::size_t i = 1; i < ms.size(); ++i) {
                auto [b0, m0] = ms[0];
                auto [bi, mi] = ms[i];
                if (uf.merge(node(b0, blocks[b0].complement(m0)),
                             node(bi, blocks[bi].complement(mi)))) {
                    changed = true;
                }
            }
        }
    }

    // Classes in order of least node; the least node supplies the label.
    std::vector<std::size_t> roots;
    for (std::size_t x = 0; x < total; ++x) {
        if (uf.find(x) == x) roots.push_back(x);
    }
    std::map<std::size_t, int> class_of_root;
    for (std::size_t i = 0; i < roots.size(); ++i) class_of_root[roots[i]] = static_cast<int>(i);
    auto class_of = [&](std::size_t blk, Mask m) { return class_of_root[uf.find(node(blk, m))]; };

    const int n = static_cast<int>(roots.size());
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    const int bottom_class = class_of(0, 0);
    const int top_class = class_of(0, blocks[0].top());
    for (int c = 0; c < n; ++c) {
        std::size_t least = roots[static_cast<std::size_t>(c)];
        std::size_t blk = 0;
        while (blk + 1 < blocks.size() && offset[blk + 1] <= least) ++blk;
        Mask m = static_cast<Mask>(least - offset[blk]);
        if (c == bottom_class) {
            labels[c] = "0";
        } else if (c == top_class) {
            labels[c] = "1";
        } else if (std::popcount(m) == 1) {
            labels[c] = blocks[blk].atom_label(std::countr_zero(m));
        } else {
            labels[c] = blocks[blk].element_name(m);
        }
    }

    // Order and ortho inherited blockwise.
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<int> ortho(static_cast<std::size_t>(n), -1);
    for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
        for (Mask a = 0; a < static_cast<Mask>(blocks[blk].element_count()); ++a) {
            ortho[class_of(blk, a)] = class_of(blk, blocks[blk].complement(a));
            for (Mask b = 0; b < static_cast<Mask>(blocks[blk].element_count()); ++b) {
                if (blocks[blk].leq(a, b)) leq[class_of(blk, a)][class_of(blk, b)] = true;
            }
        }
    }

    OrthomodularPoset pasted(std::move(labels), leq, std::move(ortho), top_class);
    PastingOutcome out;
    out.report = validate_event_algebra(pasted);
    if (out.report.ok()) out.algebra = std::move(pasted);
    return out;
}

// ---------------------------------------------------------------------------
// Subspace event algebras over integer vectors
// ---------------------------------------------------------------------------

namespace detail {

struct Subspace {
    int kind;  // 0 = zero, 1 = line, 2 = plane (dim 3 only), 3 = full
    std::array<long long, 3> v;  // primitive direction (line) or normal (plane)

    auto operator<=>(const Subspace&) const = default;
};

inline std::array<long long, 3> canonical_vec(std::array<long long, 3> v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1) {
        for (auto& x : v) x /= g;
    }
    for (long long x : v) {
        if (x != 0) {
            if (x < 0) {
                for (auto& y : v) y = -y;
            }
            break;
        }
    }
    return v;
}

inline long long dot(const std::array<long long, 3>& a, const std::array<long long, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline std::array<long long, 3> cross(const std::array<long long, 3>& a,
                                      const std::array<long long, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace detail

/// Inclusion-ordered poset of the subspaces generated by the given rays
/// under orthogonal complement and intersection. Exact integer arithmetic;
/// dim 2 or 3 only.
inline OrthomodularPoset subspace_event_algebra(
    const std::vector<std::vector<long long>>& rays, int dim) {
    using detail::Subspace;
    if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
    if (rays.empty()) throw std::invalid_argument("at least one ray is required");

    const Subspace zero{0, {0, 0, 0}};
    const Subspace full{3, {0, 0, 0}};

    auto complement_of = [&](const Subspace& s) -> Subspace {
        if (s.kind == 0) return full;
        if (s.kind == 3) return zero;
        if (dim == 2) return Subspace{1, detail::canonical_vec({-s.v[1], s.v[0], 0})};
        return Subspace{s.kind == 1 ? 2 : 1, s.v};
    };
    auto intersect = [&](const Subspace& a, const Subspace& b) -> Subspace {
        if (a.kind == 0 || b.kind == 0) return zero;
        if (a.kind == 3) return b;
        if (b.kind == 3) return a;
        if (a.kind == 1 && b.kind == 1) return a.v == b.v ? a : zero;
        if (a.kind == 1 && b.kind == 2) return detail::dot(a.v, b.v) == 0 ? a : zero;
        if (a.kind == 2 && b.kind == 1) return detail::dot(a.v, b.v) == 0 ? b : zero;
        if (a.v == b.v) return a;
        return Subspace{1, detail::canonical_vec(detail::cross(a.v, b.v))};
    };

    std::set<Subspace> closure = {zero, full};
    for (const auto& ray : rays) {
        if (static_cast<int>(ray.size()) != dim) {
            throw std::invalid_argument("ray has wrong dimension");
        }
        std::array<long long, 3> v = {ray[0], ray[1], dim == 3 ? ray[2] : 0};
        if (v == std::array<long long, 3>{0, 0, 0}) {
            throw std::invalid_argument("zero vector is not a ray");
        }
        closure.insert(Subspace{1, detail::canonical_vec(v)});
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Subspace> current(closure.begin(), closure.end());
        for (const auto& s : current) grew |= closure.insert(complement_of(s)).second;
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                grew |= closure.insert(intersect(current[i], current[j])).second;
            }
        }
        if (static_cast<int>(closure.size()) > max_elements()) {
            throw BoundExceeded("subspace closure reached " + std::to_string(closure.size()) +
                                " elements, bound is " + std::to_string(max_elements()));
        }
    }

    std::vector<Subspace> elems(closure.begin(), closure.end());  // std::set order: by (kind, v)
    auto index = [&](const Subspace& s) {
        return static_cast<int>(std::lower_bound(elems.begin(), elems.end(), s) - elems.begin());
    };
    auto contains = [&](const Subspace& small, const Subspace& big) {
        if (small.kind == 0 || big.kind == 3) return true;
        if (small == big) return true;
        if (small.kind == 1 && big.kind == 2) return detail::dot(small.v, big.v) == 0;
        return false;
    };
    auto vec_name = [&](const std::array<long long, 3>& v) {
        std::string s = std::to_string(v[0]) + "," + std::to_string(v[1]);
        if (dim == 3) s += "," + std::to_string(v[2]);
        return s;
    };

    const int n = static_cast<int>(elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<int> ortho(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& s = elems[i];
        if (s.kind == 0) {
            labels.push_back("0");
        } else if (s.kind == 3) {
            labels.push_back(dim == 2 ? "R2" : "R3");
        } else if (s.kind == 1) {
            labels.push_back("span(" + vec_name(s.v) + ")");
        } else {
            labels.push_back("perp(" + vec_name(s.v) + ")");
        }
        ortho[i] = index(complement_of(s));
        for (int j = 0; j < n; ++j) leq[i][j] = contains(s, elems[j]);
    }
    return OrthomodularPoset(std::move(labels), leq, std::move(ortho), index(full));
}

// ---------------------------------------------------------------------------
// Maximal Boolean subalgebras (measurement blocks)
// ---------------------------------------------------------------------------

/// All maximal Boolean subalgebras of a valid event algebra, each given as a
/// sorted element index list; the block list itself is sorted. A block is
/// generated by a finest orthopartition of 1 (pairwise orthogonal,
/// join-irreducible elements with join 1), which pins down the search.
inline std::vector<std::vector<int>> maximal_boolean_subalgebras(const OrthomodularPoset& l) {
    auto report = validate_event_algebra(l);
    if (!report.ok()) {
        throw std::invalid_argument("maximal_boolean_subalgebras needs a valid event algebra:\n" +
                                    report.summary());
    }

    const int n = l.size();
    std::vector<int> indecomposable;
    for (int d = 0; d < n; ++d) {
        if (d == l.bottom()) continue;
        bool splits = false;
        for (int e = 0; e < n && !splits; ++e) {
            if (e == l.bottom()) continue;
            for (int f = 0; f < n; ++f) {
                if (f == l.bottom() || !l.orthogonal(e, f)) continue;
                auto j = l.join(e, f);
                if (j && *j == d && e != d && f != d) {
                    splits = true;
                    break;
                }
            }
        }
        if (!splits) indecomposable.push_back(d);
    }

    std::vector<std::vector<int>> blocks;
    std::vector<int> chosen;
    auto emit = [&]() {
        std::set<int> members;
        const std::size_t k = chosen.size();
        for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << k); ++sub) {
            std::vector<int> parts;
            for (std::size_t i = 0; i < k; ++i) {
                if (sub & (std::uint32_t{1} << i)) parts.push_back(chosen[i]);
            }
            auto j = l.join_all(parts);
            if (j) members.insert(*j);
        }
        blocks.emplace_back(members.begin(), members.end());
    };
    auto search = [&](auto&& self, std::size_t start, int joined) -> void {
        if (joined == l.top()) {
            emit();
            return;
        }
        for (std::size_t i = start; i < indecomposable.size(); ++i) {
            int d = indecomposable[i];
            bool compatible = true;
            for (int c : chosen) {
                if (!l.orthogonal(d, c)) {
                    compatible = false;
                    break;
                }
            }
            if (!compatible) continue;
            auto j = l.join(joined, d);
            if (!j) continue;
            chosen.push_back(d);
            self(self, i + 1, *j);
            chosen.pop_back();
        }
    };
    search(search, 0, l.bottom());
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    return blocks;
}

/// True iff l is (isomorphic to) a powerset algebra: its only maximal
/// Boolean subalgebra is l itself.
inline bool is_boolean(const OrthomodularPoset& l) {
    auto blocks = maximal_boolean_subalgebras(l);
    return blocks.size() == 1 && static_cast<int>(blocks[0].size()) == l.size();
}

/// Induced structure on an ortho-closed element subset containing 0 and 1,
/// together with the parent index of each element.
struct SubOmp {
    OrthomodularPoset algebra;
    std::vector<int> parent_index;
};

inline SubOmp induced_sub_omp(const OrthomodularPoset& l, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    auto position = [&](int parent) {
        auto it = std::lower_bound(indices.begin(), indices.end(), parent);
        if (it == indices.end() || *it != parent) {
            throw std::invalid_argument("subset is not ortho-closed or misses 0/1");
        }
        return static_cast<int>(it - indices.begin());
    };
    const int n = static_cast<int>(indices.size());
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<int> ortho(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        labels.push_back(l.label(indices[i]));
        ortho[i] = position(l.ortho(indices[i]));
        for (int j = 0; j < n; ++j) leq[i][j] = l.leq(indices[i], indices[j]);
    }
    int top = position(l.top());
    position(l.bottom());
    return SubOmp{OrthomodularPoset(std::move(labels), leq, std::move(ortho), top),
                  std::move(indices)};
}

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

/// Exhaustive (backtracking) search for an order/ortho/top preserving
/// bijection p -> q; nullopt when none exists.
inline std::optional<std::vector<int>> find_omp_isomorphism(const OrthomodularPoset& p,
                                                            const OrthomodularPoset& q) {
    if (p.size() != q.size()) return std::nullopt;
    const int n = p.size();

    auto signature = [](const OrthomodularPoset& l, int x) {
        int down = 0;
        int up = 0;
        for (int z = 0; z < l.size(); ++z) {
            if (l.leq(z, x)) ++down;
            if (l.leq(x, z)) ++up;
        }
        return std::pair<int, int>{down, up};
    };
    std::vector<std::pair<int, int>> sig_p, sig_q;
    for (int i = 0; i < n; ++i) {
        sig_p.push_back(signature(p, i));
        sig_q.push_back(signature(q, i));
    }

    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    auto ok_pair = [&](int a, int b) {
        if (sig_p[a] != sig_q[b]) return false;
        if ((a == p.top()) != (b == q.top())) return false;
        for (int z = 0; z < n; ++z) {
            if (map[z] < 0) continue;
            if (p.leq(a, z) != q.leq(b, map[z])) return false;
            if (p.leq(z, a) != q.leq(map[z], b)) return false;
            if (p.ortho(a) == z && q.ortho(b) != map[z]) return false;
            if (p.ortho(z) == a && q.ortho(map[z]) != b) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        for (int b = 0; b < n; ++b) {
            if (used[b] || !ok_pair(i, b)) continue;
            map[i] = b;
            used[b] = true;
            if (self(self, i + 1)) return true;
            map[i] = -1;
            used[b] = false;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return map;
}

}  // namespace boolframes
