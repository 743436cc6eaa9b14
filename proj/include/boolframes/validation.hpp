#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace boolframes {

/// One violated law together with a human-readable witness.
struct Violation {
    std::string law;      ///< e.g. "axiom[b]", "order:transitivity", "[ii]"
    std::string witness;  ///< the elements that break the law
};

/// Outcome of a validation pass: ok iff no law was violated.
class ValidationReport {
public:
    bool ok() const { return violations_.empty(); }

    const std::vector<Violation>& violations() const { return violations_; }

    void add(std::string law, std::string witness) {
        violations_.push_back({std::move(law), std::move(witness)});
    }

    /// True if some violation cites exactly this law.
    bool names(std::string_view law) const {
        for (const auto& v : violations_) {
            if (v.law == law) return true;
        }
        return false;
    }

    /// True if the report cites this law and no other.
    bool names_only(std::string_view law) const {
        if (violations_.empty()) return false;
        for (const auto& v : violations_) {
            if (v.law != law) return false;
        }
        return true;
    }

    std::string summary() const {
        if (ok()) return "ok";
        std::string s;
        for (const auto& v : violations_) {
            s += v.law;
            s += ": ";
            s += v.witness;
            s += '\n';
        }
        return s;
    }

private:
    std::vector<Violation> violations_;
};

}  // namespace boolframes
