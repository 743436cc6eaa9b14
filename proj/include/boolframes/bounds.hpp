#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace boolframes {

/// Desk-scale element bound for event algebras. Defaults to 60; the
/// BF_MAX_ELEMENTS environment variable overrides it, capped at 200.
inline int max_elements() {
    static const int value = [] {
        int v = 60;
        if (const char* env = std::getenv("BF_MAX_ELEMENTS")) {
            char* end = nullptr;
            long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) {
                v = static_cast<int>(parsed > 200 ? 200 : parsed);
            }
        }
        return v;
    }();
    return value;
}

/// Thrown when an input exceeds a documented desk-scale bound.
class BoundExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace boolframes
