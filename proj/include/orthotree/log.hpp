#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace orthotree::log {

// Diagnostic logging is off unless the ORTHOTREE_LOG environment variable is
// set to a non-empty value other than "0".
inline bool enabled() {
    static const bool on = [] {
        const char* v = std::getenv("ORTHOTREE_LOG");
        return v != nullptr && v[0] != '\0' && std::string(v) != "0";
    }();
    return on;
}

inline void diag(const std::string& msg) {
    if (enabled()) {
        std::cerr << "[orthotree] " << msg << '\n';
    }
}

} // namespace orthotree::log
