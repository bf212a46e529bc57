#pragma once

#include <iostream>
#include <string>

namespace lincue {

// Warnings go to stderr so artifact files stay byte-deterministic.
inline void log_warning(const std::string& msg) {
    std::cerr << "warning: " << msg << "\n";
}

}  // namespace lincue
