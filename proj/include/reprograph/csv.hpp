#pragma once

// Deterministic text formatting for CSV output.  Doubles use the shortest
// round-trip representation, so identical runs produce identical bytes.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>

namespace reprograph {

inline std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(std::uint32_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

/// Runs `body` with an output stream: the named file, or stdout when the
/// path is empty.
inline void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    body(os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace reprograph
