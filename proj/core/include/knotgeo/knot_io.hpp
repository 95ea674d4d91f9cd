#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotgeo/geometry.hpp"

namespace knotgeo {

class KnotParseError : public std::runtime_error {
public:
    KnotParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct KnotParseResult {
    PolyKnot knot;
    std::vector<std::string> warnings;
};

// Parses a closed polygon from text: one "x y z" triple per line, blank
// lines and '#' comments ignored.  A final vertex equal to the first is
// dropped with a warning.  Malformed numbers, trailing tokens, and fewer
// than 3 distinct vertices raise KnotParseError with the offending line.
KnotParseResult parse_knot_text(const std::string& text);

KnotParseResult load_knot_file(const std::string& path);

// Serializes vertices as parse_knot_text expects them.
std::string format_knot_text(const PolyKnot& k);

}  // namespace knotgeo
