#include "knotgeo/knot_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace knotgeo {

KnotParseResult parse_knot_text(const std::string& text) {
    std::vector<Point3> verts;
    std::vector<int> vline;  // source line of each vertex
    std::vector<std::string> warnings;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z))
            throw KnotParseError(lineno, "expected three coordinates");
        std::string extra;
        if (ls >> extra)
            throw KnotParseError(lineno, "unexpected trailing token '" + extra + "'");
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw KnotParseError(lineno, "non-finite coordinate");
        verts.push_back({x, y, z});
        vline.push_back(lineno);
    }

    if (verts.size() >= 2) {
        const Point3& a = verts.front();
        const Point3& b = verts.back();
        if (a.x == b.x && a.y == b.y && a.z == b.z) {
            warnings.push_back("line " + std::to_string(vline.back()) +
                               ": final vertex repeats the first; dropped "
                               "(closure is implicit)");
            verts.pop_back();
            vline.pop_back();
        }
    }
    if (verts.size() < 3)
        throw KnotParseError(lineno, "a closed polygon needs at least 3 vertices, got " +
                                         std::to_string(verts.size()));
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
        if (distance(verts[i], verts[i + 1]) == 0.0)
            throw KnotParseError(vline[i + 1], "vertex repeats the previous one");
    }
    if (distance(verts.back(), verts.front()) == 0.0)
        throw KnotParseError(vline.back(), "last vertex repeats the first");

    // Geometric invariants (fold-backs, ...) are PolyKnot's job; its
    // GeometryError propagates unchanged.
    return {PolyKnot(std::move(verts)), std::move(warnings)};
}

KnotParseResult load_knot_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw KnotParseError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_knot_text(ss.str());
}

std::string format_knot_text(const PolyKnot& k) {
    std::string out;
    char buf[128];
    for (const Point3& p : k.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
        out += buf;
    }
    return out;
}

}  // namespace knotgeo
