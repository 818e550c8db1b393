#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kdist/shapes.hpp"

namespace kdist {

struct ParseError : std::runtime_error {
    std::size_t line;  // 1-based, 0 when not line-specific
    ParseError(std::size_t line_, const std::string& what_)
        : std::runtime_error(line_ ? "line " + std::to_string(line_) + ": " + what_
                                   : what_),
          line(line_) {}
};

/// Points file: one point per line, comma-separated coordinates.
/// An optional first line `# weighted` makes the last column a weight.
DiscreteMeasure parse_points(std::string_view text);
std::string serialize_points(const DiscreteMeasure& m);

/// Curve file: header `POLYLINE <d>`, then one vertex per line in
/// traversal order.
PolyCurve parse_curve(std::string_view text);
std::string serialize_curve(const PolyCurve& c);

/// OFF file: "OFF", counts `nv nf ne`, nv vertex lines, nf face lines
/// each `3 i j k`. Triangles only.
TriMesh parse_mesh(std::string_view text);
std::string serialize_mesh(const TriMesh& m);

/// Shortest decimal that round-trips the double (to_chars).
std::string format_double(double v);

}  // namespace kdist
