#include "kdist/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace kdist {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    bool next(std::string_view& out) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        out = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        return true;
    }
};

double parse_number(std::string_view tok, std::size_t line) {
    tok = trim(tok);
    double v;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(line, "not a number: '" + std::string(tok) + "'");
    return v;
}

std::vector<double> parse_csv_row(std::string_view row, std::size_t line) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = row.find(',', start);
        std::string_view tok = comma == std::string_view::npos
                                   ? row.substr(start)
                                   : row.substr(start, comma - start);
        out.push_back(parse_number(tok, line));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

DiscreteMeasure parse_points(std::string_view text) {
    LineReader rd{text};
    std::string_view line;
    bool weighted = false;
    DiscreteMeasure m;
    std::size_t columns = 0;
    while (rd.next(line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (m.weights.empty() && trim(line.substr(1)) == "weighted")
                weighted = true;
            continue;
        }
        auto row = parse_csv_row(line, rd.line_no);
        if (columns == 0) {
            columns = row.size();
            if (weighted && columns < 2)
                throw ParseError(rd.line_no, "weighted row needs >= 2 columns");
            m.dim = static_cast<int>(columns) - (weighted ? 1 : 0);
        } else if (row.size() != columns) {
            throw ParseError(rd.line_no, "expected " + std::to_string(columns) +
                                             " columns, got " +
                                             std::to_string(row.size()));
        }
        double w = 1.0;
        if (weighted) {
            w = row.back();
            row.pop_back();
        }
        m.coords.insert(m.coords.end(), row.begin(), row.end());
        m.weights.push_back(w);
    }
    if (m.weights.empty()) throw ParseError(0, "no points in input");
    return m;
}

std::string serialize_points(const DiscreteMeasure& m) {
    bool weighted = false;
    for (double w : m.weights)
        if (w != 1.0) weighted = true;
    std::string out;
    if (weighted) out += "# weighted\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto p = m.point(i);
        for (int j = 0; j < m.dim; ++j) {
            if (j) out += ',';
            out += format_double(p[j]);
        }
        if (weighted) {
            out += ',';
            out += format_double(m.weights[i]);
        }
        out += '\n';
    }
    return out;
}

PolyCurve parse_curve(std::string_view text) {
    LineReader rd{text};
    std::string_view line;
    if (!rd.next(line)) throw ParseError(0, "empty curve file");
    if (!line.starts_with("POLYLINE"))
        throw ParseError(rd.line_no, "expected 'POLYLINE <d>' header");
    int d = static_cast<int>(parse_number(line.substr(8), rd.line_no));
    if (d < 2) throw ParseError(rd.line_no, "curve dimension must be >= 2");
    PolyCurve c;
    c.dim = d;
    while (rd.next(line)) {
        if (line.empty() || line.front() == '#') continue;
        auto row = parse_csv_row(line, rd.line_no);
        if (row.size() != static_cast<std::size_t>(d))
            throw ParseError(rd.line_no, "vertex has " + std::to_string(row.size()) +
                                             " coordinates, expected " +
                                             std::to_string(d));
        if (c.vertex_count() >= 1) {
            auto prev = c.vertex(c.vertex_count() - 1);
            bool same = true;
            for (int j = 0; j < d; ++j)
                if (prev[j] != row[j]) same = false;
            if (same)
                throw ParseError(rd.line_no, "zero-length segment (repeated vertex)");
        }
        c.vertices.insert(c.vertices.end(), row.begin(), row.end());
    }
    if (c.vertex_count() < 2)
        throw ParseError(0, "polyline needs at least 2 vertices");
    return c;
}

std::string serialize_curve(const PolyCurve& c) {
    std::string out = "POLYLINE " + std::to_string(c.dim) + "\n";
    for (std::size_t i = 0; i < c.vertex_count(); ++i) {
        auto v = c.vertex(i);
        for (int j = 0; j < c.dim; ++j) {
            if (j) out += ',';
            out += format_double(v[j]);
        }
        out += '\n';
    }
    return out;
}

namespace {

// whitespace-separated tokens across lines, OFF style
struct TokenReader {
    LineReader rd;
    std::vector<std::string_view> toks;
    std::size_t idx = 0;

    explicit TokenReader(std::string_view text) : rd{text} {}

    std::string_view next(const char* what) {
        while (idx >= toks.size()) {
            std::string_view line;
            if (!rd.next(line)) throw ParseError(rd.line_no, std::string("unexpected end of file, expected ") + what);
            if (line.empty() || line.front() == '#') continue;
            toks.clear();
            idx = 0;
            std::size_t start = 0;
            while (start < line.size()) {
                while (start < line.size() && (line[start] == ' ' || line[start] == '\t'))
                    ++start;
                if (start >= line.size()) break;
                std::size_t end = start;
                while (end < line.size() && line[end] != ' ' && line[end] != '\t')
                    ++end;
                toks.push_back(line.substr(start, end - start));
                start = end;
            }
        }
        return toks[idx++];
    }

    double number(const char* what) { return parse_number(next(what), rd.line_no); }

    std::size_t index(const char* what) {
        double v = number(what);
        if (v < 0 || v != std::floor(v))
            throw ParseError(rd.line_no, std::string("expected nonnegative integer for ") + what);
        return static_cast<std::size_t>(v);
    }
};

double triangle_area_sq(std::span<const double> a, std::span<const double> b,
                        std::span<const double> c) {
    double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    double nx = u[1] * v[2] - u[2] * v[1];
    double ny = u[2] * v[0] - u[0] * v[2];
    double nz = u[0] * v[1] - u[1] * v[0];
    return 0.25 * (nx * nx + ny * ny + nz * nz);
}

}  // namespace

TriMesh parse_mesh(std::string_view text) {
    TokenReader tr(text);
    if (tr.next("OFF header") != "OFF")
        throw ParseError(tr.rd.line_no, "expected OFF header");
    std::size_t nv = tr.index("vertex count");
    std::size_t nf = tr.index("face count");
    tr.index("edge count");  // present in the format, ignored
    TriMesh m;
    m.vertices.resize(nv * 3);
    for (std::size_t i = 0; i < nv * 3; ++i) m.vertices[i] = tr.number("vertex coordinate");
    m.triangles.reserve(nf * 3);
    for (std::size_t f = 0; f < nf; ++f) {
        std::size_t arity = tr.index("face arity");
        if (arity != 3)
            throw ParseError(tr.rd.line_no, "only triangles supported, face has " +
                                                std::to_string(arity) + " vertices");
        std::size_t ijk[3];
        for (auto& v : ijk) {
            v = tr.index("vertex index");
            if (v >= nv)
                throw ParseError(tr.rd.line_no, "vertex index " + std::to_string(v) +
                                                    " out of range (nv=" +
                                                    std::to_string(nv) + ")");
        }
        if (triangle_area_sq(m.vertex(ijk[0]), m.vertex(ijk[1]), m.vertex(ijk[2])) <= 0.0)
            throw ParseError(tr.rd.line_no, "degenerate triangle (zero area)");
        for (auto v : ijk) m.triangles.push_back(static_cast<unsigned>(v));
    }
    return m;
}

std::string serialize_mesh(const TriMesh& m) {
    std::string out = "OFF\n";
    out += std::to_string(m.vertex_count()) + " " + std::to_string(m.triangle_count()) + " 0\n";
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
        auto v = m.vertex(i);
        out += format_double(v[0]);
        out += ' ';
        out += format_double(v[1]);
        out += ' ';
        out += format_double(v[2]);
        out += '\n';
    }
    for (std::size_t f = 0; f < m.triangle_count(); ++f) {
        out += "3 " + std::to_string(m.triangles[3 * f]) + " " +
               std::to_string(m.triangles[3 * f + 1]) + " " +
               std::to_string(m.triangles[3 * f + 2]) + "\n";
    }
    return out;
}

}  // namespace kdist
