#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "sink_extension.hpp"

namespace graphext {

using json = nlohmann::ordered_json;

inline std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace detail {

// Strict decimal integer; cpp_int's own parser is looser than we want.
inline Int parse_int_plain(const std::string& tok) {
    std::size_t start = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (tok.size() == start)
        throw ParseError("expected an integer, got '" + tok + "'");
    for (std::size_t i = start; i < tok.size(); ++i)
        if (tok[i] < '0' || tok[i] > '9')
            throw ParseError("expected an integer, got '" + tok + "'");
    return Int(tok);
}

inline Int parse_int_token(const std::string& tok, std::size_t line) {
    try {
        return parse_int_plain(tok);
    } catch (const ParseError& ex) {
        throw ParseError(line, ex.what());
    }
}

// Lines of whitespace-separated tokens; '#' starts a comment.
struct TokenLine {
    std::size_t number;
    std::vector<std::string> tokens;
};

inline std::vector<TokenLine> tokenize(const std::string& text) {
    std::vector<TokenLine> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        TokenLine tl{number, {}};
        std::string tok;
        while (ls >> tok) tl.tokens.push_back(tok);
        if (!tl.tokens.empty()) lines.push_back(std::move(tl));
    }
    return lines;
}

inline bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{';
    }
    return false;
}

inline DirectedMultigraph graph_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid JSON: ") + ex.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
        throw ParseError("JSON graph needs an object with 'vertices' and 'edges'");
    DirectedMultigraph g;
    try {
        for (const auto& v : doc["vertices"]) {
            if (!v.is_string()) throw Error("vertex entries must be strings");
            g.add_vertex(v.get<std::string>());
        }
        for (const auto& e : doc["edges"]) {
            if (!e.is_object() || !e.contains("src") || !e.contains("dst"))
                throw Error("edge entries must be objects with 'src' and 'dst'");
            const std::string src = e["src"].get<std::string>();
            const std::string dst = e["dst"].get<std::string>();
            if (e.contains("id"))
                g.add_edge(e["id"].get<std::string>(), src, dst);
            else
                g.add_edge(src, dst);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(std::string("JSON graph: ") + ex.what());
    }
    return g;
}

}  // namespace detail

// Text format: `vertex <id>` and `edge <id> <src> <dst>` lines, '#' comments.
// A JSON object ({"vertices": [...], "edges": [{"id","src","dst"}, ...]}) is
// accepted interchangeably.
inline DirectedMultigraph parse_graph(const std::string& text) {
    if (detail::looks_like_json(text)) return detail::graph_from_json(text);
    DirectedMultigraph g;
    for (const auto& line : detail::tokenize(text)) {
        const auto& t = line.tokens;
        try {
            if (t[0] == "vertex") {
                if (t.size() != 2)
                    throw ParseError(line.number, "vertex line needs exactly one id");
                g.add_vertex(t[1]);
            } else if (t[0] == "edge") {
                if (t.size() != 4)
                    throw ParseError(line.number, "edge line is 'edge <id> <src> <dst>'");
                g.add_edge(t[1], t[2], t[3]);
            } else {
                throw ParseError(line.number, "unknown directive '" + t[0] + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& ex) {
            throw ParseError(line.number, ex.what());
        }
    }
    return g;
}

inline void write_graph_text(std::ostream& os, const DirectedMultigraph& g) {
    for (const auto& v : g.vertex_ids()) os << "vertex " << v << "\n";
    for (const auto& e : g.edges())
        os << "edge " << e.id << " " << g.vertex_id(e.src) << " " << g.vertex_id(e.dst)
           << "\n";
}

inline json graph_to_json(const DirectedMultigraph& g) {
    json doc;
    doc["vertices"] = json::array();
    for (const auto& v : g.vertex_ids()) doc["vertices"].push_back(v);
    doc["edges"] = json::array();
    for (const auto& e : g.edges())
        doc["edges"].push_back(
            {{"id", e.id}, {"src", g.vertex_id(e.src)}, {"dst", g.vertex_id(e.dst)}});
    return doc;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

inline void write_graph_dot(std::ostream& os, const DirectedMultigraph& g) {
    os << "digraph G {\n  rankdir=LR;\n";
    for (const auto& v : g.vertex_ids()) os << "  " << detail::dot_quote(v) << ";\n";
    for (const auto& e : g.edges())
        os << "  " << detail::dot_quote(g.vertex_id(e.src)) << " -> "
           << detail::dot_quote(g.vertex_id(e.dst)) << " [label=" << detail::dot_quote(e.id)
           << "];\n";
    os << "}\n";
}

// Extension format: the base graph block in the text format above, then
// `sink <id>`, `addvertex <id>` and `addedge <id> <src> <dst>` lines.
inline OneSinkExtension parse_extension(const std::string& text) {
    DirectedMultigraph base;
    std::vector<std::string> added;
    std::vector<OneSinkExtension::AddedEdge> added_edges;
    std::string sink;
    bool have_sink = false;

    for (const auto& line : detail::tokenize(text)) {
        const auto& t = line.tokens;
        try {
            if (t[0] == "vertex") {
                if (t.size() != 2)
                    throw ParseError(line.number, "vertex line needs exactly one id");
                base.add_vertex(t[1]);
            } else if (t[0] == "edge") {
                if (t.size() != 4)
                    throw ParseError(line.number, "edge line is 'edge <id> <src> <dst>'");
                base.add_edge(t[1], t[2], t[3]);
            } else if (t[0] == "sink") {
                if (t.size() != 2)
                    throw ParseError(line.number, "sink line needs exactly one id");
                if (have_sink)
                    throw ParseError(line.number, "a second sink line; only one is allowed");
                sink = t[1];
                have_sink = true;
            } else if (t[0] == "addvertex") {
                if (t.size() != 2)
                    throw ParseError(line.number, "addvertex line needs exactly one id");
                added.push_back(t[1]);
            } else if (t[0] == "addedge") {
                if (t.size() != 4)
                    throw ParseError(line.number, "addedge line is 'addedge <id> <src> <dst>'");
                added_edges.push_back({t[1], t[2], t[3]});
            } else {
                throw ParseError(line.number, "unknown directive '" + t[0] + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& ex) {
            throw ParseError(line.number, ex.what());
        }
    }
    if (!have_sink) throw ParseError("extension file has no 'sink' line");
    try {
        return OneSinkExtension(std::move(base), std::move(added), std::move(added_edges),
                                std::move(sink));
    } catch (const Error& ex) {
        throw ParseError(ex.what());
    }
}

inline void write_extension_text(std::ostream& os, const OneSinkExtension& ext) {
    os << "# base graph\n";
    write_graph_text(os, ext.base());
    os << "# one-sink extension\n";
    os << "sink " << ext.sink_id() << "\n";
    for (const auto& v : ext.added_vertices()) os << "addvertex " << v << "\n";
    for (const auto& e : ext.added_edges())
        os << "addedge " << e.id << " " << e.src << " " << e.dst << "\n";
}

// Base part drawn plainly, added vertices shaded, the sink double-circled,
// added edges dashed.
inline void write_extension_dot(std::ostream& os, const OneSinkExtension& ext) {
    const DirectedMultigraph& f = ext.full();
    os << "digraph E {\n  rankdir=LR;\n";
    for (std::size_t v = 0; v < f.vertex_count(); ++v) {
        os << "  " << detail::dot_quote(f.vertex_id(v));
        if (v == ext.sink_index())
            os << " [shape=doublecircle, style=filled, fillcolor=lightgrey]";
        else if (ext.is_added_vertex(v))
            os << " [style=filled, fillcolor=lightgrey]";
        os << ";\n";
    }
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
        const auto& ed = f.edge(e);
        os << "  " << detail::dot_quote(f.vertex_id(ed.src)) << " -> "
           << detail::dot_quote(f.vertex_id(ed.dst)) << " [label=" << detail::dot_quote(ed.id);
        if (ext.is_added_edge(e)) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
}

// Matrix exchange format: first line `rows cols`, then one line per row.
inline IntMatrix parse_matrix(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError("matrix file is empty");
    const auto& header = lines[0];
    if (header.tokens.size() != 2)
        throw ParseError(header.number, "matrix header is '<rows> <cols>'");
    Int rows_i = detail::parse_int_token(header.tokens[0], header.number);
    Int cols_i = detail::parse_int_token(header.tokens[1], header.number);
    if (rows_i < 0 || cols_i < 0 || rows_i > 100000 || cols_i > 100000)
        throw ParseError(header.number, "matrix dimensions out of range");
    const std::size_t rows = rows_i.convert_to<std::size_t>();
    const std::size_t cols = cols_i.convert_to<std::size_t>();
    // Rows of a zero-column matrix print as blank lines, which the tokenizer
    // drops; accept the header alone in that case.
    if (cols == 0) {
        if (lines.size() != 1)
            throw ParseError(lines[1].number, "matrix with 0 columns has data after the header");
        return IntMatrix(rows, 0);
    }
    if (lines.size() != rows + 1)
        throw ParseError("matrix has " + std::to_string(lines.size() - 1) +
                         " data lines, header promised " + std::to_string(rows));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& line = lines[i + 1];
        if (line.tokens.size() != cols)
            throw ParseError(line.number, "row has " + std::to_string(line.tokens.size()) +
                                              " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = detail::parse_int_token(line.tokens[j], line.number);
    }
    return m;
}

inline void write_matrix(std::ostream& os, const IntMatrix& m) {
    os << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << m(i, j);
        }
        os << "\n";
    }
}

// Comma-separated integers; an empty (or all-whitespace) string is the empty
// vector, for graphs with no vertices.
inline IntVector parse_int_vector(const std::string& text) {
    IntVector v;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return v;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        // trim
        std::size_t b = tok.find_first_not_of(" \t\r\n");
        std::size_t e = tok.find_last_not_of(" \t\r\n");
        if (b == std::string::npos)
            throw ParseError("empty entry in vector '" + text + "'");
        v.push_back(detail::parse_int_plain(tok.substr(b, e - b + 1)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return v;
}

// JSON numbers are exact only up to 64 bits; larger values are emitted as
// decimal strings so nothing is silently rounded.
inline json int_to_json(const Int& x) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (x >= lo && x <= hi) return x.convert_to<std::int64_t>();
    return x.str();
}

inline json vector_to_json(const IntVector& v) {
    json arr = json::array();
    for (const Int& x : v) arr.push_back(int_to_json(x));
    return arr;
}

inline json extension_to_json(const OneSinkExtension& ext) {
    json doc;
    doc["base"] = graph_to_json(ext.base());
    doc["sink"] = ext.sink_id();
    doc["added_vertices"] = json::array();
    for (const auto& v : ext.added_vertices()) doc["added_vertices"].push_back(v);
    doc["added_edges"] = json::array();
    for (const auto& e : ext.added_edges())
        doc["added_edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
    return doc;
}

inline json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace graphext
