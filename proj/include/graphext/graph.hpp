#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace graphext {

// Finite directed multigraph.  Vertices and edges carry stable string ids and
// keep their insertion order; every index-based API below is in that order,
// which is what makes matrix layouts and printed vectors reproducible.
// Parallel edges and loops are expected, not an error.
class DirectedMultigraph {
public:
    struct Edge {
        std::string id;
        std::size_t src = 0;
        std::size_t dst = 0;
        bool operator==(const Edge&) const = default;
    };

    DirectedMultigraph() = default;

    void reserve(std::size_t vertices, std::size_t edges) {
        vertex_ids_.reserve(vertices);
        out_.reserve(vertices);
        in_.reserve(vertices);
        edges_.reserve(edges);
        vertex_lookup_.reserve(vertices * 2);
        edge_lookup_.reserve(edges * 2);
    }

    std::size_t add_vertex(std::string id) {
        auto [it, fresh] = vertex_lookup_.try_emplace(id, vertex_ids_.size());
        if (!fresh) throw Error("duplicate vertex id '" + id + "'");
        vertex_ids_.push_back(std::move(id));
        out_.emplace_back();
        in_.emplace_back();
        return vertex_ids_.size() - 1;
    }

    std::size_t add_edge(std::string id, const std::string& src, const std::string& dst) {
        return add_edge_indexed(std::move(id), vertex_index(src), vertex_index(dst));
    }

    // id chosen automatically: "e<k>", bumped past any taken name.
    std::size_t add_edge(const std::string& src, const std::string& dst) {
        return add_edge_indexed(fresh_edge_id(), vertex_index(src), vertex_index(dst));
    }

    std::size_t add_edge(std::size_t src, std::size_t dst) {
        return add_edge_indexed(fresh_edge_id(), src, dst);
    }

    std::size_t add_edge_indexed(std::string id, std::size_t src, std::size_t dst) {
        if (src >= vertex_ids_.size() || dst >= vertex_ids_.size())
            throw Error("edge '" + id + "' references a vertex index out of range");
        auto [it, fresh] = edge_lookup_.try_emplace(id, edges_.size());
        if (!fresh) throw Error("duplicate edge id '" + id + "'");
        out_[src].push_back(edges_.size());
        in_[dst].push_back(edges_.size());
        edges_.push_back(Edge{std::move(id), src, dst});
        return edges_.size() - 1;
    }

    std::string fresh_edge_id() const {
        std::string id = "e" + std::to_string(edges_.size());
        for (std::size_t k = edges_.size(); edge_lookup_.count(id); ++k)
            id = "e" + std::to_string(k + 1);
        return id;
    }

    std::size_t vertex_count() const { return vertex_ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::string& vertex_id(std::size_t v) const { return vertex_ids_[v]; }

    bool has_vertex(const std::string& id) const { return vertex_lookup_.count(id) != 0; }
    bool has_edge(const std::string& id) const { return edge_lookup_.count(id) != 0; }

    std::size_t vertex_index(const std::string& id) const {
        auto it = vertex_lookup_.find(id);
        if (it == vertex_lookup_.end()) throw DomainError("unknown vertex id '" + id + "'");
        return it->second;
    }
    std::size_t edge_index(const std::string& id) const {
        auto it = edge_lookup_.find(id);
        if (it == edge_lookup_.end()) throw DomainError("unknown edge id '" + id + "'");
        return it->second;
    }

    // Edge indices by endpoint, in insertion order.
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
    const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
    std::size_t out_degree(std::size_t v) const { return out_[v].size(); }
    std::size_t in_degree(std::size_t v) const { return in_[v].size(); }

    // Structural equality: same vertex sequence, same edge sequence.
    bool operator==(const DirectedMultigraph& o) const {
        return vertex_ids_ == o.vertex_ids_ && edges_ == o.edges_;
    }

private:
    std::vector<std::string> vertex_ids_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> vertex_lookup_;
    std::unordered_map<std::string, std::size_t> edge_lookup_;
    std::vector<std::vector<std::size_t>> out_, in_;
};

// A_G: (v,w) counts the edges v -> w.  Rows/columns in vertex order.
inline IntMatrix vertex_matrix(const DirectedMultigraph& g) {
    IntMatrix a(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) a(e.src, e.dst) += 1;
    return a;
}

// B_G: (e,f) = 1 iff f starts where e ends.  Rows/columns in edge order.
inline IntMatrix edge_matrix(const DirectedMultigraph& g) {
    IntMatrix b(g.edge_count(), g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        for (std::size_t f : g.out_edges(g.edge(e).dst)) b(e, f) = 1;
    return b;
}

// S_G over G^0 x G^1: (v,e) = 1 iff e starts at v.
inline IntMatrix source_matrix(const DirectedMultigraph& g) {
    IntMatrix s(g.vertex_count(), g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) s(g.edge(e).src, e) = 1;
    return s;
}

// R_G over G^1 x G^0: (e,v) = 1 iff e ends at v.
// R_G * S_G = B_G and S_G * R_G = A_G; tests lean on both identities.
inline IntMatrix range_matrix(const DirectedMultigraph& g) {
    IntMatrix r(g.edge_count(), g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) r(e, g.edge(e).dst) = 1;
    return r;
}

inline std::vector<std::size_t> sinks(const DirectedMultigraph& g) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (g.out_degree(v) == 0) out.push_back(v);
    return out;
}

inline std::vector<std::size_t> sources(const DirectedMultigraph& g) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (g.in_degree(v) == 0) out.push_back(v);
    return out;
}

// Vertices that can reach `target` along directed paths, target included.
inline std::vector<char> can_reach(const DirectedMultigraph& g, std::size_t target) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<std::size_t> stack{target};
    seen[target] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t e : g.in_edges(v)) {
            std::size_t u = g.edge(e).src;
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    return seen;
}

inline std::vector<char> reachable_from(const DirectedMultigraph& g, std::size_t start) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t e : g.out_edges(v)) {
            std::size_t w = g.edge(e).dst;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

// Reflexive reachability: every vertex reaches itself by the empty path.
inline bool reaches(const DirectedMultigraph& g, std::size_t from, std::size_t to) {
    if (from == to) return true;
    return reachable_from(g, from)[to] != 0;
}

inline bool reaches(const DirectedMultigraph& g, const std::string& from, const std::string& to) {
    return reaches(g, g.vertex_index(from), g.vertex_index(to));
}

// Path of length >= 1 required; reaches_strict(v, v) asks for a cycle
// through v.
inline bool reaches_strict(const DirectedMultigraph& g, std::size_t from, std::size_t to) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t e : g.out_edges(from)) {
        std::size_t w = g.edge(e).dst;
        if (w == to) return true;
        if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t e : g.out_edges(v)) {
            std::size_t w = g.edge(e).dst;
            if (w == to) return true;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

inline bool reaches_strict(const DirectedMultigraph& g, const std::string& from,
                           const std::string& to) {
    return reaches_strict(g, g.vertex_index(from), g.vertex_index(to));
}

// Strongly connected components, Tarjan, iterative.  Members of each
// component are sorted ascending and components are ordered by smallest
// member, so the output is canonical.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(
    const DirectedMultigraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::size_t undef = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, undef), low(n, 0), scc_stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::vector<std::size_t>> comps;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next_edge;  // position in out_edges(v)
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != undef) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        scc_stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& fr = call.back();
            const auto& outs = g.out_edges(fr.v);
            if (fr.next_edge < outs.size()) {
                std::size_t w = g.edge(outs[fr.next_edge++]).dst;
                if (index[w] == undef) {
                    index[w] = low[w] = counter++;
                    scc_stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    if (index[w] < low[fr.v]) low[fr.v] = index[w];
                }
            } else {
                std::size_t v = fr.v;
                call.pop_back();
                if (!call.empty() && low[v] < low[call.back().v]) low[call.back().v] = low[v];
                if (low[v] == index[v]) {
                    std::vector<std::size_t> comp;
                    for (;;) {
                        std::size_t w = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

// Every ordered pair of vertices joined by a path; vacuous on <= 1 vertex.
inline bool is_transitive(const DirectedMultigraph& g) {
    if (g.vertex_count() <= 1) return true;
    return strongly_connected_components(g).size() == 1;
}

// Condition (L) asks that every cycle have an exit, i.e. some vertex on it
// carries an edge besides the cycle edge.  A cycle with no exit forces
// out-degree exactly 1 on each of its vertices, and conversely a cycle of
// out-degree-1 vertices has no exit, so the condition fails precisely when
// the "follow the only edge" map has a cycle.  That makes the check a
// functional-graph cycle detection: O(V + E), two flat arrays, which matters
// because the exhaustive test sweeps run it tens of millions of times.
// Returns a vertex on an exitless cycle, or nullopt when Condition (L) holds.
inline std::optional<std::size_t> find_exitless_cycle_vertex(const DirectedMultigraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> next(n, none);
    for (std::size_t v = 0; v < n; ++v)
        if (g.out_degree(v) == 1) next[v] = g.edge(g.out_edges(v)[0]).dst;
    // 0 = unvisited, 1 = on the current chain, 2 = finished
    std::vector<unsigned char> state(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (state[v] != 0) continue;
        std::size_t u = v;
        while (u != none && state[u] == 0) {
            state[u] = 1;
            u = next[u];
        }
        if (u != none && state[u] == 1) return u;  // cycle of out-degree-1 vertices
        u = v;
        while (u != none && state[u] == 1) {
            state[u] = 2;
            u = next[u];
        }
    }
    return std::nullopt;
}

inline bool satisfies_condition_l(const DirectedMultigraph& g) {
    return !find_exitless_cycle_vertex(g).has_value();
}

// Shared hypothesis guards for the Ext-side constructions.
inline void require_no_sinks(const DirectedMultigraph& g, const std::string& op) {
    auto s = sinks(g);
    if (s.empty()) return;
    std::string names;
    for (std::size_t i = 0; i < s.size() && i < 3; ++i)
        names += (i ? ", '" : "'") + g.vertex_id(s[i]) + "'";
    if (s.size() > 3) names += ", ...";
    throw HypothesisViolated(op + ": graph has sinks: " + names);
}

inline void require_condition_l(const DirectedMultigraph& g, const std::string& op) {
    if (auto v = find_exitless_cycle_vertex(g))
        throw HypothesisViolated(op + ": Condition (L) fails: the cycle through '" +
                                 g.vertex_id(*v) + "' has no exit");
}

// A path is a nonempty edge sequence where each edge starts where the
// previous one ended.
struct Path {
    std::vector<std::size_t> edges;

    std::size_t length() const { return edges.size(); }
};

inline Path make_path(const DirectedMultigraph& g, const std::vector<std::string>& edge_ids) {
    if (edge_ids.empty()) throw DomainError("a path needs at least one edge");
    Path p;
    p.edges.reserve(edge_ids.size());
    for (const auto& id : edge_ids) p.edges.push_back(g.edge_index(id));
    for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
        const auto& a = g.edge(p.edges[i]);
        const auto& b = g.edge(p.edges[i + 1]);
        if (a.dst != b.src)
            throw DomainError("edges '" + a.id + "' and '" + b.id + "' do not compose");
    }
    return p;
}

inline std::size_t path_source(const DirectedMultigraph& g, const Path& p) {
    return g.edge(p.edges.front()).src;
}

inline std::size_t path_range(const DirectedMultigraph& g, const Path& p) {
    return g.edge(p.edges.back()).dst;
}

inline bool is_cycle(const DirectedMultigraph& g, const Path& p) {
    return path_source(g, p) == path_range(g, p);
}

}  // namespace graphext
