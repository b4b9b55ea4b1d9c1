#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "matrix.hpp"
#include "smith.hpp"

namespace graphext {

// A 1-sink extension E of a base graph G: finitely many added vertices (one
// of which, the sink, has no outgoing edges) and added edges that are meant
// to point into the added part.  Construction only enforces structural
// integrity (distinct ids, known endpoints, sink among the added vertices);
// the four semantic conditions of the definition live in validate(), so that
// near-miss extensions can be built, inspected and reported on.
class OneSinkExtension {
public:
    struct AddedEdge {
        std::string id, src, dst;
        bool operator==(const AddedEdge&) const = default;
    };

    OneSinkExtension(DirectedMultigraph base, std::vector<std::string> added_vertices,
                     std::vector<AddedEdge> added_edges, std::string sink)
        : base_(std::move(base)),
          added_vertices_(std::move(added_vertices)),
          added_edges_(std::move(added_edges)),
          sink_(std::move(sink)) {
        full_ = base_;
        full_.reserve(base_.vertex_count() + added_vertices_.size(),
                      base_.edge_count() + added_edges_.size());
        for (const auto& v : added_vertices_) full_.add_vertex(v);
        for (const auto& e : added_edges_)
            full_.add_edge_indexed(e.id, full_.vertex_index(e.src), full_.vertex_index(e.dst));
        bool sink_is_added = false;
        for (const auto& v : added_vertices_)
            if (v == sink_) sink_is_added = true;
        if (!sink_is_added)
            throw Error("sink '" + sink_ + "' is not one of the added vertices");
        sink_index_ = full_.vertex_index(sink_);
    }

    const DirectedMultigraph& base() const { return base_; }
    const DirectedMultigraph& full() const { return full_; }
    const std::vector<std::string>& added_vertices() const { return added_vertices_; }
    const std::vector<AddedEdge>& added_edges() const { return added_edges_; }
    const std::string& sink_id() const { return sink_; }
    std::size_t sink_index() const { return sink_index_; }  // index in full()

    std::size_t base_vertex_count() const { return base_.vertex_count(); }
    std::size_t base_edge_count() const { return base_.edge_count(); }
    bool is_added_vertex(std::size_t full_index) const {
        return full_index >= base_.vertex_count();
    }
    bool is_added_edge(std::size_t full_edge_index) const {
        return full_edge_index >= base_.edge_count();
    }

    bool operator==(const OneSinkExtension& o) const {
        return base_ == o.base_ && added_vertices_ == o.added_vertices_ &&
               added_edges_ == o.added_edges_ && sink_ == o.sink_;
    }

private:
    DirectedMultigraph base_;
    std::vector<std::string> added_vertices_;
    std::vector<AddedEdge> added_edges_;
    std::string sink_;
    DirectedMultigraph full_;
    std::size_t sink_index_ = 0;
};

// Which of the definition's four conditions fail, and why.
struct ValidationReport {
    std::vector<int> violated;          // condition numbers, ascending, unique
    std::vector<std::string> details;   // one line per finding

    bool valid() const { return violated.empty(); }
};

inline ValidationReport validate(const OneSinkExtension& ext) {
    const DirectedMultigraph& f = ext.full();
    const std::size_t nb = ext.base_vertex_count();
    ValidationReport report;
    auto flag = [&](int cond, std::string why) {
        if (report.violated.empty() || report.violated.back() != cond)
            report.violated.push_back(cond);
        report.details.push_back("condition " + std::to_string(cond) + ": " + std::move(why));
    };

    // (1) the added part has no sources and exactly one sink, the declared one
    for (std::size_t v = nb; v < f.vertex_count(); ++v) {
        if (f.in_degree(v) == 0)
            flag(1, "added vertex '" + f.vertex_id(v) + "' is a source");
    }
    for (std::size_t v = nb; v < f.vertex_count(); ++v) {
        const bool is_sink = f.out_degree(v) == 0;
        if (v == ext.sink_index() && !is_sink)
            flag(1, "declared sink '" + f.vertex_id(v) + "' has outgoing edges");
        if (v != ext.sink_index() && is_sink)
            flag(1, "added vertex '" + f.vertex_id(v) + "' is a second sink");
    }

    // (2) no cycle whose vertices all lie in the added part
    {
        constexpr unsigned char kUnvisited = 0, kActive = 1, kDone = 2;
        std::vector<unsigned char> state(f.vertex_count(), kUnvisited);
        std::vector<std::pair<std::size_t, std::size_t>> stack;  // vertex, next out position
        bool cycle = false;
        std::size_t witness = 0;
        for (std::size_t root = nb; root < f.vertex_count() && !cycle; ++root) {
            if (state[root] != kUnvisited) continue;
            state[root] = kActive;
            stack.emplace_back(root, 0);
            while (!stack.empty() && !cycle) {
                auto& [v, pos] = stack.back();
                const auto& outs = f.out_edges(v);
                bool descended = false;
                while (pos < outs.size()) {
                    std::size_t w = f.edge(outs[pos++]).dst;
                    if (w < nb) continue;  // leaves the added part
                    if (state[w] == kActive) {
                        cycle = true;
                        witness = w;
                        break;
                    }
                    if (state[w] == kUnvisited) {
                        state[w] = kActive;
                        stack.emplace_back(w, 0);
                        descended = true;
                        break;
                    }
                }
                if (cycle || descended) continue;
                if (stack.back().second >= f.out_edges(stack.back().first).size()) {
                    state[stack.back().first] = kDone;
                    stack.pop_back();
                }
            }
        }
        if (cycle)
            flag(2, "the added part contains a cycle through '" + f.vertex_id(witness) + "'");
    }

    // (3) added edges must end in the added part
    for (const auto& e : ext.added_edges()) {
        if (f.vertex_index(e.dst) < nb)
            flag(3, "added edge '" + e.id + "' ends at base vertex '" + e.dst + "'");
    }

    // (4) sinks of the base stay sinks
    for (std::size_t v : sinks(ext.base())) {
        if (f.out_degree(v) != 0)
            flag(4, "base sink '" + f.vertex_id(v) + "' gained outgoing edges");
    }

    return report;
}

// Every base vertex must reach the sink.  Pure reachability: callable on
// invalid extensions too (the x = 0 simple extension is the canonical
// non-essential example).
inline bool is_essential(const OneSinkExtension& ext) {
    std::vector<char> ok = can_reach(ext.full(), ext.sink_index());
    for (std::size_t v = 0; v < ext.base_vertex_count(); ++v)
        if (!ok[v]) return false;
    return true;
}

// Wojciech vector: entry at base vertex w counts the paths from w to the sink
// that use added edges only.  The added part of a valid extension is acyclic,
// so this is a reverse-topological DP over the added edges; counts are exact
// Ints (they grow like products of multiplicities).
inline IntVector wojciech_vector(const OneSinkExtension& ext) {
    const DirectedMultigraph& f = ext.full();
    const std::size_t n = f.vertex_count();
    const std::size_t first_added_edge = ext.base_edge_count();

    // Kahn order on the subgraph of added edges; a cycle there would make the
    // path count undefined.
    std::vector<std::size_t> pending(n, 0);  // added out-edges not yet resolved
    std::size_t involved = 0;
    for (std::size_t e = first_added_edge; e < f.edge_count(); ++e) ++pending[f.edge(e).src];
    for (std::size_t v = 0; v < n; ++v)
        if (pending[v]) ++involved;

    IntVector count(n);
    count[ext.sink_index()] = 1;
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (pending[v] == 0) ready.push_back(v);
    std::size_t resolved_with_edges = 0;
    while (!ready.empty()) {
        std::size_t w = ready.back();
        ready.pop_back();
        // w's count is final; retire the added edges pointing at w
        for (std::size_t e : f.in_edges(w)) {
            if (e < first_added_edge) continue;
            std::size_t u = f.edge(e).src;
            count[u] += count[w];
            if (--pending[u] == 0) {
                ready.push_back(u);
                ++resolved_with_edges;
            }
        }
    }
    if (resolved_with_edges != involved)
        throw Error("wojciech_vector: the added part contains a cycle, path counts undefined");

    IntVector omega(ext.base_vertex_count());
    for (std::size_t v = 0; v < ext.base_vertex_count(); ++v) omega[v] = count[v];
    return omega;
}

namespace detail {

inline std::string fresh_vertex_id(const DirectedMultigraph& g, const std::string& want) {
    if (!g.has_vertex(want)) return want;
    for (std::size_t k = 1;; ++k) {
        std::string id = want + "_" + std::to_string(k);
        if (!g.has_vertex(id)) return id;
    }
}

}  // namespace detail

// One added vertex v0 and x(w) parallel edges w -> v0.  By construction its
// Wojciech vector is x itself.
inline OneSinkExtension simple_extension(const DirectedMultigraph& g, const IntVector& x) {
    if (x.size() != g.vertex_count())
        throw MismatchError("simple_extension: vector length " + std::to_string(x.size()) +
                            " vs " + std::to_string(g.vertex_count()) + " vertices");
    Int total = 0;
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (x[v] < 0)
            throw DomainError("simple_extension: negative multiplicity " + x[v].str() +
                              " at vertex '" + g.vertex_id(v) + "'");
        total += x[v];
    }
    if (total > 10'000'000)
        throw DomainError("simple_extension: refusing to materialize " + total.str() +
                          " edges");

    const std::string sink = detail::fresh_vertex_id(g, "v0");
    std::vector<OneSinkExtension::AddedEdge> edges;
    edges.reserve(total.convert_to<std::size_t>());
    std::size_t counter = 0;
    auto fresh_edge = [&]() {
        for (;; ++counter) {
            std::string id = "a" + std::to_string(counter);
            if (!g.has_edge(id)) {
                ++counter;
                return id;
            }
        }
    };
    for (std::size_t v = 0; v < x.size(); ++v) {
        const std::size_t k = x[v].convert_to<std::size_t>();
        for (std::size_t i = 0; i < k; ++i)
            edges.push_back({fresh_edge(), g.vertex_id(v), sink});
    }
    return OneSinkExtension(g, {sink}, std::move(edges), sink);
}

// The new vertex hangs off v by a single edge.
inline OneSinkExtension add_sink_at(const DirectedMultigraph& g, std::size_t v) {
    if (v >= g.vertex_count())
        throw DomainError("add_sink_at: vertex index " + std::to_string(v) + " out of range");
    IntVector delta(g.vertex_count());
    delta[v] = 1;
    return simple_extension(g, delta);
}

inline OneSinkExtension add_sink_at(const DirectedMultigraph& g, const std::string& v) {
    return add_sink_at(g, g.vertex_index(v));
}

// The all-ones vector together with its image under A_G - I.  For a finite
// graph with no sinks, (A-I)*1 has entry out-degree(v) - 1 >= 0, and under
// Condition (L) every vertex reaches one where the entry is >= 1 (follow any
// path into a cycle; the cycle has an exit, and the exit vertex has
// out-degree >= 2).  Both properties are verified before returning; a failure
// after the hypothesis checks would mean this reasoning is wrong, so it
// throws InternalError rather than patching the vector.
struct EssentializingVector {
    IntVector n;
    IntVector image;  // (A_G - I) * n, entrywise >= 0
};

inline EssentializingVector essentializing_vector(const DirectedMultigraph& g) {
    require_no_sinks(g, "essentializing_vector");
    require_condition_l(g, "essentializing_vector");

    EssentializingVector out;
    out.n.assign(g.vertex_count(), Int(1));
    IntMatrix a = vertex_matrix(g);
    out.image = vector_difference(a * out.n, out.n);

    if (!all_nonnegative(out.image))
        throw InternalError("essentializing_vector: (A-I)n has a negative entry");
    // every vertex must reach a positive coordinate of the image
    std::vector<char> good(g.vertex_count(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (out.image[v] >= 1) {
            good[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t e : g.in_edges(v)) {
            std::size_t u = g.edge(e).src;
            if (!good[u]) {
                good[u] = 1;
                stack.push_back(u);
            }
        }
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!good[v])
            throw InternalError("essentializing_vector: '" + g.vertex_id(v) +
                                "' reaches no positive coordinate of (A-I)n");
    return out;
}

namespace detail {

// Certificate both constructions must satisfy: (A-I)n >= 0 entrywise
// and the entry at v at least 1.  n is {0,1,2}-valued here, so plain 64-bit
// accumulation is exact.
inline void verify_positive_vector_certificate(const DirectedMultigraph& g,
                                               const std::vector<std::int64_t>& n,
                                               std::size_t v) {
    for (std::size_t w = 0; w < g.vertex_count(); ++w) {
        std::int64_t acc = -n[w];
        for (std::size_t e : g.out_edges(w)) acc += n[g.edge(e).dst];
        if (acc < 0)
            throw InternalError("positive_vector_at: certificate fails, ((A-I)n)('" +
                                g.vertex_id(w) + "') = " + std::to_string(acc));
        if (w == v && acc < 1)
            throw InternalError("positive_vector_at: certificate fails, ((A-I)n)(v) = " +
                                std::to_string(acc) + " at the requested vertex");
    }
}

}  // namespace detail

// A nonnegative n with (A_G - I)n >= 0 and ((A_G - I)n)(v) >= 1.  With at
// least two loops at v, delta_v works.  Otherwise: walk from v (first step
// must leave v), always taking the lexicographically smallest edge id, until
// a vertex repeats; that closes a cycle, Condition (L) hands us an exit edge
// f (smallest id if several), and weighting the walk vertices strictly
// between v and f's position with 2 makes the certificate hold.  The
// certificate is re-verified on every call.
inline IntVector positive_vector_at(const DirectedMultigraph& g, std::size_t v) {
    require_no_sinks(g, "positive_vector_at");
    require_condition_l(g, "positive_vector_at");
    if (v >= g.vertex_count())
        throw DomainError("positive_vector_at: vertex index " + std::to_string(v) +
                          " out of range");

    const std::size_t n = g.vertex_count();
    std::vector<std::int64_t> weights(n, 0);

    std::size_t loops = 0;
    for (std::size_t e : g.out_edges(v))
        if (g.edge(e).dst == v) ++loops;

    if (loops >= 2) {
        weights[v] = 1;
    } else {
        auto smallest = [&](std::size_t w, bool skip_loop_at_v) -> std::size_t {
            std::size_t best = static_cast<std::size_t>(-1);
            for (std::size_t e : g.out_edges(w)) {
                if (skip_loop_at_v && g.edge(e).dst == v) continue;
                if (best == static_cast<std::size_t>(-1) || g.edge(e).id < g.edge(best).id)
                    best = e;
            }
            return best;
        };

        // chain[i] runs from walk vertex i to walk vertex i+1; vertex 0 is v.
        std::vector<std::size_t> chain;
        constexpr std::size_t none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> position(n, none);
        position[v] = 0;
        std::size_t first = smallest(v, /*skip_loop_at_v=*/true);
        if (first == none)
            throw InternalError("positive_vector_at: no edge leaves '" + g.vertex_id(v) +
                                "' despite the hypothesis checks");
        chain.push_back(first);
        std::size_t cur = g.edge(first).dst;
        while (position[cur] == none) {
            position[cur] = chain.size();
            std::size_t e = smallest(cur, false);
            chain.push_back(e);
            cur = g.edge(e).dst;
        }
        const std::size_t k = position[cur];  // cycle: chain[k .. chain.size()-1]

        // exit edge: same source as a cycle edge, but a different edge
        std::size_t exit_edge = none, exit_pos = none;
        for (std::size_t l = k; l < chain.size(); ++l) {
            std::size_t w = g.edge(chain[l]).src;
            for (std::size_t e : g.out_edges(w)) {
                if (e == chain[l]) continue;
                if (exit_edge == none || g.edge(e).id < g.edge(exit_edge).id) {
                    exit_edge = e;
                    exit_pos = l;
                }
            }
        }
        if (exit_edge == none)
            throw InternalError("positive_vector_at: walk closed a cycle with no exit "
                                "despite Condition (L)");

        for (std::size_t w = 0; w < n; ++w) weights[w] = 1;
        for (std::size_t i = 1; i <= exit_pos; ++i) weights[g.edge(chain[i]).src] = 2;
    }

    detail::verify_positive_vector_certificate(g, weights, v);
    IntVector result(n);
    for (std::size_t w = 0; w < n; ++w) result[w] = weights[w];
    return result;
}

inline IntVector positive_vector_at(const DirectedMultigraph& g, const std::string& v) {
    return positive_vector_at(g, g.vertex_index(v));
}

// Essential extension in the class of a nonnegative x: omega = x + (A-I)n
// with n the essentializing vector, so the class is untouched and every
// vertex still reaches the new sink.
inline OneSinkExtension essential_extension_for_nonneg(const DirectedMultigraph& g,
                                                       const IntVector& x) {
    require_no_sinks(g, "essential_extension_for_nonneg");
    require_condition_l(g, "essential_extension_for_nonneg");
    if (x.size() != g.vertex_count())
        throw MismatchError("essential_extension_for_nonneg: vector length " +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(g.vertex_count()) + " vertices");
    if (!all_nonnegative(x))
        throw DomainError("essential_extension_for_nonneg: x has a negative entry");

    EssentializingVector n = essentializing_vector(g);
    OneSinkExtension ext = simple_extension(g, vector_sum(x, n.image));
    if (!is_essential(ext))
        throw InternalError("essential_extension_for_nonneg: result is not essential");
    return ext;
}

// Essential extension in the class of an arbitrary signed x:
// n = sum_v (|x(v)|+1) * n_v with n_v from positive_vector_at, and
// omega = x + (A-I)n.  The v-th summand alone pushes omega(v) up to
// x(v) + |x(v)| + 1 >= 1, and the others cannot lower it, so omega >= 1
// entrywise and the extension is essential outright.
inline OneSinkExtension essential_extension_for_class(const DirectedMultigraph& g,
                                                      const IntVector& x) {
    require_no_sinks(g, "essential_extension_for_class");
    require_condition_l(g, "essential_extension_for_class");
    if (x.size() != g.vertex_count())
        throw MismatchError("essential_extension_for_class: vector length " +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(g.vertex_count()) + " vertices");

    const std::size_t nv = g.vertex_count();
    IntVector n(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        IntVector nv_vec = positive_vector_at(g, v);
        Int weight = abs(x[v]) + 1;
        for (std::size_t w = 0; w < nv; ++w) n[w] += weight * nv_vec[w];
    }

    IntMatrix a = vertex_matrix(g);
    IntVector omega = vector_sum(x, vector_difference(a * n, n));
    if (!all_positive(omega))
        throw InternalError("essential_extension_for_class: omega = " + format_vector(omega) +
                            " is not >= 1 entrywise");
    OneSinkExtension ext = simple_extension(g, omega);
    if (!is_essential(ext))
        throw InternalError("essential_extension_for_class: result is not essential");
    return ext;
}

// Truncated ladder: vertices w1..wm, one loop each, and a double edge in each
// direction between consecutive vertices.  A_G is the band matrix with 1 on
// the diagonal and 2 next to it.
inline DirectedMultigraph ladder_graph(std::size_t m) {
    if (m < 1) throw DomainError("ladder_graph: m must be at least 1");
    DirectedMultigraph g;
    g.reserve(m, 5 * m);
    for (std::size_t i = 1; i <= m; ++i) g.add_vertex("w" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i) {
        const std::string wi = "w" + std::to_string(i);
        g.add_edge("loop" + std::to_string(i), wi, wi);
        if (i < m) {
            const std::string wj = "w" + std::to_string(i + 1);
            g.add_edge("fwd" + std::to_string(i) + "a", wi, wj);
            g.add_edge("fwd" + std::to_string(i) + "b", wi, wj);
            g.add_edge("bwd" + std::to_string(i) + "a", wj, wi);
            g.add_edge("bwd" + std::to_string(i) + "b", wj, wi);
        }
    }
    return g;
}

// delta_{w_j} escapes the image of A_G - I on the ladder truncation: the
// matrix has only even entries, so its image consists of even vectors.
// Checked by an honest solve rather than the parity argument.
inline bool obstruction_check(std::size_t m, std::size_t j) {
    if (j < 1 || j > m)
        throw DomainError("obstruction_check: j = " + std::to_string(j) +
                          " out of range 1.." + std::to_string(m));
    DirectedMultigraph g = ladder_graph(m);
    IntMatrix ami = vertex_matrix(g).minus_identity();
    IntVector delta(m);
    delta[j - 1] = 1;
    return !solve_in_image(ami, delta).has_value();
}

// Same question for every j at once, with a single decomposition.
inline std::vector<bool> obstruction_check_all(std::size_t m) {
    DirectedMultigraph g = ladder_graph(m);
    SmithDecomposition snf = smith_normal_form(vertex_matrix(g).minus_identity());
    std::vector<bool> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        IntVector delta(m);
        delta[j] = 1;
        out[j] = !solve_in_image(snf, delta).has_value();
    }
    return out;
}

}  // namespace graphext
