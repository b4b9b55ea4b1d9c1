#include <catch2/catch_amalgamated.hpp>

#include <graphext/graphext.hpp>

#include "oracles.hpp"

using namespace graphext;

namespace {

DirectedMultigraph intro_graph() {
    DirectedMultigraph g;
    g.add_vertex("w1");
    g.add_vertex("w2");
    g.add_vertex("w3");
    g.add_edge("e1", "w1", "w1");
    g.add_edge("e2", "w1", "w2");
    g.add_edge("e3", "w2", "w3");
    g.add_edge("e4", "w3", "w2");
    return g;
}

DirectedMultigraph loops_at_one_vertex(std::size_t n) {
    DirectedMultigraph g;
    g.add_vertex("v");
    for (std::size_t i = 0; i < n; ++i) g.add_edge("v", "v");
    return g;
}

OneSinkExtension example_e1() { return simple_extension(intro_graph(), {1, 1, 2}); }
OneSinkExtension example_e2() { return simple_extension(intro_graph(), {1, 0, 1}); }

}  // namespace

TEST_CASE("one-sink extension data model") {
    OneSinkExtension e = example_e1();
    REQUIRE(e.base_vertex_count() == 3);
    REQUIRE(e.base_edge_count() == 4);
    REQUIRE(e.added_vertices() == std::vector<std::string>{"v0"});
    REQUIRE(e.added_edges().size() == 4);
    REQUIRE(e.sink_id() == "v0");
    REQUIRE(e.sink_index() == 3);
    REQUIRE(e.full().vertex_count() == 4);
    REQUIRE(e.full().edge_count() == 8);
    REQUIRE(e.is_added_vertex(3));
    REQUIRE_FALSE(e.is_added_vertex(2));
    REQUIRE(e.is_added_edge(4));
    REQUIRE_FALSE(e.is_added_edge(3));
    // base vertices and edges keep their indices inside full()
    for (std::size_t v = 0; v < 3; ++v)
        REQUIRE(e.full().vertex_id(v) == intro_graph().vertex_id(v));

    REQUIRE_THROWS_AS(
        OneSinkExtension(intro_graph(), {"a", "b"}, {{"x", "w1", "a"}}, "zzz"), Error);
    REQUIRE_THROWS_AS(
        OneSinkExtension(intro_graph(), {"w1"}, {}, "w1"), Error);  // duplicate id
}

TEST_CASE("validation flags each condition") {
    SECTION("the worked-example extensions are valid") {
        REQUIRE(validate(example_e1()).valid());
        REQUIRE(validate(example_e2()).valid());
    }
    SECTION("condition 1: sink must be a sink, and the only one") {
        // declared sink emits an edge
        OneSinkExtension bad(intro_graph(), {"u", "v0"},
                             {{"a1", "w1", "u"}, {"a2", "v0", "u"}, {"a3", "w1", "v0"}},
                             "v0");
        auto r = validate(bad);
        REQUIRE_FALSE(r.valid());
        REQUIRE(std::find(r.violated.begin(), r.violated.end(), 1) != r.violated.end());

        // a second added sink
        OneSinkExtension two_sinks(intro_graph(), {"u", "v0"},
                                   {{"a1", "w1", "u"}, {"a2", "w1", "v0"}}, "v0");
        auto r2 = validate(two_sinks);
        REQUIRE(std::find(r2.violated.begin(), r2.violated.end(), 1) != r2.violated.end());

        // x = 0: the sink is also a source in the added part
        auto zero = simple_extension(intro_graph(), {0, 0, 0});
        auto r3 = validate(zero);
        REQUIRE(r3.violated == std::vector<int>{1});
    }
    SECTION("condition 2: no cycles among added vertices") {
        OneSinkExtension bad(intro_graph(), {"m1", "m2", "v0"},
                             {{"a1", "m1", "m2"},
                              {"a2", "m2", "m1"},
                              {"a3", "w1", "m1"},
                              {"a4", "m1", "v0"}},
                             "v0");
        auto r = validate(bad);
        REQUIRE(std::find(r.violated.begin(), r.violated.end(), 2) != r.violated.end());
    }
    SECTION("condition 3: added edges must end in the added part") {
        OneSinkExtension bad(intro_graph(), {"v0"},
                             {{"a1", "w1", "v0"}, {"a2", "v0", "w1"}}, "v0");
        auto r = validate(bad);
        REQUIRE(std::find(r.violated.begin(), r.violated.end(), 3) != r.violated.end());
        bool named = false;
        for (const auto& d : r.details)
            if (d.find("condition 3") == 0 && d.find("a2") != std::string::npos) named = true;
        REQUIRE(named);
    }
    SECTION("condition 4: base sinks must stay sinks") {
        DirectedMultigraph base;
        base.add_vertex("a");
        base.add_vertex("dead");
        base.add_edge("a", "dead");
        OneSinkExtension bad(base, {"v0"}, {{"a1", "dead", "v0"}}, "v0");
        auto r = validate(bad);
        REQUIRE(std::find(r.violated.begin(), r.violated.end(), 4) != r.violated.end());
        // same base, sourcing from the non-sink vertex instead: fine
        OneSinkExtension ok(base, {"v0"}, {{"a1", "a", "v0"}}, "v0");
        REQUIRE(validate(ok).valid());
    }
}

TEST_CASE("essentiality is reachability of the sink") {
    REQUIRE(is_essential(example_e1()));
    REQUIRE(is_essential(example_e2()));
    REQUIRE_FALSE(is_essential(simple_extension(intro_graph(), {0, 0, 0})));

    // only part of the base reaches the sink
    DirectedMultigraph base;
    base.add_vertex("u");
    base.add_vertex("z");
    base.add_edge("u", "u");
    base.add_edge("u", "u");
    base.add_edge("z", "z");
    base.add_edge("z", "z");
    REQUIRE_FALSE(is_essential(simple_extension(base, {1, 0})));
    REQUIRE(is_essential(simple_extension(base, {1, 1})));
}

TEST_CASE("wojciech vectors") {
    SECTION("pinned examples") {
        REQUIRE((wojciech_vector(example_e1()) == IntVector{1, 1, 2}));
        REQUIRE((wojciech_vector(example_e2()) == IntVector{1, 0, 1}));
        REQUIRE((wojciech_vector(simple_extension(intro_graph(), {0, 0, 0})) ==
                IntVector{0, 0, 0}));
    }
    SECTION("multi-level paths multiply") {
        DirectedMultigraph base;
        base.add_vertex("w");
        base.add_vertex("u");
        for (int i = 0; i < 2; ++i) base.add_edge("w", "w");
        for (int i = 0; i < 2; ++i) base.add_edge("u", "u");
        OneSinkExtension e(base, {"m1", "v0"},
                           {{"a1", "w", "m1"},
                            {"a2", "w", "m1"},
                            {"a3", "m1", "v0"},
                            {"a4", "m1", "v0"},
                            {"a5", "m1", "v0"}},
                           "v0");
        REQUIRE(validate(e).valid());
        REQUIRE((wojciech_vector(e) == IntVector{6, 0}));
    }
    SECTION("agrees with the recursive path-count oracle") {
        std::mt19937_64 rng(31337);
        for (int iter = 0; iter < 120; ++iter) {
            DirectedMultigraph base = oracles::random_no_sink_graph(rng);
            OneSinkExtension e = oracles::random_extension(rng, base);
            REQUIRE(validate(e).valid());
            REQUIRE(wojciech_vector(e) == oracles::path_counts_by_recursion(e));
        }
    }
    SECTION("a cycle in the added part is an error") {
        OneSinkExtension bad(intro_graph(), {"m1", "m2", "v0"},
                             {{"a1", "m1", "m2"},
                              {"a2", "m2", "m1"},
                              {"a3", "w1", "m1"},
                              {"a4", "m1", "v0"}},
                             "v0");
        REQUIRE_THROWS_AS(wojciech_vector(bad), Error);
    }
}

TEST_CASE("simple extensions") {
    SECTION("wojciech vector reproduces the multiplicities") {
        std::mt19937_64 rng(2024);
        for (int iter = 0; iter < 60; ++iter) {
            DirectedMultigraph g = oracles::random_no_sink_graph(rng);
            IntVector x(g.vertex_count());
            std::uniform_int_distribution<int> d(0, 5);
            for (auto& e : x) e = d(rng);
            auto ext = simple_extension(g, x);
            REQUIRE(wojciech_vector(ext) == x);
            REQUIRE(ext.added_vertices().size() == 1);
        }
    }
    SECTION("input checking") {
        REQUIRE_THROWS_AS(simple_extension(intro_graph(), {1, 2}), MismatchError);
        REQUIRE_THROWS_AS(simple_extension(intro_graph(), {1, -2, 0}), DomainError);
        REQUIRE_THROWS_AS(simple_extension(intro_graph(), {10000001, 0, 0}), DomainError);
    }
    SECTION("ids dodge collisions with the base") {
        DirectedMultigraph g;
        g.add_vertex("v0");
        g.add_edge("a0", "v0", "v0");
        auto ext = simple_extension(g, {2});
        REQUIRE(ext.sink_id() == "v0_1");
        for (const auto& e : ext.added_edges()) REQUIRE(e.id != "a0");
        REQUIRE(detail::fresh_vertex_id(g, "v0") == "v0_1");
        REQUIRE(detail::fresh_vertex_id(g, "other") == "other");
    }
    SECTION("add_sink_at is the indicator case") {
        auto ext = add_sink_at(intro_graph(), "w2");
        REQUIRE((wojciech_vector(ext) == IntVector{0, 1, 0}));
        auto ext2 = add_sink_at(intro_graph(), std::size_t{0});
        REQUIRE((wojciech_vector(ext2) == IntVector{1, 0, 0}));
        REQUIRE_THROWS_AS(add_sink_at(intro_graph(), "nope"), DomainError);
        REQUIRE_THROWS_AS(add_sink_at(intro_graph(), std::size_t{9}), DomainError);
        REQUIRE(validate(ext).valid());
    }
}

TEST_CASE("essentializing vector") {
    SECTION("two loops at one vertex") {
        auto ev = essentializing_vector(loops_at_one_vertex(2));
        REQUIRE(ev.n == IntVector{1});
        REQUIRE(ev.image == IntVector{1});
    }
    SECTION("hypotheses are enforced") {
        REQUIRE_THROWS_AS(essentializing_vector(intro_graph()), HypothesisViolated);
        DirectedMultigraph sink;
        sink.add_vertex("a");
        REQUIRE_THROWS_AS(essentializing_vector(sink), HypothesisViolated);
    }
    SECTION("image is (A-I) applied to all-ones, and certifiably positive somewhere") {
        std::mt19937_64 rng(888);
        for (int iter = 0; iter < 80; ++iter) {
            DirectedMultigraph g = oracles::random_condition_l_graph(rng);
            auto ev = essentializing_vector(g);
            REQUIRE(ev.n == IntVector(g.vertex_count(), 1));
            IntMatrix ami = vertex_matrix(g).minus_identity();
            REQUIRE(ev.image == ami * ev.n);
            REQUIRE(all_nonnegative(ev.image));
            // every vertex reaches a strictly positive coordinate
            auto closure = oracles::reachability_closure(g);
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                bool ok = false;
                for (std::size_t w = 0; w < g.vertex_count(); ++w)
                    if (closure[v][w] && ev.image[w] >= 1) ok = true;
                REQUIRE(ok);
            }
        }
    }
}

TEST_CASE("positive vector at a vertex") {
    SECTION("two or more loops give the indicator") {
        REQUIRE(positive_vector_at(loops_at_one_vertex(2), std::size_t{0}) == IntVector{1});
        DirectedMultigraph g;
        g.add_vertex("a");
        g.add_vertex("b");
        g.add_edge("a", "a");
        g.add_edge("a", "a");
        g.add_edge("a", "b");
        g.add_edge("b", "a");
        REQUIRE((positive_vector_at(g, "a") == IntVector{1, 0}));
    }
    SECTION("walk case: deterministic weights") {
        // v --a--> w, loop b at w with exit c to z, two loops at z
        DirectedMultigraph g;
        g.add_vertex("v");
        g.add_vertex("w");
        g.add_vertex("z");
        g.add_edge("a", "v", "w");
        g.add_edge("b", "w", "w");
        g.add_edge("c", "w", "z");
        g.add_edge("d", "z", "z");
        g.add_edge("e", "z", "z");
        REQUIRE((positive_vector_at(g, "v") == IntVector{1, 2, 1}));

        // single loop at v: the first walk edge must leave v, so the walk
        // ignores the loop, runs to u, and circles there
        DirectedMultigraph h;
        h.add_vertex("v");
        h.add_vertex("u");
        h.add_edge("a", "v", "v");
        h.add_edge("b", "v", "u");
        h.add_edge("c", "u", "u");
        h.add_edge("d", "u", "u");
        REQUIRE((positive_vector_at(h, "v") == IntVector{1, 2}));
    }
    SECTION("hypotheses and domain checks") {
        REQUIRE_THROWS_AS(positive_vector_at(intro_graph(), "w1"), HypothesisViolated);
        DirectedMultigraph sink;
        sink.add_vertex("a");
        REQUIRE_THROWS_AS(positive_vector_at(sink, "a"), HypothesisViolated);
        REQUIRE_THROWS_AS(positive_vector_at(loops_at_one_vertex(2), std::size_t{5}),
                          DomainError);
        REQUIRE_THROWS_AS(positive_vector_at(loops_at_one_vertex(2), "nope"), DomainError);
    }
    SECTION("certificate holds on every multigraph with <= 3 vertices") {
        // all adjacency matrices in {0,..,3}^(3x3) plus the smaller sizes
        for (int n = 1; n <= 3; ++n) {
            const int cells = n * n;
            std::vector<int> counts(cells, 0);
            for (;;) {
                bool no_sink = true;
                for (int v = 0; v < n && no_sink; ++v) {
                    int out = 0;
                    for (int w = 0; w < n; ++w) out += counts[v * n + w];
                    if (out == 0) no_sink = false;
                }
                if (no_sink) {
                    DirectedMultigraph g;
                    for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
                    for (int i = 0; i < cells; ++i)
                        for (int rep = 0; rep < counts[i]; ++rep)
                            g.add_edge(std::size_t(i / n), std::size_t(i % n));
                    if (satisfies_condition_l(g)) {
                        IntMatrix ami = vertex_matrix(g).minus_identity();
                        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                            IntVector nv = positive_vector_at(g, v);
                            IntVector y = ami * nv;
                            REQUIRE(all_nonnegative(y));
                            REQUIRE(y[v] >= 1);
                        }
                    }
                }
                int pos = 0;
                while (pos < cells && counts[pos] == 3) counts[pos++] = 0;
                if (pos == cells) break;
                ++counts[pos];
            }
        }
    }
}

TEST_CASE("essential extension for a nonnegative vector") {
    SECTION("zero vector on two loops") {
        auto ext = essential_extension_for_nonneg(loops_at_one_vertex(2), {0});
        REQUIRE(wojciech_vector(ext) == IntVector{1});
        REQUIRE(is_essential(ext));
        // class is zero: coker(A-I) = coker([1]) is trivial
        REQUIRE(coker_equal(IntMatrix(1, 1), {0}, {0}));
    }
    SECTION("random nonnegative vectors") {
        std::mt19937_64 rng(606);
        for (int iter = 0; iter < 60; ++iter) {
            DirectedMultigraph g = oracles::random_condition_l_graph(rng);
            IntVector x(g.vertex_count());
            std::uniform_int_distribution<int> d(0, 4);
            for (auto& e : x) e = d(rng);
            auto ext = essential_extension_for_nonneg(g, x);
            REQUIRE(validate(ext).valid() == !is_zero_vector(wojciech_vector(ext)));
            REQUIRE(is_essential(ext));
            auto ev = essentializing_vector(g);
            REQUIRE(wojciech_vector(ext) == vector_sum(x, ev.image));
            IntMatrix ami = vertex_matrix(g).minus_identity();
            REQUIRE(coker_equal(ami, wojciech_vector(ext), x));
        }
    }
    SECTION("errors") {
        REQUIRE_THROWS_AS(essential_extension_for_nonneg(intro_graph(), {1, 0, 0}),
                          HypothesisViolated);
        REQUIRE_THROWS_AS(essential_extension_for_nonneg(loops_at_one_vertex(2), {-1}),
                          DomainError);
        REQUIRE_THROWS_AS(essential_extension_for_nonneg(loops_at_one_vertex(2), {1, 2}),
                          MismatchError);
    }
}

TEST_CASE("essential extension for an arbitrary class") {
    SECTION("pinned 1x1 arithmetic") {
        // three loops: A-I = [2]; x = [-5]; n = 6*delta; omega = -5 + 12 = 7
        auto ext = essential_extension_for_class(loops_at_one_vertex(3), {-5});
        REQUIRE(wojciech_vector(ext) == IntVector{7});
        REQUIRE(is_essential(ext));
        REQUIRE(coker_equal(vertex_matrix(loops_at_one_vertex(3)).minus_identity(),
                            {7}, {-5}));
    }
    SECTION("zero class still yields an essential extension") {
        auto ext = essential_extension_for_class(loops_at_one_vertex(2), {0});
        REQUIRE(is_essential(ext));
        REQUIRE(all_positive(wojciech_vector(ext)));
    }
    SECTION("random signed vectors across a corpus") {
        std::mt19937_64 rng(1729);
        for (int iter = 0; iter < 40; ++iter) {
            DirectedMultigraph g = oracles::random_condition_l_graph(rng);
            IntMatrix ami = vertex_matrix(g).minus_identity();
            std::uniform_int_distribution<int> d(-6, 6);
            for (int rep = 0; rep < 5; ++rep) {
                IntVector x(g.vertex_count());
                for (auto& e : x) e = d(rng);
                auto ext = essential_extension_for_class(g, x);
                IntVector omega = wojciech_vector(ext);
                REQUIRE(all_positive(omega));
                REQUIRE(is_essential(ext));
                REQUIRE(validate(ext).valid());
                REQUIRE(coker_equal(ami, omega, x));
            }
        }
    }
    SECTION("hypotheses") {
        REQUIRE_THROWS_AS(essential_extension_for_class(intro_graph(), {1, 0, 0}),
                          HypothesisViolated);
        REQUIRE_THROWS_AS(essential_extension_for_class(loops_at_one_vertex(2), {1, 2}),
                          MismatchError);
    }
}

TEST_CASE("ladder graphs and the obstruction") {
    SECTION("shape") {
        REQUIRE_THROWS_AS(ladder_graph(0), DomainError);
        auto g1 = ladder_graph(1);
        REQUIRE(g1.vertex_count() == 1);
        REQUIRE(g1.edge_count() == 1);
        REQUIRE_FALSE(satisfies_condition_l(g1));  // the lone loop has no exit

        auto g2 = ladder_graph(2);
        IntMatrix a2 = vertex_matrix(g2);
        IntMatrix expect(2, 2);
        expect(0, 0) = 1;
        expect(0, 1) = 2;
        expect(1, 0) = 2;
        expect(1, 1) = 1;
        REQUIRE(a2 == expect);

        auto g4 = ladder_graph(4);
        IntMatrix band = vertex_matrix(g4).minus_identity();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                Int want = (i + 1 == j || j + 1 == i) ? 2 : 0;
                REQUIRE(band(i, j) == want);
            }
    }
    SECTION("hypotheses for m >= 2, transitive for all m") {
        for (std::size_t m = 1; m <= 10; ++m) {
            auto g = ladder_graph(m);
            REQUIRE(sinks(g).empty());
            REQUIRE(is_transitive(g));
            if (m >= 2) REQUIRE(satisfies_condition_l(g));
        }
    }
    SECTION("every indicator misses the image") {
        for (std::size_t m = 1; m <= 10; ++m) {
            auto all = obstruction_check_all(m);
            REQUIRE(all.size() == m);
            for (std::size_t j = 1; j <= m; ++j) {
                REQUIRE(all[j - 1]);
                REQUIRE(obstruction_check(m, j));
            }
        }
        REQUIRE_THROWS_AS(obstruction_check(3, 0), DomainError);
        REQUIRE_THROWS_AS(obstruction_check(3, 4), DomainError);
    }
    SECTION("reasoning check: the even-entry argument") {
        // the image of A-I consists of even vectors, so no indicator is hit
        auto g = ladder_graph(5);
        IntMatrix ami = vertex_matrix(g).minus_identity();
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) REQUIRE(ami(i, j) % 2 == 0);
    }
}
