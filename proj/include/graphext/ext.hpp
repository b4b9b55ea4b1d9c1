#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "matrix.hpp"
#include "sink_extension.hpp"
#include "smith.hpp"

namespace graphext {

// Ext group of a finite graph with no sinks satisfying Condition (L),
// presented two ways: coker(A_G - I) over the vertices and coker(B_G - I)
// over the edges.  The two presentations describe the same group; the
// constructor computes both, checks that their invariant factors and free
// ranks agree, and keeps the source/range matrices so classes can be pushed
// back and forth.
class ExtGroup {
public:
    explicit ExtGroup(DirectedMultigraph g) : graph_(std::move(g)) {
        require_no_sinks(graph_, "ext_group");
        require_condition_l(graph_, "ext_group");
        source_ = source_matrix(graph_);
        range_ = range_matrix(graph_);
        vertex_pres_ = std::make_shared<const CokernelPresentation>(
            cokernel(vertex_matrix(graph_).minus_identity()));
        edge_pres_ = std::make_shared<const CokernelPresentation>(
            cokernel(edge_matrix(graph_).minus_identity()));
        if (vertex_pres_->invariant_factors != edge_pres_->invariant_factors ||
            vertex_pres_->free_rank != edge_pres_->free_rank)
            throw InternalError("ext_group: coker(A-I) is " +
                                vertex_pres_->group_description() + " but coker(B-I) is " +
                                edge_pres_->group_description());
    }

    const DirectedMultigraph& graph() const { return graph_; }
    const std::shared_ptr<const CokernelPresentation>& vertex_presentation() const {
        return vertex_pres_;
    }
    const std::shared_ptr<const CokernelPresentation>& edge_presentation() const {
        return edge_pres_;
    }
    const std::vector<Int>& invariant_factors() const {
        return vertex_pres_->invariant_factors;
    }
    std::size_t free_rank() const { return vertex_pres_->free_rank; }
    std::string group_description() const { return vertex_pres_->group_description(); }

    CokerElement vertex_class(IntVector rep) const {
        return make_class(vertex_pres_, std::move(rep));
    }
    CokerElement edge_class(IntVector rep) const {
        return make_class(edge_pres_, std::move(rep));
    }

    // Induced map coker(B-I) -> coker(A-I), acting by the source matrix S_G.
    CokerElement to_vertex_class(const CokerElement& edge_cls) const {
        require_edge_element(edge_cls);
        return make_class(vertex_pres_, source_ * edge_cls.representative);
    }

    // Induced map coker(A-I) -> coker(B-I), acting by the range matrix R_G.
    // Inverse of to_vertex_class on classes.
    CokerElement to_edge_class(const CokerElement& vertex_cls) const {
        require_vertex_element(vertex_cls);
        return make_class(edge_pres_, range_ * vertex_cls.representative);
    }

private:
    void require_vertex_element(const CokerElement& c) const {
        if (!c.presentation ||
            (c.presentation != vertex_pres_ && c.presentation->matrix != vertex_pres_->matrix))
            throw MismatchError("element does not live in this graph's coker(A-I)");
    }
    void require_edge_element(const CokerElement& c) const {
        if (!c.presentation ||
            (c.presentation != edge_pres_ && c.presentation->matrix != edge_pres_->matrix))
            throw MismatchError("element does not live in this graph's coker(B-I)");
    }

    DirectedMultigraph graph_;
    IntMatrix source_, range_;
    std::shared_ptr<const CokernelPresentation> vertex_pres_, edge_pres_;
};

inline ExtGroup ext_group(const DirectedMultigraph& g) { return ExtGroup(g); }

// Class of the Wojciech vector in coker(A_G - I) of the base graph.  The
// extension need not be essential — callers that care query is_essential
// themselves.
inline CokerElement wojciech_class(const ExtGroup& ext, const OneSinkExtension& e) {
    if (!(e.base() == ext.graph()))
        throw MismatchError("wojciech_class: extension was built over a different base graph");
    return ext.vertex_class(wojciech_vector(e));
}

inline CokerElement wojciech_class(const OneSinkExtension& e) {
    return wojciech_class(ExtGroup(e.base()), e);
}

// x(e) = omega_E(r(e)) on base edges.  Satisfies the exact identity
// S_G * x - omega = (A_G - I) * omega, which ties the edge picture to the
// vertex picture.
inline IntVector edge_class_vector(const OneSinkExtension& e) {
    IntVector omega = wojciech_vector(e);
    const DirectedMultigraph& g = e.base();
    IntVector x(g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) x[k] = omega[g.edge(k).dst];
    return x;
}

// Sum of extensions over a common base: the simple extension whose Wojciech
// vector is the sum of the two Wojciech vectors.
inline OneSinkExtension sum_extensions(const OneSinkExtension& e1, const OneSinkExtension& e2) {
    if (!(e1.base() == e2.base()))
        throw MismatchError("sum_extensions: the two extensions have different base graphs");
    return simple_extension(e1.base(), vector_sum(wojciech_vector(e1), wojciech_vector(e2)));
}

}  // namespace graphext
