#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace graphext {

// U * M * V = S with U, V unimodular and S = diag(d_1, ..., d_r, 0, ...),
// d_i > 0 and d_i | d_{i+1}.  det_u / det_v are tracked through the
// elementary operations (each swap or negation flips a sign), so unimodularity
// never needs a determinant computation.
struct SmithDecomposition {
    IntMatrix u, s, v;
    int det_u = 1;
    int det_v = 1;
    std::size_t rank = 0;  // number of nonzero diagonal entries

    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        const std::size_t n = std::min(s.rows(), s.cols());
        d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) d.push_back(s(i, i));
        return d;
    }
};

// Optional step log; the CLI wires this to -v -v.
using SnfTrace = std::function<void(const std::string&)>;

// Classical elimination with the pivot chosen of minimal absolute value.
// Whenever a division leaves a remainder the remainder becomes the new,
// strictly smaller pivot, so each stage terminates.  After a pivot's row and
// column are clear, any remaining entry it does not divide is pulled into its
// row and reduced, which shrinks the pivot again; once the loop exits the
// pivot divides the whole remaining block, and every later pivot is an
// integer combination of that block, giving the divisibility chain for free.
inline SmithDecomposition smith_normal_form(const IntMatrix& m, const SnfTrace& trace = {}) {
    SmithDecomposition d;
    const std::size_t nr = m.rows(), nc = m.cols();
    d.u = IntMatrix::identity(nr);
    d.v = IntMatrix::identity(nc);
    d.s = m;
    IntMatrix& s = d.s;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        s.swap_rows(a, b);
        d.u.swap_rows(a, b);
        d.det_u = -d.det_u;
        if (trace) trace("swap r" + std::to_string(a) + ",r" + std::to_string(b));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        s.swap_cols(a, b);
        d.v.swap_cols(a, b);
        d.det_v = -d.det_v;
        if (trace) trace("swap c" + std::to_string(a) + ",c" + std::to_string(b));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& q) {
        s.add_row_multiple(dst, src, q);
        d.u.add_row_multiple(dst, src, q);
        if (trace)
            trace("r" + std::to_string(dst) + " += " + q.str() + "*r" + std::to_string(src));
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& q) {
        s.add_col_multiple(dst, src, q);
        d.v.add_col_multiple(dst, src, q);
        if (trace)
            trace("c" + std::to_string(dst) + " += " + q.str() + "*c" + std::to_string(src));
    };

    const std::size_t tmax = std::min(nr, nc);
    std::size_t t = 0;
    for (; t < tmax; ++t) {
        // Smallest |entry| of the remaining block becomes the pivot; first
        // position in scan order breaks ties, so runs are deterministic.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                const Int& e = s(i, j);
                if (e == 0) continue;
                if (!found || abs(e) < abs(s(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;  // remaining block is zero
        if (trace)
            trace("pivot " + std::to_string(t) + ": S(" + std::to_string(pi) + "," +
                  std::to_string(pj) + ") = " + s(pi, pj).str());
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            // Clear column t, then row t.  cpp_int division truncates toward
            // zero, so leftovers satisfy |rem| < |pivot| and get promoted.
            for (;;) {
                for (std::size_t i = t + 1; i < nr; ++i) {
                    if (s(i, t) == 0) continue;
                    Int q = s(i, t) / s(t, t);
                    if (q != 0) add_row(i, t, -q);
                }
                std::size_t best = t;
                for (std::size_t i = t + 1; i < nr; ++i) {
                    if (s(i, t) == 0) continue;
                    if (best == t || abs(s(i, t)) < abs(s(best, t))) best = i;
                }
                if (best != t) {
                    swap_rows(t, best);
                    continue;
                }
                for (std::size_t j = t + 1; j < nc; ++j) {
                    if (s(t, j) == 0) continue;
                    Int q = s(t, j) / s(t, t);
                    if (q != 0) add_col(j, t, -q);
                }
                std::size_t bestc = t;
                for (std::size_t j = t + 1; j < nc; ++j) {
                    if (s(t, j) == 0) continue;
                    if (bestc == t || abs(s(t, j)) < abs(s(t, bestc))) bestc = j;
                }
                if (bestc != t) {
                    swap_cols(t, bestc);
                    continue;
                }
                break;  // row t and column t hold only the pivot
            }

            // Divisibility: drag a non-multiple into row t and reduce again.
            std::size_t oi = nr;
            for (std::size_t i = t + 1; i < nr && oi == nr; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        oi = i;
                        break;
                    }
            if (oi == nr) break;
            if (trace) trace("divisibility: r" + std::to_string(t) + " += r" + std::to_string(oi));
            add_row(t, oi, 1);
        }
    }

    d.rank = t;
    for (std::size_t i = 0; i < d.rank; ++i) {
        if (s(i, i) < 0) {
            s.negate_col(i);
            d.v.negate_col(i);
            d.det_v = -d.det_v;
            if (trace) trace("negate c" + std::to_string(i));
        }
    }
    return d;
}

inline bool verify_decomposition(const IntMatrix& m, const SmithDecomposition& d) {
    return d.u * m * d.v == d.s;
}

// coker(M) as invariant factors plus free rank: the quotient presented by the
// columns of M.  With U M V = diag(d_1..d_r, 0...), the group is
// (+)_i Z/d_i (+) Z^(cols - r); factors of 1 are dropped.
struct CokernelPresentation {
    IntMatrix matrix;  // the presenting matrix M itself
    SmithDecomposition snf;
    std::vector<Int> invariant_factors;  // diagonal entries > 1, divisibility order
    std::size_t free_rank = 0;

    bool trivial() const { return invariant_factors.empty() && free_rank == 0; }

    // "0", "Z/2", "Z/2 + Z/6 + Z^2", ...
    std::string group_description() const {
        std::string out;
        for (const Int& f : invariant_factors) {
            if (!out.empty()) out += " + ";
            out += "Z/" + f.str();
        }
        if (free_rank == 1)
            out += (out.empty() ? "" : " + ") + std::string("Z");
        else if (free_rank > 1)
            out += (out.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank);
        return out.empty() ? "0" : out;
    }
};

inline CokernelPresentation cokernel(const IntMatrix& m, const SnfTrace& trace = {}) {
    CokernelPresentation p;
    p.matrix = m;
    p.snf = smith_normal_form(m, trace);
    for (std::size_t i = 0; i < p.snf.rank; ++i)
        if (p.snf.s(i, i) > 1) p.invariant_factors.push_back(p.snf.s(i, i));
    p.free_rank = m.cols() - p.snf.rank;
    return p;
}

// Solve M n = x exactly.  Substituting n = V m turns the system into
// S m = U x: solvable iff d_i | (Ux)_i on the diagonal and (Ux)_i = 0 on the
// zero rows.  Free coordinates of m are set to 0.
inline std::optional<IntVector> solve_in_image(const SmithDecomposition& snf,
                                               const IntVector& x) {
    const std::size_t nr = snf.s.rows(), nc = snf.s.cols();
    if (x.size() != nr)
        throw MismatchError("solve_in_image: vector length " + std::to_string(x.size()) +
                            " does not match " + std::to_string(nr) + " rows");
    IntVector ux = snf.u * x;
    IntVector mvec(nc);
    for (std::size_t i = 0; i < snf.rank; ++i) {
        if (ux[i] % snf.s(i, i) != 0) return std::nullopt;
        mvec[i] = ux[i] / snf.s(i, i);
    }
    for (std::size_t i = snf.rank; i < nr; ++i)
        if (ux[i] != 0) return std::nullopt;
    return snf.v * mvec;
}

inline std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& x) {
    if (x.size() != m.rows())
        throw MismatchError("solve_in_image: vector length " + std::to_string(x.size()) +
                            " does not match " + std::to_string(m.rows()) + " rows");
    return solve_in_image(smith_normal_form(m), x);
}

// x ~ y in coker(M), i.e. x - y lies in the column image of M.
inline bool coker_equal(const IntMatrix& m, const IntVector& x, const IntVector& y) {
    return solve_in_image(m, vector_difference(x, y)).has_value();
}

// An element of coker(M): an explicit representative plus a shared handle to
// the presentation it lives in.  Comparison is mathematical equality of
// classes, not of representatives.
struct CokerElement {
    std::shared_ptr<const CokernelPresentation> presentation;
    IntVector representative;
};

inline CokerElement make_class(std::shared_ptr<const CokernelPresentation> pres,
                               IntVector rep) {
    if (!pres) throw Error("make_class: null presentation");
    if (rep.size() != pres->matrix.rows())
        throw MismatchError("make_class: representative length " + std::to_string(rep.size()) +
                            " does not match presentation on " +
                            std::to_string(pres->matrix.rows()) + " generators");
    return {std::move(pres), std::move(rep)};
}

inline void require_same_presentation(const CokerElement& a, const CokerElement& b) {
    if (a.presentation == b.presentation) return;
    if (a.presentation && b.presentation && a.presentation->matrix == b.presentation->matrix)
        return;
    throw MismatchError("coker elements belong to different presentations");
}

inline CokerElement operator+(const CokerElement& a, const CokerElement& b) {
    require_same_presentation(a, b);
    return {a.presentation, vector_sum(a.representative, b.representative)};
}

inline CokerElement operator-(const CokerElement& a, const CokerElement& b) {
    require_same_presentation(a, b);
    return {a.presentation, vector_difference(a.representative, b.representative)};
}

inline CokerElement operator-(const CokerElement& a) {
    return {a.presentation, vector_negation(a.representative)};
}

inline bool is_zero(const CokerElement& c) {
    if (!c.presentation) throw Error("coker element without presentation");
    return solve_in_image(c.presentation->snf, c.representative).has_value();
}

inline bool operator==(const CokerElement& a, const CokerElement& b) {
    return is_zero(a - b);
}

}  // namespace graphext
