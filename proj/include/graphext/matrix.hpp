#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace graphext {

// All arithmetic in this library is exact.  cpp_int has no magnitude limit,
// so Smith reduction and path counting can never overflow.
using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

// Dense row-major matrix over Int.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool operator==(const IntMatrix&) const = default;

    // A - I; the presentations this library cares about are coker(A_G - I)
    // and coker(B_G - I).
    IntMatrix minus_identity() const {
        if (!is_square())
            throw MismatchError("minus_identity: matrix is " + shape() + ", not square");
        IntMatrix m = *this;
        for (std::size_t i = 0; i < rows_; ++i) m(i, i) -= 1;
        return m;
    }

    // Elementary operations.  The Smith reduction applies these to S while
    // mirroring them on U (row ops) and V (column ops).
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            data_[a * cols_ + j].swap(data_[b * cols_ + j]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i)
            data_[i * cols_ + a].swap(data_[i * cols_ + b]);
    }
    // row dst += q * row src
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t j = 0; j < cols_; ++j)
            data_[dst * cols_ + j] += q * data_[src * cols_ + j];
    }
    // col dst += q * col src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t i = 0; i < rows_; ++i)
            data_[i * cols_ + dst] += q * data_[i * cols_ + src];
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j)
            data_[i * cols_ + j].backend().negate();
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i)
            data_[i * cols_ + j].backend().negate();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw MismatchError("matrix product " + a.shape() + " * " + b.shape());
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size())
        throw MismatchError("matrix-vector product " + a.shape() + " * vector of length " +
                            std::to_string(x.size()));
    IntVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) y[i] += a(i, j) * x[j];
    return y;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw MismatchError("matrix sum " + a.shape() + " + " + b.shape());
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw MismatchError("matrix difference " + a.shape() + " - " + b.shape());
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

inline IntVector vector_sum(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size())
        throw MismatchError("vector sum: lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
    IntVector c = a;
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

inline IntVector vector_difference(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size())
        throw MismatchError("vector difference: lengths " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
    IntVector c = a;
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}

inline IntVector vector_negation(const IntVector& a) {
    IntVector c = a;
    for (Int& x : c) x.backend().negate();
    return c;
}

inline bool all_nonnegative(const IntVector& v) {
    for (const Int& x : v)
        if (x < 0) return false;
    return true;
}

inline bool all_positive(const IntVector& v) {
    for (const Int& x : v)
        if (x < 1) return false;
    return true;
}

inline bool is_zero_vector(const IntVector& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

// "(1,0,-3)" -- the display form used by the CLI and test messages.
inline std::string format_vector(const IntVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i].str();
    }
    out += ')';
    return out;
}

}  // namespace graphext
