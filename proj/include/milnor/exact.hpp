#pragma once

// Exact integer and rational linear algebra for the intersection lattice.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "milnor/error.hpp"

namespace milnor {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

inline std::int64_t to_int64(const Integer& value, std::string_view what) {
    if (value > std::numeric_limits<std::int64_t>::max() ||
        value < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " overflows 64 bits: " + value.str());
    }
    return static_cast<std::int64_t>(value);
}

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Symmetric Gaussian elimination over the rationals (an LDL^T sweep without
/// pivoting). The form is negative definite iff every pivot is negative; the
/// k-th pivot equals the ratio of consecutive leading principal minors.
inline bool symmetric_negative_definite(const DenseMatrix<Integer>& a) {
    const std::size_t n = a.size();
    DenseMatrix<Rational> work(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) work[i][j] = Rational(a[i][j]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Rational pivot = work[k][k];
        if (pivot >= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (work[i][k] == 0) continue;
            const Rational factor = work[i][k] / pivot;
            for (std::size_t j = k + 1; j < n; ++j) work[i][j] -= factor * work[k][j];
        }
    }
    return true;
}

/// Solves a x = b exactly by Gauss-Jordan elimination with first-nonzero
/// pivoting. Returns nullopt when a is singular.
inline std::optional<std::vector<Rational>> solve_exact(DenseMatrix<Rational> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side has wrong length");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        while (pivot_row < n && a[pivot_row][col] == 0) ++pivot_row;
        if (pivot_row == n) return std::nullopt;
        std::swap(a[pivot_row], a[col]);
        std::swap(b[pivot_row], b[col]);
        const Rational pivot = a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] /= pivot;
        b[col] /= pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational factor = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[col][j];
            b[i] -= factor * b[col];
        }
    }
    return b;
}

}  // namespace milnor
