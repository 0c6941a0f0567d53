// Exact linear algebra over the polynomial ring: fraction-free elimination
// for generic rank (rank over the rational function field) and small
// symbolic determinants.
#pragma once

#include <stdexcept>
#include <vector>

#include "poly.hpp"

namespace algebroidkit {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Rank of the matrix over the fraction field of the polynomial ring,
/// i.e. the rank attained on a dense open set. Bareiss fraction-free
/// elimination: entries stay polynomial, each step divides exactly by the
/// previous pivot.
inline std::size_t generic_rank(PolyMatrix m, const Chart& chart) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::size_t rank = 0;
    Poly prev = Poly::constant(chart, 1);
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                Poly num = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
                auto q = divide_exact(num, prev);
                if (!q) throw std::logic_error("fraction-free elimination: inexact division");
                m[r][c] = std::move(*q);
            }
            m[r][col] = Poly::zero(chart);
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

/// Symbolic determinant by cofactor expansion; fine for the small matrices
/// that show up in anchor-rank tests.
inline Poly determinant(const PolyMatrix& m, const Chart& chart) {
    const std::size_t n = m.size();
    if (n == 0) return Poly::constant(chart, 1);
    if (n == 1) return m[0][0];
    Poly det(chart);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Poly cof = m[0][j] * determinant(minor, chart);
        if (j % 2 == 0)
            det += cof;
        else
            det -= cof;
    }
    return det;
}

} // namespace algebroidkit
