#pragma once

#include "fthresh/rational.hpp"

#include <cstddef>
#include <utility>

namespace fthresh {

using QMatrix = std::vector<QVector>;

struct LinearSolve {
    enum class Kind { Unique, NonUnique, NoSolution };
    Kind kind{Kind::NoSolution};
    // Unique: the solution. NonUnique: a particular solution (free
    // variables set to zero).
    QVector point;
};

// Exact Gauss-Jordan elimination of A x = b over Q.
inline LinearSolve solve_linear(QMatrix a, QVector b) {
    const std::size_t m = a.size();
    detail::check_same_size(m, b.size(), "solve_linear");
    const std::size_t d = m == 0 ? 0 : a[0].size();
    for (const auto& row : a) detail::check_same_size(row.size(), d, "solve_linear");

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < m; ++col) {
        std::size_t pr = row;
        while (pr < m && a[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(a[pr], a[row]);
        std::swap(b[pr], b[row]);
        const Rational piv = a[row][col];
        for (auto& x : a[row]) x /= piv;
        b[row] /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t c = 0; c < d; ++c) a[r][c] -= f * a[row][c];
            b[r] -= f * b[row];
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r)
        if (b[r] != 0) return {LinearSolve::Kind::NoSolution, {}};

    QVector point(d, Rational(0));
    for (const auto& [pr, pc] : pivots) point[pc] = b[pr];
    return {pivots.size() == d ? LinearSolve::Kind::Unique : LinearSolve::Kind::NonUnique,
            std::move(point)};
}

inline int rank_of(QMatrix a) {
    const std::size_t m = a.size();
    if (m == 0) return 0;
    const std::size_t d = a[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < m; ++col) {
        std::size_t pr = row;
        while (pr < m && a[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(a[pr], a[row]);
        for (std::size_t r = row + 1; r < m; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[row][col];
            for (std::size_t c = col; c < d; ++c) a[r][c] -= f * a[row][c];
        }
        ++rank;
        ++row;
    }
    return rank;
}

inline int rank_of(const std::vector<IVector>& rows) {
    QMatrix q;
    q.reserve(rows.size());
    for (const auto& r : rows) q.push_back(to_q(r));
    return rank_of(std::move(q));
}

// Determinant of a square integer matrix (exact, via rational elimination).
inline Int det_int(const std::vector<IVector>& rows) {
    const std::size_t n = rows.size();
    QMatrix a;
    a.reserve(n);
    for (const auto& r : rows) {
        detail::check_same_size(r.size(), n, "det_int");
        a.push_back(to_q(r));
    }
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && a[pr][col] == 0) ++pr;
        if (pr == n) return 0;
        if (pr != col) {
            std::swap(a[pr], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return numerator(det);  // integer input, integer determinant
}

}  // namespace fthresh
