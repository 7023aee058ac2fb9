#pragma once

// Exact square linear assignment by successive shortest augmenting paths
// with dual potentials (Hungarian method, O(n^3)). Infinite entries mark
// forbidden pairs; a feasible perfect assignment must exist.

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "etd/errors.hpp"

namespace etd {

struct Assignment {
    /// row_to_col[i] is the column assigned to row i.
    std::vector<Eigen::Index> row_to_col;
};

template <typename Derived>
Assignment solve_assignment(const Eigen::MatrixBase<Derived>& cost) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = cost.rows();
    if (cost.cols() != n) throw InvalidArgument("assignment cost matrix must be square");

    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    // 1-based arrays; index 0 is the virtual source row/column.
    std::vector<Scalar> u(std::size_t(n) + 1, Scalar(0)), v(std::size_t(n) + 1, Scalar(0));
    std::vector<Eigen::Index> match(std::size_t(n) + 1, 0), way(std::size_t(n) + 1, 0);
    std::vector<Scalar> minv(std::size_t(n) + 1);
    std::vector<char> used(std::size_t(n) + 1);

    for (Eigen::Index row = 1; row <= n; ++row) {
        match[0] = row;
        Eigen::Index j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[std::size_t(j0)] = 1;
            const Eigen::Index i0 = match[std::size_t(j0)];
            Scalar delta = inf;
            Eigen::Index j1 = -1;
            for (Eigen::Index j = 1; j <= n; ++j) {
                if (used[std::size_t(j)]) continue;
                const Scalar c = cost(i0 - 1, j - 1);
                if (c != inf) {
                    const Scalar reduced = c - u[std::size_t(i0)] - v[std::size_t(j)];
                    if (reduced < minv[std::size_t(j)]) {
                        minv[std::size_t(j)] = reduced;
                        way[std::size_t(j)] = j0;
                    }
                }
                if (minv[std::size_t(j)] < delta) {
                    delta = minv[std::size_t(j)];
                    j1 = j;
                }
            }
            if (j1 < 0) throw InvalidArgument("assignment problem has no feasible solution");
            for (Eigen::Index j = 0; j <= n; ++j) {
                if (used[std::size_t(j)]) {
                    u[std::size_t(match[std::size_t(j)])] += delta;
                    v[std::size_t(j)] -= delta;
                } else {
                    minv[std::size_t(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[std::size_t(j0)] != 0);
        do {
            const Eigen::Index j1 = way[std::size_t(j0)];
            match[std::size_t(j0)] = match[std::size_t(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment out;
    out.row_to_col.assign(std::size_t(n), -1);
    for (Eigen::Index j = 1; j <= n; ++j)
        out.row_to_col[std::size_t(match[std::size_t(j)] - 1)] = j - 1;
    return out;
}

} // namespace etd
