/*
 * Copyright 2026 the mrsnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Dense reference solve of the crossbar wire mesh. Kept deliberately apart
// from the library path: edge-list assembly into a dense matrix, partial
// pivoting Gaussian elimination, no Eigen. Slow and simple on purpose.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mrsnn::test {

using DenseMatrix = std::vector<std::vector<double>>;

inline std::vector<double> gauss_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0)
            throw std::runtime_error("oracle: singular dense system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

/// Output currents (nA) of a single conductance array (nS) read through the
/// wire mesh: M input wires driven at their near ends, N output wires
/// sensed at virtual ground on the input-1 side, one r_wire segment per
/// cell pitch on every wire.
inline std::vector<double> oracle_mesh_currents(
    const std::vector<std::vector<double>>& g_ns, double r_wire,
    const std::vector<double>& v) {
    const std::size_t rows = g_ns.size();
    const std::size_t cols = g_ns.front().size();

    if (r_wire == 0.0) {
        // Degenerate circuit: exact vector-matrix product.
        std::vector<double> out(rows, 0.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                out[i] += g_ns[i][j] * v[j];
        return out;
    }

    const double gw = 1.0 / r_wire;
    const std::size_t n_nodes = 2 * rows * cols;
    auto in_node = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
    auto out_node = [rows, cols](std::size_t i, std::size_t j) {
        return rows * cols + i * cols + j;
    };

    DenseMatrix a(n_nodes, std::vector<double>(n_nodes, 0.0));
    std::vector<double> rhs(n_nodes, 0.0);
    auto edge = [&a](std::size_t p, std::size_t q, double g) {
        a[p][p] += g;
        a[q][q] += g;
        a[p][q] -= g;
        a[q][p] -= g;
    };

    for (std::size_t j = 0; j < cols; ++j) {
        a[in_node(0, j)][in_node(0, j)] += gw;  // segment to the source
        rhs[in_node(0, j)] += gw * v[j];
        for (std::size_t i = 1; i < rows; ++i)
            edge(in_node(i - 1, j), in_node(i, j), gw);
    }
    for (std::size_t i = 0; i < rows; ++i) {
        a[out_node(i, 0)][out_node(i, 0)] += gw;  // segment to virtual ground
        for (std::size_t j = 1; j < cols; ++j)
            edge(out_node(i, j - 1), out_node(i, j), gw);
    }
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (g_ns[i][j] != 0.0)
                edge(in_node(i, j), out_node(i, j), g_ns[i][j] * 1e-9);

    const std::vector<double> x = gauss_solve(std::move(a), std::move(rhs));
    std::vector<double> out(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        out[i] = gw * x[out_node(i, 0)] * 1e9;
    return out;
}

}  // namespace mrsnn::test
