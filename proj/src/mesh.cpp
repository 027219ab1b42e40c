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

#include "mrsnn/mesh.hpp"

#include <vector>

#include "mrsnn/errors.hpp"

namespace mrsnn {

namespace {
constexpr double kNsToS = 1e-9;
constexpr double kAToNa = 1e9;
constexpr double kResidualContract = 1e-10;
}  // namespace

// Node indices: every cell (i, j) owns one node on its input wire and one on
// its output wire.
static inline int in_node(int i, int j, int cols) {
    return 2 * (i * cols + j);
}
static inline int out_node(int i, int j, int cols) {
    return 2 * (i * cols + j) + 1;
}

MeshSolver::MeshSolver(const Eigen::MatrixXd& g_ns, double r_wire_ohm)
    : rows_(static_cast<int>(g_ns.rows())),
      cols_(static_cast<int>(g_ns.cols())) {
    if (rows_ < 1 || cols_ < 1)
        throw DimensionMismatch("MeshSolver: empty conductance matrix");
    if (!(r_wire_ohm > 0.0))
        throw ConfigError("MeshSolver: requires r_wire > 0 (use the ideal read otherwise)");
    if ((g_ns.array() < 0.0).any())
        throw ConfigError("MeshSolver: negative device conductance");
    gw_ = 1.0 / r_wire_ohm;

    const int n_nodes = 2 * rows_ * cols_;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n_nodes) * 4);
    auto stamp_edge = [&trips](int a, int b, double g) {
        trips.emplace_back(a, a, g);
        trips.emplace_back(b, b, g);
        trips.emplace_back(a, b, -g);
        trips.emplace_back(b, a, -g);
    };

    for (int j = 0; j < cols_; ++j) {
        // Source drives IN(0, j) through one segment; the source voltage
        // lands on the right-hand side at solve time.
        trips.emplace_back(in_node(0, j, cols_), in_node(0, j, cols_), gw_);
        for (int i = 1; i < rows_; ++i)
            stamp_edge(in_node(i - 1, j, cols_), in_node(i, j, cols_), gw_);
    }
    for (int i = 0; i < rows_; ++i) {
        // Virtual ground terminates OUT(i, 0) through one segment.
        trips.emplace_back(out_node(i, 0, cols_), out_node(i, 0, cols_), gw_);
        for (int j = 1; j < cols_; ++j)
            stamp_edge(out_node(i, j - 1, cols_), out_node(i, j, cols_), gw_);
    }
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const double g = g_ns(i, j) * kNsToS;
            if (g > 0.0)
                stamp_edge(in_node(i, j, cols_), out_node(i, j, cols_), g);
        }

    system_.resize(n_nodes, n_nodes);
    system_.setFromTriplets(trips.begin(), trips.end());
    llt_.compute(system_);
    if (llt_.info() != Eigen::Success)
        throw SingularSystem("MeshSolver: Cholesky factorization failed");
}

Eigen::VectorXd MeshSolver::solve_nodes(const Eigen::VectorXd& v) const {
    if (v.size() != cols_)
        throw DimensionMismatch("MeshSolver: input vector length != cols");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(system_.rows());
    for (int j = 0; j < cols_; ++j) rhs[in_node(0, j, cols_)] = gw_ * v[j];

    const double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0) return Eigen::VectorXd::Zero(system_.rows());

    Eigen::VectorXd x = llt_.solve(rhs);
    double residual = (rhs - system_ * x).norm() / rhs_norm;
    if (residual > kResidualContract) {
        // One step of iterative refinement before giving up.
        x += llt_.solve(rhs - system_ * x);
        residual = (rhs - system_ * x).norm() / rhs_norm;
        if (residual > kResidualContract)
            throw SolverNotConverged("MeshSolver: residual above contract");
    }
    return x;
}

Eigen::VectorXd MeshSolver::solve_currents(const Eigen::VectorXd& v) const {
    const Eigen::VectorXd nodes = solve_nodes(v);
    Eigen::VectorXd currents(rows_);
    for (int i = 0; i < rows_; ++i)
        currents[i] = gw_ * nodes[out_node(i, 0, cols_)] * kAToNa;
    return currents;
}

Eigen::MatrixXd MeshSolver::effective_map(ExecPolicy policy) const {
    Eigen::MatrixXd eff(rows_, cols_);
    parallel_for(cols_, policy, [&](std::int64_t j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(cols_);
        v[j] = 1.0;
        // 1 V one-hot read: nA of output current == nS of effective weight.
        eff.col(j) = solve_currents(v);
    });
    return eff;
}

}  // namespace mrsnn
