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

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "mrsnn/parallel.hpp"

namespace mrsnn {

/// Nodal model of one physical crossbar array with finite wire resistance.
///
/// Layout (per the usual crossbar drawing): M input wires are driven from
/// ideal sources at their near ends; N output wires end in ideal
/// virtual-ground sense amplifiers on the side adjacent to input 1. Every
/// wire contributes one r_wire segment per cell pitch, so the one-hot path
/// through cell (i, j) crosses i + j segments: cell (1,1) sees the least
/// wire, cell (N,M) the most.
///
/// The conductance matrix g is indexed (output i, input j) in nS, i.e. the
/// ideal read is I_i = sum_j g_ij * v_j. Unknowns are the 2*N*M internal
/// wire nodes; the system is an SPD weighted-graph Laplacian with Dirichlet
/// terms at the sources and sense inputs.
class MeshSolver {
public:
    /// Builds and factorizes the nodal system. Requires r_wire > 0.
    /// Throws SingularSystem if the factorization fails.
    MeshSolver(const Eigen::MatrixXd& g_ns, double r_wire_ohm);

    /// Per-output currents (nA) into the virtual grounds for input voltage
    /// vector v (V, length M). Solutions honor a 1e-10 relative residual
    /// contract; SolverNotConverged otherwise.
    Eigen::VectorXd solve_currents(const Eigen::VectorXd& v) const;

    /// Effective conductance map (nS): one one-hot read per input wire, all
    /// N*M cells recovered from the shared factorization. The per-input
    /// solves are independent, so they run under `policy`.
    Eigen::MatrixXd effective_map(ExecPolicy policy = ExecPolicy::Parallel) const;

    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    Eigen::VectorXd solve_nodes(const Eigen::VectorXd& v) const;

    int rows_;   // N outputs
    int cols_;   // M inputs
    double gw_;  // wire segment conductance, S
    Eigen::SparseMatrix<double> system_;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
};

}  // namespace mrsnn
