#pragma once

#include <set>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace ringnet::topology {

/// Unweighted simple digraph with 1-based vertices. An arc (i, k) means
/// "agent i observes agent k", so row i of the Laplacian lists the
/// neighbours agent i measures against.
struct Digraph {
    int n = 0;
    std::set<std::pair<int, int>> arcs;

    /// Throws std::invalid_argument on self-loops or out-of-range indices.
    void validate() const;
};

/// Laplacian of an unweighted digraph: l_ik = -1 for each arc (i, k),
/// diagonal entries equal the out-degree, every row sums to zero.
struct LaplacianMatrix {
    int n = 0;
    Eigen::MatrixXd entries;

    /// Throws std::logic_error if the row-sum / entry-pattern invariants fail.
    void validate() const;
};

/// Ring on n = 2m vertices where odd agents observe both ring neighbours and
/// even agents observe only their predecessor. Rejects m < 3: the graph is
/// undefined for m = 1, and m = 2 produces a purely real spectrum that needs
/// none of the machinery here.
Digraph build_alternating_ring(int m);

/// Hamiltonian cycle: agent i observes agent i-1, agent 1 observes agent n.
Digraph build_cyclic_pursuit(int n);

/// Two-directional ring: agent i observes both i-1 and i+1.
Digraph build_bidirectional_ring(int n);

LaplacianMatrix laplacian(const Digraph& g);

/// True iff some vertex is reachable from every other vertex along arc
/// directions (reverse-reachability search from each candidate).
bool has_spanning_converging_tree(const Digraph& g);

/// CSV export: first line is n, then n rows of n integer entries.
std::string to_csv(const LaplacianMatrix& L);

}  // namespace ringnet::topology
