#include "ringnet/topology.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ringnet::topology {

void Digraph::validate() const {
    if (n < 1) {
        throw std::invalid_argument("Digraph: vertex count must be positive");
    }
    for (const auto& [i, k] : arcs) {
        if (i == k) {
            throw std::invalid_argument("Digraph: self-loop at vertex " + std::to_string(i));
        }
        if (i < 1 || i > n || k < 1 || k > n) {
            throw std::invalid_argument("Digraph: arc (" + std::to_string(i) + "," +
                                        std::to_string(k) + ") out of range 1.." +
                                        std::to_string(n));
        }
    }
}

void LaplacianMatrix::validate() const {
    if (entries.rows() != n || entries.cols() != n) {
        throw std::logic_error("LaplacianMatrix: dimension mismatch");
    }
    for (int i = 0; i < n; ++i) {
        double degree = 0.0;
        double row_sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double v = entries(i, k);
            row_sum += v;
            if (i == k) continue;
            if (v != 0.0 && v != -1.0) {
                throw std::logic_error("LaplacianMatrix: off-diagonal entry not in {0,-1}");
            }
            degree -= v;
        }
        if (row_sum != 0.0) {
            throw std::logic_error("LaplacianMatrix: row " + std::to_string(i + 1) +
                                   " does not sum to zero");
        }
        if (entries(i, i) != degree) {
            throw std::logic_error("LaplacianMatrix: diagonal of row " + std::to_string(i + 1) +
                                   " does not equal the out-degree");
        }
    }
}

namespace {

int ring_prev(int i, int n) { return i == 1 ? n : i - 1; }
int ring_next(int i, int n) { return i == n ? 1 : i + 1; }

}  // namespace

Digraph build_alternating_ring(int m) {
    if (m < 3) {
        throw std::invalid_argument(
            "build_alternating_ring: m must be >= 3 (the graph does not exist for m = 1, "
            "and m = 2 yields a purely real Laplacian spectrum)");
    }
    Digraph g;
    g.n = 2 * m;
    for (int i = 1; i <= g.n; ++i) {
        g.arcs.emplace(i, ring_prev(i, g.n));
        if (i % 2 == 1) {
            g.arcs.emplace(i, ring_next(i, g.n));
        }
    }
    g.validate();
    return g;
}

Digraph build_cyclic_pursuit(int n) {
    if (n < 3) {
        throw std::invalid_argument("build_cyclic_pursuit: n must be >= 3");
    }
    Digraph g;
    g.n = n;
    for (int i = 1; i <= n; ++i) {
        g.arcs.emplace(i, ring_prev(i, n));
    }
    g.validate();
    return g;
}

Digraph build_bidirectional_ring(int n) {
    if (n < 3) {
        throw std::invalid_argument("build_bidirectional_ring: n must be >= 3");
    }
    Digraph g;
    g.n = n;
    for (int i = 1; i <= n; ++i) {
        g.arcs.emplace(i, ring_prev(i, n));
        g.arcs.emplace(i, ring_next(i, n));
    }
    g.validate();
    return g;
}

LaplacianMatrix laplacian(const Digraph& g) {
    g.validate();
    LaplacianMatrix L;
    L.n = g.n;
    L.entries = Eigen::MatrixXd::Zero(g.n, g.n);
    for (const auto& [i, k] : g.arcs) {
        L.entries(i - 1, k - 1) = -1.0;
        L.entries(i - 1, i - 1) += 1.0;
    }
    return L;
}

bool has_spanning_converging_tree(const Digraph& g) {
    g.validate();
    if (g.n == 1) return true;

    // reverse adjacency: rev[k] holds every i with an arc (i, k)
    std::vector<std::vector<int>> rev(g.n + 1);
    for (const auto& [i, k] : g.arcs) {
        rev[k].push_back(i);
    }

    for (int root = 1; root <= g.n; ++root) {
        std::vector<char> seen(g.n + 1, 0);
        std::queue<int> frontier;
        frontier.push(root);
        seen[root] = 1;
        int count = 1;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int u : rev[v]) {
                if (!seen[u]) {
                    seen[u] = 1;
                    ++count;
                    frontier.push(u);
                }
            }
        }
        if (count == g.n) return true;
    }
    return false;
}

std::string to_csv(const LaplacianMatrix& L) {
    std::ostringstream os;
    os << L.n << '\n';
    for (int i = 0; i < L.n; ++i) {
        for (int k = 0; k < L.n; ++k) {
            if (k) os << ',';
            os << static_cast<long long>(std::llround(L.entries(i, k)));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace ringnet::topology
