#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "netinfer/errors.hpp"

namespace netinfer {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Binary symmetric ground-truth graph with zero diagonal.
struct AdjacencyMatrix {
    int n_nodes = 0;
    Matrix entries;  // values in {0,1}
};

// Symmetric combination matrix built by the Laplacian rule: every row sums
// to 1-mu, off-diagonal entries are 0 or (1-mu)*lambda/d_max.
struct CombinationMatrix {
    int n_nodes = 0;
    Matrix entries;
    double mu = 0.0;
    double lambda = 0.0;
};

// Erdős–Rényi G(n,p): each unordered pair is an edge independently with
// probability p. Pure function of (n_nodes, p, seed).
inline AdjacencyMatrix generate_er(int n_nodes, double p, std::uint64_t seed) {
    if (n_nodes < 2) throw ParameterError("generate_er: n_nodes must be >= 2");
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("generate_er: p must lie in (0,1)");

    std::mt19937_64 engine(seed);
    AdjacencyMatrix g;
    g.n_nodes = n_nodes;
    g.entries = Matrix::Zero(n_nodes, n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
        for (int j = k + 1; j < n_nodes; ++j) {
            double u = static_cast<double>(engine() >> 11) * 0x1p-53;
            if (u < p) {
                g.entries(k, j) = 1.0;
                g.entries(j, k) = 1.0;
            }
        }
    }
    return g;
}

// Barabási–Albert preferential attachment. Starts from a complete graph on
// m+1 nodes; each subsequent node attaches m edges to distinct existing
// nodes, sampled without replacement with probability proportional to the
// current degree. Edge count is exactly C(m+1,2) + m*(n_nodes-m-1).
inline AdjacencyMatrix generate_ba(int n_nodes, int m, std::uint64_t seed) {
    if (m < 1) throw ParameterError("generate_ba: m must be >= 1");
    if (m >= n_nodes) throw ParameterError("generate_ba: m must be < n_nodes");

    std::mt19937_64 engine(seed);
    AdjacencyMatrix g;
    g.n_nodes = n_nodes;
    g.entries = Matrix::Zero(n_nodes, n_nodes);

    std::vector<double> degree(static_cast<std::size_t>(n_nodes), 0.0);
    auto add_edge = [&](int a, int b) {
        g.entries(a, b) = 1.0;
        g.entries(b, a) = 1.0;
        degree[static_cast<std::size_t>(a)] += 1.0;
        degree[static_cast<std::size_t>(b)] += 1.0;
    };

    for (int k = 0; k <= m; ++k)
        for (int j = k + 1; j <= m; ++j) add_edge(k, j);

    std::vector<int> targets;
    for (int v = m + 1; v < n_nodes; ++v) {
        targets.clear();
        std::vector<double> weight(degree.begin(), degree.begin() + v);
        for (int e = 0; e < m; ++e) {
            double total = std::accumulate(weight.begin(), weight.end(), 0.0);
            double u = static_cast<double>(engine() >> 11) * 0x1p-53 * total;
            int chosen = -1;
            double cum = 0.0;
            for (int c = 0; c < v; ++c) {
                double w = weight[static_cast<std::size_t>(c)];
                if (w <= 0.0) continue;
                cum += w;
                chosen = c;
                if (u < cum) break;
            }
            targets.push_back(chosen);
            weight[static_cast<std::size_t>(chosen)] = 0.0;  // without replacement
        }
        for (int t : targets) add_edge(v, t);
    }
    return g;
}

// Laplacian combination rule: A_kj = G_kj*(1-mu)*lambda/d_max off-diagonal,
// diagonal set so each row sums to 1-mu. Degrees d_k = 1 + sum_z G_kz, d_max
// over all nodes. The off-diagonal weight is computed once so connected
// entries are bit-identical.
inline CombinationMatrix laplacian_combination(const AdjacencyMatrix& g,
                                               double lambda, double mu) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw ParameterError("laplacian_combination: lambda must lie in (0,1]");
    if (!(mu > 0.0 && mu < 1.0))
        throw ParameterError("laplacian_combination: mu must lie in (0,1)");

    const int n = g.n_nodes;
    double d_max = 0.0;
    for (int k = 0; k < n; ++k) {
        double d_k = 1.0 + g.entries.row(k).sum();
        d_max = std::max(d_max, d_k);
    }
    const double weight = (1.0 - mu) * lambda / d_max;

    CombinationMatrix a;
    a.n_nodes = n;
    a.mu = mu;
    a.lambda = lambda;
    a.entries = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double off_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            if (g.entries(k, j) != 0.0) {
                a.entries(k, j) = weight;
                off_sum += weight;
            }
        }
        a.entries(k, k) = (1.0 - mu) - off_sum;
    }
    return a;
}

// Largest absolute eigenvalue of a symmetric matrix.
inline double spectral_radius(const Matrix& a) {
    if (a.rows() != a.cols())
        throw ParameterError("spectral_radius: matrix must be square");
    if (a.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace netinfer
