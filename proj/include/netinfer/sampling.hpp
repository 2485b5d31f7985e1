#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netinfer/errors.hpp"
#include "netinfer/graph.hpp"
#include "netinfer/rng.hpp"

namespace netinfer {

// Sequence y_0 ... y_T of the diffusion process. Exactly T+1 vectors.
struct SignalTrajectory {
    int n_nodes = 0;
    std::vector<Vector> vectors;

    int horizon() const { return static_cast<int>(vectors.size()) - 1; }
};

// Sorted set S of monitored node indices; xi = |S|/N.
struct ObservationMask {
    int n_nodes = 0;
    std::vector<int> indices;
    double xi = 0.0;
};

// Incremental VAR process: y_0 = mu*x_0, y_{t+1} = A*y_t + mu*x_{t+1}.
// Streaming consumers pull one vector at a time; the stored-trajectory path
// below uses the same stepper, so both produce bit-identical signals.
class VarProcess {
public:
    VarProcess(const CombinationMatrix& a, double mu, NoiseSource noise)
        : a_(&a), mu_(mu), noise_(std::move(noise)) {
        if (mu != a.mu)
            throw ParameterError("VarProcess: mu does not match the combination matrix");
        current_ = mu_ * noise_.next_vector(a.n_nodes);
    }

    const Vector& current() const { return current_; }

    const Vector& step() {
        current_ = (a_->entries * current_ + mu_ * noise_.next_vector(a_->n_nodes)).eval();
        return current_;
    }

private:
    const CombinationMatrix* a_;
    double mu_;
    NoiseSource noise_;
    Vector current_;
};

inline SignalTrajectory simulate_var(const CombinationMatrix& a, double mu, int horizon,
                                     NoiseSource noise) {
    if (horizon < 3) throw ParameterError("simulate_var: horizon must be >= 3");
    VarProcess process(a, mu, std::move(noise));
    SignalTrajectory traj;
    traj.n_nodes = a.n_nodes;
    traj.vectors.reserve(static_cast<std::size_t>(horizon) + 1);
    traj.vectors.push_back(process.current());
    for (int t = 0; t < horizon; ++t) traj.vectors.push_back(process.step());
    return traj;
}

// Uniformly random subset of size round(xi*N), sorted.
inline ObservationMask select_observed(int n_nodes, double xi, std::uint64_t seed) {
    int size = static_cast<int>(std::llround(xi * n_nodes));
    if (size < 2) throw ParameterError("select_observed: observed subset must have >= 2 nodes");
    if (size > n_nodes) throw ParameterError("select_observed: xi*N exceeds N");

    std::vector<int> all(static_cast<std::size_t>(n_nodes));
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 engine(seed);
    // Fisher-Yates prefix shuffle; explicit bounded draws for portability.
    for (int k = 0; k < size; ++k) {
        std::uint64_t span = static_cast<std::uint64_t>(n_nodes - k);
        int j = k + static_cast<int>(engine() % span);
        std::swap(all[static_cast<std::size_t>(k)], all[static_cast<std::size_t>(j)]);
    }
    ObservationMask mask;
    mask.n_nodes = n_nodes;
    mask.indices.assign(all.begin(), all.begin() + size);
    std::sort(mask.indices.begin(), mask.indices.end());
    mask.xi = static_cast<double>(size) / n_nodes;
    return mask;
}

inline Vector project(const Vector& y, const ObservationMask& mask) {
    Vector out(static_cast<Eigen::Index>(mask.indices.size()));
    for (std::size_t k = 0; k < mask.indices.size(); ++k) {
        int idx = mask.indices[k];
        if (idx < 0 || idx >= y.size())
            throw ParameterError("observe: mask index out of range");
        out[static_cast<Eigen::Index>(k)] = y[idx];
    }
    return out;
}

inline SignalTrajectory observe(const SignalTrajectory& traj, const ObservationMask& mask) {
    SignalTrajectory out;
    out.n_nodes = static_cast<int>(mask.indices.size());
    out.vectors.reserve(traj.vectors.size());
    for (const Vector& y : traj.vectors) out.vectors.push_back(project(y, mask));
    return out;
}

// Restricts an N x N matrix to the rows/columns indexed by the mask.
inline Matrix submatrix(const Matrix& m, const ObservationMask& mask) {
    const auto s = static_cast<Eigen::Index>(mask.indices.size());
    Matrix out(s, s);
    for (Eigen::Index r = 0; r < s; ++r)
        for (Eigen::Index c = 0; c < s; ++c)
            out(r, c) = m(mask.indices[static_cast<std::size_t>(r)],
                          mask.indices[static_cast<std::size_t>(c)]);
    return out;
}

// Binary trajectory dump: 16-byte header (N, T as little-endian uint64),
// then the vectors y_0 ... y_T as consecutive little-endian float64.
inline void write_trajectory(const SignalTrajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_trajectory: cannot open " + path);
    std::uint64_t n = static_cast<std::uint64_t>(traj.n_nodes);
    std::uint64_t horizon = static_cast<std::uint64_t>(traj.horizon());
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&horizon), 8);
    for (const Vector& y : traj.vectors)
        out.write(reinterpret_cast<const char*>(y.data()),
                  static_cast<std::streamsize>(sizeof(double)) * y.size());
    if (!out) throw IoError("write_trajectory: write failed for " + path);
}

inline SignalTrajectory read_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_trajectory: cannot open " + path);
    std::uint64_t n = 0, horizon = 0;
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&horizon), 8);
    if (!in) throw IoError("read_trajectory: truncated header in " + path);
    SignalTrajectory traj;
    traj.n_nodes = static_cast<int>(n);
    traj.vectors.resize(static_cast<std::size_t>(horizon) + 1,
                        Vector(static_cast<Eigen::Index>(n)));
    for (Vector& y : traj.vectors) {
        in.read(reinterpret_cast<char*>(y.data()),
                static_cast<std::streamsize>(sizeof(double)) * y.size());
        if (!in) throw IoError("read_trajectory: truncated data in " + path);
    }
    return traj;
}

}  // namespace netinfer
