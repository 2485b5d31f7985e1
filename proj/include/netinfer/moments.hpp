#pragma once

#include <deque>

#include <Eigen/Dense>

#include "netinfer/errors.hpp"
#include "netinfer/graph.hpp"
#include "netinfer/sampling.hpp"

namespace netinfer {

// Time-averaged lag-0/1/3 correlation matrices of the observed signal:
//   r0 = (1/n) sum_{t=1..n} y_t y_t^T
//   r1 = (1/n) sum_{t=1..n} y_{t+1} y_t^T
//   r3 = (1/n) sum_{t=1..n} y_{t+2} y_{t-1}^T
struct SampleMoments {
    int s_size = 0;
    long n = 0;
    Matrix r0, r1, r3;
};

// Streaming accumulator. Vectors are fed in time order starting at y_0; the
// t-th summand of each sum is added as soon as y_{t+2} arrives, so a snapshot
// at sample count n needs exactly the vectors y_0 ... y_{n+2}. Summation is
// ascending in t with a single division by n at snapshot time; feeding the
// same vectors always produces bit-identical moments.
class MomentAccumulator {
public:
    explicit MomentAccumulator(int s_size)
        : s_size_(s_size),
          sum0_(Matrix::Zero(s_size, s_size)),
          sum1_(Matrix::Zero(s_size, s_size)),
          sum3_(Matrix::Zero(s_size, s_size)) {
        if (s_size < 1) throw ParameterError("MomentAccumulator: s_size must be >= 1");
    }

    void feed(const Vector& y) {
        if (y.size() != s_size_)
            throw ParameterError("MomentAccumulator: vector size mismatch");
        window_.push_back(y);
        if (window_.size() > 4) window_.pop_front();
        ++vectors_seen_;
        if (vectors_seen_ >= 4) {
            // newest vector is y_{t+2} with t = vectors_seen_ - 3
            const Vector& y_tm1 = window_[0];
            const Vector& y_t = window_[1];
            const Vector& y_tp1 = window_[2];
            const Vector& y_tp2 = window_[3];
            sum0_.noalias() += y_t * y_t.transpose();
            sum1_.noalias() += y_tp1 * y_t.transpose();
            sum3_.noalias() += y_tp2 * y_tm1.transpose();
            ++samples_;
        }
    }

    long samples() const { return samples_; }

    SampleMoments snapshot() const {
        if (samples_ < 1)
            throw ParameterError("MomentAccumulator: no complete sample yet (need >= 4 vectors)");
        SampleMoments m;
        m.s_size = s_size_;
        m.n = samples_;
        const double inv_n = 1.0 / static_cast<double>(samples_);
        m.r0 = sum0_ * inv_n;
        m.r1 = sum1_ * inv_n;
        m.r3 = sum3_ * inv_n;
        return m;
    }

private:
    int s_size_;
    long vectors_seen_ = 0;
    long samples_ = 0;
    std::deque<Vector> window_;
    Matrix sum0_, sum1_, sum3_;
};

// Batch accumulation over a stored (observed) trajectory y_0 ... y_{n+2}.
inline SampleMoments accumulate(const SignalTrajectory& observed, long n) {
    if (n < 1) throw ParameterError("accumulate: n must be >= 1");
    if (static_cast<long>(observed.vectors.size()) < n + 3)
        throw ParameterError("accumulate: trajectory shorter than n+3 vectors");
    MomentAccumulator acc(observed.n_nodes);
    for (long t = 0; t <= n + 2; ++t)
        acc.feed(observed.vectors[static_cast<std::size_t>(t)]);
    return acc.snapshot();
}

// R0(t) = mu^2 (I + A^2 + ... + A^{2t})
inline Matrix analytic_r0(const CombinationMatrix& a, double mu, int t) {
    if (t < 0) throw ParameterError("analytic_r0: t must be >= 0");
    const Matrix a2 = a.entries * a.entries;
    Matrix power = Matrix::Identity(a.n_nodes, a.n_nodes);
    Matrix sum = power;
    for (int j = 1; j <= t; ++j) {
        power = (a2 * power).eval();
        sum += power;
    }
    return mu * mu * sum;
}

// R1(t) = mu^2 (A + A^3 + ... + A^{2t+1}), summed directly over odd powers so
// the identity R1(t) = A*R0(t) stays an independent cross-check.
inline Matrix analytic_r1(const CombinationMatrix& a, double mu, int t) {
    if (t < 0) throw ParameterError("analytic_r1: t must be >= 0");
    const Matrix a2 = a.entries * a.entries;
    Matrix power = a.entries;
    Matrix sum = power;
    for (int j = 1; j <= t; ++j) {
        power = (a2 * power).eval();
        sum += power;
    }
    return mu * mu * sum;
}

// R3(t-1) = mu^2 (A^3 + A^5 + ... + A^{2t+1}); argument is t-1 >= 0.
inline Matrix analytic_r3(const CombinationMatrix& a, double mu, int t_minus_1) {
    if (t_minus_1 < 0) throw ParameterError("analytic_r3: t-1 must be >= 0");
    const Matrix a2 = a.entries * a.entries;
    Matrix power = (a2 * a.entries).eval();
    Matrix sum = power;
    for (int j = 1; j <= t_minus_1; ++j) {
        power = (a2 * power).eval();
        sum += power;
    }
    return mu * mu * sum;
}

// lim_t R0(t) = mu^2 (I - A^2)^{-1}, via a dense symmetric solve.
inline Matrix analytic_r0_limit(const CombinationMatrix& a, double mu) {
    if (spectral_radius(a.entries) >= 1.0)
        throw StabilityError("analytic_r0_limit: spectral radius >= 1, series diverges");
    const int n = a.n_nodes;
    const Matrix lhs = Matrix::Identity(n, n) - a.entries * a.entries;
    const Matrix rhs = mu * mu * Matrix::Identity(n, n);
    Matrix x = lhs.ldlt().solve(rhs);
    const double residual = (lhs * x - rhs).cwiseAbs().maxCoeff();
    if (residual > 1e-10)
        throw StabilityError("analytic_r0_limit: solve residual exceeds 1e-10");
    return x;
}

}  // namespace netinfer
