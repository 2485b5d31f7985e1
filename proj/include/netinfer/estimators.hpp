#pragma once

#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "netinfer/errors.hpp"
#include "netinfer/moments.hpp"

namespace netinfer {

enum class EstimatorKind {
    UnbiasedCumulative,
    UnbiasedInstant,
    Granger,
    OneLag,
    Residual,
};

inline std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::UnbiasedCumulative: return "unbiased";
        case EstimatorKind::UnbiasedInstant: return "unbiased_instant";
        case EstimatorKind::Granger: return "granger";
        case EstimatorKind::OneLag: return "one_lag";
        case EstimatorKind::Residual: return "residual";
    }
    return "unknown";
}

// S x S estimate of the observed block A_S.
struct TopologyEstimate {
    int s_size = 0;
    EstimatorKind kind = EstimatorKind::UnbiasedCumulative;
    long n = 0;
    Matrix entries;
    double mu = 0.0;
};

// Single-time unbiased estimate:
//   (1/mu^2) (y_{t+1} y_t^T - y_{t+2} y_{t-1}^T)
inline TopologyEstimate unbiased_instant(const Vector& y_tm1, const Vector& y_t,
                                         const Vector& y_tp1, const Vector& y_tp2,
                                         double mu) {
    const Eigen::Index s = y_t.size();
    if (y_tm1.size() != s || y_tp1.size() != s || y_tp2.size() != s)
        throw ParameterError("unbiased_instant: vector length mismatch");
    if (!(mu > 0.0 && mu < 1.0))
        throw ParameterError("unbiased_instant: mu must lie in (0,1)");
    TopologyEstimate est;
    est.s_size = static_cast<int>(s);
    est.kind = EstimatorKind::UnbiasedInstant;
    est.n = 1;
    est.mu = mu;
    est.entries = (y_tp1 * y_t.transpose() - y_tp2 * y_tm1.transpose()) / (mu * mu);
    return est;
}

// Cumulative unbiased estimate (1/mu^2)(r1 - r3); equals the average of the
// single-time estimates over t = 1..n.
inline TopologyEstimate unbiased_cumulative(const SampleMoments& moments, double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw ParameterError("unbiased_cumulative: mu must lie in (0,1)");
    TopologyEstimate est;
    est.s_size = moments.s_size;
    est.kind = EstimatorKind::UnbiasedCumulative;
    est.n = moments.n;
    est.mu = mu;
    est.entries = (moments.r1 - moments.r3) / (mu * mu);
    return est;
}

// Granger estimate r1 * r0^{-1}, computed as a symmetric solve against r0.
// Throws IllConditionedError when r0's condition estimate exceeds 1e12.
inline TopologyEstimate granger(const SampleMoments& moments) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(moments.r0, Eigen::EigenvaluesOnly);
    const Vector abs_eigs = solver.eigenvalues().cwiseAbs();
    const double largest = abs_eigs.maxCoeff();
    const double smallest = abs_eigs.minCoeff();
    const double condition =
        (smallest > 0.0) ? largest / smallest : std::numeric_limits<double>::infinity();
    if (!(condition < 1e12))
        throw IllConditionedError("granger: sample r0 is ill-conditioned", condition);

    TopologyEstimate est;
    est.s_size = moments.s_size;
    est.kind = EstimatorKind::Granger;
    est.n = moments.n;
    // X r0 = r1  <=>  r0 X^T = r1^T (r0 symmetric)
    est.entries = moments.r0.ldlt().solve(moments.r1.transpose()).transpose();
    return est;
}

inline TopologyEstimate one_lag(const SampleMoments& moments) {
    TopologyEstimate est;
    est.s_size = moments.s_size;
    est.kind = EstimatorKind::OneLag;
    est.n = moments.n;
    est.entries = moments.r1;
    return est;
}

inline TopologyEstimate residual(const SampleMoments& moments) {
    TopologyEstimate est;
    est.s_size = moments.s_size;
    est.kind = EstimatorKind::Residual;
    est.n = moments.n;
    est.entries = moments.r1 - moments.r0;
    return est;
}

// Dispatch for the cumulative estimators used in sweeps.
inline TopologyEstimate estimate(EstimatorKind kind, const SampleMoments& moments, double mu) {
    switch (kind) {
        case EstimatorKind::UnbiasedCumulative: return unbiased_cumulative(moments, mu);
        case EstimatorKind::Granger: return granger(moments);
        case EstimatorKind::OneLag: return one_lag(moments);
        case EstimatorKind::Residual: return residual(moments);
        case EstimatorKind::UnbiasedInstant:
            throw ParameterError("estimate: the instant estimator takes raw vectors, not moments");
    }
    throw ParameterError("estimate: unknown estimator kind");
}

}  // namespace netinfer
