#pragma once

#include <cmath>
#include <vector>

#include "netinfer/clustering.hpp"
#include "netinfer/errors.hpp"

namespace netinfer {

struct RunMetrics {
    double error_rate = 0.0;
    double fn_score = 0.0;
    double fp_score = 0.0;
    bool degenerate_flag = false;
};

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct AggregateMetrics {
    MetricSummary error_rate, fn_score, fp_score;
    double bias = 0.0;
    double variance = 0.0;
    long runs = 0;
};

namespace detail {

inline void check_same_size(const PredictedAdjacency& pred, const Matrix& truth,
                            const char* op) {
    if (truth.rows() != truth.cols() || pred.s_size != truth.rows())
        throw ParameterError(std::string(op) + ": size mismatch");
}

}  // namespace detail

// Fraction of unordered off-diagonal pairs whose status is misclassified.
inline double error_rate(const PredictedAdjacency& pred, const Matrix& truth) {
    detail::check_same_size(pred, truth, "error_rate");
    const int s = pred.s_size;
    long wrong = 0;
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if ((pred.entries(i, j) != 0.0) != (truth(i, j) != 0.0)) ++wrong;
    const long pairs = static_cast<long>(s) * (s - 1) / 2;
    return static_cast<double>(wrong) / static_cast<double>(pairs);
}

// Fraction of truly disconnected pairs declared connected.
inline double fn_score(const PredictedAdjacency& pred, const Matrix& truth) {
    detail::check_same_size(pred, truth, "fn_score");
    const int s = pred.s_size;
    long disconnected = 0, declared = 0;
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if (truth(i, j) == 0.0) {
                ++disconnected;
                if (pred.entries(i, j) != 0.0) ++declared;
            }
    if (disconnected == 0)
        throw UndefinedMetricError("fn_score: truth has no disconnected pair");
    return static_cast<double>(declared) / static_cast<double>(disconnected);
}

// Fraction of truly connected pairs declared disconnected.
inline double fp_score(const PredictedAdjacency& pred, const Matrix& truth) {
    detail::check_same_size(pred, truth, "fp_score");
    const int s = pred.s_size;
    long connected = 0, declared = 0;
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if (truth(i, j) != 0.0) {
                ++connected;
                if (pred.entries(i, j) == 0.0) ++declared;
            }
    if (connected == 0)
        throw UndefinedMetricError("fp_score: truth has no connected pair");
    return static_cast<double>(declared) / static_cast<double>(connected);
}

// Scalar bias/variance summaries across Monte Carlo runs against a fixed A_S:
// bias = mean over entries of |mean_r estimate - A_S|, variance = mean over
// entries of the sample variance (divisor R-1).
inline std::pair<double, double> bias_variance(const std::vector<TopologyEstimate>& estimates,
                                               const Matrix& truth) {
    if (estimates.size() < 2) throw ParameterError("bias_variance: need >= 2 runs");
    const Eigen::Index s = truth.rows();
    for (const TopologyEstimate& e : estimates)
        if (e.entries.rows() != s || e.entries.cols() != s)
            throw ParameterError("bias_variance: estimate size mismatch");
    const double runs = static_cast<double>(estimates.size());

    Matrix mean = Matrix::Zero(s, s);
    for (const TopologyEstimate& e : estimates) mean += e.entries;
    mean /= runs;

    Matrix sq_dev = Matrix::Zero(s, s);
    for (const TopologyEstimate& e : estimates)
        sq_dev += (e.entries - mean).cwiseProduct(e.entries - mean);

    const double entries = static_cast<double>(s) * static_cast<double>(s);
    const double bias = (mean - truth).cwiseAbs().sum() / entries;
    const double variance = sq_dev.sum() / (runs - 1.0) / entries;
    return {bias, variance};
}

namespace detail {

inline MetricSummary summarize(const std::vector<double>& samples) {
    const double runs = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= runs;
    double sq = 0.0;
    for (double v : samples) sq += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(sq / (runs - 1.0));
    const double half_width = 1.96 * std_dev / std::sqrt(runs);
    return {mean, std_dev, mean - half_width, mean + half_width};
}

}  // namespace detail

// Mean / sample std / 95% normal-approximation CI per metric.
inline AggregateMetrics aggregate(const std::vector<RunMetrics>& run_metrics) {
    if (run_metrics.size() < 2) throw ParameterError("aggregate: need >= 2 runs");
    std::vector<double> err, fn, fp;
    err.reserve(run_metrics.size());
    fn.reserve(run_metrics.size());
    fp.reserve(run_metrics.size());
    for (const RunMetrics& m : run_metrics) {
        err.push_back(m.error_rate);
        fn.push_back(m.fn_score);
        fp.push_back(m.fp_score);
    }
    AggregateMetrics agg;
    agg.error_rate = detail::summarize(err);
    agg.fn_score = detail::summarize(fn);
    agg.fp_score = detail::summarize(fp);
    agg.runs = static_cast<long>(run_metrics.size());
    return agg;
}

}  // namespace netinfer
