#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "netinfer/errors.hpp"
#include "netinfer/estimators.hpp"

namespace netinfer {

enum class ClusteringMethod { Gmm, KMeans };

inline std::string to_string(ClusteringMethod m) {
    return m == ClusteringMethod::Gmm ? "gmm" : "kmeans";
}

// Two-component univariate Gaussian mixture fit. Component 1 carries the
// larger-mean "connected" cluster after fitting.
struct Gmm1dParams {
    double weight_0 = 0.5, weight_1 = 0.5;
    double mean_0 = 0.0, mean_1 = 0.0;
    double var_0 = 1.0, var_1 = 1.0;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Symmetric binary prediction of the observed subgraph.
struct PredictedAdjacency {
    int s_size = 0;
    Matrix entries;
};

struct PairValue {
    int i = 0, j = 0;  // i < j
    double value = 0.0;
};

// Symmetrized off-diagonal entries, one value per unordered pair.
inline std::vector<PairValue> extract_pair_values(const TopologyEstimate& estimate) {
    if (estimate.s_size < 2)
        throw ParameterError("extract_pair_values: estimate must be at least 2x2");
    std::vector<PairValue> values;
    values.reserve(static_cast<std::size_t>(estimate.s_size) * (estimate.s_size - 1) / 2);
    for (int i = 0; i < estimate.s_size; ++i)
        for (int j = i + 1; j < estimate.s_size; ++j)
            values.push_back({i, j, 0.5 * (estimate.entries(i, j) + estimate.entries(j, i))});
    return values;
}

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double log_normal_pdf(double x, double mean, double var) {
    const double d = x - mean;
    return -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
}

}  // namespace detail

inline Gmm1dParams fit_gmm_1d(const std::vector<double>& values, double init_mean_0 = 0.0,
                              double tol = 1e-8, int max_iter = 500) {
    if (values.size() < 4) throw ParameterError("fit_gmm_1d: need at least 4 values");
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    if (*min_it == *max_it) throw DegenerateDataError("fit_gmm_1d: all values identical");

    const std::size_t count = values.size();
    const double global_mean = detail::mean_of(values);
    double global_var = 0.0;
    for (double v : values) global_var += (v - global_mean) * (v - global_mean);
    global_var /= static_cast<double>(count);
    const double var_floor = 1e-12 * (global_var + 1e-300);
    const double weight_floor = 1e-6;

    // Component 1 initialized at the mean of values above the global median.
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[(count - 1) / 2] + sorted[count / 2]);
    double upper_sum = 0.0;
    std::size_t upper_count = 0;
    for (double v : values)
        if (v > median) {
            upper_sum += v;
            ++upper_count;
        }

    Gmm1dParams p;
    p.mean_0 = init_mean_0;
    p.mean_1 = (upper_count > 0) ? upper_sum / static_cast<double>(upper_count) : *max_it;
    p.var_0 = std::max(global_var, var_floor);
    p.var_1 = p.var_0;
    p.weight_0 = 0.5;
    p.weight_1 = 0.5;

    std::vector<double> resp(count);  // posterior of component 1
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iter; ++iter) {
        // E-step
        double ll = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double l0 = std::log(p.weight_0) + detail::log_normal_pdf(values[k], p.mean_0, p.var_0);
            const double l1 = std::log(p.weight_1) + detail::log_normal_pdf(values[k], p.mean_1, p.var_1);
            const double m = std::max(l0, l1);
            const double denom = std::exp(l0 - m) + std::exp(l1 - m);
            ll += m + std::log(denom);
            resp[k] = std::exp(l1 - m) / denom;
        }
        p.log_likelihood = ll;
        p.iterations = iter;

        // M-step
        double n1 = 0.0, s1 = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            n1 += resp[k];
            s1 += resp[k] * values[k];
        }
        const double n0 = static_cast<double>(count) - n1;
        const double s0 = std::accumulate(values.begin(), values.end(), 0.0) - s1;
        p.weight_1 = std::clamp(n1 / static_cast<double>(count), weight_floor, 1.0 - weight_floor);
        p.weight_0 = 1.0 - p.weight_1;
        if (n1 > 0.0) p.mean_1 = s1 / n1;
        if (n0 > 0.0) p.mean_0 = s0 / n0;
        double v0 = 0.0, v1 = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double d0 = values[k] - p.mean_0;
            const double d1 = values[k] - p.mean_1;
            v0 += (1.0 - resp[k]) * d0 * d0;
            v1 += resp[k] * d1 * d1;
        }
        p.var_0 = std::max((n0 > 0.0) ? v0 / n0 : var_floor, var_floor);
        p.var_1 = std::max((n1 > 0.0) ? v1 / n1 : var_floor, var_floor);

        if (std::abs(ll - prev_ll) < tol * (std::abs(ll) + 1e-300)) {
            p.converged = true;
            break;
        }
        prev_ll = ll;
    }
    return p;
}

// Posterior assignment; the larger-mean component is "connected" (1).
// Posterior tie resolves to 0.
inline std::vector<int> classify_gmm(const std::vector<double>& values, const Gmm1dParams& p) {
    const bool comp1_connected = p.mean_1 >= p.mean_0;
    std::vector<int> labels(values.size(), 0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double l0 = std::log(p.weight_0) + detail::log_normal_pdf(values[k], p.mean_0, p.var_0);
        const double l1 = std::log(p.weight_1) + detail::log_normal_pdf(values[k], p.mean_1, p.var_1);
        const double connected = comp1_connected ? l1 : l0;
        const double disconnected = comp1_connected ? l0 : l1;
        labels[k] = (connected > disconnected) ? 1 : 0;
    }
    return labels;
}

// Exact 2-means on the line. The optimum is a threshold in sorted order, so
// every split is scored by within-cluster SSE and the best one returned; the
// result is a Lloyd fixed point, so a subsequent Lloyd pass (max_iter bound)
// cannot move it. The larger-centroid cluster is "connected" (1).
inline std::vector<int> kmeans_1d(const std::vector<double>& values, int max_iter = 100) {
    (void)max_iter;
    if (values.size() < 2) throw ParameterError("kmeans_1d: need at least 2 values");
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    if (*min_it == *max_it) throw DegenerateDataError("kmeans_1d: all values identical");

    const std::size_t count = values.size();
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> prefix(count + 1, 0.0), prefix_sq(count + 1, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        const double v = values[order[k]];
        prefix[k + 1] = prefix[k] + v;
        prefix_sq[k + 1] = prefix_sq[k] + v * v;
    }
    auto sse = [&](std::size_t lo, std::size_t hi) {  // half-open [lo, hi)
        const double cnt = static_cast<double>(hi - lo);
        const double sum = prefix[hi] - prefix[lo];
        return (prefix_sq[hi] - prefix_sq[lo]) - sum * sum / cnt;
    };
    std::size_t best_split = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t split = 1; split < count; ++split) {
        const double total = sse(0, split) + sse(split, count);
        if (total < best) {
            best = total;
            best_split = split;
        }
    }
    std::vector<int> labels(count, 0);
    for (std::size_t k = best_split; k < count; ++k) labels[order[k]] = 1;
    return labels;
}

inline PredictedAdjacency labels_to_prediction(const std::vector<PairValue>& pairs,
                                               const std::vector<int>& labels, int s_size) {
    PredictedAdjacency pred;
    pred.s_size = s_size;
    pred.entries = Matrix::Zero(s_size, s_size);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (labels[k] == 1) {
            pred.entries(pairs[k].i, pairs[k].j) = 1.0;
            pred.entries(pairs[k].j, pairs[k].i) = 1.0;
        }
    }
    return pred;
}

// Full pair-clustering step: symmetrize, cluster, fill a binary matrix.
// Degenerate all-identical values propagate as DegenerateDataError.
inline PredictedAdjacency infer_topology(const TopologyEstimate& estimate,
                                         ClusteringMethod method) {
    const std::vector<PairValue> pairs = extract_pair_values(estimate);
    std::vector<double> values;
    values.reserve(pairs.size());
    for (const PairValue& pv : pairs) values.push_back(pv.value);

    std::vector<int> labels;
    if (method == ClusteringMethod::Gmm) {
        const Gmm1dParams params = fit_gmm_1d(values);
        labels = classify_gmm(values, params);
    } else {
        labels = kmeans_1d(values);
    }
    return labels_to_prediction(pairs, labels, estimate.s_size);
}

}  // namespace netinfer
