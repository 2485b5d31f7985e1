#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>
#include <tuple>
#include <vector>

#include "netinfer/graph.hpp"
#include "netinfer/harness/config.hpp"
#include "netinfer/metrics.hpp"
#include "netinfer/moments.hpp"
#include "netinfer/sampling.hpp"

namespace netinfer {

struct RunRecord {
    std::uint64_t experiment_id = 0;
    EstimatorKind estimator = EstimatorKind::UnbiasedCumulative;
    ClusteringMethod clustering = ClusteringMethod::Gmm;
    long n = 0;
    int run = 0;
    std::uint64_t seed = 0;  // noise substream seed of the run
    RunMetrics metrics;
    bool failed = false;
    std::string fail_reason;
    double wall_time_ms = 0.0;
};

struct CellKey {
    EstimatorKind estimator;
    ClusteringMethod clustering;
    long n;

    bool operator<(const CellKey& o) const {
        return std::tie(estimator, clustering, n) < std::tie(o.estimator, o.clustering, o.n);
    }
};

struct CellAggregate {
    CellKey key;
    AggregateMetrics metrics;
    long failed_runs = 0;
    long degenerate_runs = 0;
};

struct SweepResult {
    ExperimentConfig config;
    std::uint64_t experiment_id = 0;
    std::vector<RunRecord> records;  // sorted by (estimator, clustering, n, run)
    std::vector<CellAggregate> cells;
};

namespace detail {

// Per-entry Welford accumulator over the deviation (estimate - A_S) of one
// (estimator, n) cell; feeds the scalar bias/variance columns.
struct DeviationStats {
    long count = 0;
    Matrix mean, m2;

    void init(int s) {
        mean = Matrix::Zero(s, s);
        m2 = Matrix::Zero(s, s);
    }

    void add(const Matrix& deviation) {
        if (count == 0) init(static_cast<int>(deviation.rows()));
        ++count;
        const Matrix delta = deviation - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta.cwiseProduct(deviation - mean);
    }
};

struct RunOutput {
    std::vector<RunRecord> records;
    // deviation matrices per (estimator, n), empty when estimation failed
    std::map<std::pair<EstimatorKind, long>, Matrix> deviations;
};

inline RunOutput execute_run(const ExperimentConfig& cfg, int run,
                             std::uint64_t experiment_id) {
    const std::uint64_t graph_run = cfg.graph_mode == ResampleMode::Fixed
                                        ? 0
                                        : static_cast<std::uint64_t>(run);
    const std::uint64_t mask_run = cfg.mask_mode == ResampleMode::Fixed
                                       ? 0
                                       : static_cast<std::uint64_t>(run);
    const std::uint64_t graph_seed = derive_seed(cfg.master_seed, graph_run, "graph");
    const std::uint64_t mask_seed = derive_seed(cfg.master_seed, mask_run, "mask");
    const std::uint64_t noise_seed =
        derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run), "noise");

    const AdjacencyMatrix g =
        cfg.graph_model.kind == GraphKind::ErdosRenyi
            ? generate_er(cfg.n_nodes, cfg.graph_model.p, graph_seed)
            : generate_ba(cfg.n_nodes, cfg.graph_model.m, graph_seed);
    const CombinationMatrix a = laplacian_combination(g, cfg.lambda, cfg.mu);
    const ObservationMask mask = select_observed(cfg.n_nodes, cfg.xi, mask_seed);
    const Matrix truth_gs = submatrix(g.entries, mask);
    const Matrix truth_as = submatrix(a.entries, mask);

    RunOutput out;
    VarProcess process(a, cfg.mu, NoiseSource(noise_seed));
    MomentAccumulator acc(static_cast<int>(mask.indices.size()));
    acc.feed(project(process.current(), mask));

    std::size_t next_size = 0;
    while (next_size < cfg.sample_sizes.size()) {
        acc.feed(project(process.step(), mask));
        if (acc.samples() != cfg.sample_sizes[next_size]) continue;
        const long n = cfg.sample_sizes[next_size++];
        const SampleMoments moments = acc.snapshot();

        for (EstimatorKind kind : cfg.estimators) {
            const auto t0 = std::chrono::steady_clock::now();
            TopologyEstimate est;
            bool est_failed = false;
            std::string reason;
            try {
                est = estimate(kind, moments, cfg.mu);
                out.deviations[{kind, n}] = est.entries - truth_as;
            } catch (const std::exception& e) {
                est_failed = true;
                reason = e.what();
            }

            for (ClusteringMethod method : cfg.clustering) {
                RunRecord rec;
                rec.experiment_id = experiment_id;
                rec.estimator = kind;
                rec.clustering = method;
                rec.n = n;
                rec.run = run;
                rec.seed = noise_seed;
                if (est_failed) {
                    rec.failed = true;
                    rec.fail_reason = reason;
                } else {
                    try {
                        PredictedAdjacency pred;
                        try {
                            pred = infer_topology(est, method);
                        } catch (const DegenerateDataError&) {
                            // near-empty observed subgraph: fall back to the
                            // all-disconnected prediction and flag the run
                            pred.s_size = est.s_size;
                            pred.entries = Matrix::Zero(est.s_size, est.s_size);
                            rec.metrics.degenerate_flag = true;
                        }
                        rec.metrics.error_rate = error_rate(pred, truth_gs);
                        rec.metrics.fn_score = fn_score(pred, truth_gs);
                        rec.metrics.fp_score = fp_score(pred, truth_gs);
                    } catch (const std::exception& e) {
                        rec.failed = true;
                        rec.fail_reason = e.what();
                    }
                }
                const auto t1 = std::chrono::steady_clock::now();
                rec.wall_time_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                out.records.push_back(rec);
            }
        }
    }
    return out;
}

}  // namespace detail

inline int default_worker_count() {
    if (const char* env = std::getenv("NETINFER_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Executes every Monte Carlo run of the sweep. Runs are independent work
// items over a bounded worker pool; results are merged and canonically
// sorted, so the output is invariant to worker count and schedule.
inline SweepResult run_experiment(const ExperimentConfig& cfg, int workers = 0) {
    cfg.validate();
    if (workers <= 0) workers = default_worker_count();
    const std::uint64_t experiment_id = config_hash(cfg);

    std::vector<detail::RunOutput> outputs(static_cast<std::size_t>(cfg.runs));
    std::atomic<int> next_run{0};
    auto worker = [&]() {
        while (true) {
            const int run = next_run.fetch_add(1);
            if (run >= cfg.runs) break;
            outputs[static_cast<std::size_t>(run)] = detail::execute_run(cfg, run, experiment_id);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    SweepResult result;
    result.config = cfg;
    result.experiment_id = experiment_id;

    std::map<CellKey, std::vector<RunMetrics>> cell_metrics;
    std::map<CellKey, long> cell_failed;
    std::map<CellKey, long> cell_degenerate;
    std::map<std::pair<EstimatorKind, long>, detail::DeviationStats> dev_stats;

    for (const detail::RunOutput& out : outputs) {
        for (const RunRecord& rec : out.records) {
            result.records.push_back(rec);
            const CellKey key{rec.estimator, rec.clustering, rec.n};
            if (rec.failed) {
                ++cell_failed[key];
            } else {
                cell_metrics[key].push_back(rec.metrics);
                if (rec.metrics.degenerate_flag) ++cell_degenerate[key];
            }
        }
        for (const auto& [key, deviation] : out.deviations) dev_stats[key].add(deviation);
    }

    std::sort(result.records.begin(), result.records.end(),
              [](const RunRecord& a, const RunRecord& b) {
                  return std::tie(a.estimator, a.clustering, a.n, a.run) <
                         std::tie(b.estimator, b.clustering, b.n, b.run);
              });

    std::set<CellKey> keys;
    for (const auto& [key, unused] : cell_metrics) keys.insert(key);
    for (const auto& [key, unused] : cell_failed) keys.insert(key);
    for (const CellKey& key : keys) {
        CellAggregate cell;
        cell.key = key;
        cell.failed_runs = cell_failed.count(key) ? cell_failed.at(key) : 0;
        cell.degenerate_runs = cell_degenerate.count(key) ? cell_degenerate.at(key) : 0;
        const std::vector<RunMetrics>& metrics_list =
            cell_metrics.count(key) ? cell_metrics.at(key) : std::vector<RunMetrics>{};
        if (metrics_list.size() >= 2) cell.metrics = aggregate(metrics_list);
        cell.metrics.runs = static_cast<long>(metrics_list.size());
        const auto dev_it = dev_stats.find({key.estimator, key.n});
        if (dev_it != dev_stats.end() && dev_it->second.count >= 2) {
            const detail::DeviationStats& st = dev_it->second;
            const double entries =
                static_cast<double>(st.mean.rows()) * static_cast<double>(st.mean.cols());
            cell.metrics.bias = st.mean.cwiseAbs().sum() / entries;
            cell.metrics.variance =
                st.m2.sum() / static_cast<double>(st.count - 1) / entries;
        }
        result.cells.push_back(cell);
    }
    return result;
}

}  // namespace netinfer
