#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "netinfer/clustering.hpp"
#include "netinfer/errors.hpp"
#include "netinfer/estimators.hpp"

namespace netinfer {

enum class GraphKind { ErdosRenyi, BarabasiAlbert };
enum class ResampleMode { Fixed, PerRun };

inline std::string to_string(GraphKind k) {
    return k == GraphKind::ErdosRenyi ? "er" : "ba";
}

inline std::string to_string(ResampleMode m) {
    return m == ResampleMode::Fixed ? "fixed" : "per_run";
}

struct GraphModel {
    GraphKind kind = GraphKind::ErdosRenyi;
    double p = 0.1;  // ER link probability
    int m = 2;       // BA attachment count

    double p_or_m() const { return kind == GraphKind::ErdosRenyi ? p : static_cast<double>(m); }
};

// Declarative sweep description over (estimator, clustering, n).
struct ExperimentConfig {
    GraphModel graph_model;
    int n_nodes = 400;
    double xi = 0.2;
    double mu = 0.1;
    double lambda = 0.99;
    std::vector<long> sample_sizes;
    std::vector<EstimatorKind> estimators;
    std::vector<ClusteringMethod> clustering;
    int runs = 50;
    std::uint64_t master_seed = 0;
    ResampleMode mask_mode = ResampleMode::PerRun;
    ResampleMode graph_mode = ResampleMode::PerRun;
    std::string output_dir = ".";

    void validate() const {
        if (n_nodes < 2) throw ParameterError("config: n_nodes must be >= 2");
        if (!(xi > 0.0 && xi <= 1.0)) throw ParameterError("config: xi must lie in (0,1]");
        if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("config: mu must lie in (0,1)");
        if (!(lambda > 0.0 && lambda <= 1.0)) throw ParameterError("config: lambda must lie in (0,1]");
        if (sample_sizes.empty()) throw ParameterError("config: sample_sizes must be nonempty");
        for (std::size_t k = 0; k < sample_sizes.size(); ++k) {
            if (sample_sizes[k] < 1) throw ParameterError("config: sample sizes must be >= 1");
            if (k > 0 && sample_sizes[k] <= sample_sizes[k - 1])
                throw ParameterError("config: sample_sizes must be strictly ascending");
        }
        if (estimators.empty()) throw ParameterError("config: estimators must be nonempty");
        if (clustering.empty()) throw ParameterError("config: clustering must be nonempty");
        if (runs < 1) throw ParameterError("config: runs must be >= 1");
        if (graph_model.kind == GraphKind::ErdosRenyi &&
            !(graph_model.p > 0.0 && graph_model.p < 1.0))
            throw ParameterError("config: p must lie in (0,1)");
        if (graph_model.kind == GraphKind::BarabasiAlbert &&
            (graph_model.m < 1 || graph_model.m >= n_nodes))
            throw ParameterError("config: m must satisfy 1 <= m < n_nodes");
    }
};

namespace detail {

inline EstimatorKind parse_estimator(const std::string& name) {
    if (name == "unbiased") return EstimatorKind::UnbiasedCumulative;
    if (name == "granger") return EstimatorKind::Granger;
    if (name == "one_lag") return EstimatorKind::OneLag;
    if (name == "residual") return EstimatorKind::Residual;
    throw ParameterError("config: unknown estimator '" + name + "'");
}

inline ClusteringMethod parse_clustering(const std::string& name) {
    if (name == "gmm") return ClusteringMethod::Gmm;
    if (name == "kmeans") return ClusteringMethod::KMeans;
    throw ParameterError("config: unknown clustering method '" + name + "'");
}

inline ResampleMode parse_mode(const std::string& name, const char* field) {
    if (name == "fixed") return ResampleMode::Fixed;
    if (name == "per_run") return ResampleMode::PerRun;
    throw ParameterError(std::string("config: ") + field + " must be 'fixed' or 'per_run'");
}

}  // namespace detail

// Parses an ExperimentConfig from JSON. Unknown fields are rejected.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
    static const std::set<std::string> known = {
        "graph_model", "n_nodes", "xi", "mu", "lambda", "sample_sizes", "estimators",
        "clustering", "runs", "master_seed", "mask_mode", "graph_mode", "output_dir"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw ParameterError("config: unknown field '" + item.key() + "'");

    ExperimentConfig cfg;
    if (j.contains("graph_model")) {
        const nlohmann::json& gm = j.at("graph_model");
        static const std::set<std::string> gm_known = {"kind", "p", "m"};
        for (const auto& item : gm.items())
            if (!gm_known.count(item.key()))
                throw ParameterError("config: unknown graph_model field '" + item.key() + "'");
        const std::string kind = gm.value("kind", "er");
        if (kind == "er") cfg.graph_model.kind = GraphKind::ErdosRenyi;
        else if (kind == "ba") cfg.graph_model.kind = GraphKind::BarabasiAlbert;
        else throw ParameterError("config: graph_model.kind must be 'er' or 'ba'");
        if (gm.contains("p")) cfg.graph_model.p = gm.at("p").get<double>();
        if (gm.contains("m")) cfg.graph_model.m = gm.at("m").get<int>();
    }
    if (j.contains("n_nodes")) cfg.n_nodes = j.at("n_nodes").get<int>();
    if (j.contains("xi")) cfg.xi = j.at("xi").get<double>();
    if (j.contains("mu")) cfg.mu = j.at("mu").get<double>();
    if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
    if (j.contains("sample_sizes")) cfg.sample_sizes = j.at("sample_sizes").get<std::vector<long>>();
    if (j.contains("estimators"))
        for (const auto& name : j.at("estimators"))
            cfg.estimators.push_back(detail::parse_estimator(name.get<std::string>()));
    if (j.contains("clustering"))
        for (const auto& name : j.at("clustering"))
            cfg.clustering.push_back(detail::parse_clustering(name.get<std::string>()));
    if (j.contains("runs")) cfg.runs = j.at("runs").get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("mask_mode"))
        cfg.mask_mode = detail::parse_mode(j.at("mask_mode").get<std::string>(), "mask_mode");
    if (j.contains("graph_mode"))
        cfg.graph_mode = detail::parse_mode(j.at("graph_mode").get<std::string>(), "graph_mode");
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    return cfg;
}

// Stable identifier over everything that influences results.
inline std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::string repr = to_string(cfg.graph_model.kind) + ";" +
                       std::to_string(cfg.graph_model.p_or_m()) + ";" +
                       std::to_string(cfg.n_nodes) + ";" + std::to_string(cfg.xi) + ";" +
                       std::to_string(cfg.mu) + ";" + std::to_string(cfg.lambda) + ";";
    for (long n : cfg.sample_sizes) repr += std::to_string(n) + ",";
    repr += ";";
    for (EstimatorKind e : cfg.estimators) repr += to_string(e) + ",";
    repr += ";";
    for (ClusteringMethod c : cfg.clustering) repr += to_string(c) + ",";
    repr += ";" + std::to_string(cfg.runs) + ";" + std::to_string(cfg.master_seed) + ";" +
            to_string(cfg.mask_mode) + ";" + to_string(cfg.graph_mode);
    // FNV-1a
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : repr) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace netinfer
