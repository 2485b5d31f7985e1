// Command-line harness: graph/matrix generation, VAR simulation, single-shot
// inference, Monte Carlo sweeps, and SVG plots.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netinfer/netinfer.hpp"

namespace {

using namespace netinfer;

void write_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ",";
            out << csvfmt::number(m(r, c));
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed for " + path);
}

struct GraphArgs {
    std::string model = "er";
    int nodes = 400;
    double p = 0.1;
    int m = 2;
    double mu = 0.1;
    double lambda = 0.99;
    std::uint64_t seed = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--model", model, "Graph model: er | ba")->check(CLI::IsMember({"er", "ba"}));
        cmd->add_option("--nodes", nodes, "Number of nodes N");
        cmd->add_option("--p", p, "ER link probability");
        cmd->add_option("--m", m, "BA attachment count");
        cmd->add_option("--mu", mu, "Input weighting coefficient mu");
        cmd->add_option("--lambda", lambda, "Laplacian rule parameter lambda");
        cmd->add_option("--seed", seed, "Master seed (printed for reproducibility)");
    }

    AdjacencyMatrix make_graph(std::uint64_t graph_seed) const {
        return model == "er" ? generate_er(nodes, p, graph_seed)
                             : generate_ba(nodes, m, graph_seed);
    }
};

int run(int argc, char** argv) {
    CLI::App app{"netinfer: network topology inference from VAR signals"};
    app.require_subcommand(1);

    // generate
    GraphArgs gen_args;
    std::string gen_out = "graph";
    auto* generate_cmd = app.add_subcommand("generate", "Generate a graph and its combination matrix");
    gen_args.add_to(generate_cmd);
    generate_cmd->add_option("--out", gen_out, "Output prefix (<out>_adjacency.csv, <out>_combination.csv)");

    // simulate
    GraphArgs sim_args;
    long sim_horizon = 100;
    std::string sim_out = "trajectory.bin";
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the VAR process and dump the trajectory");
    sim_args.add_to(simulate_cmd);
    simulate_cmd->add_option("--horizon", sim_horizon, "Trajectory horizon T (emits y_0..y_T)");
    simulate_cmd->add_option("--out", sim_out, "Binary trajectory output path");

    // infer
    std::string infer_traj, infer_out = "prediction.csv";
    std::string infer_estimator = "unbiased", infer_clustering = "gmm";
    double infer_mu = 0.1, infer_xi = 1.0;
    long infer_n = 0;
    std::uint64_t infer_seed = 0;
    auto* infer_cmd = app.add_subcommand("infer", "Estimate topology from a trajectory dump");
    infer_cmd->add_option("--trajectory", infer_traj, "Trajectory dump from `simulate`")->required();
    infer_cmd->add_option("--mu", infer_mu, "Weighting coefficient mu");
    infer_cmd->add_option("--xi", infer_xi, "Observed fraction (mask applied to the dump)");
    infer_cmd->add_option("--n", infer_n, "Sample count n (default: all available)");
    infer_cmd->add_option("--estimator", infer_estimator, "unbiased | granger | one_lag | residual");
    infer_cmd->add_option("--clustering", infer_clustering, "gmm | kmeans");
    infer_cmd->add_option("--seed", infer_seed, "Master seed (mask substream)");
    infer_cmd->add_option("--out", infer_out, "Predicted adjacency CSV path");

    // experiment
    std::string exp_config;
    int exp_runs = -1;
    std::int64_t exp_seed = -1;
    std::string exp_output;
    int exp_workers = 0;
    auto* experiment_cmd = app.add_subcommand("experiment", "Run a Monte Carlo sweep from a JSON config");
    experiment_cmd->add_option("--config", exp_config, "Experiment config JSON")->required();
    experiment_cmd->add_option("--runs", exp_runs, "Override run count");
    experiment_cmd->add_option("--seed", exp_seed, "Override master seed");
    experiment_cmd->add_option("--output-dir", exp_output, "Override output directory");
    experiment_cmd->add_option("--workers", exp_workers, "Worker count (overrides NETINFER_WORKERS)");

    // plot
    std::string plot_input, plot_x = "n", plot_y = "error_rate_mean", plot_series = "estimator";
    std::string plot_out = "plot.svg";
    auto* plot_cmd = app.add_subcommand("plot", "SVG line chart from an aggregate CSV");
    plot_cmd->add_option("--input", plot_input, "aggregate.csv path")->required();
    plot_cmd->add_option("--x", plot_x, "X field");
    plot_cmd->add_option("--y", plot_y, "Y field");
    plot_cmd->add_option("--series", plot_series, "Series field");
    plot_cmd->add_option("--out", plot_out, "Output SVG path");

    // scatter
    GraphArgs scatter_args;
    double scatter_xi = 0.2;
    long scatter_n = 10000;
    std::string scatter_estimator = "unbiased";
    std::string scatter_out = "scatter.svg";
    auto* scatter_cmd = app.add_subcommand("scatter", "Scatter/histogram of estimator entries vs ground truth");
    scatter_args.add_to(scatter_cmd);
    scatter_cmd->add_option("--xi", scatter_xi, "Observed fraction");
    scatter_cmd->add_option("--n", scatter_n, "Sample count n");
    scatter_cmd->add_option("--estimator", scatter_estimator, "unbiased | granger | one_lag | residual");
    scatter_cmd->add_option("--out", scatter_out, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (generate_cmd->parsed()) {
        std::cout << "seed: " << gen_args.seed << "\n";
        const AdjacencyMatrix g = gen_args.make_graph(derive_seed(gen_args.seed, 0, "graph"));
        const CombinationMatrix a = laplacian_combination(g, gen_args.lambda, gen_args.mu);
        write_matrix_csv(g.entries, gen_out + "_adjacency.csv");
        write_matrix_csv(a.entries, gen_out + "_combination.csv");
        std::cout << "wrote " << gen_out << "_adjacency.csv and " << gen_out
                  << "_combination.csv (spectral radius " << spectral_radius(a.entries) << ")\n";
    } else if (simulate_cmd->parsed()) {
        std::cout << "seed: " << sim_args.seed << "\n";
        const AdjacencyMatrix g = sim_args.make_graph(derive_seed(sim_args.seed, 0, "graph"));
        const CombinationMatrix a = laplacian_combination(g, sim_args.lambda, sim_args.mu);
        const SignalTrajectory traj = simulate_var(
            a, sim_args.mu, static_cast<int>(sim_horizon),
            NoiseSource(derive_seed(sim_args.seed, 0, "noise")));
        write_trajectory(traj, sim_out);
        std::cout << "wrote " << sim_out << " (N=" << traj.n_nodes << ", T=" << traj.horizon()
                  << ")\n";
    } else if (infer_cmd->parsed()) {
        std::cout << "seed: " << infer_seed << "\n";
        SignalTrajectory traj = read_trajectory(infer_traj);
        if (infer_xi < 1.0) {
            const ObservationMask mask =
                select_observed(traj.n_nodes, infer_xi, derive_seed(infer_seed, 0, "mask"));
            traj = observe(traj, mask);
        }
        const long n = infer_n > 0 ? infer_n : traj.horizon() - 2;
        const SampleMoments moments = accumulate(traj, n);
        const TopologyEstimate est =
            estimate(detail::parse_estimator(infer_estimator), moments, infer_mu);
        const PredictedAdjacency pred =
            infer_topology(est, detail::parse_clustering(infer_clustering));
        write_matrix_csv(pred.entries, infer_out);
        std::cout << "wrote " << infer_out << " (|S|=" << pred.s_size << ", n=" << n << ")\n";
    } else if (experiment_cmd->parsed()) {
        std::ifstream in(exp_config);
        if (!in) throw IoError("cannot open config " + exp_config);
        nlohmann::json j = nlohmann::json::parse(in);
        ExperimentConfig cfg = parse_config(j);
        if (exp_runs > 0) cfg.runs = exp_runs;
        if (exp_seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(exp_seed);
        if (!exp_output.empty()) cfg.output_dir = exp_output;
        std::cout << "seed: " << cfg.master_seed << "\n";
        const SweepResult result = run_experiment(cfg, exp_workers);
        write_csv(result, cfg.output_dir);
        std::cout << "wrote " << cfg.output_dir << "/runs.csv and " << cfg.output_dir
                  << "/aggregate.csv (" << result.records.size() << " records)\n";
        for (const CellAggregate& cell : result.cells)
            std::cout << to_string(cell.key.estimator) << "+" << to_string(cell.key.clustering)
                      << " n=" << cell.key.n << ": error_rate "
                      << cell.metrics.error_rate.mean << " [" << cell.metrics.error_rate.ci_low
                      << ", " << cell.metrics.error_rate.ci_high << "]\n";
    } else if (plot_cmd->parsed()) {
        emit_plot(plot_input, plot_x, plot_y, plot_series, plot_out);
        std::cout << "wrote " << plot_out << "\n";
    } else if (scatter_cmd->parsed()) {
        std::cout << "seed: " << scatter_args.seed << "\n";
        const AdjacencyMatrix g =
            scatter_args.make_graph(derive_seed(scatter_args.seed, 0, "graph"));
        const CombinationMatrix a = laplacian_combination(g, scatter_args.lambda, scatter_args.mu);
        const ObservationMask mask = select_observed(scatter_args.nodes, scatter_xi,
                                                     derive_seed(scatter_args.seed, 0, "mask"));
        VarProcess process(a, scatter_args.mu,
                           NoiseSource(derive_seed(scatter_args.seed, 0, "noise")));
        MomentAccumulator acc(static_cast<int>(mask.indices.size()));
        acc.feed(project(process.current(), mask));
        while (acc.samples() < scatter_n) acc.feed(project(process.step(), mask));
        const TopologyEstimate est = estimate(detail::parse_estimator(scatter_estimator),
                                              acc.snapshot(), scatter_args.mu);
        const Matrix truth = submatrix(g.entries, mask);
        std::vector<double> values;
        std::vector<int> labels;
        for (const PairValue& pv : extract_pair_values(est)) {
            values.push_back(pv.value);
            labels.push_back(truth(pv.i, pv.j) != 0.0 ? 1 : 0);
        }
        emit_scatter(values, labels, scatter_out);
        std::cout << "wrote " << scatter_out << " (" << values.size() << " pairs, n=" << scatter_n
                  << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const netinfer::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
