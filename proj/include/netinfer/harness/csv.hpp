#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "netinfer/errors.hpp"
#include "netinfer/harness/runner.hpp"

namespace netinfer {
namespace csvfmt {

// Shortest-round-trip decimal rendering, '.' decimal point, locale-free.
inline std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double parsed = 0.0;
    // prefer shorter representations that still round-trip exactly
    for (int precision = 1; precision < 17; ++precision) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", precision, v);
        std::sscanf(probe, "%lf", &parsed);
        if (parsed == v) return probe;
    }
    return buf;
}

}  // namespace csvfmt

inline const char* runs_csv_header() {
    return "experiment_id,estimator,clustering,N,p_or_m,xi,mu,lambda,n,run,seed,"
           "error_rate,fn_score,fp_score,degenerate,wall_time_ms";
}

inline const char* aggregate_csv_header() {
    return "experiment_id,estimator,clustering,N,p_or_m,xi,mu,lambda,n,"
           "error_rate_mean,error_rate_std,error_rate_ci_low,error_rate_ci_high,"
           "fn_score_mean,fn_score_std,fn_score_ci_low,fn_score_ci_high,"
           "fp_score_mean,fp_score_std,fp_score_ci_low,fp_score_ci_high,"
           "bias,variance,runs,failed_runs,degenerate_runs";
}

// Writes runs.csv and aggregate.csv with the stable column layout. Records
// are assumed canonically sorted (run_experiment guarantees it).
inline void write_csv(const SweepResult& result, const std::string& output_dir) {
    if (result.records.empty()) throw ParameterError("write_csv: no records");
    std::filesystem::create_directories(output_dir);
    const ExperimentConfig& cfg = result.config;
    const std::string prefix = std::to_string(result.experiment_id) + "," ;
    const std::string cfg_cols = std::to_string(cfg.n_nodes) + "," +
                                 csvfmt::number(cfg.graph_model.p_or_m()) + "," +
                                 csvfmt::number(cfg.xi) + "," + csvfmt::number(cfg.mu) + "," +
                                 csvfmt::number(cfg.lambda) + ",";

    {
        std::ofstream out(output_dir + "/runs.csv");
        if (!out) throw IoError("write_csv: cannot open runs.csv in " + output_dir);
        out << runs_csv_header() << "\n";
        for (const RunRecord& rec : result.records) {
            out << prefix << to_string(rec.estimator) << "," << to_string(rec.clustering) << ","
                << cfg_cols << rec.n << "," << rec.run << "," << rec.seed << ",";
            if (rec.failed) {
                out << "nan,nan,nan,";
            } else {
                out << csvfmt::number(rec.metrics.error_rate) << ","
                    << csvfmt::number(rec.metrics.fn_score) << ","
                    << csvfmt::number(rec.metrics.fp_score) << ",";
            }
            out << (rec.metrics.degenerate_flag ? 1 : 0) << ","
                << csvfmt::number(rec.wall_time_ms) << "\n";
        }
        if (!out) throw IoError("write_csv: write failed for runs.csv");
    }

    {
        std::ofstream out(output_dir + "/aggregate.csv");
        if (!out) throw IoError("write_csv: cannot open aggregate.csv in " + output_dir);
        out << aggregate_csv_header() << "\n";
        for (const CellAggregate& cell : result.cells) {
            const AggregateMetrics& m = cell.metrics;
            out << prefix << to_string(cell.key.estimator) << ","
                << to_string(cell.key.clustering) << "," << cfg_cols << cell.key.n << ","
                << csvfmt::number(m.error_rate.mean) << "," << csvfmt::number(m.error_rate.std)
                << "," << csvfmt::number(m.error_rate.ci_low) << ","
                << csvfmt::number(m.error_rate.ci_high) << "," << csvfmt::number(m.fn_score.mean)
                << "," << csvfmt::number(m.fn_score.std) << ","
                << csvfmt::number(m.fn_score.ci_low) << "," << csvfmt::number(m.fn_score.ci_high)
                << "," << csvfmt::number(m.fp_score.mean) << "," << csvfmt::number(m.fp_score.std)
                << "," << csvfmt::number(m.fp_score.ci_low) << ","
                << csvfmt::number(m.fp_score.ci_high) << "," << csvfmt::number(m.bias) << ","
                << csvfmt::number(m.variance) << "," << m.runs << "," << cell.failed_runs << ","
                << cell.degenerate_runs << "\n";
        }
        if (!out) throw IoError("write_csv: write failed for aggregate.csv");
    }
}

// Minimal CSV reader for the files this harness writes (no quoting, no
// embedded commas).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name) return static_cast<int>(k);
        return -1;
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_csv: cannot open " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (first) {
            table.header = fields;
            first = false;
        } else {
            table.rows.push_back(fields);
        }
    }
    return table;
}

}  // namespace netinfer
