#pragma once

#include <Eigen/Core>
#include <string>

#include "vrm/experiments.hpp"
#include "vrm/learner.hpp"

namespace vrm {

// Shortest round-trip decimal representation; keeps CSV output byte-stable.
std::string format_double(double v);

// Rectangular numeric CSV -> n x d matrix. A non-numeric first row is treated
// as a header and skipped. Ragged rows and non-numeric cells raise
// std::runtime_error with the offending row/column.
Eigen::MatrixXd load_points_csv(const std::string& path);

// Sparse component triplets with header `component,atom,prob` -> raw
// (k-1) x n row matrix (missing entries zero). n is the max atom index + 1
// unless n_hint is larger.
Eigen::MatrixXd load_components_csv(const std::string& path, int n_hint = 0);

// Ledger CSV: t,cost_est,cost_true,w_1..w_k (cost_true empty when unknown).
void write_ledger_csv(const std::string& path, const RegretLedger& ledger);

// Result CSV: iter,metric,sampler,seed.
void write_run_csv(const std::string& path, const RunResult& result);

void write_text_file(const std::string& path, const std::string& content);

// Output directory resolution: explicit flag > $VRM_OUT_DIR > current dir.
// Creates the directory if needed.
std::string resolve_output_dir(const std::string& flag_value);

}  // namespace vrm
