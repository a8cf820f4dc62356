#pragma once

#include <string>
#include <vector>

#include "csc/config.hpp"
#include "csc/lift.hpp"
#include "csc/simulate.hpp"

namespace csc {

// Shortest round-trip decimal representation (deterministic across runs).
std::string format_double(double v);

// trace.csv: per-period series with the resolved configuration as a
// `#`-prefixed preamble. Columns: k, err_l2, err_db, sparsity, bytes.
void write_trace_csv(const std::string& path, const RunResult& result);

// run.json: the full RunResult including configuration, seed, per-period
// series, state and coefficient histories, and aggregates.
void write_run_json(const std::string& path, const RunResult& result);

struct SweepRow {
  double value = 0.0;
  double rms_mean = 0.0;
  double rms_std = 0.0;
  double sparsity_mean = 0.0;
  double diverged_fraction = 0.0;
};

// sweep.csv: one row per swept value (ascending). Columns: value, rms_mean,
// rms_std, sparsity_mean, diverged_fraction.
void write_sweep_csv(const std::string& path, const SweepSpec& sweep,
                     const std::vector<SweepRow>& rows);

// compare.csv: per-period error columns for the three controllers followed
// by `rms` and `avg_sparsity` summary rows. Columns: k, err_sparse,
// err_truncated, err_ridge. A blank field marks a period after divergence.
void write_compare_csv(const std::string& path, const RunConfig& cfg,
                       const RunResult& sparse, const RunResult& truncated,
                       const RunResult& plain_ridge);

// codec.csv: per-period byte accounting. Columns: k, sparsity, bytes, dense_bytes.
void write_codec_csv(const std::string& path, const RunResult& result);

// g.csv / h.csv / z.csv under dir, long format with real and imaginary
// parts in separate columns.
void write_lift_csv(const std::string& dir, const LiftedSystem& sys, const RunConfig& cfg);

}  // namespace csc
